#include "quadclass/kernels/divisor_scan.hpp"

namespace quadclass::kernels {

void divisor_scan_scalar(std::uint64_t n, std::uint64_t lo, std::uint64_t hi,
                         std::vector<std::uint64_t> & out)
{
    for (std::uint64_t a = lo; a <= hi; ++a) {
        if (n % a == 0)
            out.push_back(a);
    }
}

} // namespace quadclass::kernels
