#pragma once

#include <iosfwd>

namespace quadclass {

/// Exit codes: 0 all checks pass, 1 counterexample found, 2 usage or resource error.
int cli_main(int argc, char const * const * argv, std::ostream & out, std::ostream & err);

} // namespace quadclass
