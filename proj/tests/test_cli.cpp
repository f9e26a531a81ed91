#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"
#include "quadclass/kernels/divisor_scan.hpp"

namespace fs = std::filesystem;

namespace {

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result cli(std::initializer_list<char const *> args)
{
    std::vector<char const *> argv{"quadclass", "--no-cache"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    int const code = quadclass::cli_main(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct EnvGuard
{
    std::string name;
    EnvGuard(char const * n, char const * value)
        : name(n)
    {
        ::setenv(n, value, 1);
    }
    ~EnvGuard() { ::unsetenv(name.c_str()); }
};

} // namespace

TEST_CASE("classnum")
{
    Result const r = cli({"classnum", "--d0", "-53"});
    CHECK(r.code == 0);
    CHECK(r.out == "d0=-53 D_K=-212 h=6\n");

    Result const j = cli({"--format", "json", "classnum", "--disc", "-163"});
    CHECK(j.code == 0);
    auto const doc = nlohmann::json::parse(j.out);
    CHECK(doc["D"] == -163);
    CHECK(doc["h"] == 1);

    Result const rad = cli({"classnum", "--radicand", "-595508"});
    CHECK(rad.out == "d=-595508 s=106 d0=-53 D_K=-212 h=6\n");

    CHECK(cli({"classnum", "--d0", "-45"}).code == 2);
    CHECK(cli({"classnum", "--disc", "-5"}).code == 2);
    CHECK(cli({"classnum"}).code == 2);
    CHECK(cli({"classnum", "--d0", "-53", "--disc", "-212"}).code == 2);
    CHECK(cli({"--cap", "100", "classnum", "--d0", "-53"}).code == 2);
}

TEST_CASE("classgroup")
{
    Result const r = cli({"classgroup", "--disc", "-212"});
    CHECK(r.code == 0);
    CHECK(r.out.find("h=6") != std::string::npos);
    CHECK(r.out.find("(6,2,9)  order 3") != std::string::npos);
}

TEST_CASE("pth-power")
{
    Result const r = cli({"pth-power", "--m", "3", "--p", "3", "--oracle"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict=NotPthPower") != std::string::npos);
    CHECK(r.out.find("agree=true") != std::string::npos);
    CHECK(cli({"pth-power", "--m", "4", "--p", "3"}).code == 2);
}

TEST_CASE("dioph")
{
    Result const r = cli({"dioph", "--lambda-sq", "2", "--d1", "5", "--d2", "1", "--m", "3", "--ymax", "30"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[(1,1)]") != std::string::npos);
    CHECK(r.out.find("bound audit: N=1 omega(m)=1 bound=1 pass") != std::string::npos);

    Result const s = cli({"dioph", "--lambda-sq", "2", "--d1", "1", "--d2", "1", "--m", "5"});
    CHECK(s.code == 0);
    CHECK(s.out.find("[(3,1),(7,2)]") != std::string::npos);
    CHECK(s.out.find("families: S") != std::string::npos);

    CHECK(cli({"dioph", "--lambda-sq", "3", "--d1", "5", "--d2", "1", "--m", "3"}).code == 2);
}

TEST_CASE("verify exit codes")
{
    CHECK(cli({"verify", "t9", "--m", "3", "--pairs", "3,5", "5,7"}).code == 0);
    CHECK(cli({"verify", "t2", "--m", "3..11:2"}).code == 0);
    CHECK(cli({"verify", "nope"}).code == 2);
    CHECK(cli({"verify"}).code == 2);
    CHECK(cli({"verify", "t2", "--m", "3..x"}).code == 2);
    CHECK(cli({"--format", "yaml", "verify", "t2"}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"--help"}).code == 0);

    Result const both = cli({"--format", "json", "verify", "t2", "lebesgue", "--m", "3"});
    CHECK(both.code == 0);
    auto const doc = nlohmann::json::parse(both.out);
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 2);
}

TEST_CASE("a counterexample forces exit 1")
{
    fs::path const path = fs::temp_directory_path() / ("cli-poison-" + std::to_string(::getpid()) + ".cache");
    {
        std::ofstream out(path);
        out << "disc=-212 h=7 version=x computed_at=t\n";
    }
    std::string const p = path.string();
    std::vector<char const *> argv{"quadclass", "--cache",  p.c_str(), "--audit-fraction", "0",
                                   "--format",  "json",     "verify",  "t2",               "--m",
                                   "3,5"};
    std::ostringstream out, err;
    int const code = quadclass::cli_main(int(argv.size()), argv.data(), out, err);
    CHECK(code == 1);
    auto const doc = nlohmann::json::parse(out.str());
    CHECK(doc["counterexamples"].size() == 1);

    // with a full audit the bad entry is repaired before the run
    std::vector<char const *> audited{"quadclass", "--cache", p.c_str(), "--audit-fraction", "1",
                                      "verify",    "t2",      "--m",     "3"};
    std::ostringstream out2, err2;
    CHECK(quadclass::cli_main(int(audited.size()), audited.data(), out2, err2) == 0);
    CHECK(err2.str().find("disagrees") != std::string::npos);
    fs::remove(path);
}

TEST_CASE("environment configuration")
{
    {
        EnvGuard cap("QUADCLASS_DISC_CAP", "100");
        CHECK(cli({"classnum", "--d0", "-53"}).code == 2);
        CHECK(cli({"--cap", "1000", "classnum", "--d0", "-53"}).code == 0);
    }
    {
        EnvGuard cap("QUADCLASS_DISC_CAP", "lots");
        CHECK(cli({"classnum", "--d0", "-53"}).code == 2);
    }
    fs::path const path = fs::temp_directory_path() / ("cli-env-" + std::to_string(::getpid()) + ".cache");
    fs::remove(path);
    {
        EnvGuard cache("QUADCLASS_CACHE", path.string().c_str());
        std::vector<char const *> argv{"quadclass", "classnum", "--d0", "-53"};
        std::ostringstream out, err;
        CHECK(quadclass::cli_main(int(argv.size()), argv.data(), out, err) == 0);
    }
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind("disc=-212 h=6 ", 0) == 0);
    fs::remove(path);
}

TEST_CASE("iizuka and scan")
{
    Result const r = cli({"iizuka", "--m", "3", "--t", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("d   = -595508") != std::string::npos);
    CHECK(r.out.find("h=108") != std::string::npos);

    Result const s = cli({"scan", "--m", "3", "--t", "3,5,7"});
    CHECK(s.code == 0);
    CHECK(s.out.find("distinct fields: 3 of 3") != std::string::npos);

    CHECK(cli({"iizuka", "--m", "15", "--t", "15"}).code == 2); // beyond the factoring cap
    CHECK(cli({"pth-power", "--m", "31", "--p", "31"}).code == 2);
}

TEST_CASE("kernel selection")
{
    CHECK(cli({"--kernel", "scalar", "classnum", "--d0", "-53"}).code == 0);
    CHECK(cli({"--kernel", "sse9", "classnum", "--d0", "-53"}).code == 2);
    quadclass::kernels::set_active_isa(quadclass::kernels::detect_isa());
}
