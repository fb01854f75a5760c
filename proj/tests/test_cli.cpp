#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args, const std::string& env = "")
{
    std::string cmd = env + " " + std::string(CONFREE_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli: reduce")
{
    auto r = run("reduce --mode lie --letters a --N 1 \"a(1)*a(0)\"");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "normal form: a(0)*a(1)"));

    auto traced = run("reduce --mode lie --letters a --N 1 --trace \"a(1)*a(0)\"");
    CHECK(traced.exit_code == 0);
    CHECK(contains(traced.output, "1 applications"));

    auto assoc = run("reduce --mode assoc --letters a --N 2 \"a(1)*a(0)\" --format json");
    CHECK(assoc.exit_code == 0);
    auto j = nlohmann::json::parse(assoc.output);
    CHECK(j["normal_form"].size() == 2);
    CHECK(j["normal_form"][0]["coeff"].is_string());
}

TEST_CASE("cli: basis spaces")
{
    auto ul = run("basis --mode lie --letters a --N 1 --space ul --length 2 --window 0..1");
    CHECK(ul.exit_code == 0);
    CHECK(contains(ul.output, "count: 3"));

    auto ulplus = run("basis --mode lie --letters a --N 1 --space ulplus --length 2 --sum 1");
    CHECK(ulplus.exit_code == 0);
    CHECK(contains(ulplus.output, "a(0)*a(1)"));
    CHECK(contains(ulplus.output, "count: 1"));

    // the only length-2 vertex word of weight 3 is a(-2)*a(-1)
    auto vertex =
        run("basis --mode lie --letters a --N 1 --space vertex --length 2 --window -3..-1 --sum -3");
    CHECK(vertex.exit_code == 0);
    CHECK(contains(vertex.output, "a(-2)*a(-1)"));
    CHECK(contains(vertex.output, "count: 1"));

    auto a_basis = run("basis --mode assoc --letters a --N 2 --space a --length 2 --sum 0");
    CHECK(a_basis.exit_code == 0);
    CHECK(contains(a_basis.output, "count: 2"));

    auto missing = run("basis --mode lie --letters a --N 1 --space ul --length 2");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("cli: confluence")
{
    auto lie = run("confluence --mode lie --letters a --N 1 --window -2..2");
    CHECK(lie.exit_code == 0);
    CHECK(contains(lie.output, "failures: 0"));
    CHECK(contains(lie.output, "# N: 1"));

    auto assoc = run("confluence --mode assoc --letters a,b --N 2 --window -2..2 --format json");
    CHECK(assoc.exit_code == 0);
    auto j = nlohmann::json::parse(assoc.output);
    CHECK(j["failures"] == 0);
    CHECK(j["ambiguities"].get<std::size_t>() > 0);

    auto bad_window = run("confluence --mode lie --letters a --N 1 --window 3..1");
    CHECK(bad_window.exit_code == 2);
}

TEST_CASE("cli: dim matches the dimension law")
{
    auto r = run("dim --mode assoc --letters a --N 2 --l 3 --k -1..1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "l=3 k=-1: 4"));
    CHECK(contains(r.output, "l=3 k=0: 4"));
    CHECK(contains(r.output, "l=3 k=1: 4"));

    auto lie_mode = run("dim --mode lie --letters a --N 2 --l 3 --k -1..1");
    CHECK(lie_mode.exit_code == 2);
}

TEST_CASE("cli: hall")
{
    auto r = run("hall --letters a,b --N 1 --window -1..1 --max-length 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "count:"));

    auto v = run("hall --letters a --N 1 --window -2..0 --max-length 2 --vertex --format json");
    CHECK(v.exit_code == 0);
    auto j = nlohmann::json::parse(v.output);
    CHECK(j["count"] == 2);  // a(-1) and a(-2) survive, a(0) dies
}

TEST_CASE("cli: locality table file")
{
    const std::string path = "/tmp/confree_locality_test.json";
    {
        std::ofstream out(path);
        out << R"({"pairs": {"a,a": 1, "a,b": 2, "b,a": 1, "b,b": 3}})";
    }
    auto r = run("confluence --mode assoc --letters a,b --locality " + path + " --window -2..2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "failures: 0"));

    // missing pair is an argument error
    {
        std::ofstream out(path);
        out << R"({"pairs": {"a,a": 1}})";
    }
    CHECK(run("confluence --mode assoc --letters a,b --locality " + path + " --window -2..2")
              .exit_code == 2);

    CHECK(run("reduce --mode assoc --letters a --locality /nonexistent.json \"a(1)*a(0)\"")
              .exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("cli: oracle")
{
    auto vir = run("oracle virasoro --window -6..6");
    CHECK(vir.exit_code == 0);
    CHECK(contains(vir.output, "all checks passed"));

    auto ids = run("oracle identities --realization diff-lie --window -8..8");
    CHECK(ids.exit_code == 0);
    CHECK(contains(ids.output, "failures=0"));

    auto ids_assoc = run("oracle identities --realization diff-assoc --window -8..8");
    CHECK(ids_assoc.exit_code == 0);
    CHECK(contains(ids_assoc.output, "all checks passed"));

    // custom structure constants through a file
    const std::string path = "/tmp/confree_structure_test.json";
    {
        std::ofstream out(path);
        out << R"({"basis": ["x", "y"], "brackets": {"x,y": {"y": 1}}})";
    }
    auto custom = run("oracle identities --realization loop --structure " + path +
                      " --window -6..6");
    CHECK(custom.exit_code == 0);
    std::remove(path.c_str());

    auto loc = run("oracle locality --realization loop --window -6..6 --format json");
    CHECK(loc.exit_code == 0);
    auto j = nlohmann::json::parse(loc.output);
    CHECK(j["orders"]["e,f"] == 1);

    auto dong = run("oracle dong --realization loop --window -8..8");
    CHECK(dong.exit_code == 0);

    auto bad = run("oracle identities --realization nonsense");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli: byte-identical output across thread counts")
{
    const std::string cmd = "confluence --mode lie --letters a,b --N 2 --window -3..3 --format json";
    auto one = run(cmd, "CONFREE_THREADS=1");
    auto four = run(cmd, "CONFREE_THREADS=4");
    CHECK(one.exit_code == 0);
    CHECK(four.exit_code == 0);
    CHECK(one.output == four.output);

    auto again = run(cmd, "CONFREE_THREADS=4");
    CHECK(again.output == four.output);
}

TEST_CASE("cli: argument errors exit with 2")
{
    CHECK(run("reduce --mode lie --letters a --N 1 \"a(1.5)\"").exit_code == 2);
    CHECK(run("reduce --mode lie --letters a \"a(1)\"").exit_code == 2);     // no locality
    CHECK(run("reduce --mode banana --letters a --N 1 \"a(1)\"").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
}
