#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ascentlab/cli.hpp"

using ascentlab::cli_main;
using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_main(args, out, err);
    return Run{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count prints the value and picks the best method") {
    Run r = run({"count", "--avoid", "0101", "--n", "6"});
    CHECK(r.code == 0);
    CHECK(r.out == "132\n");

    r = run({"count", "--avoid", "0101", "--n", "6", "--format", "json"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["value"] == "132");
    CHECK(j["method"] == "formula");
    CHECK(j["avoid"] == "0101");

    // Open class: no formula, no tree, so auto falls back to the oracle.
    r = run({"count", "--avoid", "0120", "--n", "6", "--format", "json"});
    CHECK(r.code == 0);
    j = json::parse(r.out);
    CHECK(j["value"] == "133");
    CHECK(j["method"] == "oracle");
}

TEST_CASE("count methods agree wherever they are defined") {
    for (const char* method : {"formula", "tree", "oracle"}) {
        Run r = run({"count", "--avoid", "0112,0120", "--n", "8", "--method",
                     method});
        CAPTURE(method);
        CHECK(r.code == 0);
        CHECK(r.out == "254\n");
    }
    Run all = run({"count", "--avoid", "0112,0120", "--n", "8",
                   "--all-methods", "--format", "json"});
    CHECK(all.code == 0);
    json j = json::parse(all.out);
    CHECK(j["agreement"] == true);
    CHECK(j["values"]["formula"] == "254");
    CHECK(j["values"]["tree"] == "254");
    CHECK(j["values"]["oracle"] == "254");
}

TEST_CASE("requesting an unsupported method is a distinct failure") {
    Run r = run({"count", "--avoid", "0120", "--n", "5", "--method",
                 "formula"});
    CHECK(r.code == 3);
    CHECK(r.out.empty());
    CHECK(r.err.find("0120") != std::string::npos);
    r = run({"count", "--avoid", "0120", "--n", "5", "--method", "tree"});
    CHECK(r.code == 3);
}

TEST_CASE("series renders in every format") {
    Run r = run({"series", "--avoid", "0101", "--n-max", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "1,2,5,14,42\n");

    r = run({"series", "--avoid", "0101", "--n-max", "5", "--format", "json"});
    json j = json::parse(r.out);
    CHECK(j["values"] == json({"1", "2", "5", "14", "42"}));
    CHECK(j["start_n"] == 1);
    CHECK(j["method"] == "oracle");

    r = run({"series", "--avoid", "0101", "--n-max", "3", "--format", "csv"});
    CHECK(r.out == "n,value\n1,1\n2,2\n3,5\n");

    r = run({"series", "--avoid", "0101", "--n-max", "30", "--method",
             "formula"});
    CHECK(r.code == 0);
    CHECK(r.out.find("6564120420") != std::string::npos);  // C(30)
}

TEST_CASE("list emits one avoider per line in lexicographic order") {
    Run r = run({"list", "--avoid", "0101", "--n", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "000\n001\n010\n011\n012\n");
    r = run({"list", "--avoid", "0101", "--n", "3", "--format", "json"});
    json j = json::parse(r.out);
    CHECK(j["count"] == 5);
    CHECK(j["sequences"][4] == "012");
}

TEST_CASE("tree expands cataloged systems and ad-hoc rule files") {
    Run r = run({"tree", "--system", "L2_0121_0112", "--n-max", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("n=5 total=33") != std::string::npos);

    r = run({"tree", "--system", "L2_0121_0112", "--n-max", "4", "--matrix",
             "--per-label"});
    CHECK(r.code == 0);
    CHECK(r.out.find("labels: (0) (01) (011)") != std::string::npos);
    CHECK(r.out.find("(011)=") != std::string::npos);

    // Parameterized systems level-count fine but have no finite matrix.
    r = run({"tree", "--system", "L2_101_102", "--n-max", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("n=6 total=89") != std::string::npos);
    r = run({"tree", "--system", "L2_101_102", "--matrix"});
    CHECK(r.code == 3);

    r = run({"tree", "--system", "NO_SUCH_SYSTEM"});
    CHECK(r.code == 2);
    CHECK(r.err.find("NO_SUCH_SYSTEM") != std::string::npos);

    r = run({"tree"});
    CHECK(r.code == 2);

    auto dir = std::filesystem::temp_directory_path();
    auto good = dir / "ascentlab-cli-good.rules";
    std::ofstream(good) << "system doubling\navoids 0101\nroot (a)\n"
                           "(a) -> (a) (a)\n";
    r = run({"tree", "--rules", good.string(), "--n-max", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("n=4 total=8") != std::string::npos);
    std::filesystem::remove(good);

    auto bad = dir / "ascentlab-cli-bad.rules";
    std::ofstream(bad) << "system broken\nroot (a)\n(a) ->\n";
    r = run({"tree", "--rules", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("line") != std::string::npos);
    std::filesystem::remove(bad);

    r = run({"tree", "--rules", "/no/such/file.rules"});
    CHECK(r.code == 5);
}

TEST_CASE("gf defaults to the bundled generating function") {
    Run r = run({"gf", "--n-max", "8"});
    CHECK(r.code == 0);
    CHECK(r.out == "1,1,2,5,13,33,82,202,497\n");

    r = run({"gf", "--numer", "1", "--denom", "1,-2", "--n-max", "5"});
    CHECK(r.out == "1,2,4,8,16,32\n");

    r = run({"gf", "--numer", "1", "--denom", "2", "--n-max", "3"});
    CHECK(r.code == 2);

    r = run({"gf", "--numer", "1", "--n-max", "3"});
    CHECK(r.code == 2);  // --numer without --denom
}

TEST_CASE("oeis resolves terms and enumerated subsets against the bundle") {
    Run r = run({"oeis", "--terms", "1,2,5,14,42,132"});
    CHECK(r.code == 0);
    CHECK(r.out == "A000108\n");

    r = run({"oeis", "--avoid", "0102", "--n-max", "9", "--format", "json"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["ids"] == json({"A007051"}));
    CHECK(j["source"] == "local");

    r = run({"oeis", "--terms", "1,2,5"});
    CHECK(r.code == 2);  // too few terms

    r = run({"oeis"});
    CHECK(r.code == 2);

    r = run({"oeis", "--terms", "1,2,5,x,42"});
    CHECK(r.code == 2);

    r = run({"oeis", "--terms", "1,2,3,4,5,6,7", "--remote", "--offline"});
    CHECK(r.code == 5);
    CHECK(r.err.find("offline") != std::string::npos);
}

TEST_CASE("classify summarizes equivalence classes at the chosen horizon") {
    Run r = run({"classify", "--subset", "0101", "--subset", "0120",
                 "--n-max", "5", "--format", "json", "--reproducible"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["classes"].size() == 1);
    CHECK_FALSE(j.contains("generated_at"));

    r = run({"classify", "--subset", "0101", "--subset", "0120", "--n-max",
             "6", "--format", "json"});
    j = json::parse(r.out);
    CHECK(j["classes"].size() == 2);
    CHECK(j.contains("generated_at"));

    // Identical reproducible invocations are byte-identical.
    Run a = run({"classify", "--n-max", "7", "--format", "json",
                 "--reproducible"});
    Run b = run({"classify", "--n-max", "7", "--format", "json",
                 "--reproducible"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("table renders the summary rows") {
    Run r = run({"table", "--n-max", "6", "--format", "markdown"});
    CHECK(r.code == 0);
    CHECK(r.out.find("A000108") != std::string::npos);
    CHECK(r.out.find("New") != std::string::npos);
    CHECK(r.out.find("{0101}") != std::string::npos);

    r = run({"table", "--n-max", "6", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("members,series,oeis,enumeration") == 0);
}

TEST_CASE("verify cross-checks a single system") {
    Run r = run({"verify", "--system", "L2_0112_0120", "--n-max", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("6 checks, 0 failures") != std::string::npos);

    r = run({"verify", "--system", "NO_SUCH"});
    CHECK(r.code == 2);

    r = run({"verify"});
    CHECK(r.code == 2);
}

TEST_CASE("budget exhaustion surfaces as its own exit code") {
    // {0120} has no formula or tree, so auto falls through to enumeration.
    Run r = run({"count", "--avoid", "0120", "--n", "13",
                 "--budget-seconds", "0.000001"});
    CHECK(r.code == 4);
    CHECK(r.err.find("budget") != std::string::npos);
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"count", "--avoid", "0101"}).code == 2);   // missing --n
    CHECK(run({"count", "--avoid", "12", "--n", "3"}).code == 2);
    CHECK(run({"count", "--avoid", "0101", "--n", "0"}).code == 2);
    CHECK(run({"series", "--avoid", "0101", "--format", "yaml"}).code == 2);

    Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("count") != std::string::npos);
    CHECK(help.out.find("verify") != std::string::npos);

    Run sub_help = run({"series", "--help"});
    CHECK(sub_help.code == 0);
    CHECK(sub_help.out.find("--n-max") != std::string::npos);
}
