#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <unistd.h>
#include <vector>

#include "ascentlab/core.hpp"
#include "ascentlab/enumerate.hpp"
#include "ascentlab/errors.hpp"
#include "ascentlab/oeis.hpp"

using namespace ascentlab;

namespace {

CountSeries series_of(std::vector<long> values) {
    CountSeries s;
    for (long v : values) s.values.emplace_back(v);
    return s;
}

std::vector<std::string> id_strings(const std::vector<OeisId>& ids) {
    std::vector<std::string> out;
    for (const OeisId& id : ids) out.push_back(id.str());
    return out;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ascentlab-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("ids are A followed by exactly six digits") {
    CHECK(OeisId("A000108").str() == "A000108");
    CHECK(OeisId::from_number(108).str() == "A000108");
    CHECK(OeisId::from_number(116703).str() == "A116703");
    CHECK_THROWS_AS(OeisId("A108"), Error);
    CHECK_THROWS_AS(OeisId("B000108"), Error);
    CHECK_THROWS_AS(OeisId("A00010X"), Error);
    CHECK_THROWS_AS(OeisId("A0001080"), Error);
    CHECK_THROWS_AS(OeisId::from_number(-1), Error);
    CHECK(OeisId("A000045") < OeisId("A000108"));
}

TEST_CASE("the bundle holds the twelve cited sequences with provenance") {
    const std::vector<BundledEntry>& entries = bundled_entries();
    CHECK(entries.size() == 12);
    std::set<std::string> ids;
    for (const BundledEntry& e : entries) {
        ids.insert(e.id.str());
        CHECK(e.terms.size() >= 10);
        CHECK_FALSE(e.note.empty());
    }
    const std::set<std::string> expected = {
        "A000108", "A007051", "A001519", "A005183", "A116703", "A116702",
        "A000325", "A116722", "A116725", "A050407", "A002522", "A022493"};
    CHECK(ids == expected);
}

TEST_CASE("local lookup requires five terms") {
    CHECK_THROWS_AS(lookup_local(series_of({1, 2, 5, 14})),
                    TooFewTermsError);
    CHECK_NOTHROW(lookup_local(series_of({1, 2, 5, 14, 42})));
}

TEST_CASE("local lookup matches contiguous runs regardless of offset") {
    // The toolkit series a(1..9) for {0101} sits inside A000108's terms.
    auto ids = id_strings(
        lookup_local(series_of({1, 2, 5, 14, 42, 132, 429, 1430, 4862})));
    CHECK(ids == std::vector<std::string>{"A000108"});
    // An interior window matches too.
    ids = id_strings(lookup_local(series_of({5, 14, 42, 132, 429})));
    CHECK(ids == std::vector<std::string>{"A000108"});
    // A shifted window that skips a term does not.
    ids = id_strings(lookup_local(series_of({5, 14, 42, 132, 430})));
    CHECK(ids.empty());
}

TEST_CASE("each identified avoidance series maps to exactly its citation") {
    auto one = [](std::vector<long> values) {
        return id_strings(lookup_local(series_of(std::move(values))));
    };
    using V = std::vector<std::string>;
    CHECK(one({1, 2, 5, 14, 42, 132, 429, 1430, 4862}) == V{"A000108"});
    CHECK(one({1, 2, 5, 14, 41, 122, 365, 1094, 3281}) == V{"A007051"});
    CHECK(one({1, 2, 5, 13, 34, 89, 233, 610, 1597}) == V{"A001519"});
    CHECK(one({1, 2, 5, 13, 33, 81, 193, 449, 1025}) == V{"A005183"});
    CHECK(one({1, 2, 5, 13, 33, 82, 202, 497, 1224}) == V{"A116703"});
    CHECK(one({1, 2, 5, 13, 32, 74, 163, 347, 722}) == V{"A116702"});
    CHECK(one({1, 2, 5, 12, 27, 58, 121, 248, 503}) == V{"A000325"});
    CHECK(one({1, 2, 5, 12, 25, 47, 82, 135, 212}) == V{"A116722"});
    CHECK(one({1, 2, 5, 12, 26, 52, 99, 184, 340}) == V{"A116725"});
    CHECK(one({1, 2, 5, 11, 21, 36, 57, 85, 121}) == V{"A050407"});
    CHECK(one({1, 2, 5, 10, 17, 26, 37, 50, 65}) == V{"A002522"});
    CHECK(one({1, 2, 5, 15, 53, 217, 1014, 5335, 31240}) == V{"A022493"});
    // The open rows are absent from the bundle.
    CHECK(one({1, 2, 5, 14, 42, 133, 443, 1552, 5721}).empty());
    CHECK(one({1, 2, 5, 14, 42, 133, 443, 1551, 5701}).empty());
    CHECK(one({1, 2, 5, 13, 34, 90, 244, 683, 1980}).empty());
    CHECK(one({1, 2, 5, 13, 31, 67, 134, 254, 466}).empty());
    CHECK(one({1, 2, 5, 11, 22, 42, 79, 149, 284}).empty());
}

TEST_CASE("cache directory resolution prefers explicit settings") {
    RemoteOptions opts;
    opts.cache_dir = "/tmp/ascentlab-explicit";
    CHECK(resolve_cache_dir(opts) ==
          std::filesystem::path("/tmp/ascentlab-explicit"));

    ::setenv("ASCENTLAB_OEIS_CACHE", "/tmp/ascentlab-env", 1);
    CHECK(resolve_cache_dir({}) == std::filesystem::path("/tmp/ascentlab-env"));
    // An explicit directory still wins over the environment.
    CHECK(resolve_cache_dir(opts) ==
          std::filesystem::path("/tmp/ascentlab-explicit"));
    ::unsetenv("ASCENTLAB_OEIS_CACHE");

    CHECK_FALSE(resolve_cache_dir({}).empty());
}

TEST_CASE("offline mode fails before any I/O") {
    RemoteOptions opts;
    opts.offline = true;
    CHECK_THROWS_AS(lookup_remote(series_of({1, 2, 3, 4, 5}), opts),
                    OfflineModeError);
}

TEST_CASE("a warm cache answers without the network") {
    TempDir dir;
    nlohmann::json record{
        {"query", "1,2,3,4,5"},
        {"fetched_at_unix", 0},
        {"body", nlohmann::json{{"results",
                                 {{{"number", 108}}, {{"number", 45}}}}}
                     .dump()}};
    std::ofstream(dir.path / "q_1,2,3,4,5.json") << record.dump();

    RemoteOptions opts;
    opts.cache_dir = dir.path.string();
    auto ids = id_strings(lookup_remote(series_of({1, 2, 3, 4, 5}), opts));
    CHECK(ids == std::vector<std::string>{"A000108", "A000045"});
}

TEST_CASE("corrupt cache entries are reported, not silently refetched") {
    TempDir dir;
    RemoteOptions opts;
    opts.cache_dir = dir.path.string();

    SUBCASE("not JSON at all") {
        std::ofstream(dir.path / "q_1,2,3,4,5.json") << "not json";
        CHECK_THROWS_AS(lookup_remote(series_of({1, 2, 3, 4, 5}), opts),
                        MalformedResponseError);
    }
    SUBCASE("missing the body field") {
        std::ofstream(dir.path / "q_1,2,3,4,5.json") << "{\"query\":\"x\"}";
        CHECK_THROWS_AS(lookup_remote(series_of({1, 2, 3, 4, 5}), opts),
                        MalformedResponseError);
    }
    SUBCASE("body that is not a search response") {
        nlohmann::json record{{"query", "1,2,3,4,5"},
                              {"fetched_at_unix", 0},
                              {"body", "<html>rate limited</html>"}};
        std::ofstream(dir.path / "q_1,2,3,4,5.json") << record.dump();
        CHECK_THROWS_AS(lookup_remote(series_of({1, 2, 3, 4, 5}), opts),
                        MalformedResponseError);
    }
}

TEST_CASE("search bodies with null results mean no matches") {
    TempDir dir;
    // oeis.org returns {"results": null} for zero hits.
    nlohmann::json record{
        {"query", "9,9,9,9,9"},
        {"fetched_at_unix", 0},
        {"body", "{\"results\": null, \"count\": 0}"}};
    std::ofstream(dir.path / "q_9,9,9,9,9.json") << record.dump();
    RemoteOptions opts;
    opts.cache_dir = dir.path.string();
    CHECK(lookup_remote(series_of({9, 9, 9, 9, 9}), opts).empty());
}
