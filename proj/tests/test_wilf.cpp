#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ascentlab/core.hpp"
#include "ascentlab/wilf.hpp"

using namespace ascentlab;

TEST_CASE("the subset universe has all 31 nonempty subsets in stable order") {
    const std::vector<PatternSet>& all = all_five_pattern_subsets();
    REQUIRE(all.size() == 31);
    std::set<std::string> seen;
    for (const PatternSet& P : all) seen.insert(P.str());
    CHECK(seen.size() == 31);
    CHECK(all.front().str() == "0101");     // singletons first
    CHECK(all.back().size() == 5);          // the full set last
    for (std::size_t i = 1; i < all.size(); ++i) {
        CHECK(all[i - 1].size() <= all[i].size());
    }
}

TEST_CASE("classification at the published horizon finds sixteen classes") {
    WilfClassification cls = classify(all_five_pattern_subsets(), 10);
    CHECK(cls.n_max == 10);
    REQUIRE(cls.classes.size() == 16);

    // Class sizes in order (series sorted lexicographically descending).
    std::vector<std::size_t> sizes;
    for (const WilfClass& w : cls.classes) sizes.push_back(w.members.size());
    CHECK(sizes == std::vector<std::size_t>{1, 1, 1, 2, 1, 2, 1, 4, 1, 1, 6,
                                            3, 1, 2, 3, 1});

    // Largest series first: the open singleton {0120}; the full set last.
    CHECK(cls.classes.front().members.front().str() == "0120");
    CHECK(cls.classes.back().members.front().str() ==
          "0101,0102,0112,0120,0121");

    // The memberships agree with the published groupings, order aside.
    std::set<std::set<std::string>> got, want;
    for (const WilfClass& w : cls.classes) {
        std::set<std::string> g;
        for (const PatternSet& m : w.members) g.insert(m.str());
        got.insert(g);
    }
    for (const std::vector<PatternSet>& grouping : expected_classes()) {
        std::set<std::string> g;
        for (const PatternSet& m : grouping) g.insert(m.str());
        want.insert(g);
    }
    CHECK(got == want);

    // Each class's series really is the series of each member's first terms.
    for (const WilfClass& w : cls.classes) {
        CHECK(w.series.values.size() == 10);
        CHECK(std::is_sorted(w.members.begin(), w.members.end()));
    }
}

TEST_CASE("expected groupings cover the universe exactly once") {
    const auto& groups = expected_classes();
    REQUIRE(groups.size() == 16);
    std::set<std::string> seen;
    std::size_t total = 0;
    for (const auto& grouping : groups) {
        for (const PatternSet& m : grouping) {
            ++total;
            CHECK(seen.insert(m.str()).second);
        }
    }
    CHECK(total == 31);
}

TEST_CASE("separation witnesses pinpoint the first differing length") {
    WilfClassification cls = classify(all_five_pattern_subsets(), 10);
    std::vector<SeparationWitness> ws = separation_witnesses(cls);
    CHECK(ws.size() == 16 * 15 / 2);

    auto class_of = [&](const std::string& member) {
        for (std::size_t i = 0; i < cls.classes.size(); ++i) {
            for (const PatternSet& m : cls.classes[i].members) {
                if (m.str() == member) return i;
            }
        }
        REQUIRE(false);
        return std::size_t{0};
    };
    auto witness = [&](const std::string& a, const std::string& b) {
        std::size_t ia = class_of(a), ib = class_of(b);
        for (const SeparationWitness& w : ws) {
            if ((w.class_a == ia && w.class_b == ib) ||
                (w.class_a == ib && w.class_b == ia)) {
                return w;
            }
        }
        REQUIRE(false);
        return SeparationWitness{};
    };

    SeparationWitness cat = witness("0101", "0120");
    CHECK(cat.n == 6);
    CHECK(std::min(cat.value_a, cat.value_b) == 132);
    CHECK(std::max(cat.value_a, cat.value_b) == 133);

    SeparationWitness open_pair = witness("0120", "0121");
    CHECK(open_pair.n == 8);
    CHECK(std::min(open_pair.value_a, open_pair.value_b) == 1551);
    CHECK(std::max(open_pair.value_a, open_pair.value_b) == 1552);

    for (const SeparationWitness& w : ws) {
        CHECK(w.value_a != w.value_b);
        CHECK(w.n >= 1);
        CHECK(w.n <= 10);
    }
}

TEST_CASE("a short horizon merges classes that later separate") {
    std::vector<PatternSet> pair = {PatternSet::parse("0101"),
                                    PatternSet::parse("0120")};
    CHECK(classify(pair, 5).classes.size() == 1);  // identical through n=5
    CHECK(classify(pair, 6).classes.size() == 2);  // 132 vs 133 at n=6
}

TEST_CASE("json rendering carries the horizon, classes, and witnesses") {
    WilfClassification cls = classify(all_five_pattern_subsets(), 8);
    nlohmann::json j = nlohmann::json::parse(to_json(cls));
    CHECK(j["n_max"] == 8);
    CHECK(j["basis"] == "oracle");
    REQUIRE(j.contains("classes"));
    CHECK(j["classes"].size() == 16);
    CHECK(j["classes"][0]["members"].size() >= 1);
    CHECK(j["classes"][0]["series"].is_array());
    CHECK(j["classes"][0]["series"][0] == "1");
    CHECK(j.contains("separations"));
    CHECK(j["separations"].size() == 16 * 15 / 2);
    // The report says out loud that horizon equality is only evidence.
    CHECK(j.contains("caveat"));

    std::string md = to_markdown(cls);
    CHECK(md.find("0101") != std::string::npos);
    CHECK(md.find("|") != std::string::npos);
}

TEST_CASE("classification of a restricted family keeps only those subsets") {
    std::vector<PatternSet> some = {PatternSet::parse("0101,0102"),
                                    PatternSet::parse("0101,0121"),
                                    PatternSet::parse("0101,0112")};
    WilfClassification cls = classify(some, 9);
    REQUIRE(cls.classes.size() == 2);
    // Fibonacci pair class sorts above the 2^n-ish class.
    CHECK(cls.classes[0].members.size() == 2);
    CHECK(cls.classes[1].members.size() == 1);
    CHECK(cls.classes[1].members[0].str() == "0101,0112");
}
