#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "ascentlab/core.hpp"
#include "ascentlab/errors.hpp"

using namespace ascentlab;

TEST_CASE("sequence parsing accepts digit and comma forms") {
    CHECK(Sequence::parse("0101").letters() == std::vector<int>{0, 1, 0, 1});
    CHECK(Sequence::parse("0,1,0,1").letters() ==
          std::vector<int>{0, 1, 0, 1});
    CHECK(Sequence::parse("0,1,2,10").letters() ==
          std::vector<int>{0, 1, 2, 10});
    CHECK(Sequence::parse("7").letters() == std::vector<int>{7});
}

TEST_CASE("sequence rendering round-trips through parse") {
    for (const char* text : {"0", "0101", "0120", "012345"}) {
        Sequence s = Sequence::parse(text);
        CHECK(s.str() == text);
        CHECK(Sequence::parse(s.str()) == s);
    }
    // Letters above 9 force the comma form.
    Sequence big({0, 1, 2, 10, 3});
    CHECK(big.str() == "0,1,2,10,3");
    CHECK(Sequence::parse(big.str()) == big);
}

TEST_CASE("sequence parsing rejects garbage") {
    CHECK_THROWS_AS(Sequence::parse("01a1"), InvalidSequenceError);
    CHECK_THROWS_AS(Sequence::parse("0,,1"), InvalidSequenceError);
    CHECK_THROWS_AS(Sequence::parse("0,-1"), InvalidSequenceError);
    // The empty word is a valid (empty) sequence; parse(str()) round-trips.
    CHECK(Sequence::parse("").empty());
}

TEST_CASE("reduction maps the i-th smallest letter to i-1") {
    CHECK(reduce(Sequence::parse("2,5,2,7")).str() == "0102");
    CHECK(reduce(Sequence::parse("3,1,3")).str() == "101");
    CHECK(reduce(Sequence::parse("0101")).str() == "0101");
    CHECK(reduce(Sequence::parse("9")).str() == "0");
    // Idempotent.
    Sequence w = Sequence::parse("4,0,4,7,2");
    CHECK(reduce(reduce(w).word()) == reduce(w));
    CHECK_THROWS_AS(reduce(Sequence()), EmptyWordError);
}

TEST_CASE("pattern construction insists on reduced words") {
    CHECK_NOTHROW(Pattern::parse("0101"));
    CHECK_NOTHROW(Pattern::parse("021"));  // reduced: all of 0,1,2 appear
    CHECK_THROWS_AS(Pattern::parse("12"), InvalidPatternError);
    CHECK_THROWS_AS(Pattern::parse("022"), InvalidPatternError);
    CHECK_THROWS_AS(Pattern::parse("1"), InvalidPatternError);
    CHECK_THROWS_AS(Pattern::parse(""), InvalidPatternError);
}

TEST_CASE("ascent count and ascent-sequence test") {
    CHECK(ascents(Sequence::parse("0101")) == 2);
    CHECK(ascents(Sequence::parse("0")) == 0);
    CHECK(ascents(Sequence::parse("0120")) == 2);
    CHECK(is_ascent_sequence(Sequence()));
    CHECK(is_ascent_sequence(Sequence::parse("0")));
    CHECK(is_ascent_sequence(Sequence::parse("0101")));
    CHECK(is_ascent_sequence(Sequence::parse("01013")));
    CHECK_FALSE(is_ascent_sequence(Sequence::parse("1")));
    CHECK_FALSE(is_ascent_sequence(Sequence::parse("02")));
    CHECK_FALSE(is_ascent_sequence(Sequence::parse("0103")));
}

TEST_CASE("restricted growth test") {
    CHECK(is_rgf(Sequence::parse("00120")));
    CHECK(is_rgf(Sequence::parse("0")));
    CHECK(is_rgf(Sequence()));
    CHECK_FALSE(is_rgf(Sequence::parse("02")));
    CHECK_FALSE(is_rgf(Sequence::parse("10")));
    // Every RGF is an ascent sequence but not conversely: 0101 then 3 is an
    // ascent sequence that skips 2.
    CHECK(is_ascent_sequence(Sequence::parse("01013")));
    CHECK_FALSE(is_rgf(Sequence::parse("01013")));
}

TEST_CASE("containment finds order-isomorphic subsequences") {
    Pattern p = Pattern::parse("0101");
    CHECK(contains(Sequence::parse("0101"), p));
    CHECK(contains(Sequence::parse("02302"), p));  // witness 0,2,0,2
    CHECK_FALSE(contains(Sequence::parse("0123"), p));
    CHECK_FALSE(contains(Sequence::parse("000111"), p));
    CHECK(contains(Sequence::parse("010"), Pattern::parse("010")));
    CHECK_FALSE(contains(Sequence::parse("010"), p));
}

TEST_CASE("witness indices are increasing and reduce to the pattern") {
    Sequence w = Sequence::parse("0120212");
    Pattern p = Pattern::parse("0101");
    auto occ = find_occurrence(w, p);
    REQUIRE(occ.has_value());
    REQUIRE(occ->size() == p.size());
    CHECK(std::is_sorted(occ->begin(), occ->end()));
    std::vector<int> picked;
    for (std::size_t i : *occ) picked.push_back(w[i]);
    CHECK(reduce(Sequence(picked)) == p);
    CHECK_FALSE(find_occurrence(Sequence::parse("0123"), p).has_value());
}

namespace {
// Reference matcher: try every subsequence.
bool contains_slow(const Sequence& w, const Pattern& p) {
    std::size_t n = w.size(), k = p.size();
    if (k > n || k == 0) return false;
    std::vector<char> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(k), 1);
    do {
        std::vector<int> picked;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask[i]) picked.push_back(w[i]);
        }
        if (reduce(Sequence(picked)) == p) return true;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return false;
}
}  // namespace

TEST_CASE("fast matcher agrees with the exhaustive one on small words") {
    std::vector<Pattern> patterns = {
        Pattern::parse("0101"), Pattern::parse("0102"),
        Pattern::parse("0112"), Pattern::parse("0120"),
        Pattern::parse("0121"), Pattern::parse("010"),
        Pattern::parse("021")};
    // All words of length <= 6 over {0,1,2}.
    for (int len = 1; len <= 6; ++len) {
        int total = 1;
        for (int i = 0; i < len; ++i) total *= 3;
        for (int code = 0; code < total; ++code) {
            std::vector<int> letters;
            int x = code;
            for (int i = 0; i < len; ++i) {
                letters.push_back(x % 3);
                x /= 3;
            }
            Sequence w(letters);
            for (const Pattern& p : patterns) {
                CAPTURE(w.str());
                CAPTURE(p.str());
                CHECK(contains(w, p) == contains_slow(w, p));
            }
        }
    }
}

TEST_CASE("pin-last matcher sees only occurrences ending at the last letter") {
    Pattern p = Pattern::parse("0101");
    CHECK(contains_ending_at_last(Sequence::parse("0101"), p));
    CHECK(contains_ending_at_last(Sequence::parse("01001"), p));
    // Contains 0101, but no occurrence ends at the final 2.
    CHECK(contains(Sequence::parse("01012"), p));
    CHECK_FALSE(contains_ending_at_last(Sequence::parse("01012"), p));
    CHECK_THROWS_AS(contains_ending_at_last(Sequence(), p), EmptyWordError);
}

TEST_CASE("valid extensions are exactly 0..1+ascents") {
    CHECK(valid_extensions(Sequence::parse("0")) == std::vector<int>{0, 1});
    CHECK(valid_extensions(Sequence::parse("01")) ==
          std::vector<int>{0, 1, 2});
    CHECK(valid_extensions(Sequence::parse("0101")) ==
          std::vector<int>{0, 1, 2, 3});
    CHECK_THROWS_AS(valid_extensions(Sequence::parse("02")),
                    InvalidSequenceError);
}

TEST_CASE("subpattern order among the catalog patterns") {
    Pattern p01012 = Pattern::parse("01012");
    CHECK(is_subpattern(Pattern::parse("0101"), p01012));
    CHECK(is_subpattern(Pattern::parse("0102"), p01012));
    CHECK(is_subpattern(Pattern::parse("0112"), p01012));
    CHECK_FALSE(is_subpattern(Pattern::parse("0120"), p01012));
    CHECK_FALSE(is_subpattern(Pattern::parse("0121"), p01012));
    CHECK(is_subpattern(Pattern::parse("01"), Pattern::parse("0101")));
}

TEST_CASE("pattern sets canonicalize order and reject duplicates") {
    PatternSet s = PatternSet::parse("0120,0101");
    CHECK(s.str() == "0101,0120");
    CHECK(s.size() == 2);
    CHECK(PatternSet::parse("0101,0101").size() == 1);
    CHECK(PatternSet::parse("[0,1,0,1],0120").str() == "0101,0120");
    CHECK(s.contains_pattern(Pattern::parse("0101")));
    CHECK_FALSE(s.contains_pattern(Pattern::parse("0121")));
    // Shorter patterns sort first regardless of lexicographic rank.
    CHECK(PatternSet::parse("0101,010").str() == "010,0101");
}

TEST_CASE("short forms substitute the RGF-equivalent length-3 patterns") {
    auto sf = [](const char* in) { return short_form(PatternSet::parse(in)); };
    REQUIRE(sf("0101").has_value());
    CHECK(sf("0101")->str() == "101");
    CHECK(sf("0102")->str() == "102");
    CHECK(sf("0101,0102")->str() == "101,102");
    CHECK(sf("0112,0121")->str() == "021,0112");
    CHECK(sf("0101,0120")->str() == "101,120");
    // Without an RGF-forcing member the rewrite is unsound.
    CHECK_FALSE(sf("0120").has_value());
    CHECK_FALSE(sf("0121").has_value());
    CHECK_FALSE(sf("0120,0121").has_value());
}
