#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ascentlab/errors.hpp"

namespace ascentlab {

// Exact nonnegative integer; all counting in the toolkit is arbitrary
// precision, never floating point.
using Count = mpz_class;

// A finite word of small nonnegative integers. Immutable after construction.
class Sequence {
  public:
    Sequence() = default;
    explicit Sequence(std::vector<int> letters);
    Sequence(std::initializer_list<int> letters);

    // Accepts either a bare digit string ("0101024", letters <= 9 only) or
    // comma-separated decimal letters ("0,1,0,1,0,2,4").
    static Sequence parse(std::string_view text);

    // Digit form when all letters <= 9, comma form otherwise; parse(str())
    // round-trips.
    std::string str() const;

    const std::vector<int>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int operator[](std::size_t i) const { return letters_[i]; }

    auto operator<=>(const Sequence&) const = default;

  private:
    std::vector<int> letters_;
};

// A reduced nonempty word. Construction validates; inputs that are not their
// own reduction are rejected (so "avoid 0102" can never mean "avoid 0213").
class Pattern {
  public:
    explicit Pattern(const Sequence& word);
    static Pattern parse(std::string_view text);

    const Sequence& word() const { return word_; }
    std::string str() const { return word_.str(); }
    std::size_t size() const { return word_.size(); }
    int operator[](std::size_t i) const { return word_[i]; }

    auto operator<=>(const Pattern&) const = default;

  private:
    Pattern() = default;
    Sequence word_;
    friend Pattern reduce(const Sequence&);
};

// Duplicate-free pattern collection in canonical (length, then lexicographic)
// order; the order is stable across runs.
class PatternSet {
  public:
    PatternSet() = default;
    explicit PatternSet(std::vector<Pattern> patterns);
    PatternSet(std::initializer_list<Pattern> patterns);

    // Comma-separated pattern literals; a bracketed group "[0,1,0,10]" is one
    // pattern in comma-letter form. Example: "0101,0112" or "[0,1,0,1],0112".
    static PatternSet parse(std::string_view text);

    std::string str() const;

    const std::vector<Pattern>& patterns() const { return patterns_; }
    std::size_t size() const { return patterns_.size(); }
    bool empty() const { return patterns_.empty(); }
    const Pattern& operator[](std::size_t i) const { return patterns_[i]; }
    bool contains_pattern(const Pattern& p) const;

    auto operator<=>(const PatternSet&) const = default;

  private:
    std::vector<Pattern> patterns_;
};

// --- word primitives --------------------------------------------------------

// Order-isomorphic reduction: the i-th smallest distinct letter becomes i-1.
// Idempotent. Throws EmptyWordError on the empty word.
Pattern reduce(const Sequence& word);

// Number of indices j with word[j] < word[j+1].
int ascents(const Sequence& word);

// True iff word is empty, or word[0] = 0 and every later letter t at position
// i satisfies t <= 1 + ascents(prefix of length i).
bool is_ascent_sequence(const Sequence& word);

// Restricted growth function test: for each k >= 1 appearing in the word, the
// first occurrence of k is preceded by an occurrence of k-1.
bool is_rgf(const Sequence& word);

// True iff some subsequence of word reduces to p.
bool contains(const Sequence& word, const Pattern& p);

// Witness variant: the lexicographically first occurrence as 0-based indices,
// or absent when word avoids p.
std::optional<std::vector<std::size_t>> find_occurrence(const Sequence& word,
                                                        const Pattern& p);

// True iff some occurrence of p uses the last position of word as its final
// index. Hot path of the enumerator: testing only the appended letter is
// sound because any older occurrence already pruned an earlier prefix.
// Throws EmptyWordError on the empty word.
bool contains_ending_at_last(const Sequence& word, const Pattern& p);

// Letters t such that x . t is again an ascent sequence: {0, ..., 1+asc(x)}.
// Throws InvalidSequenceError when x is not an ascent sequence.
std::vector<int> valid_extensions(const Sequence& x);

// True iff q contains p (containment as in `contains`).
bool is_subpattern(const Pattern& p, const Pattern& q);

// When P contains at least one of {0101, 0102, 0112} every avoider is an RGF,
// and on RGFs the length-4 patterns 0101/0102/0120/0121 are equivalent to
// 101/102/120/021. Returns P with those substitutions (0112 kept verbatim),
// or absent when the substitution is not sound for P.
std::optional<PatternSet> short_form(const PatternSet& P);

// --- internal low-level matchers (shared with the enumerator) ---------------
namespace detail {
// Containment test on a raw letter window, optionally pinning the occurrence
// to end at the window's last position.
bool contains_span(const int* w, std::size_t n, const int* p, std::size_t k,
                   bool pin_last);
}  // namespace detail

}  // namespace ascentlab
