#include "ascentlab/core.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace ascentlab {

// --- Sequence ---------------------------------------------------------------

Sequence::Sequence(std::vector<int> letters) : letters_(std::move(letters)) {
    for (int v : letters_)
        if (v < 0)
            throw InvalidSequenceError("negative letter " + std::to_string(v));
}

Sequence::Sequence(std::initializer_list<int> letters)
    : Sequence(std::vector<int>(letters)) {}

Sequence Sequence::parse(std::string_view text) {
    std::vector<int> out;
    if (text.empty()) return Sequence{};
    if (text.find(',') == std::string_view::npos) {
        out.reserve(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            if (c < '0' || c > '9')
                throw InvalidSequenceError("invalid character '" +
                                           std::string(1, c) +
                                           "' in sequence literal at position " +
                                           std::to_string(i + 1));
            out.push_back(c - '0');
        }
        return Sequence(std::move(out));
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(
            pos, comma == std::string_view::npos ? comma : comma - pos);
        int value = 0;
        auto [ptr, ec] =
            std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || value < 0)
            throw InvalidSequenceError("invalid letter '" + std::string(tok) +
                                       "' in sequence literal");
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return Sequence(std::move(out));
}

std::string Sequence::str() const {
    bool wide = std::any_of(letters_.begin(), letters_.end(),
                            [](int v) { return v > 9; });
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (wide && i) out += ',';
        out += std::to_string(letters_[i]);
    }
    return out;
}

// --- Pattern ----------------------------------------------------------------

Pattern::Pattern(const Sequence& word) {
    if (word.empty()) throw InvalidPatternError("a pattern must be nonempty");
    Pattern reduced = reduce(word);
    if (reduced.word() != word)
        throw InvalidPatternError("word " + word.str() +
                                  " is not reduced (its reduction is " +
                                  reduced.word().str() + ")");
    word_ = word;
}

Pattern Pattern::parse(std::string_view text) {
    try {
        return Pattern(Sequence::parse(text));
    } catch (const InvalidSequenceError& e) {
        throw InvalidPatternError(e.what());
    }
}

// --- PatternSet -------------------------------------------------------------

static bool pattern_canonical_less(const Pattern& a, const Pattern& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.word().letters() < b.word().letters();
}

PatternSet::PatternSet(std::vector<Pattern> patterns)
    : patterns_(std::move(patterns)) {
    std::sort(patterns_.begin(), patterns_.end(), pattern_canonical_less);
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()),
                    patterns_.end());
}

PatternSet::PatternSet(std::initializer_list<Pattern> patterns)
    : PatternSet(std::vector<Pattern>(patterns)) {}

PatternSet PatternSet::parse(std::string_view text) {
    std::vector<Pattern> pats;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::string_view tok;
        if (text[pos] == '[') {
            std::size_t close = text.find(']', pos);
            if (close == std::string_view::npos)
                throw InvalidPatternError("unterminated '[' in pattern list");
            tok = text.substr(pos + 1, close - pos - 1);
            pos = close + 1;
            if (pos < text.size()) {
                if (text[pos] != ',')
                    throw InvalidPatternError(
                        "expected ',' after ']' in pattern list");
                ++pos;
            }
        } else {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string_view::npos) {
                tok = text.substr(pos);
                pos = text.size();
            } else {
                tok = text.substr(pos, comma - pos);
                pos = comma + 1;
            }
        }
        if (tok.empty())
            throw InvalidPatternError("empty pattern in pattern list");
        pats.push_back(Pattern::parse(tok));
    }
    return PatternSet(std::move(pats));
}

std::string PatternSet::str() const {
    std::string out;
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
        if (i) out += ',';
        std::string p = patterns_[i].str();
        bool wide = p.find(',') != std::string::npos;
        if (wide) out += '[';
        out += p;
        if (wide) out += ']';
    }
    return out;
}

bool PatternSet::contains_pattern(const Pattern& p) const {
    return std::find(patterns_.begin(), patterns_.end(), p) != patterns_.end();
}

// --- word primitives --------------------------------------------------------

Pattern reduce(const Sequence& word) {
    if (word.empty()) throw EmptyWordError("cannot reduce the empty word");
    std::vector<int> sorted(word.letters());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out;
    out.reserve(word.size());
    for (int v : word.letters()) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
        out.push_back(static_cast<int>(it - sorted.begin()));
    }
    // Private raw path: a freshly reduced word is reduced by construction,
    // and Pattern's validating constructor would call back into reduce.
    Pattern p;
    p.word_ = Sequence(std::move(out));
    return p;
}

int ascents(const Sequence& word) {
    int count = 0;
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (word[i] < word[i + 1]) ++count;
    return count;
}

bool is_ascent_sequence(const Sequence& word) {
    if (word.empty()) return true;
    if (word[0] != 0) return false;
    int asc = 0;
    for (std::size_t i = 1; i < word.size(); ++i) {
        if (word[i] > 1 + asc) return false;
        if (word[i] > word[i - 1]) ++asc;
    }
    return true;
}

bool is_rgf(const Sequence& word) {
    int seen_max = -1;  // largest letter with all of 0..seen_max already seen
    for (std::size_t i = 0; i < word.size(); ++i) {
        int v = word[i];
        if (v > seen_max + 1) return false;
        if (v == seen_max + 1) seen_max = v;
    }
    return true;
}

namespace detail {

// DFS over index tuples, pruning on partial order-isomorphism. `assign[c]` is
// the word letter bound to pattern letter class c (-1 = unbound). `pin_last`
// forces the final pattern position onto the final word position.
namespace {

bool match_rec(const int* w, std::size_t n, const int* p, std::size_t k,
               std::size_t pi, std::size_t from, int* assign, int p_max,
               bool pin_last) {
    if (pi == k) return true;
    const bool last_pat = (pi == k - 1);
    std::size_t hi = n;  // exclusive upper bound for this pattern position
    std::size_t lo = from;
    if (pin_last) {
        // Reserve exactly enough room for the remaining pattern positions:
        // the last one must land on n-1.
        if (last_pat) {
            lo = n - 1;
        } else {
            hi = n - (k - pi) + 1;
        }
    }
    for (std::size_t j = lo; j < hi; ++j) {
        // Remaining positions must still fit to the right.
        if (!pin_last && n - j < k - pi) break;
        int v = w[j];
        int c = p[pi];
        int prev = assign[c];
        if (prev >= 0) {
            if (prev != v) continue;
        } else {
            bool ok = true;
            for (int d = 0; d <= p_max && ok; ++d) {
                if (assign[d] < 0 || d == c) continue;
                if (d < c && assign[d] >= v) ok = false;
                if (d > c && assign[d] <= v) ok = false;
            }
            // v must also be distinct from every bound class' value.
            if (!ok) continue;
            assign[c] = v;
        }
        if (match_rec(w, n, p, k, pi + 1, j + 1, assign, p_max, pin_last))
            return true;
        if (prev < 0) assign[c] = -1;
    }
    return false;
}

}  // namespace

bool contains_span(const int* w, std::size_t n, const int* p, std::size_t k,
                   bool pin_last) {
    if (k == 0 || k > n) return false;
    int p_max = 0;
    for (std::size_t i = 0; i < k; ++i) p_max = std::max(p_max, p[i]);
    if (p_max < 32) {
        std::array<int, 32> assign;
        assign.fill(-1);
        return match_rec(w, n, p, k, 0, 0, assign.data(), p_max, pin_last);
    }
    std::vector<int> assign(static_cast<std::size_t>(p_max) + 1, -1);
    return match_rec(w, n, p, k, 0, 0, assign.data(), p_max, pin_last);
}

}  // namespace detail

bool contains(const Sequence& word, const Pattern& p) {
    return detail::contains_span(word.letters().data(), word.size(),
                                 p.word().letters().data(), p.size(), false);
}

namespace {

// Witness search mirroring match_rec, first hit in lexicographic index order.
bool witness_rec(const Sequence& w, const Pattern& p, std::size_t pi,
                 std::size_t from, std::vector<int>& assign, int p_max,
                 std::vector<std::size_t>& picked) {
    if (pi == p.size()) return true;
    for (std::size_t j = from; j < w.size(); ++j) {
        if (w.size() - j < p.size() - pi) break;
        int v = w[j];
        int c = p[pi];
        int prev = assign[c];
        if (prev >= 0) {
            if (prev != v) continue;
        } else {
            bool ok = true;
            for (int d = 0; d <= p_max && ok; ++d) {
                if (assign[d] < 0 || d == c) continue;
                if (d < c && assign[d] >= v) ok = false;
                if (d > c && assign[d] <= v) ok = false;
            }
            if (!ok) continue;
            assign[c] = v;
        }
        picked.push_back(j);
        if (witness_rec(w, p, pi + 1, j + 1, assign, p_max, picked))
            return true;
        picked.pop_back();
        if (prev < 0) assign[c] = -1;
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_occurrence(const Sequence& word,
                                                        const Pattern& p) {
    if (p.size() > word.size()) return std::nullopt;
    int p_max = 0;
    for (std::size_t i = 0; i < p.size(); ++i) p_max = std::max(p_max, p[i]);
    std::vector<int> assign(static_cast<std::size_t>(p_max) + 1, -1);
    std::vector<std::size_t> picked;
    if (witness_rec(word, p, 0, 0, assign, p_max, picked)) return picked;
    return std::nullopt;
}

bool contains_ending_at_last(const Sequence& word, const Pattern& p) {
    if (word.empty())
        throw EmptyWordError("contains_ending_at_last needs a nonempty word");
    return detail::contains_span(word.letters().data(), word.size(),
                                 p.word().letters().data(), p.size(), true);
}

std::vector<int> valid_extensions(const Sequence& x) {
    if (!is_ascent_sequence(x))
        throw InvalidSequenceError("valid_extensions: " + x.str() +
                                   " is not an ascent sequence");
    if (x.empty()) return {0};
    int bound = 1 + ascents(x);
    std::vector<int> out(static_cast<std::size_t>(bound) + 1);
    for (int t = 0; t <= bound; ++t) out[static_cast<std::size_t>(t)] = t;
    return out;
}

bool is_subpattern(const Pattern& p, const Pattern& q) {
    return contains(q.word(), p);
}

std::optional<PatternSet> short_form(const PatternSet& P) {
    static const Pattern p0101 = Pattern::parse("0101");
    static const Pattern p0102 = Pattern::parse("0102");
    static const Pattern p0112 = Pattern::parse("0112");
    static const Pattern p0120 = Pattern::parse("0120");
    static const Pattern p0121 = Pattern::parse("0121");
    const bool rgf_forcing = P.contains_pattern(p0101) ||
                             P.contains_pattern(p0102) ||
                             P.contains_pattern(p0112);
    if (!rgf_forcing) return std::nullopt;
    std::vector<Pattern> out;
    for (const Pattern& p : P.patterns()) {
        if (p == p0101)
            out.push_back(Pattern::parse("101"));
        else if (p == p0102)
            out.push_back(Pattern::parse("102"));
        else if (p == p0120)
            out.push_back(Pattern::parse("120"));
        else if (p == p0121)
            out.push_back(Pattern::parse("021"));
        else
            out.push_back(p);
    }
    return PatternSet(std::move(out));
}

}  // namespace ascentlab
