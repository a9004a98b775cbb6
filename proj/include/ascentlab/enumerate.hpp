#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "ascentlab/core.hpp"

namespace ascentlab {

// n-indexed counting series starting at n = 1: values[i] = a_P(1 + i).
struct CountSeries {
    int start_n = 1;
    std::vector<Count> values;

    int max_n() const { return start_n + static_cast<int>(values.size()) - 1; }
    const Count& at_n(int n) const {
        return values.at(static_cast<std::size_t>(n - start_n));
    }
    auto operator<=>(const CountSeries&) const = default;
};

// Guard rails for the exponential enumerator. max_n caps the requested
// length; node_limit counts DFS node visits; wall_limit is elapsed seconds.
struct EnumerationBudget {
    int max_n = 14;
    std::optional<Count> node_limit;
    std::optional<std::chrono::duration<double>> wall_limit =
        std::chrono::seconds(60);

    static EnumerationBudget unlimited() {
        return {.max_n = 1 << 20,
                .node_limit = std::nullopt,
                .wall_limit = std::nullopt};
    }
};

// Exact |A_n(P)| by pruned depth-first extension: children are generated
// with valid_extensions in increasing letter order, and a prefix is pruned as
// soon as an occurrence of some p in P ends at its last letter (containment
// is monotone under extension, so nothing below can avoid P).
// threads > 1 splits the DFS over disjoint prefix subtrees; per-subtree
// counts are summed in prefix order, so results do not depend on scheduling.
Count count_avoiders(const PatternSet& P, int n,
                     const EnumerationBudget& budget = {}, int threads = 1);

// All members of A_n(P) in lexicographic order.
std::vector<Sequence> list_avoiders(const PatternSet& P, int n,
                                    const EnumerationBudget& budget = {},
                                    int threads = 1);

// [a_P(1), ..., a_P(n_max)] from one shared DFS pass that records counts at
// every depth. When the budget fires mid-pass, a bounded retry from n = 1
// upward establishes the largest fully completed n, reported in the error.
CountSeries count_series(const PatternSet& P, int n_max,
                         const EnumerationBudget& budget = {},
                         int threads = 1);

// |A_n(empty set)|, the n-th Fishburn number (OEIS A022493, offset-adjusted:
// this toolkit counts from n = 1). Dynamic programming over (ascents, last
// letter) states; cross-checked against the DFS in tests.
Count count_all_ascent_sequences(int n);

// Number of permutations of {1..n} avoiding the classical patterns 231 and
// 4123; the bridge class equinumerous to A_n({0101,0120}). Permutations are
// words of distinct letters, so the word matcher runs on the reduced
// patterns 120 and 3012.
Count count_perm_avoiders_231_4123(int n, int guard_limit = 9);

}  // namespace ascentlab
