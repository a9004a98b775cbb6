#pragma once

#include <string>
#include <vector>

#include "ascentlab/core.hpp"
#include "ascentlab/enumerate.hpp"

namespace ascentlab {

// One equivalence class at the chosen horizon: subsets whose count series
// agree for every n <= n_max. Equality at a finite horizon is evidence, not
// proof; reports always state the horizon.
struct WilfClass {
    std::vector<PatternSet> members;  // canonical order
    CountSeries series;
};

struct WilfClassification {
    int n_max = 0;
    std::vector<WilfClass> classes;
    std::string basis;  // "oracle" or "formula"
};

// First index where two classes' series differ, with both values.
struct SeparationWitness {
    std::size_t class_a = 0;
    std::size_t class_b = 0;
    int n = 0;
    Count value_a;
    Count value_b;
};

// Groups subsets by exact equality of count_series up to n_max. Classes are
// ordered by series, lexicographically descending, then by canonical first
// member; members within a class are in canonical order.
WilfClassification classify(const std::vector<PatternSet>& subsets, int n_max,
                            const EnumerationBudget& budget = {},
                            int threads = 1);

// All 31 nonempty subsets of {0101, 0102, 0112, 0120, 0121}, in canonical
// order (size, then member patterns).
const std::vector<PatternSet>& all_five_pattern_subsets();

// The sixteen groupings of the summary table, in table order: 4 classes of
// singletons, 6 of pairs, 3 of triples, 2 of quadruples, 1 quintuple.
const std::vector<std::vector<PatternSet>>& expected_classes();

// Pairwise first-separation witnesses between all classes.
std::vector<SeparationWitness> separation_witnesses(
    const WilfClassification& c);

// Renderings. JSON is a single document with horizon, classes, and
// witnesses; markdown mirrors the summary-table layout.
std::string to_json(const WilfClassification& c);
std::string to_markdown(const WilfClassification& c);

}  // namespace ascentlab
