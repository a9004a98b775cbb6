#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ascentlab/core.hpp"
#include "ascentlab/enumerate.hpp"

namespace ascentlab {

// A generating-tree node label: a tag plus an optional integer parameter.
// Within one system a tag is either always parameterless or always
// parameterized.
struct Label {
    std::string tag;
    std::optional<long> param;

    std::string str() const;  // "(01)" or "(0,3)"
    auto operator<=>(const Label&) const = default;
};

// Successor parameter as an affine expression c*m + b in the left-hand
// parameter m (c is 0 or 1).
struct AffineExpr {
    long coeff_m = 0;
    long offset = 0;

    long eval(long m) const { return coeff_m * m + offset; }
    std::string str() const;
};

// One successor slot on a rule's right-hand side. Plain: parameterless label.
// Single: one parameterized label. Range: the labels (tag, lo..hi), empty
// when lo > hi (so "(1,0..m-1)" contributes nothing at m = 0).
struct SuccessorTemplate {
    enum class Kind { Plain, Single, Range };
    Kind kind = Kind::Plain;
    std::string tag;
    AffineExpr single;
    AffineExpr lo, hi;

    std::string str() const;
};

// One succession rule. A constant left parameter ("(0,0) -> ...") takes
// precedence over the generic rule for the same tag ("(0,m) -> ...").
struct Rule {
    std::string tag;
    std::optional<long> lhs_param;  // nullopt = parameterless LHS
    bool lhs_generic = false;       // "(tag,m)" form
    std::vector<SuccessorTemplate> successors;

    std::string str() const;
};

// A labeled succession-rule system annotated with the pattern set whose
// avoiders it generates, level 1 being the single sequence "0".
class RuleSystem {
  public:
    RuleSystem(std::string name, PatternSet avoids, Label root,
               std::vector<Rule> rules, std::string derivation_note = "");

    const std::string& name() const { return name_; }
    const PatternSet& avoids() const { return avoids_; }
    const Label& root() const { return root_; }
    const std::vector<Rule>& rules() const { return rules_; }
    bool finite_alphabet() const { return finite_; }

    // Nonempty for systems obtained by deleting labels from a parent system;
    // records the parent and the removed labels.
    const std::string& derivation_note() const { return derivation_note_; }

    // Expands the applicable rule for `label`. Throws UndefinedSuccessorError
    // when no rule applies or an expansion yields a negative parameter.
    std::vector<Label> successors(const Label& label) const;

    // Serializes in the rule-file format; parse_rules round-trips.
    std::string to_rule_text() const;

  private:
    std::string name_;
    PatternSet avoids_;
    Label root_;
    std::vector<Rule> rules_;
    bool finite_ = true;
    std::string derivation_note_;
};

// Per-level census of the generating tree.
struct LevelProfile {
    int n = 0;
    std::map<Label, Count> per_label;
    Count total = 0;
};

// Matrix form of a finite-alphabet system: profile(n) = root_vector *
// matrix^(n-1), labels listed in first-appearance (breadth-first) order.
struct TransferMatrix {
    std::vector<Label> labels;
    std::vector<std::vector<long>> matrix;  // matrix[i][j]: i -> j multiplicity
    std::vector<long> root_vector;

    // Per-label counts at level n (n >= 1) by repeated exact multiplication.
    std::vector<Count> profile(int n) const;
};

// Tree total vs oracle count, level by level.
struct VerificationRow {
    int n = 0;
    Count tree_total;
    Count oracle_count;
    bool equal = false;
};

struct VerificationReport {
    std::string system;
    std::vector<VerificationRow> rows;
    bool all_equal = false;
};

// --- engine operations ------------------------------------------------------

// Profiles for levels 1..n_max by iterating the successor map on per-label
// counts. Exact arithmetic throughout.
std::vector<LevelProfile> level_counts(const RuleSystem& system, int n_max);

// Throws NotFiniteError for parameterized systems.
TransferMatrix transfer_matrix(const RuleSystem& system);

// Compares level totals against the brute-force oracle for the annotated
// pattern set.
VerificationReport verify_system(const RuleSystem& system, int n_max,
                                 const EnumerationBudget& budget = {});

// --- rule files -------------------------------------------------------------

// Parses the line-oriented rule-file format:
//   system <name>
//   avoids <pattern,...>
//   root <label>
//   <label> -> <label> <label> ...
// Labels: "(tag)" or "(tag,<param>)"; successor parameters are affine in m
// ("m", "m+1", "m-1", constants) or the range shorthand "lo..hi" as in
// "(1,0..m-1)". '#' starts a comment. Errors carry 1-based line and column.
RuleSystem parse_rules(const std::string& text);
RuleSystem parse_rules_file(const std::string& path);

// --- catalog ----------------------------------------------------------------

// The twelve bundled systems, keyed by name:
//   L2_101_102, L2_101_021              (parameterized pair systems)
//   L2_0121_0112, L2_0112_0120          (finite pair systems)
//   L3_0101_0112_0120, L3_0102_0112_0120
//   L3_0112_0120_0121                   (= L2_0112_0120 minus 0121-labels)
//   L4_0101_0102_0112_0120, L4_0101_0112_0120_0121
//                                       (= L3_0101_0112_0120 minus 0102/0121)
//   L4_0102_0112_0120_0121              (= L3_0102_0112_0120 minus 0121)
//   L4_0101_0102_0120_0121
//   L5_all                              (= L4_0101_0112_0120_0121 minus 0102)
const std::map<std::string, RuleSystem>& catalog();

// Deletes every label whose tag, read as a word, contains `p`, along with all
// branches into the deleted labels. The deletion list lands in the
// derivation note of the returned system.
RuleSystem remove_pattern(const RuleSystem& base, const Pattern& p,
                          const std::string& new_name,
                          const PatternSet& new_avoids);

}  // namespace ascentlab
