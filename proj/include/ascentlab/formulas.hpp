#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ascentlab/core.hpp"
#include "ascentlab/enumerate.hpp"

namespace ascentlab {

// Closed forms (and one rational GF) covering every enumerated avoidance
// class of the five length-4 patterns. Expressions quote the n >= 2 forms;
// each id evaluates to 1 at n = 1 (QUARTIC by an explicit special case, the
// rest because the expression already gives 1 there).
enum class ClosedFormId {
    CATALAN,       // C(2n,n)/(n+1)
    POW3,          // (3^(n-1)+1)/2
    FIB_ODD,       // F(2n-1)
    N2POW,         // (n-1)*2^(n-2)+1
    GF_0101_0120,  // [x^n] (1-x)^3/(1-4x+5x^2-3x^3)
    HALF3POW,      // (3*2^n-n^2-n-2)/2
    POW_BINOM4,    // 2^(n-1)+C(n+1,4)
    POW2_MINUS_N,  // 2^n-n
    QUARTIC,       // (n^4-6n^3+47n^2-114n+120)/24, n >= 2; value 1 at n = 1
    POW_BINOM3,    // 2^(n-1)+C(n,3)
    ONE_BINOM3,    // 1+C(n+1,3)
    POW_BINOM2,    // 2^(n-1)+C(n-1,2)
    SQUARE_PLUS1,  // (n-1)^2+1
};

constexpr int kClosedFormCount = 13;

// All ids, in declaration order.
const std::vector<ClosedFormId>& all_closed_forms();

// Stable identifier string, e.g. "CATALAN".
std::string formula_name(ClosedFormId id);
std::optional<ClosedFormId> formula_from_name(const std::string& name);

// Human-readable expression, e.g. "(3^(n-1)+1)/2".
std::string formula_display(ClosedFormId id);

// The avoidance classes (over the five length-4 patterns) counted by this
// formula; every member has the same series.
const std::vector<PatternSet>& formula_members(ClosedFormId id);

// The formula counting a_P(n) for this subset, if any (the three open
// classes have none).
std::optional<ClosedFormId> formula_for(const PatternSet& P);

// Exact evaluation; n >= 1.
Count formula_value(ClosedFormId id, int n);

// Ordinary generating function with integer coefficient lists in ascending
// powers; denominator constant term must be nonzero.
struct RationalGF {
    std::vector<long> numerator;
    std::vector<long> denominator;

    // Accepts "numer=1,-3,3,-1 denom=1,-4,5,-3".
    static RationalGF parse(const std::string& text);
    std::string str() const;
};

// The {0101,0120} series generating function (1-x)^3/(1-4x+5x^2-3x^3).
const RationalGF& gf_0101_0120();

// Power-series coefficients c_0..c_n_max by the exact linear recurrence the
// denominator induces; throws NonUnitConstantError when a coefficient fails
// to divide exactly by the constant term.
std::vector<Count> gf_coefficients(const RationalGF& gf, int n_max);

// Catalan numbers, C_0 = 1.
Count catalan(int n);

// Fibonacci under F_1 = F_2 = 1; k >= 1.
Count fibonacci(int k);

// One row of the summary table: one Wilf class of the five-pattern universe.
struct Table1Row {
    std::vector<PatternSet> members;     // printed order
    std::vector<Count> series;           // n = 1..n_max
    std::string oeis;                    // "A000108" etc., or "New"
    std::string enumeration;             // formula rendering, or "?"
    std::optional<ClosedFormId> formula; // absent for the open classes
    bool open = false;
};

// The sixteen classes in summary-table order. Series come from the formula
// where one exists and from the oracle for the three open classes; the
// budget only constrains the oracle rows.
std::vector<Table1Row> table1(int n_max,
                              const EnumerationBudget& budget = {});

}  // namespace ascentlab
