#include "ascentlab/formulas.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace ascentlab {

namespace {

Count binom(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;  // negative upper index -> 0
    Count out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

Count pow2(long e) {
    if (e < 0) return 0;  // only reachable multiplied by zero; see N2POW
    Count out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return out;
}

Count pow_ui(unsigned long base, long e) {
    Count out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, static_cast<unsigned long>(e));
    return out;
}

struct FormulaInfo {
    ClosedFormId id;
    const char* name;
    const char* display;
    const char* members;  // semicolon-separated PatternSet literals
};

constexpr std::array<FormulaInfo, kClosedFormCount> kFormulas{{
    {ClosedFormId::CATALAN, "CATALAN", "C(2n,n)/(n+1)", "0101"},
    {ClosedFormId::POW3, "POW3", "(3^(n-1)+1)/2", "0102;0112"},
    {ClosedFormId::FIB_ODD, "FIB_ODD", "F(2n-1)", "0101,0102;0101,0121"},
    {ClosedFormId::N2POW, "N2POW", "(n-1)*2^(n-2)+1",
     "0101,0112;0102,0112;0112,0121;0102,0120"},
    {ClosedFormId::GF_0101_0120, "GF_0101_0120",
     "(1-x)^3/(1-4x+5x^2-3x^3)", "0101,0120"},
    {ClosedFormId::HALF3POW, "HALF3POW", "(3*2^n-n^2-n-2)/2", "0102,0121"},
    {ClosedFormId::POW_BINOM4, "POW_BINOM4", "2^(n-1)+C(n+1,4)", "0112,0120"},
    {ClosedFormId::POW2_MINUS_N, "POW2_MINUS_N", "2^n-n",
     "0101,0102,0112;0101,0102,0120;0101,0102,0121;0101,0112,0121;"
     "0101,0120,0121;0102,0120,0121"},
    {ClosedFormId::QUARTIC, "QUARTIC", "(n^4-6n^3+47n^2-114n+120)/24",
     "0101,0112,0120"},
    {ClosedFormId::POW_BINOM3, "POW_BINOM3", "2^(n-1)+C(n,3)",
     "0102,0112,0120;0102,0112,0121;0112,0120,0121"},
    {ClosedFormId::ONE_BINOM3, "ONE_BINOM3", "1+C(n+1,3)",
     "0101,0102,0112,0120;0101,0102,0112,0121;0101,0112,0120,0121"},
    {ClosedFormId::POW_BINOM2, "POW_BINOM2", "2^(n-1)+C(n-1,2)",
     "0101,0102,0120,0121;0102,0112,0120,0121"},
    {ClosedFormId::SQUARE_PLUS1, "SQUARE_PLUS1", "(n-1)^2+1",
     "0101,0102,0112,0120,0121"},
}};

const FormulaInfo& info(ClosedFormId id) {
    return kFormulas[static_cast<std::size_t>(id)];
}

std::vector<PatternSet> parse_members(const char* spec) {
    std::vector<PatternSet> out;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ';')) out.push_back(PatternSet::parse(item));
    return out;
}

}  // namespace

const std::vector<ClosedFormId>& all_closed_forms() {
    static const std::vector<ClosedFormId> ids = [] {
        std::vector<ClosedFormId> v;
        for (const auto& f : kFormulas) v.push_back(f.id);
        return v;
    }();
    return ids;
}

std::string formula_name(ClosedFormId id) { return info(id).name; }

std::optional<ClosedFormId> formula_from_name(const std::string& name) {
    for (const auto& f : kFormulas)
        if (name == f.name) return f.id;
    return std::nullopt;
}

std::string formula_display(ClosedFormId id) { return info(id).display; }

const std::vector<PatternSet>& formula_members(ClosedFormId id) {
    static const std::array<std::vector<PatternSet>, kClosedFormCount> all =
        [] {
            std::array<std::vector<PatternSet>, kClosedFormCount> out;
            for (std::size_t i = 0; i < kFormulas.size(); ++i)
                out[i] = parse_members(kFormulas[i].members);
            return out;
        }();
    return all[static_cast<std::size_t>(id)];
}

std::optional<ClosedFormId> formula_for(const PatternSet& P) {
    for (const auto& f : kFormulas)
        for (const PatternSet& member : formula_members(f.id))
            if (member == P) return f.id;
    return std::nullopt;
}

Count catalan(int n) {
    if (n < 0) throw std::invalid_argument("catalan: n must be >= 0");
    return binom(2L * n, n) / (n + 1);
}

Count fibonacci(int k) {
    if (k < 1) throw std::invalid_argument("fibonacci: k must be >= 1");
    Count out;
    mpz_fib_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
}

Count formula_value(ClosedFormId id, int n) {
    if (n < 1) throw std::invalid_argument("formula_value: n must be >= 1");
    const long ln = n;
    switch (id) {
        case ClosedFormId::CATALAN:
            return catalan(n);
        case ClosedFormId::POW3:
            return (pow_ui(3, ln - 1) + 1) / 2;
        case ClosedFormId::FIB_ODD:
            return fibonacci(2 * n - 1);
        case ClosedFormId::N2POW:
            // (n-1)*2^(n-2): zero multiplier at n = 1, so no 2^(-1) arises.
            return (n == 1 ? Count(0) : Count(ln - 1) * pow2(ln - 2)) + 1;
        case ClosedFormId::GF_0101_0120:
            return gf_coefficients(gf_0101_0120(), n).back();
        case ClosedFormId::HALF3POW:
            return (Count(3) * pow2(ln) - Count(ln) * ln - ln - 2) / 2;
        case ClosedFormId::POW_BINOM4:
            return pow2(ln - 1) + binom(ln + 1, 4);
        case ClosedFormId::POW2_MINUS_N:
            return pow2(ln) - ln;
        case ClosedFormId::QUARTIC: {
            if (n == 1) return 1;  // the printed series value; the quartic gives 2
            Count nn(ln);
            return (((nn * ln - 6 * ln) * ln + 47 * ln) * ln - 114 * ln + 120) /
                   24;
        }
        case ClosedFormId::POW_BINOM3:
            return pow2(ln - 1) + binom(ln, 3);
        case ClosedFormId::ONE_BINOM3:
            return 1 + binom(ln + 1, 3);
        case ClosedFormId::POW_BINOM2:
            return pow2(ln - 1) + binom(ln - 1, 2);
        case ClosedFormId::SQUARE_PLUS1:
            return Count(ln - 1) * (ln - 1) + 1;
    }
    throw std::invalid_argument("formula_value: unknown id");
}

// --- rational generating functions ------------------------------------------

RationalGF RationalGF::parse(const std::string& text) {
    auto coeffs = [&](const std::string& key) {
        auto pos = text.find(key + "=");
        if (pos == std::string::npos)
            throw Error("RationalGF: missing '" + key + "=' in \"" + text +
                        "\"");
        pos += key.size() + 1;
        auto end = text.find(' ', pos);
        std::string list = text.substr(
            pos, end == std::string::npos ? end : end - pos);
        std::vector<long> out;
        std::istringstream in(list);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            try {
                out.push_back(std::stol(tok));
            } catch (const std::exception&) {
                throw Error("RationalGF: bad coefficient '" + tok + "'");
            }
        }
        if (out.empty()) throw Error("RationalGF: empty coefficient list");
        return out;
    };
    RationalGF gf{coeffs("numer"), coeffs("denom")};
    if (gf.denominator[0] == 0)
        throw Error("RationalGF: denominator constant term must be nonzero");
    return gf;
}

std::string RationalGF::str() const {
    auto join = [](const std::vector<long>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(v[i]);
        }
        return out;
    };
    return "numer=" + join(numerator) + " denom=" + join(denominator);
}

const RationalGF& gf_0101_0120() {
    static const RationalGF gf{{1, -3, 3, -1}, {1, -4, 5, -3}};
    return gf;
}

std::vector<Count> gf_coefficients(const RationalGF& gf, int n_max) {
    if (n_max < 0)
        throw std::invalid_argument("gf_coefficients: n_max must be >= 0");
    if (gf.denominator.empty() || gf.denominator[0] == 0)
        throw Error("gf_coefficients: denominator constant term must be nonzero");
    const long d0 = gf.denominator[0];
    std::vector<Count> c;
    c.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        // d0*c_n = numer_n - sum_{i>=1} denom_i * c_{n-i}
        Count rhs = n < static_cast<int>(gf.numerator.size())
                        ? Count(gf.numerator[static_cast<std::size_t>(n)])
                        : Count(0);
        for (std::size_t i = 1; i < gf.denominator.size() &&
                                static_cast<int>(i) <= n;
             ++i)
            rhs -= Count(gf.denominator[i]) * c[static_cast<std::size_t>(n) - i];
        if (d0 != 1 && d0 != -1) {
            Count q, r;
            mpz_tdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), rhs.get_mpz_t(),
                           static_cast<unsigned long>(d0 > 0 ? d0 : -d0));
            if (r != 0)
                throw NonUnitConstantError(
                    "gf_coefficients: coefficient of x^" + std::to_string(n) +
                    " is not an integer (constant term " + std::to_string(d0) +
                    " does not divide exactly)");
        }
        c.push_back(rhs / d0);
    }
    return c;
}

// --- summary table ----------------------------------------------------------

std::vector<Table1Row> table1(int n_max, const EnumerationBudget& budget) {
    if (n_max < 1) throw std::invalid_argument("table1: n_max must be >= 1");
    struct RowSpec {
        std::optional<ClosedFormId> formula;
        const char* oeis;
        const char* members;  // printed order, semicolon-separated
    };
    // Summary-table row order: singles, pairs, triples, quadruples, quintuple.
    static const std::vector<RowSpec> kRows = {
        {ClosedFormId::CATALAN, "A000108", "0101"},
        {ClosedFormId::POW3, "A007051", "0102;0112"},
        {std::nullopt, "New", "0120"},
        {std::nullopt, "New", "0121"},
        {ClosedFormId::FIB_ODD, "A001519", "0101,0102;0101,0121"},
        {ClosedFormId::N2POW, "A005183",
         "0101,0112;0102,0112;0112,0121;0102,0120"},
        {ClosedFormId::GF_0101_0120, "A116703", "0101,0120"},
        {ClosedFormId::HALF3POW, "A116702", "0102,0121"},
        {ClosedFormId::POW_BINOM4, "New", "0112,0120"},
        {std::nullopt, "New", "0120,0121"},
        {ClosedFormId::POW2_MINUS_N, "A000325",
         "0101,0102,0112;0101,0102,0120;0101,0102,0121;0101,0112,0121;"
         "0101,0120,0121;0102,0120,0121"},
        {ClosedFormId::QUARTIC, "A116722", "0101,0112,0120"},
        {ClosedFormId::POW_BINOM3, "A116725",
         "0102,0112,0120;0102,0112,0121;0112,0120,0121"},
        {ClosedFormId::ONE_BINOM3, "A050407",
         "0101,0102,0112,0120;0101,0102,0112,0121;0101,0112,0120,0121"},
        {ClosedFormId::POW_BINOM2, "New",
         "0101,0102,0120,0121;0102,0112,0120,0121"},
        {ClosedFormId::SQUARE_PLUS1, "A002522", "0101,0102,0112,0120,0121"},
    };
    std::vector<Table1Row> out;
    for (const RowSpec& spec : kRows) {
        Table1Row row;
        row.members = parse_members(spec.members);
        row.oeis = spec.oeis;
        row.formula = spec.formula;
        row.open = !spec.formula.has_value();
        row.enumeration = spec.formula ? formula_display(*spec.formula) : "?";
        if (spec.formula) {
            for (int n = 1; n <= n_max; ++n)
                row.series.push_back(formula_value(*spec.formula, n));
        } else {
            CountSeries s = count_series(row.members.front(), n_max, budget);
            row.series = std::move(s.values);
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace ascentlab
