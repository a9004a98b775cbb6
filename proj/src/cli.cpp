#include "ascentlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ascentlab/core.hpp"
#include "ascentlab/enumerate.hpp"
#include "ascentlab/errors.hpp"
#include "ascentlab/formulas.hpp"
#include "ascentlab/gentree.hpp"
#include "ascentlab/oeis.hpp"
#include "ascentlab/wilf.hpp"

namespace ascentlab {
namespace {

using nlohmann::json;

enum class Format { Plain, Json, Csv, Markdown };

Format parse_format(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    if (name == "markdown") return Format::Markdown;
    return Format::Plain;
}

std::string cs(const Count& c) { return c.get_str(); }

template <class T, class F>
std::string join(const std::vector<T>& items, const char* sep, F&& render) {
    std::string text;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) text += sep;
        text += render(items[i]);
    }
    return text;
}

std::string join_counts(const std::vector<Count>& values,
                        const char* sep = ",") {
    return join(values, sep, [](const Count& c) { return cs(c); });
}

json counts_json(const std::vector<Count>& values) {
    json a = json::array();
    for (const Count& c : values) a.push_back(cs(c));
    return a;
}

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Options shared by every subcommand.
struct Common {
    std::string format = "plain";
    bool offline = false;
    bool reproducible = false;
    double budget_seconds = 60.0;
    int threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"plain", "json", "csv", "markdown"}))
        ->capture_default_str();
    cmd->add_flag("--offline", c.offline,
                  "Never touch the network (remote lookups fail fast)");
    cmd->add_flag("--reproducible", c.reproducible,
                  "Omit the generated_at timestamp from JSON reports");
    cmd->add_option("--budget-seconds", c.budget_seconds,
                    "Wall-clock budget for brute-force enumeration "
                    "(<= 0 means unlimited)")
        ->capture_default_str();
    cmd->add_option("--threads", c.threads, "Worker threads for enumeration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

EnumerationBudget make_budget(const Common& c, int n_needed) {
    EnumerationBudget b;
    b.max_n = std::max(b.max_n, n_needed);
    if (c.budget_seconds > 0) {
        b.wall_limit = std::chrono::duration<double>(c.budget_seconds);
    } else {
        b.wall_limit = std::nullopt;
    }
    return b;
}

const RuleSystem* system_for(const PatternSet& P) {
    for (const auto& [name, sys] : catalog()) {
        if (sys.avoids() == P) return &sys;
    }
    return nullptr;
}

void emit_json(std::ostream& out, json j, const Common& c, bool stamped) {
    if (stamped && !c.reproducible) j["generated_at"] = utc_now();
    out << j.dump(2) << "\n";
}

// "0101;0112" style cell content, safe inside unquoted CSV.
std::string csv_members(const std::vector<PatternSet>& members) {
    return join(members, " = ",
                [](const PatternSet& p) { return p.str(); });
}

// --- count / series ---------------------------------------------------------

struct MethodValues {
    std::optional<Count> formula;
    std::optional<Count> tree;
    std::optional<Count> oracle;
};

std::vector<Count> series_by_formula(ClosedFormId id, int n_max) {
    std::vector<Count> values;
    values.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) values.push_back(formula_value(id, n));
    return values;
}

std::vector<Count> series_by_tree(const RuleSystem& sys, int n_max) {
    std::vector<Count> values;
    values.reserve(static_cast<std::size_t>(n_max));
    for (const LevelProfile& lvl : level_counts(sys, n_max)) {
        values.push_back(lvl.total);
    }
    return values;
}

// Resolves --method for one subset. Returns the method actually used;
// exits with code 3 (via NotFiniteError-like handling in the caller) is not
// used here -- unsupported combinations return nullopt and the caller
// reports them.
struct Resolved {
    std::string method;
    std::vector<Count> values;
};

std::optional<Resolved> resolve_series(const PatternSet& P,
                                       const std::string& method, int n_max,
                                       const Common& c, std::string* why) {
    std::optional<ClosedFormId> f = formula_for(P);
    const RuleSystem* t = system_for(P);
    std::string pick = method;
    if (pick == "auto") {
        pick = f ? "formula" : (t ? "tree" : "oracle");
    }
    if (pick == "formula") {
        if (!f) {
            *why = "no closed form is known for {" + P.str() + "}";
            return std::nullopt;
        }
        return Resolved{"formula", series_by_formula(*f, n_max)};
    }
    if (pick == "tree") {
        if (!t) {
            *why = "no succession rule is cataloged for {" + P.str() + "}";
            return std::nullopt;
        }
        return Resolved{"tree", series_by_tree(*t, n_max)};
    }
    CountSeries s = count_series(P, n_max, make_budget(c, n_max), c.threads);
    return Resolved{"oracle", std::move(s.values)};
}

int run_count(const std::string& avoid, int n, const std::string& method,
              bool all_methods, const Common& c, std::ostream& out,
              std::ostream& err) {
    PatternSet P = PatternSet::parse(avoid);
    Format fmt = parse_format(c.format);

    if (all_methods) {
        MethodValues mv;
        if (auto f = formula_for(P)) mv.formula = formula_value(*f, n);
        if (const RuleSystem* t = system_for(P)) {
            mv.tree = series_by_tree(*t, n).back();
        }
        mv.oracle = count_avoiders(P, n, make_budget(c, n), c.threads);
        std::vector<std::pair<std::string, Count>> rows;
        if (mv.formula) rows.emplace_back("formula", *mv.formula);
        if (mv.tree) rows.emplace_back("tree", *mv.tree);
        rows.emplace_back("oracle", *mv.oracle);
        bool agree = std::all_of(rows.begin(), rows.end(), [&](auto& r) {
            return r.second == rows.front().second;
        });
        switch (fmt) {
            case Format::Json: {
                json j{{"command", "count"},
                       {"avoid", P.str()},
                       {"n", n},
                       {"agreement", agree}};
                for (auto& [name, value] : rows) j["values"][name] = cs(value);
                emit_json(out, j, c, false);
                break;
            }
            case Format::Csv:
                out << "method,value\n";
                for (auto& [name, value] : rows) {
                    out << name << "," << cs(value) << "\n";
                }
                break;
            case Format::Markdown:
                out << "| method | value |\n|---|---|\n";
                for (auto& [name, value] : rows) {
                    out << "| " << name << " | " << cs(value) << " |\n";
                }
                out << "\nagreement: " << (agree ? "yes" : "NO") << "\n";
                break;
            case Format::Plain:
                for (auto& [name, value] : rows) {
                    out << name << ": " << cs(value) << "\n";
                }
                out << "agreement: " << (agree ? "yes" : "NO") << "\n";
                break;
        }
        return agree ? 0 : 1;
    }

    std::string why;
    auto r = resolve_series(P, method, n, c, &why);
    if (!r) {
        err << "error: " << why << "\n";
        return 3;
    }
    const Count& value = r->values.back();
    switch (fmt) {
        case Format::Json:
            emit_json(out,
                      json{{"command", "count"},
                           {"avoid", P.str()},
                           {"n", n},
                           {"method", r->method},
                           {"value", cs(value)}},
                      c, false);
            break;
        case Format::Csv:
            out << "avoid,n,method,value\n"
                << P.str() << "," << n << "," << r->method << "," << cs(value)
                << "\n";
            break;
        case Format::Markdown:
            out << "| avoid | n | method | value |\n|---|---|---|---|\n| "
                << P.str() << " | " << n << " | " << r->method << " | "
                << cs(value) << " |\n";
            break;
        case Format::Plain:
            out << cs(value) << "\n";
            break;
    }
    return 0;
}

int run_series(const std::string& avoid, int n_max, const std::string& method,
               const Common& c, std::ostream& out, std::ostream& err) {
    PatternSet P = PatternSet::parse(avoid);
    std::string why;
    auto r = resolve_series(P, method, n_max, c, &why);
    if (!r) {
        err << "error: " << why << "\n";
        return 3;
    }
    switch (parse_format(c.format)) {
        case Format::Json:
            emit_json(out,
                      json{{"command", "series"},
                           {"avoid", P.str()},
                           {"n_max", n_max},
                           {"start_n", 1},
                           {"method", r->method},
                           {"values", counts_json(r->values)}},
                      c, false);
            break;
        case Format::Csv:
            out << "n,value\n";
            for (std::size_t i = 0; i < r->values.size(); ++i) {
                out << (i + 1) << "," << cs(r->values[i]) << "\n";
            }
            break;
        case Format::Markdown:
            out << "| n | a(n) |\n|---|---|\n";
            for (std::size_t i = 0; i < r->values.size(); ++i) {
                out << "| " << (i + 1) << " | " << cs(r->values[i]) << " |\n";
            }
            break;
        case Format::Plain:
            out << join_counts(r->values) << "\n";
            break;
    }
    return 0;
}

int run_list(const std::string& avoid, int n, const Common& c,
             std::ostream& out) {
    PatternSet P = PatternSet::parse(avoid);
    std::vector<Sequence> members =
        list_avoiders(P, n, make_budget(c, n), c.threads);
    switch (parse_format(c.format)) {
        case Format::Json: {
            json a = json::array();
            for (const Sequence& s : members) a.push_back(s.str());
            emit_json(out,
                      json{{"command", "list"},
                           {"avoid", P.str()},
                           {"n", n},
                           {"count", members.size()},
                           {"sequences", a}},
                      c, false);
            break;
        }
        case Format::Csv:
            out << "index,sequence\n";
            for (std::size_t i = 0; i < members.size(); ++i) {
                out << (i + 1) << "," << members[i].str() << "\n";
            }
            break;
        case Format::Markdown:
            out << "| index | sequence |\n|---|---|\n";
            for (std::size_t i = 0; i < members.size(); ++i) {
                out << "| " << (i + 1) << " | " << members[i].str() << " |\n";
            }
            break;
        case Format::Plain:
            for (const Sequence& s : members) out << s.str() << "\n";
            break;
    }
    return 0;
}

// --- tree -------------------------------------------------------------------

int run_tree(const std::string& system_name, const std::string& rules_path,
             int n_max, bool per_label, bool want_matrix, bool show_rules,
             const Common& c, std::ostream& out, std::ostream& err) {
    std::optional<RuleSystem> parsed;
    const RuleSystem* sys = nullptr;
    if (!rules_path.empty()) {
        parsed = parse_rules_file(rules_path);
        sys = &*parsed;
    } else {
        const auto& cat = catalog();
        auto it = cat.find(system_name);
        if (it == cat.end()) {
            err << "error: unknown system '" << system_name
                << "'; cataloged systems:";
            for (const auto& [name, s] : cat) err << " " << name;
            err << "\n";
            return 2;
        }
        sys = &it->second;
    }

    std::vector<LevelProfile> levels = level_counts(*sys, n_max);
    std::optional<TransferMatrix> tm;
    if (want_matrix) tm = transfer_matrix(*sys);  // NotFiniteError -> exit 3

    switch (parse_format(c.format)) {
        case Format::Json: {
            json j{{"command", "tree"},
                   {"system", sys->name()},
                   {"avoids", sys->avoids().str()},
                   {"root", sys->root().str()},
                   {"finite_alphabet", sys->finite_alphabet()}};
            if (!sys->derivation_note().empty()) {
                j["derivation"] = sys->derivation_note();
            }
            json lv = json::array();
            for (const LevelProfile& l : levels) {
                json e{{"n", l.n}, {"total", cs(l.total)}};
                if (per_label) {
                    json pl = json::object();
                    for (const auto& [label, count] : l.per_label) {
                        pl[label.str()] = cs(count);
                    }
                    e["per_label"] = pl;
                }
                lv.push_back(e);
            }
            j["levels"] = lv;
            if (tm) {
                json labels = json::array();
                for (const Label& l : tm->labels) labels.push_back(l.str());
                j["matrix"] = json{{"labels", labels},
                                   {"rows", tm->matrix},
                                   {"root_vector", tm->root_vector}};
            }
            if (show_rules) j["rules"] = sys->to_rule_text();
            emit_json(out, j, c, false);
            break;
        }
        case Format::Csv:
            if (per_label) {
                out << "n,label,count\n";
                for (const LevelProfile& l : levels) {
                    for (const auto& [label, count] : l.per_label) {
                        out << l.n << "," << label.str() << "," << cs(count)
                            << "\n";
                    }
                }
            } else {
                out << "n,total\n";
                for (const LevelProfile& l : levels) {
                    out << l.n << "," << cs(l.total) << "\n";
                }
            }
            break;
        case Format::Markdown:
            out << "| n | total |\n|---|---|\n";
            for (const LevelProfile& l : levels) {
                out << "| " << l.n << " | " << cs(l.total) << " |\n";
            }
            break;
        case Format::Plain: {
            out << "system " << sys->name() << " (avoids "
                << sys->avoids().str() << ")\n";
            if (show_rules) out << sys->to_rule_text();
            for (const LevelProfile& l : levels) {
                out << "n=" << l.n << " total=" << cs(l.total);
                if (per_label) {
                    for (const auto& [label, count] : l.per_label) {
                        out << " " << label.str() << "=" << cs(count);
                    }
                }
                out << "\n";
            }
            if (tm) {
                out << "labels:";
                for (const Label& l : tm->labels) out << " " << l.str();
                out << "\nroot_vector:";
                for (long v : tm->root_vector) out << " " << v;
                out << "\n";
                for (std::size_t i = 0; i < tm->labels.size(); ++i) {
                    out << "row " << tm->labels[i].str() << ":";
                    for (long v : tm->matrix[i]) out << " " << v;
                    out << "\n";
                }
            }
            break;
        }
    }
    return 0;
}

// --- gf ---------------------------------------------------------------------

int run_gf(const std::string& numer, const std::string& denom, int n_max,
           const Common& c, std::ostream& out) {
    RationalGF gf = (numer.empty() && denom.empty())
                        ? gf_0101_0120()
                        : RationalGF::parse("numer=" + numer +
                                            " denom=" + denom);
    std::vector<Count> coeffs = gf_coefficients(gf, n_max);
    switch (parse_format(c.format)) {
        case Format::Json:
            emit_json(out,
                      json{{"command", "gf"},
                           {"gf", gf.str()},
                           {"n_max", n_max},
                           {"coefficients", counts_json(coeffs)}},
                      c, false);
            break;
        case Format::Csv:
            out << "k,coefficient\n";
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                out << k << "," << cs(coeffs[k]) << "\n";
            }
            break;
        case Format::Markdown:
            out << "| k | c_k |\n|---|---|\n";
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                out << "| " << k << " | " << cs(coeffs[k]) << " |\n";
            }
            break;
        case Format::Plain:
            out << join_counts(coeffs) << "\n";
            break;
    }
    return 0;
}

// --- oeis -------------------------------------------------------------------

int run_oeis(const std::string& terms_arg, const std::string& avoid, int n_max,
             bool remote, const std::string& cache_dir, const Common& c,
             std::ostream& out) {
    CountSeries series;
    if (!terms_arg.empty()) {
        std::stringstream ss(terms_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            // mpz_class rejects garbage with std::invalid_argument -> exit 2.
            series.values.emplace_back(tok);
        }
    } else {
        PatternSet P = PatternSet::parse(avoid);
        series = count_series(P, n_max, make_budget(c, n_max), c.threads);
    }

    std::vector<OeisId> ids;
    std::string source;
    if (remote) {
        RemoteOptions opts;
        opts.offline = c.offline;
        opts.cache_dir = cache_dir;
        ids = lookup_remote(series, opts);
        source = "remote";
    } else {
        ids = lookup_local(series);
        source = "local";
    }

    switch (parse_format(c.format)) {
        case Format::Json: {
            json a = json::array();
            for (const OeisId& id : ids) a.push_back(id.str());
            emit_json(out,
                      json{{"command", "oeis"},
                           {"query", counts_json(series.values)},
                           {"source", source},
                           {"ids", a}},
                      c, false);
            break;
        }
        case Format::Csv:
            out << "id\n";
            for (const OeisId& id : ids) out << id.str() << "\n";
            break;
        case Format::Markdown:
            out << "| id |\n|---|\n";
            for (const OeisId& id : ids) out << "| " << id.str() << " |\n";
            break;
        case Format::Plain:
            for (const OeisId& id : ids) out << id.str() << "\n";
            break;
    }
    return 0;
}

// --- classify / table -------------------------------------------------------

int run_classify(const std::vector<std::string>& subset_args, int n_max,
                 const Common& c, std::ostream& out) {
    std::vector<PatternSet> subsets;
    if (subset_args.empty()) {
        subsets = all_five_pattern_subsets();
    } else {
        for (const std::string& s : subset_args) {
            subsets.push_back(PatternSet::parse(s));
        }
    }
    WilfClassification cls =
        classify(subsets, n_max, make_budget(c, n_max), c.threads);

    switch (parse_format(c.format)) {
        case Format::Json:
            emit_json(out, json::parse(to_json(cls)), c, true);
            break;
        case Format::Markdown:
            out << to_markdown(cls);
            break;
        case Format::Csv:
            out << "class,members,series\n";
            for (std::size_t i = 0; i < cls.classes.size(); ++i) {
                const WilfClass& w = cls.classes[i];
                out << (i + 1) << "," << csv_members(w.members) << ","
                    << join_counts(w.series.values, ";") << "\n";
            }
            break;
        case Format::Plain:
            out << "Wilf classes at n_max=" << cls.n_max << " ("
                << cls.classes.size() << " classes; horizon evidence, not "
                << "proof)\n";
            for (std::size_t i = 0; i < cls.classes.size(); ++i) {
                const WilfClass& w = cls.classes[i];
                out << "class " << (i + 1) << ": ";
                out << join(w.members, "  ", [](const PatternSet& p) {
                    return "{" + p.str() + "}";
                });
                out << " | " << join_counts(w.series.values) << "\n";
            }
            break;
    }
    return 0;
}

int run_table(int n_max, const Common& c, std::ostream& out) {
    std::vector<Table1Row> rows = table1(n_max, make_budget(c, n_max));
    Format fmt = parse_format(c.format);
    switch (fmt) {
        case Format::Json: {
            json a = json::array();
            for (const Table1Row& r : rows) {
                json members = json::array();
                for (const PatternSet& m : r.members)
                    members.push_back(m.str());
                a.push_back(json{{"members", members},
                                 {"series", counts_json(r.series)},
                                 {"oeis", r.oeis},
                                 {"enumeration", r.enumeration},
                                 {"open", r.open}});
            }
            emit_json(out, json{{"command", "table"}, {"n_max", n_max},
                                {"rows", a}},
                      c, true);
            break;
        }
        case Format::Csv:
            out << "members,series,oeis,enumeration\n";
            for (const Table1Row& r : rows) {
                out << csv_members(r.members) << ","
                    << join_counts(r.series, ";") << "," << r.oeis << ","
                    << r.enumeration << "\n";
            }
            break;
        case Format::Markdown:
        case Format::Plain:
            out << "| patterns | a(1).." << "a(" << n_max
                << ") | OEIS | enumeration |\n|---|---|---|---|\n";
            for (const Table1Row& r : rows) {
                out << "| "
                    << join(r.members, " = ",
                            [](const PatternSet& p) {
                                return "{" + p.str() + "}";
                            })
                    << " | " << join_counts(r.series, ", ") << " | " << r.oeis
                    << " | " << r.enumeration << " |\n";
            }
            break;
    }
    return 0;
}

// --- verify -----------------------------------------------------------------

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

void check_series_equal(std::vector<Check>& checks, const std::string& name,
                        const std::vector<Count>& got,
                        const std::vector<Count>& want) {
    Check ck{name, true, ""};
    std::size_t m = std::min(got.size(), want.size());
    for (std::size_t i = 0; i < m; ++i) {
        if (got[i] != want[i]) {
            ck.ok = false;
            ck.detail = "first mismatch at n=" + std::to_string(i + 1) +
                        ": " + cs(got[i]) + " vs " + cs(want[i]);
            break;
        }
    }
    checks.push_back(std::move(ck));
}

std::vector<Check> full_verification(int horizon, const Common& c) {
    std::vector<Check> checks;
    EnumerationBudget budget = make_budget(c, std::max(horizon, 30));

    // Every cataloged succession rule against the oracle and against the
    // closed form for its annotated pattern set.
    for (const auto& [name, sys] : catalog()) {
        std::vector<Count> tree = series_by_tree(sys, horizon);
        CountSeries oracle =
            count_series(sys.avoids(), horizon, budget, c.threads);
        check_series_equal(checks, "tree " + name + " = oracle (n<=" +
                           std::to_string(horizon) + ")",
                           tree, oracle.values);
        if (auto f = formula_for(sys.avoids())) {
            check_series_equal(checks,
                               "tree " + name + " = " + formula_name(*f) +
                               " (n<=30)",
                               series_by_tree(sys, 30),
                               series_by_formula(*f, 30));
        }
    }

    // Every closed form against the oracle, for every member subset.
    for (ClosedFormId id : all_closed_forms()) {
        std::vector<Count> formula = series_by_formula(id, horizon);
        for (const PatternSet& P : formula_members(id)) {
            CountSeries oracle = count_series(P, horizon, budget, c.threads);
            check_series_equal(checks,
                               formula_name(id) + " = oracle {" + P.str() +
                               "} (n<=" + std::to_string(horizon) + ")",
                               formula, oracle.values);
        }
    }

    // Generating function: coefficients, and the induced linear recurrence.
    {
        std::vector<Count> coeffs = gf_coefficients(gf_0101_0120(), 30);
        Check rec{"gf recurrence c_n = 4c_(n-1) - 5c_(n-2) + 3c_(n-3)", true,
                  ""};
        // Valid past the numerator degree (3).
        for (std::size_t n = 4; n < coeffs.size(); ++n) {
            if (coeffs[n] != 4 * coeffs[n - 1] - 5 * coeffs[n - 2] +
                                 3 * coeffs[n - 3]) {
                rec.ok = false;
                rec.detail = "fails at n=" + std::to_string(n);
                break;
            }
        }
        checks.push_back(std::move(rec));
    }

    // Permutation bridge: |S_n(231, 4123)| equals the {0101,0120} count.
    {
        int h = std::min(horizon, 8);
        std::vector<Count> perms, avoiders;
        for (int n = 1; n <= h; ++n) {
            perms.push_back(count_perm_avoiders_231_4123(n));
            avoiders.push_back(formula_value(ClosedFormId::GF_0101_0120, n));
        }
        check_series_equal(checks,
                           "perm bridge |S_n(231,4123)| = a_{0101,0120}(n) "
                           "(n<=" + std::to_string(h) + ")",
                           perms, avoiders);
    }

    // Unrestricted ascent sequences against the bundled Fishburn terms.
    {
        const BundledEntry* fishburn = nullptr;
        for (const BundledEntry& e : bundled_entries()) {
            if (e.id.str() == "A022493") fishburn = &e;
        }
        Check ck{"ascent-sequence totals = Fishburn numbers", true, ""};
        if (!fishburn) {
            ck.ok = false;
            ck.detail = "bundle is missing A022493";
        } else {
            int h = std::min(horizon,
                             static_cast<int>(fishburn->terms.size()) - 1);
            for (int n = 1; n <= h; ++n) {
                if (count_all_ascent_sequences(n) !=
                    fishburn->terms[static_cast<std::size_t>(n)]) {
                    ck.ok = false;
                    ck.detail = "mismatch at n=" + std::to_string(n);
                    break;
                }
            }
        }
        checks.push_back(std::move(ck));
    }

    // The equivalence-class partition of all 31 subsets.
    {
        int h = std::max(horizon, 8);  // separations need n >= 8
        WilfClassification cls =
            classify(all_five_pattern_subsets(), h, budget, c.threads);
        std::set<std::vector<PatternSet>> got, want;
        for (const WilfClass& w : cls.classes) got.insert(w.members);
        for (const auto& grouping : expected_classes()) {
            std::vector<PatternSet> members = grouping;
            std::sort(members.begin(), members.end());
            want.insert(members);
        }
        Check ck{"classification partition (16 classes, n_max=" +
                 std::to_string(h) + ")", got == want, ""};
        if (!ck.ok) {
            ck.detail = "got " + std::to_string(got.size()) +
                        " classes, expected " + std::to_string(want.size());
        }
        checks.push_back(std::move(ck));
    }

    // Short forms count the same avoiders wherever the rewrite is sound.
    {
        Check ck{"short-form rewrites preserve counts (n<=7)", true, ""};
        for (const PatternSet& P : all_five_pattern_subsets()) {
            std::optional<PatternSet> Q = short_form(P);
            if (!Q) continue;
            for (int n = 1; n <= 7 && ck.ok; ++n) {
                if (count_avoiders(P, n, budget) !=
                    count_avoiders(*Q, n, budget)) {
                    ck.ok = false;
                    ck.detail = "{" + P.str() + "} vs {" + Q->str() +
                                "} at n=" + std::to_string(n);
                }
            }
        }
        checks.push_back(std::move(ck));
    }

    return checks;
}

int emit_checks(const std::vector<Check>& checks, const std::string& scope,
                const Common& c, std::ostream& out) {
    std::size_t failures = 0;
    for (const Check& ck : checks) {
        if (!ck.ok) ++failures;
    }
    switch (parse_format(c.format)) {
        case Format::Json: {
            json a = json::array();
            for (const Check& ck : checks) {
                json e{{"name", ck.name}, {"ok", ck.ok}};
                if (!ck.detail.empty()) e["detail"] = ck.detail;
                a.push_back(e);
            }
            emit_json(out,
                      json{{"command", "verify"},
                           {"scope", scope},
                           {"checks", a},
                           {"failures", failures},
                           {"all_ok", failures == 0}},
                      c, true);
            break;
        }
        case Format::Csv:
            out << "check,ok,detail\n";
            for (const Check& ck : checks) {
                out << ck.name << "," << (ck.ok ? "yes" : "no") << ","
                    << ck.detail << "\n";
            }
            break;
        case Format::Markdown:
            out << "| check | ok | detail |\n|---|---|---|\n";
            for (const Check& ck : checks) {
                out << "| " << ck.name << " | " << (ck.ok ? "yes" : "NO")
                    << " | " << ck.detail << " |\n";
            }
            break;
        case Format::Plain:
            for (const Check& ck : checks) {
                if (ck.ok) {
                    out << "ok " << ck.name << "\n";
                } else {
                    out << "FAIL " << ck.name << ": " << ck.detail << "\n";
                }
            }
            out << checks.size() << " checks, " << failures << " failure"
                << (failures == 1 ? "" : "s") << "\n";
            break;
    }
    return failures == 0 ? 0 : 1;
}

int run_verify(const std::string& system_name, const std::string& rules_path,
               bool full, int n_max, const Common& c, std::ostream& out,
               std::ostream& err) {
    if (full) {
        return emit_checks(full_verification(n_max, c), "full", c, out);
    }

    std::optional<RuleSystem> parsed;
    const RuleSystem* sys = nullptr;
    if (!rules_path.empty()) {
        parsed = parse_rules_file(rules_path);
        sys = &*parsed;
    } else {
        const auto& cat = catalog();
        auto it = cat.find(system_name);
        if (it == cat.end()) {
            err << "error: unknown system '" << system_name << "'\n";
            return 2;
        }
        sys = &it->second;
    }
    VerificationReport report =
        verify_system(*sys, n_max, make_budget(c, n_max));
    std::vector<Check> checks;
    for (const VerificationRow& row : report.rows) {
        checks.push_back(
            Check{"n=" + std::to_string(row.n) + " tree=" +
                      cs(row.tree_total) + " oracle=" + cs(row.oracle_count),
                  row.equal,
                  row.equal ? "" : "totals differ"});
    }
    return emit_checks(checks, report.system, c, out);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"Pattern-avoidance toolkit for ascent sequences"};
    app.name("ascentlab");
    app.set_version_flag("--version", "ascentlab 1.0.0");
    app.require_subcommand(1);

    // count
    Common count_common;
    std::string count_avoid, count_method = "auto";
    int count_n = 1;
    bool count_all_methods = false;
    CLI::App* cmd_count =
        app.add_subcommand("count", "Count avoiders of a pattern set at one "
                                    "length");
    cmd_count->add_option("--avoid", count_avoid,
                          "Pattern set, e.g. 0101 or 0101,0120")
        ->required();
    cmd_count->add_option("--n", count_n, "Sequence length")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_count->add_option("--method", count_method,
                          "auto prefers formula, then tree, then oracle")
        ->check(CLI::IsMember({"auto", "formula", "tree", "oracle"}))
        ->capture_default_str();
    cmd_count->add_flag("--all-methods", count_all_methods,
                        "Run every applicable method and report agreement");
    add_common(cmd_count, count_common);

    // series
    Common series_common;
    std::string series_avoid, series_method = "oracle";
    int series_n_max = 9;
    CLI::App* cmd_series =
        app.add_subcommand("series", "Counting series a_P(1..n_max)");
    cmd_series->add_option("--avoid", series_avoid, "Pattern set")->required();
    cmd_series->add_option("--n-max", series_n_max, "Largest length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_series->add_option("--method", series_method,
                           "oracle (default), formula, tree, or auto")
        ->check(CLI::IsMember({"auto", "formula", "tree", "oracle"}))
        ->capture_default_str();
    add_common(cmd_series, series_common);

    // list
    Common list_common;
    std::string list_avoid;
    int list_n = 1;
    CLI::App* cmd_list =
        app.add_subcommand("list", "List all avoiders of one length in "
                                   "lexicographic order");
    cmd_list->add_option("--avoid", list_avoid, "Pattern set")->required();
    cmd_list->add_option("--n", list_n, "Sequence length")
        ->required()
        ->check(CLI::PositiveNumber);
    add_common(cmd_list, list_common);

    // tree
    Common tree_common;
    std::string tree_system, tree_rules;
    int tree_n_max = 10;
    bool tree_per_label = false, tree_matrix = false, tree_show_rules = false;
    CLI::App* cmd_tree =
        app.add_subcommand("tree", "Expand a succession-rule system level by "
                                   "level");
    CLI::Option* tree_system_opt =
        cmd_tree->add_option("--system", tree_system, "Cataloged system name");
    cmd_tree->add_option("--rules", tree_rules, "Rule file to parse instead")
        ->excludes(tree_system_opt);
    cmd_tree->add_option("--n-max", tree_n_max, "Deepest level")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_tree->add_flag("--per-label", tree_per_label,
                       "Break counts down by label");
    cmd_tree->add_flag("--matrix", tree_matrix,
                       "Include the transfer matrix (finite systems only)");
    cmd_tree->add_flag("--show-rules", tree_show_rules,
                       "Echo the succession rules");
    add_common(cmd_tree, tree_common);

    // gf
    Common gf_common;
    std::string gf_numer, gf_denom;
    int gf_n_max = 8;
    CLI::App* cmd_gf =
        app.add_subcommand("gf", "Power-series coefficients of a rational "
                                 "generating function");
    CLI::Option* gf_numer_opt = cmd_gf->add_option(
        "--numer", gf_numer, "Numerator coefficients, e.g. 1,-3,3,-1");
    CLI::Option* gf_denom_opt = cmd_gf->add_option(
        "--denom", gf_denom, "Denominator coefficients, e.g. 1,-4,5,-3");
    gf_numer_opt->needs(gf_denom_opt);
    gf_denom_opt->needs(gf_numer_opt);
    cmd_gf->add_option("--n-max", gf_n_max, "Highest power (c_0..c_n_max)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_common(cmd_gf, gf_common);

    // oeis
    Common oeis_common;
    std::string oeis_terms, oeis_avoid, oeis_cache_dir;
    int oeis_n_max = 9;
    bool oeis_remote = false;
    CLI::App* cmd_oeis =
        app.add_subcommand("oeis", "Identify a series against bundled or "
                                   "remote OEIS data");
    CLI::Option* oeis_terms_opt = cmd_oeis->add_option(
        "--terms", oeis_terms, "Comma-separated terms to look up");
    CLI::Option* oeis_avoid_opt = cmd_oeis->add_option(
        "--avoid", oeis_avoid, "Enumerate this pattern set instead");
    oeis_terms_opt->excludes(oeis_avoid_opt);
    cmd_oeis->add_option("--n-max", oeis_n_max,
                         "Terms to enumerate with --avoid")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_oeis->add_flag("--remote", oeis_remote,
                       "Query oeis.org (disk-cached) instead of the bundle");
    cmd_oeis->add_option("--cache-dir", oeis_cache_dir,
                         "Override the response cache directory");
    add_common(cmd_oeis, oeis_common);

    // classify
    Common classify_common;
    std::vector<std::string> classify_subsets;
    int classify_n_max = 10;
    CLI::App* cmd_classify =
        app.add_subcommand("classify", "Group pattern sets by equality of "
                                       "their counting series");
    cmd_classify->add_option("--subset", classify_subsets,
                             "Restrict to these subsets (repeatable); "
                             "default: all 31");
    cmd_classify->add_option("--n-max", classify_n_max, "Comparison horizon")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(cmd_classify, classify_common);

    // table
    Common table_common;
    int table_n_max = 9;
    CLI::App* cmd_table =
        app.add_subcommand("table", "The sixteen-class summary table");
    cmd_table->add_option("--n-max", table_n_max, "Terms per row")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(cmd_table, table_common);

    // verify
    Common verify_common;
    std::string verify_system_name, verify_rules;
    bool verify_full = false;
    int verify_n_max = 8;
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "Cross-validate engines against the "
                                     "brute-force oracle");
    CLI::Option* verify_system_opt = cmd_verify->add_option(
        "--system", verify_system_name, "Verify one cataloged system");
    CLI::Option* verify_rules_opt =
        cmd_verify->add_option("--rules", verify_rules,
                               "Verify a rule file against its avoids line");
    CLI::Option* verify_full_opt = cmd_verify->add_flag(
        "--full", verify_full, "Run the complete cross-validation suite");
    verify_system_opt->excludes(verify_rules_opt, verify_full_opt);
    verify_rules_opt->excludes(verify_full_opt);
    cmd_verify->add_option("--n-max", verify_n_max, "Verification horizon")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(cmd_verify, verify_common);

    std::vector<std::string> argv_storage = args;
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size() + 1);
    argv.push_back("ascentlab");
    for (const std::string& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (app.got_subcommand(cmd_count)) {
            return run_count(count_avoid, count_n, count_method,
                             count_all_methods, count_common, out, err);
        }
        if (app.got_subcommand(cmd_series)) {
            return run_series(series_avoid, series_n_max, series_method,
                              series_common, out, err);
        }
        if (app.got_subcommand(cmd_list)) {
            return run_list(list_avoid, list_n, list_common, out);
        }
        if (app.got_subcommand(cmd_tree)) {
            if (tree_system.empty() && tree_rules.empty()) {
                err << "error: tree needs --system or --rules\n";
                return 2;
            }
            return run_tree(tree_system, tree_rules, tree_n_max,
                            tree_per_label, tree_matrix, tree_show_rules,
                            tree_common, out, err);
        }
        if (app.got_subcommand(cmd_gf)) {
            return run_gf(gf_numer, gf_denom, gf_n_max, gf_common, out);
        }
        if (app.got_subcommand(cmd_oeis)) {
            if (oeis_terms.empty() && oeis_avoid.empty()) {
                err << "error: oeis needs --terms or --avoid\n";
                return 2;
            }
            return run_oeis(oeis_terms, oeis_avoid, oeis_n_max, oeis_remote,
                            oeis_cache_dir, oeis_common, out);
        }
        if (app.got_subcommand(cmd_classify)) {
            return run_classify(classify_subsets, classify_n_max,
                                classify_common, out);
        }
        if (app.got_subcommand(cmd_table)) {
            return run_table(table_n_max, table_common, out);
        }
        if (app.got_subcommand(cmd_verify)) {
            if (!verify_full && verify_system_name.empty() &&
                verify_rules.empty()) {
                err << "error: verify needs --system, --rules, or --full\n";
                return 2;
            }
            return run_verify(verify_system_name, verify_rules, verify_full,
                              verify_n_max, verify_common, out, err);
        }
        err << "error: no subcommand\n";
        return 2;
    } catch (const NotFiniteError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceededError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const OfflineModeError& e) {
        err << "error: " << e.what() << "\n";
        return 5;
    } catch (const NetworkUnavailableError& e) {
        err << "error: " << e.what() << "\n";
        return 5;
    } catch (const MalformedResponseError& e) {
        err << "error: " << e.what() << "\n";
        return 5;
    } catch (const RuleParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const EmptyWordError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidSequenceError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidPatternError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UndefinedSuccessorError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonUnitConstantError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const TooFewTermsError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 5;
    }
}

}  // namespace ascentlab
