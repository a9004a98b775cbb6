#include "ascentlab/gentree.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ascentlab/enumerate.hpp"

namespace ascentlab {

// --- small value types ------------------------------------------------------

std::string Label::str() const {
    if (param) return "(" + tag + "," + std::to_string(*param) + ")";
    return "(" + tag + ")";
}

std::string AffineExpr::str() const {
    if (coeff_m == 0) return std::to_string(offset);
    std::string out = "m";
    if (offset > 0) out += "+" + std::to_string(offset);
    if (offset < 0) out += std::to_string(offset);
    return out;
}

std::string SuccessorTemplate::str() const {
    switch (kind) {
        case Kind::Plain: return "(" + tag + ")";
        case Kind::Single: return "(" + tag + "," + single.str() + ")";
        case Kind::Range:
            return "(" + tag + "," + lo.str() + ".." + hi.str() + ")";
    }
    return "";
}

std::string Rule::str() const {
    std::string lhs = lhs_generic ? "(" + tag + ",m)"
                      : lhs_param ? "(" + tag + "," + std::to_string(*lhs_param) + ")"
                                  : "(" + tag + ")";
    std::string out = lhs + " ->";
    for (const auto& s : successors) out += " " + s.str();
    return out;
}

// --- RuleSystem -------------------------------------------------------------

RuleSystem::RuleSystem(std::string name, PatternSet avoids, Label root,
                       std::vector<Rule> rules, std::string derivation_note)
    : name_(std::move(name)), avoids_(std::move(avoids)),
      root_(std::move(root)), rules_(std::move(rules)),
      derivation_note_(std::move(derivation_note)) {
    if (name_.empty()) throw Error("rule system needs a name");
    // Tags must be uniformly parameterless or parameterized.
    std::map<std::string, bool> parameterized;
    auto note = [&](const std::string& tag, bool has_param) {
        auto [it, inserted] = parameterized.emplace(tag, has_param);
        if (!inserted && it->second != has_param)
            throw Error("system " + name_ + ": tag '" + tag +
                        "' is used both with and without a parameter");
    };
    note(root_.tag, root_.param.has_value());
    std::map<std::string, int> seen_lhs;
    for (const Rule& r : rules_) {
        note(r.tag, r.lhs_generic || r.lhs_param.has_value());
        std::string key = r.tag + (r.lhs_generic
                                       ? "/generic"
                                       : r.lhs_param
                                             ? "/" + std::to_string(*r.lhs_param)
                                             : "/plain");
        if (++seen_lhs[key] > 1)
            throw Error("system " + name_ + ": duplicate rule for " + key);
        for (const SuccessorTemplate& s : r.successors)
            note(s.tag, s.kind != SuccessorTemplate::Kind::Plain);
    }
    finite_ = std::all_of(parameterized.begin(), parameterized.end(),
                          [](const auto& kv) { return !kv.second; });
}

std::vector<Label> RuleSystem::successors(const Label& label) const {
    const Rule* generic = nullptr;
    const Rule* pick = nullptr;
    for (const Rule& r : rules_) {
        if (r.tag != label.tag) continue;
        if (label.param) {
            if (r.lhs_param && *r.lhs_param == *label.param) {
                pick = &r;
                break;
            }
            if (r.lhs_generic) generic = &r;
        } else if (!r.lhs_generic && !r.lhs_param) {
            pick = &r;
            break;
        }
    }
    if (!pick) pick = generic;
    if (!pick)
        throw UndefinedSuccessorError("system " + name_ +
                                      ": no rule for reachable label " +
                                      label.str());
    const long m = label.param.value_or(0);
    std::vector<Label> out;
    for (const SuccessorTemplate& s : pick->successors) {
        switch (s.kind) {
            case SuccessorTemplate::Kind::Plain:
                out.push_back({s.tag, std::nullopt});
                break;
            case SuccessorTemplate::Kind::Single: {
                long v = s.single.eval(m);
                if (v < 0)
                    throw UndefinedSuccessorError(
                        "system " + name_ + ": rule for " + label.str() +
                        " yields negative parameter in " + s.str());
                out.push_back({s.tag, v});
                break;
            }
            case SuccessorTemplate::Kind::Range: {
                long lo = s.lo.eval(m), hi = s.hi.eval(m);
                for (long v = lo; v <= hi; ++v) {
                    if (v < 0)
                        throw UndefinedSuccessorError(
                            "system " + name_ + ": rule for " + label.str() +
                            " yields negative parameter in " + s.str());
                    out.push_back({s.tag, v});
                }
                break;
            }
        }
    }
    return out;
}

std::string RuleSystem::to_rule_text() const {
    std::ostringstream out;
    out << "system " << name_ << "\n";
    if (!derivation_note_.empty()) out << "# " << derivation_note_ << "\n";
    if (!avoids_.empty()) out << "avoids " << avoids_.str() << "\n";
    out << "root " << root_.str() << "\n";
    for (const Rule& r : rules_) out << r.str() << "\n";
    return out.str();
}

// --- engine -----------------------------------------------------------------

std::vector<LevelProfile> level_counts(const RuleSystem& system, int n_max) {
    if (n_max < 1)
        throw std::invalid_argument("level_counts: n_max must be >= 1");
    std::vector<LevelProfile> out;
    out.reserve(static_cast<std::size_t>(n_max));
    std::map<Label, Count> cur;
    cur[system.root()] = 1;
    for (int n = 1; n <= n_max; ++n) {
        LevelProfile profile;
        profile.n = n;
        profile.per_label = cur;
        for (const auto& [label, count] : cur) profile.total += count;
        out.push_back(std::move(profile));
        if (n == n_max) break;
        std::map<Label, Count> next;
        for (const auto& [label, count] : cur)
            for (const Label& child : system.successors(label))
                next[child] += count;
        cur.swap(next);
    }
    return out;
}

TransferMatrix transfer_matrix(const RuleSystem& system) {
    if (!system.finite_alphabet())
        throw NotFiniteError("system " + system.name() +
                             " has parameterized labels; no finite transfer "
                             "matrix exists");
    TransferMatrix tm;
    // First-appearance (breadth-first) label order, root first.
    std::map<Label, std::size_t> index;
    std::vector<std::vector<Label>> succ_of;
    tm.labels.push_back(system.root());
    index[system.root()] = 0;
    for (std::size_t i = 0; i < tm.labels.size(); ++i) {
        succ_of.push_back(system.successors(tm.labels[i]));
        for (const Label& child : succ_of[i])
            if (index.emplace(child, tm.labels.size()).second)
                tm.labels.push_back(child);
    }
    const std::size_t L = tm.labels.size();
    tm.matrix.assign(L, std::vector<long>(L, 0));
    for (std::size_t i = 0; i < L; ++i)
        for (const Label& child : succ_of[i]) ++tm.matrix[i][index[child]];
    tm.root_vector.assign(L, 0);
    tm.root_vector[0] = 1;
    return tm;
}

std::vector<Count> TransferMatrix::profile(int n) const {
    if (n < 1) throw std::invalid_argument("profile: n must be >= 1");
    std::vector<Count> v(labels.size());
    for (std::size_t j = 0; j < labels.size(); ++j) v[j] = root_vector[j];
    for (int step = 1; step < n; ++step) {
        std::vector<Count> next(labels.size(), Count(0));
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (v[i] == 0) continue;
            for (std::size_t j = 0; j < labels.size(); ++j)
                if (matrix[i][j] != 0) next[j] += v[i] * matrix[i][j];
        }
        v.swap(next);
    }
    return v;
}

VerificationReport verify_system(const RuleSystem& system, int n_max,
                                 const EnumerationBudget& budget) {
    VerificationReport report;
    report.system = system.name();
    report.all_equal = true;
    auto profiles = level_counts(system, n_max);
    CountSeries oracle = count_series(system.avoids(), n_max, budget);
    for (int n = 1; n <= n_max; ++n) {
        VerificationRow row;
        row.n = n;
        row.tree_total = profiles[static_cast<std::size_t>(n - 1)].total;
        row.oracle_count = oracle.at_n(n);
        row.equal = row.tree_total == row.oracle_count;
        report.all_equal = report.all_equal && row.equal;
        report.rows.push_back(std::move(row));
    }
    return report;
}

// --- rule-file parser -------------------------------------------------------

namespace {

class LineParser {
  public:
    LineParser(const std::string& line, int line_no)
        : line_(line), line_no_(line_no) {}

    void skip_ws() {
        while (pos_ < line_.size() &&
               (line_[pos_] == ' ' || line_[pos_] == '\t'))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= line_.size() || line_[pos_] == '#';
    }

    int column() const { return static_cast<int>(pos_) + 1; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw RuleParseError(msg, line_no_, static_cast<int>(pos_) + 1);
    }

    char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool try_consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool try_consume_word(std::string_view w) {
        if (line_.compare(pos_, w.size(), w) == 0) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < line_.size() && ident_char(line_[pos_])) ++pos_;
        if (pos_ == start) fail("expected an identifier");
        return line_.substr(start, pos_ - start);
    }

    long integer() {
        skip_ws();
        std::size_t start = pos_;
        if (peek() == '-') ++pos_;
        while (pos_ < line_.size() &&
               std::isdigit(static_cast<unsigned char>(line_[pos_])))
            ++pos_;
        if (pos_ == start || (line_[start] == '-' && pos_ == start + 1)) {
            pos_ = start;
            fail("expected an integer");
        }
        return std::stol(line_.substr(start, pos_ - start));
    }

    std::string rest() const { return line_.substr(pos_); }
    std::size_t pos() const { return pos_; }
    void set_pos(std::size_t p) { pos_ = p; }

  private:
    const std::string& line_;
    int line_no_;
    std::size_t pos_ = 0;
};

// Affine expression in the rule's bound variable: "m", "m+2", "m-1", "7".
AffineExpr parse_affine(LineParser& lp, const std::optional<std::string>& var) {
    lp.skip_ws();
    AffineExpr expr;
    char c = lp.peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        expr.offset = lp.integer();
        return expr;
    }
    std::string name = lp.ident();
    if (!var || name != *var)
        lp.fail("unknown parameter variable '" + name + "'" +
                (var ? " (the rule binds '" + *var + "')"
                     : " (parameterless left-hand side)"));
    expr.coeff_m = 1;
    if (lp.peek() == '+' || lp.peek() == '-') {
        bool neg = lp.peek() == '-';
        lp.expect(lp.peek());
        long k = lp.integer();
        expr.offset = neg ? -k : k;
    }
    return expr;
}

SuccessorTemplate parse_successor(LineParser& lp,
                                  const std::optional<std::string>& var) {
    lp.skip_ws();
    lp.expect('(');
    SuccessorTemplate st;
    st.tag = lp.ident();
    if (lp.try_consume(',')) {
        AffineExpr first = parse_affine(lp, var);
        lp.skip_ws();
        std::size_t mark = lp.pos();
        if (lp.try_consume('.')) {
            if (!lp.try_consume('.')) {
                lp.set_pos(mark);
                lp.fail("expected '..' in range");
            }
            st.kind = SuccessorTemplate::Kind::Range;
            st.lo = first;
            st.hi = parse_affine(lp, var);
        } else {
            st.kind = SuccessorTemplate::Kind::Single;
            st.single = first;
        }
    } else {
        st.kind = SuccessorTemplate::Kind::Plain;
    }
    lp.skip_ws();
    lp.expect(')');
    return st;
}

}  // namespace

RuleSystem parse_rules(const std::string& text) {
    std::optional<std::string> name;
    std::optional<PatternSet> avoids;
    std::optional<Label> root;
    std::vector<Rule> rules;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        LineParser lp(line, line_no);
        if (lp.at_end()) continue;

        lp.skip_ws();
        if (lp.peek() != '(') {
            // Directive line: first token is a keyword.
            std::string keyword = lp.ident();
            if (keyword == "system") {
                name = lp.ident();
                if (!lp.at_end()) lp.fail("unexpected trailing text");
            } else if (keyword == "avoids") {
                lp.skip_ws();
                std::string spec = lp.rest();
                if (auto hash = spec.find('#'); hash != std::string::npos)
                    spec.resize(hash);
                while (!spec.empty() &&
                       (spec.back() == ' ' || spec.back() == '\t'))
                    spec.pop_back();
                try {
                    avoids = PatternSet::parse(spec);
                } catch (const Error& e) {
                    lp.fail(e.what());
                }
            } else if (keyword == "root") {
                lp.skip_ws();
                lp.expect('(');
                Label r;
                r.tag = lp.ident();
                if (lp.try_consume(',')) {
                    long v = lp.integer();
                    if (v < 0) lp.fail("root parameter must be >= 0");
                    r.param = v;
                }
                lp.expect(')');
                if (!lp.at_end()) lp.fail("unexpected trailing text");
                root = std::move(r);
            } else {
                lp.fail("unknown directive '" + keyword + "'");
            }
            continue;
        }

        // A succession rule: <lhs-label> -> <successor> ...
        Rule rule;
        lp.expect('(');
        rule.tag = lp.ident();
        std::optional<std::string> var;
        if (lp.try_consume(',')) {
            lp.skip_ws();
            if (std::isdigit(static_cast<unsigned char>(lp.peek()))) {
                rule.lhs_param = lp.integer();
            } else {
                var = lp.ident();
                rule.lhs_generic = true;
            }
        }
        lp.expect(')');
        lp.skip_ws();
        if (!lp.try_consume_word("->")) lp.fail("expected '->'");
        while (!lp.at_end()) rule.successors.push_back(parse_successor(lp, var));
        if (rule.successors.empty()) lp.fail("a rule needs at least one successor");
        rules.push_back(std::move(rule));
    }

    if (!name) throw RuleParseError("missing 'system' directive", 1, 1);
    if (!root) throw RuleParseError("missing 'root' directive", 1, 1);
    try {
        return RuleSystem(*name, avoids.value_or(PatternSet{}), *root,
                          std::move(rules));
    } catch (const Error& e) {
        throw RuleParseError(e.what(), line_no, 1);
    }
}

RuleSystem parse_rules_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open rule file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rules(buf.str());
}

// --- derived systems --------------------------------------------------------

namespace {

bool tag_contains(const std::string& tag, const Pattern& p) {
    std::vector<int> letters;
    letters.reserve(tag.size());
    for (char c : tag) {
        if (c < '0' || c > '9') return false;  // non-word tag, nothing to match
        letters.push_back(c - '0');
    }
    return detail::contains_span(letters.data(), letters.size(),
                                 p.word().letters().data(), p.size(), false);
}

}  // namespace

RuleSystem remove_pattern(const RuleSystem& base, const Pattern& p,
                          const std::string& new_name,
                          const PatternSet& new_avoids) {
    if (!base.finite_alphabet())
        throw NotFiniteError("remove_pattern expects a finite-alphabet system");
    if (tag_contains(base.root().tag, p))
        throw Error("remove_pattern would delete the root label");
    std::vector<std::string> removed;
    std::vector<Rule> rules;
    for (const Rule& r : base.rules()) {
        if (tag_contains(r.tag, p)) {
            removed.push_back("(" + r.tag + ")");
            continue;
        }
        Rule keep;
        keep.tag = r.tag;
        for (const SuccessorTemplate& s : r.successors)
            if (!tag_contains(s.tag, p)) keep.successors.push_back(s);
        rules.push_back(std::move(keep));
    }
    std::string note = "derived from " + base.name() +
                       " by removing all labels containing " + p.str() + ":";
    if (removed.empty()) note += " none";
    for (const std::string& r : removed) note += " " + r;
    return RuleSystem(new_name, new_avoids, base.root(), std::move(rules),
                      note);
}

}  // namespace ascentlab
