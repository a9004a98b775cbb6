#include "ascentlab/wilf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ascentlab {

namespace {

// Canonical subset order: size, then member patterns lexicographically.
bool subset_less(const PatternSet& a, const PatternSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.patterns() < b.patterns();
}

bool series_lex_greater(const CountSeries& a, const CountSeries& b) {
    return a.values > b.values;  // element-wise lexicographic on exact Counts
}

}  // namespace

WilfClassification classify(const std::vector<PatternSet>& subsets, int n_max,
                            const EnumerationBudget& budget, int threads) {
    if (n_max < 1) throw std::invalid_argument("classify: n_max must be >= 1");
    WilfClassification out;
    out.n_max = n_max;
    out.basis = "oracle";
    std::map<std::vector<Count>, std::vector<PatternSet>> groups;
    for (const PatternSet& P : subsets) {
        CountSeries s = count_series(P, n_max, budget, threads);
        groups[s.values].push_back(P);
    }
    for (auto& [values, members] : groups) {
        WilfClass cls;
        cls.series = CountSeries{1, values};
        cls.members = std::move(members);
        std::sort(cls.members.begin(), cls.members.end(), subset_less);
        out.classes.push_back(std::move(cls));
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const WilfClass& a, const WilfClass& b) {
                  if (a.series != b.series)
                      return series_lex_greater(a.series, b.series);
                  return subset_less(a.members.front(), b.members.front());
              });
    return out;
}

const std::vector<PatternSet>& all_five_pattern_subsets() {
    static const std::vector<PatternSet> subsets = [] {
        const std::vector<Pattern> five = {
            Pattern::parse("0101"), Pattern::parse("0102"),
            Pattern::parse("0112"), Pattern::parse("0120"),
            Pattern::parse("0121")};
        std::vector<PatternSet> out;
        for (unsigned mask = 1; mask < 32; ++mask) {
            std::vector<Pattern> pick;
            for (unsigned b = 0; b < 5; ++b)
                if (mask & (1u << b)) pick.push_back(five[b]);
            out.emplace_back(std::move(pick));
        }
        std::sort(out.begin(), out.end(), subset_less);
        return out;
    }();
    return subsets;
}

const std::vector<std::vector<PatternSet>>& expected_classes() {
    static const std::vector<std::vector<PatternSet>> classes = [] {
        auto parse_group = [](std::initializer_list<const char*> specs) {
            std::vector<PatternSet> out;
            for (const char* s : specs) out.push_back(PatternSet::parse(s));
            return out;
        };
        std::vector<std::vector<PatternSet>> out;
        out.push_back(parse_group({"0101"}));
        out.push_back(parse_group({"0102", "0112"}));
        out.push_back(parse_group({"0120"}));
        out.push_back(parse_group({"0121"}));
        out.push_back(parse_group({"0101,0102", "0101,0121"}));
        out.push_back(parse_group(
            {"0101,0112", "0102,0112", "0112,0121", "0102,0120"}));
        out.push_back(parse_group({"0101,0120"}));
        out.push_back(parse_group({"0102,0121"}));
        out.push_back(parse_group({"0112,0120"}));
        out.push_back(parse_group({"0120,0121"}));
        out.push_back(parse_group({"0101,0102,0112", "0101,0102,0120",
                                   "0101,0102,0121", "0101,0112,0121",
                                   "0101,0120,0121", "0102,0120,0121"}));
        out.push_back(parse_group({"0101,0112,0120"}));
        out.push_back(parse_group(
            {"0102,0112,0120", "0102,0112,0121", "0112,0120,0121"}));
        out.push_back(parse_group({"0101,0102,0112,0120", "0101,0102,0112,0121",
                                   "0101,0112,0120,0121"}));
        out.push_back(
            parse_group({"0101,0102,0120,0121", "0102,0112,0120,0121"}));
        out.push_back(parse_group({"0101,0102,0112,0120,0121"}));
        return out;
    }();
    return classes;
}

std::vector<SeparationWitness> separation_witnesses(
    const WilfClassification& c) {
    std::vector<SeparationWitness> out;
    for (std::size_t a = 0; a < c.classes.size(); ++a)
        for (std::size_t b = a + 1; b < c.classes.size(); ++b) {
            const auto& sa = c.classes[a].series;
            const auto& sb = c.classes[b].series;
            for (int n = 1; n <= c.n_max; ++n) {
                if (sa.at_n(n) != sb.at_n(n)) {
                    out.push_back({a, b, n, sa.at_n(n), sb.at_n(n)});
                    break;
                }
            }
        }
    return out;
}

std::string to_json(const WilfClassification& c) {
    nlohmann::json doc;
    doc["n_max"] = c.n_max;
    doc["basis"] = c.basis;
    doc["caveat"] =
        "classes are indistinguishable through n_max, not proven equivalent";
    doc["classes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < c.classes.size(); ++i) {
        const WilfClass& cls = c.classes[i];
        nlohmann::json jc;
        jc["id"] = i;
        jc["members"] = nlohmann::json::array();
        for (const PatternSet& m : cls.members)
            jc["members"].push_back(m.str());
        jc["series"] = nlohmann::json::array();
        for (const Count& v : cls.series.values)
            jc["series"].push_back(v.get_str());
        doc["classes"].push_back(std::move(jc));
    }
    doc["separations"] = nlohmann::json::array();
    for (const SeparationWitness& w : separation_witnesses(c)) {
        nlohmann::json jw;
        jw["class_a"] = w.class_a;
        jw["class_b"] = w.class_b;
        jw["n"] = w.n;
        jw["value_a"] = w.value_a.get_str();
        jw["value_b"] = w.value_b.get_str();
        doc["separations"].push_back(std::move(jw));
    }
    return doc.dump(2);
}

std::string to_markdown(const WilfClassification& c) {
    std::ostringstream out;
    out << "| Class | Members | Series (n = 1.." << c.n_max << ") |\n";
    out << "|---|---|---|\n";
    for (std::size_t i = 0; i < c.classes.size(); ++i) {
        const WilfClass& cls = c.classes[i];
        out << "| " << (i + 1) << " | ";
        for (std::size_t m = 0; m < cls.members.size(); ++m) {
            if (m) out << ", ";
            out << "{" << cls.members[m].str() << "}";
        }
        out << " | ";
        for (std::size_t n = 0; n < cls.series.values.size(); ++n) {
            if (n) out << ", ";
            out << cls.series.values[n].get_str();
        }
        out << " |\n";
    }
    out << "\nClasses are grouped by equality of the series through n = "
        << c.n_max << " (evidence, not proof of Wilf equivalence).\n";
    return out.str();
}

}  // namespace ascentlab
