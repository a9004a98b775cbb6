#include "ascentlab/gentree.hpp"

namespace ascentlab {

namespace {

// The seven directly specified systems, in the rule-file format. The five
// remaining catalog entries are derived from these by label deletion (see
// catalog() below); shipped rule files mirror both groups.

constexpr const char* kL2_101_102 = R"(system L2_101_102
# Pair {0101,0102}: avoiders are RGFs, tracked via the short patterns 101/102.
# Label (0,m): sequence ends in its maximum, m = distinct letters - 1.
# Label (1,l): sequence ends strictly below its maximum at height l.
avoids 0101,0102
root (0,0)
(0,m) -> (0,m) (0,m+1) (1,0..m-1)
(1,m) -> (1,0..m)
)";

constexpr const char* kL2_101_021 = R"(system L2_101_021
# Pair {0101,0121} via the short patterns 101/021 on RGFs.
# The constant-parameter rule takes precedence over the generic one; here the
# generic (0,m) rule agrees with the listed (0,0) rule at m = 0, and the
# label (1,0) is unreachable from the root.
avoids 0101,0121
root (0,0)
(0,0) -> (0,0) (1,1)
(0,m) -> (0,m) (1,m+1)
(1,m) -> (0,m) (1,m) (1,m+1)
)";

constexpr const char* kL2_0121_0112 = R"(system L2_0121_0112
# Pair {0112,0121}. Labels name the shortest forbidden-prefix witness class.
avoids 0112,0121
root (0)
(0) -> (0) (01)
(01) -> (01) (011) (01)
(011) -> (011) (011)
)";

constexpr const char* kL2_0112_0120 = R"(system L2_0112_0120
avoids 0112,0120
root (0)
(0) -> (0) (01)
(01) -> (01) (011) (012)
(011) -> (011) (011)
(012) -> (0121) (0122) (012)
(0122) -> (0121) (0122)
(0121) -> (0121)
)";

constexpr const char* kL3_0101_0112_0120 = R"(system L3_0101_0112_0120
avoids 0101,0112,0120
root (0)
(0) -> (0) (01)
(01) -> (010) (011) (012)
(011) -> (0110) (011)
(010) -> (010) (0102)
(012) -> (0121) (0122) (012)
(0110) -> (0110)
(0102) -> (012) (01022)
(0121) -> (0121)
(0122) -> (0121) (0122)
(01022) -> (01022)
)";

constexpr const char* kL3_0102_0112_0120 = R"(system L3_0102_0112_0120
avoids 0102,0112,0120
root (0)
(0) -> (0) (01)
(01) -> (010) (011) (012)
(011) -> (010) (011)
(010) -> (010) (010)
(012) -> (0121) (0122) (012)
(0121) -> (0121)
(0122) -> (0121) (0122)
)";

constexpr const char* kL4_0101_0102_0120_0121 = R"(system L4_0101_0102_0120_0121
avoids 0101,0102,0120,0121
root (0)
(0) -> (0) (01)
(01) -> (010) (01) (012)
(010) -> (010)
(012) -> (012) (012)
)";

std::map<std::string, RuleSystem> build_catalog() {
    std::map<std::string, RuleSystem> out;
    auto add = [&](RuleSystem sys) {
        std::string name = sys.name();
        out.emplace(std::move(name), std::move(sys));
    };
    add(parse_rules(kL2_101_102));
    add(parse_rules(kL2_101_021));
    add(parse_rules(kL2_0121_0112));
    add(parse_rules(kL2_0112_0120));
    add(parse_rules(kL3_0101_0112_0120));
    add(parse_rules(kL3_0102_0112_0120));
    add(parse_rules(kL4_0101_0102_0120_0121));

    const Pattern p0102 = Pattern::parse("0102");
    const Pattern p0121 = Pattern::parse("0121");

    add(remove_pattern(out.at("L2_0112_0120"), p0121, "L3_0112_0120_0121",
                       PatternSet::parse("0112,0120,0121")));
    add(remove_pattern(out.at("L3_0101_0112_0120"), p0102,
                       "L4_0101_0102_0112_0120",
                       PatternSet::parse("0101,0102,0112,0120")));
    add(remove_pattern(out.at("L3_0101_0112_0120"), p0121,
                       "L4_0101_0112_0120_0121",
                       PatternSet::parse("0101,0112,0120,0121")));
    add(remove_pattern(out.at("L3_0102_0112_0120"), p0121,
                       "L4_0102_0112_0120_0121",
                       PatternSet::parse("0102,0112,0120,0121")));
    add(remove_pattern(out.at("L4_0101_0112_0120_0121"), p0102, "L5_all",
                       PatternSet::parse("0101,0102,0112,0120,0121")));
    return out;
}

}  // namespace

const std::map<std::string, RuleSystem>& catalog() {
    static const std::map<std::string, RuleSystem> instance = build_catalog();
    return instance;
}

}  // namespace ascentlab
