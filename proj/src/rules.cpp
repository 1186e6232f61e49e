#include "almine/rules.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <utility>

namespace almine {

double measure_confidence(double supp_xy, double supp_x) {
    if (supp_x == 0.0)
        throw DomainError("confidence undefined: antecedent support is zero");
    return supp_xy / supp_x;
}

double measure_correlation(double supp_xy, double supp_x, double supp_y) {
    if (supp_x == 0.0)
        throw DomainError("correlation undefined: antecedent support is zero");
    return std::fabs(supp_xy / supp_x - supp_y);
}

namespace {

// Antecedent position sets for one parent length, canonical order: position
// vectors compared lexicographically, so prefix splits come first among
// equal-length fronts.
std::vector<std::vector<std::size_t>> split_positions(std::size_t m, SplitMode mode) {
    std::vector<std::vector<std::size_t>> out;
    if (mode == SplitMode::PrefixOnly) {
        for (std::size_t j = 1; j < m; ++j) {
            std::vector<std::size_t> positions(j);
            for (std::size_t i = 0; i < j; ++i) positions[i] = i;
            out.push_back(std::move(positions));
        }
        return out;
    }
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << m); ++mask) {
        std::vector<std::size_t> positions;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::size_t{1} << i)) positions.push_back(i);
        out.push_back(std::move(positions));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<double> lookup_support(const FrequentSet& freq, const TypeSequence& seq,
                                     const RuleConfig& config, const WindowIndex* window) {
    if (const OccurrenceReport* report = freq.find(seq))
        return report->support;
    if (config.recount_missing && window)
        return robust_count(seq, *window, freq.config.win_add).support;
    return std::nullopt;
}

} // namespace

RuleGenResult gen_rules(const FrequentSet& freq, const RuleConfig& config,
                        const WindowIndex* window) {
    if (config.min_conf < 0.0)
        throw ConfigError("min_conf must be non-negative");

    RuleGenResult result;
    for (const auto& [m, level] : freq.levels) {
        if (m < 2) continue;
        if (m > 20) {
            result.skipped.push_back("sequences of length " + std::to_string(m) +
                                     " exceed the split enumeration bound");
            continue;
        }
        for (const auto& [alpha, report] : level) {
            if (report.count == 0) {
                result.skipped.push_back(alpha.key_string() + ": no recorded matches");
                continue;
            }
            std::set<std::pair<TypeSequence, TypeSequence>> seen;
            for (const auto& positions : split_positions(m, config.split)) {
                std::vector<AlarmType> ante_types, cons_types;
                std::vector<std::size_t> cons_positions;
                for (std::size_t i = 0, a = 0; i < m; ++i) {
                    if (a < positions.size() && positions[a] == i) {
                        ante_types.push_back(alpha[i]);
                        ++a;
                    } else {
                        cons_types.push_back(alpha[i]);
                        cons_positions.push_back(i);
                    }
                }
                TypeSequence antecedent(std::move(ante_types));
                TypeSequence consequent(std::move(cons_types));
                if (!seen.emplace(antecedent, consequent).second) continue;

                auto supp_x = lookup_support(freq, antecedent, config, window);
                auto supp_y = lookup_support(freq, consequent, config, window);
                if (!supp_x || !supp_y) {
                    result.skipped.push_back(alpha.key_string() + " | " +
                                             antecedent.key_string() +
                                             ": split support unavailable");
                    continue;
                }
                if (*supp_x == 0.0) {
                    result.skipped.push_back(alpha.key_string() + " | " +
                                             antecedent.key_string() +
                                             ": antecedent support is zero");
                    continue;
                }

                CorrelationRule rule{antecedent, consequent, alpha, positions,
                                     0.0, report.support, *supp_x, *supp_y,
                                     0.0, 0.0, 0.0, config.kind,
                                     freq.window_index, false};
                rule.confidence = rule.supp / rule.supp_antecedent;
                rule.correlation = std::fabs(rule.confidence - rule.supp_consequent);
                rule.measure_value =
                    config.kind == MeasureKind::Confidence ? rule.confidence : rule.correlation;
                rule.prefix_split = positions.back() == positions.size() - 1;

                if (rule.measure_value < config.min_conf) continue;

                // mean gap between the last antecedent and first consequent event
                const std::size_t from = positions.back();
                const std::size_t to = cons_positions.front();
                double sum = 0.0;
                for (const Match& match : report.matches)
                    sum += static_cast<double>(match.times[to]) -
                           static_cast<double>(match.times[from]);
                rule.delta_t_seconds = sum / static_cast<double>(report.matches.size());

                result.rules.push_back(std::move(rule));
            }
        }
    }

    std::sort(result.rules.begin(), result.rules.end(),
              [](const CorrelationRule& a, const CorrelationRule& b) {
                  if (a.parent.length() != b.parent.length())
                      return a.parent.length() < b.parent.length();
                  if (!(a.parent == b.parent)) return a.parent < b.parent;
                  if (!(a.antecedent == b.antecedent)) return a.antecedent < b.antecedent;
                  return a.consequent < b.consequent;
              });
    return result;
}

std::string render_rule(const CorrelationRule& rule) {
    char buf[96];
    std::string out = rule.antecedent.key_string();
    std::snprintf(buf, sizeof(buf), " --%.1fs--> ", rule.delta_t_seconds);
    out += buf;
    out += rule.consequent.key_string();
    std::snprintf(buf, sizeof(buf), " [conf=%.2f%%, supp=%.2f%%, win=w%zu]",
                  rule.measure_value * 100.0, rule.supp * 100.0, rule.window_index);
    out += buf;
    return out;
}

void write_rules_text(std::ostream& out, std::span<const CorrelationRule> rules) {
    for (const CorrelationRule& rule : rules) {
        out << render_rule(rule);
        if (!rule.prefix_split) out << " [non-prefix]";
        out << "\n";
    }
}

void write_rules_csv(std::ostream& out, std::span<const CorrelationRule> rules) {
    out << "antecedent,consequent,delta_t_seconds,support,confidence,correlation,split\n";
    char buf[160];
    for (const CorrelationRule& rule : rules) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.17g,%.17g,%.17g", rule.delta_t_seconds,
                      rule.supp, rule.confidence, rule.correlation);
        out << rule.antecedent.key_string(" ") << ',' << rule.consequent.key_string(" ") << ','
            << buf << ',' << (rule.prefix_split ? "prefix" : "subseq") << "\n";
    }
}

} // namespace almine
