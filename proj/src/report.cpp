#include "almine/report.hpp"

#include <cstdio>

namespace almine {

std::vector<Fig3Row> fig3_series(const WindowIndex& index, const MiningConfig& base,
                                 std::span<const std::size_t> win_adds,
                                 std::span<const std::size_t> min_occurs,
                                 std::size_t max_len) {
    if (max_len == 0)
        throw ConfigError("fig3 series needs a positive max_len");
    std::vector<Fig3Row> rows;
    for (std::size_t win_add : win_adds) {
        for (std::size_t min_occur : min_occurs) {
            MiningConfig config = base;
            config.win_add = win_add;
            config.min_occur = min_occur;
            config.min_support.reset();
            config.max_len = max_len;
            FrequentSet freq = mine_frequent(index, config);
            for (std::size_t len = 1; len <= max_len; ++len) {
                auto it = freq.levels.find(len);
                rows.push_back(Fig3Row{win_add, len, min_occur,
                                       it == freq.levels.end() ? 0 : it->second.size()});
            }
        }
    }
    return rows;
}

void write_fig3_csv(std::ostream& out, std::span<const Fig3Row> rows) {
    out << "win_add,length,min_occur,count\n";
    for (const Fig3Row& r : rows)
        out << r.win_add << ',' << r.length << ',' << r.min_occur << ',' << r.count << "\n";
}

std::vector<Fig4Row> fig4_rows(std::span<const CorrelationRule> rules) {
    std::vector<Fig4Row> rows;
    rows.reserve(rules.size());
    for (const CorrelationRule& rule : rules)
        rows.push_back(Fig4Row{rule.confidence, rule.correlation, rule.supp_consequent});
    return rows;
}

void write_fig4_csv(std::ostream& out, std::span<const Fig4Row> rows) {
    out << "confidence,correlation,supp_consequent\n";
    char buf[96];
    for (const Fig4Row& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", r.confidence, r.correlation,
                      r.supp_consequent);
        out << buf << "\n";
    }
}

double least_squares_slope(std::span<const Fig4Row> rows) {
    if (rows.size() < 2)
        throw DomainError("slope needs at least two points");
    double mean_x = 0.0, mean_y = 0.0;
    for (const Fig4Row& r : rows) {
        mean_x += r.confidence;
        mean_y += r.correlation;
    }
    mean_x /= static_cast<double>(rows.size());
    mean_y /= static_cast<double>(rows.size());
    double sxx = 0.0, sxy = 0.0;
    for (const Fig4Row& r : rows) {
        sxx += (r.confidence - mean_x) * (r.confidence - mean_x);
        sxy += (r.confidence - mean_x) * (r.correlation - mean_y);
    }
    if (sxx == 0.0)
        throw DomainError("slope undefined: confidence values are constant");
    return sxy / sxx;
}

} // namespace almine
