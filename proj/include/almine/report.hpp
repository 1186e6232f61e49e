#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "almine/rules.hpp"

namespace almine {

// Frequent-sequence counts per (win_add, pattern length, min_occur).
struct Fig3Row {
    std::size_t win_add = 0;
    std::size_t length = 0;
    std::size_t min_occur = 0;
    std::size_t count = 0;
};

// Mines the window once per (win_add, min_occur) combination with absolute
// thresholds and reports counts for every length 1..max_len (zero-filled).
std::vector<Fig3Row> fig3_series(const WindowIndex& index, const MiningConfig& base,
                                 std::span<const std::size_t> win_adds,
                                 std::span<const std::size_t> min_occurs,
                                 std::size_t max_len);

void write_fig3_csv(std::ostream& out, std::span<const Fig3Row> rows);

// Per-rule scatter of the two interestingness measures.
struct Fig4Row {
    double confidence = 0.0;
    double correlation = 0.0;
    double supp_consequent = 0.0;
};

std::vector<Fig4Row> fig4_rows(std::span<const CorrelationRule> rules);

void write_fig4_csv(std::ostream& out, std::span<const Fig4Row> rows);

// Least-squares slope of correlation against confidence.
double least_squares_slope(std::span<const Fig4Row> rows);

} // namespace almine
