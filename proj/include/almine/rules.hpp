#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "almine/miner.hpp"

namespace almine {

// confidence = supp(XY)/supp(X); correlation = |supp(XY)/supp(X) - supp(Y)|.
enum class MeasureKind { Confidence, Correlation };

// PrefixOnly splits a frequent sequence into a proper non-empty prefix and
// the remaining suffix; AllSubsequences admits any proper non-empty
// subsequence as antecedent, with the residual (in order) as consequent.
enum class SplitMode { PrefixOnly, AllSubsequences };

struct RuleConfig {
    double min_conf = 0.0;
    MeasureKind kind = MeasureKind::Correlation;
    SplitMode split = SplitMode::PrefixOnly;
    // Recount supports absent from the frequent set via robust_count; when
    // off, such splits are skipped with a reason.
    bool recount_missing = true;
};

struct CorrelationRule {
    TypeSequence antecedent;
    TypeSequence consequent;
    TypeSequence parent;                   // the frequent sequence that was split
    std::vector<std::size_t> antecedent_positions; // positions of antecedent in parent
    double delta_t_seconds = 0.0; // mean gap, last antecedent to first consequent event
    double supp = 0.0;            // support of the full (parent) sequence
    double supp_antecedent = 0.0;
    double supp_consequent = 0.0;
    double confidence = 0.0;
    double correlation = 0.0;
    double measure_value = 0.0;
    MeasureKind measure_kind = MeasureKind::Correlation;
    std::size_t window_index = 0;
    bool prefix_split = true; // false: no clean temporal reading, flagged in output
};

struct RuleGenResult {
    std::vector<CorrelationRule> rules;
    std::vector<std::string> skipped; // one reason per skipped split
};

// Throws DomainError when supp_x is zero.
double measure_confidence(double supp_xy, double supp_x);
double measure_correlation(double supp_xy, double supp_x, double supp_y);

// Emits every admissible split of every frequent sequence of length >= 2
// whose measure value meets min_conf. Supports for split sides are looked up
// in freq and recounted against `window` when absent. Output order is
// canonical: parent length, parent, antecedent, consequent.
RuleGenResult gen_rules(const FrequentSet& freq, const RuleConfig& config,
                        const WindowIndex* window = nullptr);

// "1.1.7 --15.0s--> 1.1.9 [conf=20.00%, supp=4.00%, win=w0]"
std::string render_rule(const CorrelationRule& rule);

void write_rules_text(std::ostream& out, std::span<const CorrelationRule> rules);

// Delimited records: antecedent, consequent, delta_t_seconds, support,
// confidence, correlation, split (prefix|subseq).
void write_rules_csv(std::ostream& out, std::span<const CorrelationRule> rules);

} // namespace almine
