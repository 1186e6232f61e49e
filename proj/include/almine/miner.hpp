#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "almine/matcher.hpp"

namespace almine {

// AllDeletions keeps a candidate only if every one-element deletion is
// frequent; EndpointsOnly requires just the length-m prefix and suffix
// (which the join already guarantees). Middle deletions of a windowed match
// can exceed their own window budget, so AllDeletions may prune sequences
// that are in fact frequent; EndpointsOnly never does.
enum class PruneMode { AllDeletions, EndpointsOnly };

struct MiningConfig {
    std::optional<std::size_t> min_occur; // absolute occurrence threshold
    std::optional<double> min_support;    // relative threshold in (0,1]
    std::size_t win_add = 0;
    std::optional<std::size_t> max_len;   // cap on candidate length
    PruneMode prune_mode = PruneMode::AllDeletions;
    bool allow_repeats = true; // permit candidates with repeated types

    // Exactly one of min_occur / min_support must be set.
    void validate() const;
    bool meets_threshold(const OccurrenceReport& report) const;
};

// Frequent sequences per length m, each with its occurrence report.
struct FrequentSet {
    std::map<std::size_t, std::map<TypeSequence, OccurrenceReport>> levels;
    std::size_t window_index = 0;
    std::size_t window_size_d = 0;
    MiningConfig config;

    std::size_t total_count() const;
    const OccurrenceReport* find(const TypeSequence& seq) const;
};

// One length-1 candidate per distinct type occurring in the window.
std::vector<TypeSequence> seed_candidates(const ViewingWindow& window);

// Joins every ordered pair whose length-(m-1) suffix/prefix agree (vacuous
// at m = 1, so the level-1 join yields all ordered pairs including
// self-pairs) and prunes per mode. Output is deduplicated and canonically
// sorted. Throws ConfigError if input lengths are mixed.
std::vector<TypeSequence> gen_candidates(std::span<const TypeSequence> level,
                                         PruneMode mode, bool allow_repeats = true);

// Level-wise loop: count candidates, keep those meeting the threshold
// (>= comparison), generate the next level, stop on an empty level or
// max_len. Throws DomainError on an empty window.
FrequentSet mine_frequent(const ViewingWindow& window, const MiningConfig& config);
FrequentSet mine_frequent(const WindowIndex& index, const MiningConfig& config);

// Line-oriented report: "length,sequence,occur,support" with the sequence's
// type keys space-separated; '#' lines carry window/config context.
void write_frequent_report(std::ostream& out, const FrequentSet& freq);

} // namespace almine
