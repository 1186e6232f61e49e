#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "almine/alarm_model.hpp"

namespace almine {

// The synthetic alphabet is the types 1.1.0 .. 1.1.(alphabet_size-1).
AlarmType synth_type(std::uint32_t num);

// One pattern to plant: its elements are emitted in order, mean_gap_seconds
// apart (+/-20% jitter), with up to max_noise_per_occurrence interleaved
// noise events injected strictly inside each occurrence.
struct PlantSpec {
    TypeSequence pattern;
    std::size_t occurrences = 0;
    double mean_gap_seconds = 0.0;
    std::size_t max_noise_per_occurrence = 0;
};

// Generator contract, chosen so the manifest's expected minimums are exact:
// planted patterns must have distinct elements and pairwise disjoint type
// sets, and their types are reserved for plants (background and injected
// noise draw from the rest of the alphabet). Occurrences are emitted
// round-robin across patterns, separated by background stretches, and no
// two events share a (type, timestamp) pair, so the parsed queue has
// exactly total_events events.
struct SynthSpec {
    std::size_t alphabet_size = 0;
    std::size_t total_events = 0;
    std::vector<PlantSpec> plants;
    // Minimum fraction of total_events reserved for background traffic;
    // generation fails when plants + injected noise encroach on it.
    double noise_rate = 0.0;
    double base_rate = 1.0;                 // background events per second
    std::vector<double> burstiness = {1.0}; // rate multipliers, cycled per stretch
    double background_zipf = 0.0;           // 0 = uniform background type draw
    std::uint64_t rng_seed = 0;
    // When set, every plant's noise budget must be <= this target.
    std::optional<std::size_t> win_add_target;

    void validate() const;
};

// Ground truth for one planted occurrence. Indices refer to flattened event
// positions in the parsed whole-log window.
struct OccurrenceRecord {
    std::vector<std::size_t> event_indices;
    std::vector<Timestamp> event_times;
    std::vector<std::size_t> noise_indices;
    std::size_t noise_count = 0;
};

struct PatternRecord {
    TypeSequence pattern;
    double mean_gap_seconds = 0.0;
    std::size_t max_noise_per_occurrence = 0;
    std::vector<OccurrenceRecord> occurrences;

    // Occurrences whose injected noise fits the given tolerance; the miner
    // finds at least this many at win_add >= that tolerance.
    std::size_t expected_min_occur(std::size_t win_add) const;
};

struct Manifest {
    std::size_t alphabet_size = 0;
    std::size_t total_events = 0;
    std::uint64_t rng_seed = 0;
    std::vector<PatternRecord> patterns;

    std::string to_json() const;
    static Manifest from_json(const std::string& text);
};

struct SynthResult {
    std::string log_text; // ingest-compatible CSV
    Manifest manifest;
};

// Deterministic: identical spec (including seed) yields byte-identical
// log and manifest.
SynthResult generate(const SynthSpec& spec);

} // namespace almine
