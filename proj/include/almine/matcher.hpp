#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "almine/alarm_model.hpp"

namespace almine {

// Search window geometry: win_seq = win_freq + win_add, counted in flattened
// events. win_freq equals the candidate length; win_add is the noise budget.
struct SearchWindows {
    std::size_t win_freq = 0;
    std::size_t win_add = 0;
    std::size_t win_seq = 0;

    static SearchWindows for_length(std::size_t m, std::size_t win_add) {
        return {m, win_add, m + win_add};
    }
};

// One event in flattened window order: tuples in time order, types within a
// tuple in canonical key order.
struct FlatEvent {
    AlarmType type;
    Timestamp time = 0;
    std::size_t tuple_index = 0;
};

std::vector<FlatEvent> flatten(const ViewingWindow& window);

// One counted occurrence: the flattened event index and timestamp matched by
// each sequence element. Indices strictly increase; the index span never
// exceeds win_seq; matches of one report never share an event.
struct Match {
    std::vector<std::size_t> event_indices;
    std::vector<Timestamp> times;
};

struct OccurrenceReport {
    std::size_t count = 0;
    std::vector<Match> matches;
    double support = 0.0; // count / window size_d (tuples, not events)
    SearchWindows windows;
    std::size_t work_steps = 0; // scan effort, used by the complexity probe
};

// Immutable per-window search index: flattened events plus per-type position
// lists. Build once per window and share across all candidates.
class WindowIndex {
public:
    explicit WindowIndex(const ViewingWindow& window);

    std::size_t size_d() const noexcept { return size_d_; }
    std::size_t event_count() const noexcept { return type_ids_.size(); }
    std::size_t max_tuple_length() const noexcept { return max_tuple_length_; }
    std::size_t window_index() const noexcept { return window_index_; }

    // Types occurring in the window, canonical ascending order.
    const std::vector<AlarmType>& distinct_types() const noexcept { return types_; }

    // Dense id of a type, or -1 if it never occurs in the window.
    int type_id(const AlarmType& t) const;
    int type_id_at(std::size_t pos) const noexcept { return type_ids_[pos]; }
    Timestamp time_at(std::size_t pos) const noexcept { return times_[pos]; }
    const std::vector<std::size_t>& positions(int id) const { return positions_[id]; }

private:
    std::vector<AlarmType> types_;
    std::unordered_map<AlarmType, int, AlarmTypeHash> id_of_;
    std::vector<int> type_ids_;        // per flattened event
    std::vector<Timestamp> times_;     // per flattened event
    std::vector<std::vector<std::size_t>> positions_; // per type id
    std::size_t size_d_ = 0;
    std::size_t max_tuple_length_ = 0;
    std::size_t window_index_ = 0;
};

// Noise-tolerant greedy occurrence count of alpha over the window.
//
// The cursor starts at the first event of alpha's head type. Each attempt
// scans forward for the earliest embedding of the remaining elements within
// win_seq = m + win_add flattened events of the cursor (cursor included).
// On a full match the count increments and the cursor restarts at the first
// head-type event strictly after the last matched event; on failure it moves
// to the next head-type event. Types absent from the window yield count 0.
OccurrenceReport robust_count(const TypeSequence& alpha, const WindowIndex& index,
                              std::size_t win_add);
OccurrenceReport robust_count(const TypeSequence& alpha, const ViewingWindow& window,
                              std::size_t win_add);

// Occurrence count divided by window size in tuples. Throws DomainError on
// an empty window.
double support(const TypeSequence& alpha, const ViewingWindow& window,
               std::size_t win_add);

} // namespace almine
