#include "almine/matcher.hpp"

#include <algorithm>

namespace almine {

std::vector<FlatEvent> flatten(const ViewingWindow& window) {
    std::vector<FlatEvent> out;
    for (std::size_t ti = 0; ti < window.tuples.size(); ++ti) {
        const AlarmTuple& tuple = window.tuples[ti];
        for (const AlarmType& t : tuple.types())
            out.push_back(FlatEvent{t, tuple.time(), ti});
    }
    return out;
}

WindowIndex::WindowIndex(const ViewingWindow& window)
    : size_d_(window.size_d()), window_index_(window.index) {
    std::size_t total = 0;
    for (const auto& tuple : window.tuples) {
        total += tuple.length();
        max_tuple_length_ = std::max(max_tuple_length_, tuple.length());
        for (const AlarmType& t : tuple.types())
            if (id_of_.emplace(t, 0).second) types_.push_back(t);
    }
    std::sort(types_.begin(), types_.end());
    for (std::size_t i = 0; i < types_.size(); ++i)
        id_of_[types_[i]] = static_cast<int>(i);

    type_ids_.reserve(total);
    times_.reserve(total);
    positions_.resize(types_.size());
    for (const auto& tuple : window.tuples) {
        for (const AlarmType& t : tuple.types()) {
            int id = id_of_.find(t)->second;
            positions_[id].push_back(type_ids_.size());
            type_ids_.push_back(id);
            times_.push_back(tuple.time());
        }
    }
}

int WindowIndex::type_id(const AlarmType& t) const {
    auto it = id_of_.find(t);
    return it == id_of_.end() ? -1 : it->second;
}

OccurrenceReport robust_count(const TypeSequence& alpha, const WindowIndex& index,
                              std::size_t win_add) {
    const std::size_t m = alpha.length();
    OccurrenceReport report;
    report.windows = SearchWindows::for_length(m, win_add);

    std::vector<int> ids(m);
    for (std::size_t i = 0; i < m; ++i) {
        ids[i] = index.type_id(alpha[i]);
        if (ids[i] < 0) return report; // type never occurs: count 0
    }

    const std::size_t n = index.event_count();
    const std::size_t win = report.windows.win_seq;
    const auto& head_positions = index.positions(ids[0]);

    std::size_t work = 0;
    std::vector<std::size_t> hits;
    hits.reserve(m);

    std::size_t hp = 0;
    while (hp < head_positions.size()) {
        const std::size_t cursor = head_positions[hp];
        ++work;
        if (cursor + m > n) break; // fewer than m events remain, no match can fit

        const std::size_t end = std::min(n, cursor + win); // exclusive
        hits.clear();
        hits.push_back(cursor);
        std::size_t p = 1;
        for (std::size_t q = cursor + 1; q < end && p < m; ++q) {
            ++work;
            if (index.type_id_at(q) == ids[p]) {
                hits.push_back(q);
                ++p;
            }
        }

        if (p == m) {
            Match match;
            match.event_indices = hits;
            match.times.reserve(m);
            for (std::size_t pos : hits) match.times.push_back(index.time_at(pos));
            report.matches.push_back(std::move(match));
            const std::size_t last = hits.back();
            while (hp < head_positions.size() && head_positions[hp] <= last) {
                ++hp;
                ++work;
            }
        } else {
            ++hp;
        }
    }

    report.count = report.matches.size();
    report.support =
        index.size_d() ? static_cast<double>(report.count) / static_cast<double>(index.size_d())
                       : 0.0;
    report.work_steps = work;
    return report;
}

OccurrenceReport robust_count(const TypeSequence& alpha, const ViewingWindow& window,
                              std::size_t win_add) {
    return robust_count(alpha, WindowIndex(window), win_add);
}

double support(const TypeSequence& alpha, const ViewingWindow& window, std::size_t win_add) {
    if (window.size_d() == 0)
        throw DomainError("support undefined on an empty window");
    return robust_count(alpha, window, win_add).support;
}

} // namespace almine
