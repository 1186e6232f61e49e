#pragma once

// Shared helpers for building small queues and sequences from int symbols.

#include <utility>
#include <vector>

#include "almine/alarm_model.hpp"

namespace fixtures {

inline almine::AlarmType type(int num) {
    return almine::AlarmType{1, 1, static_cast<std::uint32_t>(num), ""};
}

inline almine::TypeSequence seq(const std::vector<int>& nums) {
    std::vector<almine::AlarmType> types;
    types.reserve(nums.size());
    for (int n : nums) types.push_back(type(n));
    return almine::TypeSequence(std::move(types));
}

// One singleton tuple per symbol, times 0,1,2,...
inline almine::AlarmQueue serial_queue(const std::vector<int>& nums) {
    std::vector<almine::AlarmTuple> tuples;
    almine::Timestamp t = 0;
    for (int n : nums) tuples.emplace_back(std::vector<almine::AlarmType>{type(n)}, t++);
    return almine::AlarmQueue(std::move(tuples));
}

inline almine::AlarmQueue queue(
    const std::vector<std::pair<std::vector<int>, almine::Timestamp>>& tuples) {
    std::vector<almine::AlarmTuple> built;
    for (const auto& [nums, t] : tuples) {
        std::vector<almine::AlarmType> types;
        for (int n : nums) types.push_back(type(n));
        built.emplace_back(std::move(types), t);
    }
    return almine::AlarmQueue(std::move(built));
}

inline almine::ViewingWindow whole(const almine::AlarmQueue& q, std::size_t index = 0) {
    return almine::ViewingWindow{std::span<const almine::AlarmTuple>(q.tuples()), index};
}

} // namespace fixtures
