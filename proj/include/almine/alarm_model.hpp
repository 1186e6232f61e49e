#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "almine/errors.hpp"

namespace almine {

// Seconds since epoch. All log timestamps are kept at seconds resolution.
using Timestamp = std::int64_t;

// One kind of alarm. Identity (equality, ordering, hashing) is the triple
// (object_class, object_instance, alarm_num); desc is payload and never
// participates in comparisons.
struct AlarmType {
    std::uint32_t object_class = 0;
    std::uint32_t object_instance = 0;
    std::uint32_t alarm_num = 0;
    std::string desc;

    std::tuple<std::uint32_t, std::uint32_t, std::uint32_t> key() const noexcept {
        return {object_class, object_instance, alarm_num};
    }

    // "class.instance.num", the form used in reports and rule text.
    std::string key_string() const;
    static AlarmType from_key_string(const std::string& text);

    friend bool operator==(const AlarmType& a, const AlarmType& b) noexcept {
        return a.key() == b.key();
    }
    friend std::strong_ordering operator<=>(const AlarmType& a, const AlarmType& b) noexcept {
        return a.key() <=> b.key();
    }
};

struct AlarmTypeHash {
    std::size_t operator()(const AlarmType& t) const noexcept;
};

// A single timestamped alarm occurrence.
struct AlarmEvent {
    AlarmType type;
    Timestamp time = 0;
};

// The alarm types that occur at one timestamp. Types are kept in canonical
// ascending key order and are unique within the tuple.
class AlarmTuple {
public:
    AlarmTuple(std::vector<AlarmType> types, Timestamp time);

    const std::vector<AlarmType>& types() const noexcept { return types_; }
    Timestamp time() const noexcept { return time_; }
    std::size_t length() const noexcept { return types_.size(); }

private:
    std::vector<AlarmType> types_;
    Timestamp time_;
};

// Tuples in strictly increasing time order.
class AlarmQueue {
public:
    AlarmQueue() = default;
    explicit AlarmQueue(std::vector<AlarmTuple> tuples);

    const std::vector<AlarmTuple>& tuples() const noexcept { return tuples_; }
    std::size_t length() const noexcept { return tuples_.size(); }
    bool empty() const noexcept { return tuples_.empty(); }

    // Total number of alarm events across all tuples.
    std::size_t event_count() const noexcept;
    std::size_t distinct_type_count() const;

private:
    std::vector<AlarmTuple> tuples_;
};

// A contiguous run of tuples under analysis. Size is measured in tuples,
// never in elapsed time. Non-owning; the queue must outlive the window.
struct ViewingWindow {
    std::span<const AlarmTuple> tuples;
    std::size_t index = 0;

    std::size_t size_d() const noexcept { return tuples.size(); }
};

// An ordered, non-empty list of alarm types: the unit of candidates,
// frequent patterns and rule sides.
class TypeSequence {
public:
    explicit TypeSequence(std::vector<AlarmType> elements);
    TypeSequence(std::initializer_list<AlarmType> elements);

    const std::vector<AlarmType>& elements() const noexcept { return elements_; }
    std::size_t length() const noexcept { return elements_.size(); }
    const AlarmType& operator[](std::size_t i) const noexcept { return elements_[i]; }
    const AlarmType& front() const noexcept { return elements_.front(); }
    const AlarmType& back() const noexcept { return elements_.back(); }

    TypeSequence prefix(std::size_t n) const;
    TypeSequence suffix(std::size_t n) const;
    // Copy with the element at position i removed; length must stay >= 1.
    TypeSequence without(std::size_t i) const;
    TypeSequence with_appended(const AlarmType& t) const;
    bool has_repeated_type() const;

    // Element keys joined by sep, e.g. "1.1.7,1.1.9".
    std::string key_string(const std::string& sep = ",") const;

    friend bool operator==(const TypeSequence& a, const TypeSequence& b) noexcept;
    friend bool operator<(const TypeSequence& a, const TypeSequence& b) noexcept;

private:
    std::vector<AlarmType> elements_;
};

// Mean inter-element time gaps of a sequence across its counted occurrences;
// m-element sequences carry m-1 gaps.
struct TimeWeight {
    std::vector<double> gaps;
};

enum class Arrangement { Serial, Parallel };

// Serial iff every tuple holds exactly one type. Throws DomainError on an
// empty queue.
Arrangement classify_queue(const AlarmQueue& queue);

// Serial iff every mean gap is positive; a single-element sequence (no gaps)
// is Serial.
Arrangement classify_sequence(const TimeWeight& weight);

// Order-preserving (not necessarily contiguous) subsequence test.
bool contains(const TypeSequence& alpha, const TypeSequence& beta);

// Mean gaps over the given match timestamp vectors. Every vector must have
// exactly seq.length() non-decreasing entries; throws DomainError when the
// match list is empty or a vector is malformed.
TimeWeight time_weight(const TypeSequence& seq,
                       std::span<const std::vector<Timestamp>> matches);

} // namespace almine
