#include "almine/alarm_model.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace almine {

std::string AlarmType::key_string() const {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%u.%u.%u", object_class, object_instance, alarm_num);
    return buf;
}

AlarmType AlarmType::from_key_string(const std::string& text) {
    std::uint32_t parts[3] = {0, 0, 0};
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int i = 0; i < 3; ++i) {
        auto [next, ec] = std::from_chars(p, end, parts[i]);
        if (ec != std::errc{} || next == p)
            throw ParseError("bad alarm type key '" + text + "'");
        p = next;
        if (i < 2) {
            if (p == end || *p != '.')
                throw ParseError("bad alarm type key '" + text + "'");
            ++p;
        }
    }
    if (p != end)
        throw ParseError("bad alarm type key '" + text + "'");
    return AlarmType{parts[0], parts[1], parts[2], ""};
}

std::size_t AlarmTypeHash::operator()(const AlarmType& t) const noexcept {
    std::size_t h = t.object_class;
    h = h * 0x9e3779b97f4a7c15ULL + t.object_instance;
    h = h * 0x9e3779b97f4a7c15ULL + t.alarm_num;
    return h;
}

AlarmTuple::AlarmTuple(std::vector<AlarmType> types, Timestamp time)
    : types_(std::move(types)), time_(time) {
    if (types_.empty())
        throw DomainError("alarm tuple must contain at least one type");
    std::stable_sort(types_.begin(), types_.end());
    types_.erase(std::unique(types_.begin(), types_.end()), types_.end());
}

AlarmQueue::AlarmQueue(std::vector<AlarmTuple> tuples) : tuples_(std::move(tuples)) {
    for (std::size_t i = 1; i < tuples_.size(); ++i) {
        if (tuples_[i - 1].time() >= tuples_[i].time())
            throw DomainError("alarm queue times must strictly increase");
    }
}

std::size_t AlarmQueue::event_count() const noexcept {
    std::size_t n = 0;
    for (const auto& t : tuples_) n += t.length();
    return n;
}

std::size_t AlarmQueue::distinct_type_count() const {
    std::vector<AlarmType> all;
    all.reserve(event_count());
    for (const auto& t : tuples_)
        all.insert(all.end(), t.types().begin(), t.types().end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all.size();
}

TypeSequence::TypeSequence(std::vector<AlarmType> elements) : elements_(std::move(elements)) {
    if (elements_.empty())
        throw DomainError("type sequence must be non-empty");
}

TypeSequence::TypeSequence(std::initializer_list<AlarmType> elements)
    : TypeSequence(std::vector<AlarmType>(elements)) {}

TypeSequence TypeSequence::prefix(std::size_t n) const {
    if (n == 0 || n > length())
        throw DomainError("prefix length out of range");
    return TypeSequence(std::vector<AlarmType>(elements_.begin(), elements_.begin() + n));
}

TypeSequence TypeSequence::suffix(std::size_t n) const {
    if (n == 0 || n > length())
        throw DomainError("suffix length out of range");
    return TypeSequence(std::vector<AlarmType>(elements_.end() - n, elements_.end()));
}

TypeSequence TypeSequence::without(std::size_t i) const {
    if (i >= length())
        throw DomainError("deletion position out of range");
    if (length() == 1)
        throw DomainError("cannot delete the only element");
    std::vector<AlarmType> rest;
    rest.reserve(length() - 1);
    for (std::size_t k = 0; k < length(); ++k)
        if (k != i) rest.push_back(elements_[k]);
    return TypeSequence(std::move(rest));
}

TypeSequence TypeSequence::with_appended(const AlarmType& t) const {
    std::vector<AlarmType> ext = elements_;
    ext.push_back(t);
    return TypeSequence(std::move(ext));
}

bool TypeSequence::has_repeated_type() const {
    std::vector<AlarmType> sorted = elements_;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

std::string TypeSequence::key_string(const std::string& sep) const {
    std::string out;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (i) out += sep;
        out += elements_[i].key_string();
    }
    return out;
}

bool operator==(const TypeSequence& a, const TypeSequence& b) noexcept {
    return a.elements_ == b.elements_;
}

bool operator<(const TypeSequence& a, const TypeSequence& b) noexcept {
    return std::lexicographical_compare(a.elements_.begin(), a.elements_.end(),
                                        b.elements_.begin(), b.elements_.end());
}

Arrangement classify_queue(const AlarmQueue& queue) {
    if (queue.empty())
        throw DomainError("cannot classify an empty queue");
    for (const auto& t : queue.tuples())
        if (t.length() > 1) return Arrangement::Parallel;
    return Arrangement::Serial;
}

Arrangement classify_sequence(const TimeWeight& weight) {
    for (double g : weight.gaps)
        if (g == 0.0) return Arrangement::Parallel;
    return Arrangement::Serial;
}

bool contains(const TypeSequence& alpha, const TypeSequence& beta) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < beta.length() && i < alpha.length(); ++j)
        if (alpha[i] == beta[j]) ++i;
    return i == alpha.length();
}

TimeWeight time_weight(const TypeSequence& seq,
                       std::span<const std::vector<Timestamp>> matches) {
    if (matches.empty())
        throw DomainError("time weight undefined without recorded occurrences");
    const std::size_t m = seq.length();
    TimeWeight weight;
    if (m == 1) return weight;
    weight.gaps.assign(m - 1, 0.0);
    for (const auto& match : matches) {
        if (match.size() != m)
            throw DomainError("match vector length does not equal sequence length");
        for (std::size_t k = 0; k + 1 < m; ++k) {
            if (match[k + 1] < match[k])
                throw DomainError("match timestamps must be non-decreasing");
            weight.gaps[k] += static_cast<double>(match[k + 1] - match[k]);
        }
    }
    for (double& g : weight.gaps) g /= static_cast<double>(matches.size());
    return weight;
}

} // namespace almine
