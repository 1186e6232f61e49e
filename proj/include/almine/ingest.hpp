#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <vector>

#include "almine/alarm_model.hpp"

namespace almine {

enum class TimestampFormat { EpochSeconds, Iso8601 };

// Log record layout: one event per line, fields in order
//   timestamp, object_class, object_instance, alarm_num, desc
// desc may be double-quoted to contain the delimiter ("" escapes a quote).
// Blank lines and lines starting with '#' are skipped.
struct IngestConfig {
    TimestampFormat timestamp_format = TimestampFormat::EpochSeconds;
    char delimiter = ',';
    std::int64_t bucket_seconds = 1; // events within one bucket form a tuple

    void validate() const;
};

struct WindowingSpec {
    enum class Mode { WholeLog, Tumbling };
    Mode mode = Mode::WholeLog;
    std::size_t d = 0; // tuple count per window, tumbling only

    void validate() const;
};

// Parses a log into a queue: input is sorted by timestamp, events sharing a
// bucket merge into one tuple, and a type repeated within one bucket
// collapses to a single entry. Empty input yields an empty queue.
// Malformed lines raise ParseError carrying the line number.
AlarmQueue parse_log(std::istream& in, const IngestConfig& config = {});
AlarmQueue parse_log_file(const std::filesystem::path& path,
                          const IngestConfig& config = {});

// WholeLog: a single window covering the queue. Tumbling: consecutive
// non-overlapping slices of d tuples, last one possibly shorter. Windows
// refer into the queue; the queue must outlive them.
std::vector<ViewingWindow> windows(const AlarmQueue& queue, const WindowingSpec& spec);

} // namespace almine
