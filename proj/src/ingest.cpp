#include "almine/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>

namespace almine {

void IngestConfig::validate() const {
    if (bucket_seconds < 1)
        throw ConfigError("tuple bucket must be at least one second");
    if (delimiter == '"' || delimiter == '\n' || delimiter == '\r')
        throw ConfigError("delimiter conflicts with quoting rules");
}

void WindowingSpec::validate() const {
    if (mode == Mode::Tumbling && d == 0)
        throw ConfigError("tumbling window size d must be positive");
}

namespace {

// Splits one record into fields; a field may be double-quoted, with ""
// escaping a quote inside. The delimiter is only data inside quotes.
std::vector<std::string> split_fields(const std::string& line, char delim, std::size_t lineno) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw ParseError("unterminated quote", lineno);
    fields.push_back(std::move(cur));
    return fields;
}

std::uint32_t parse_u32(const std::string& text, const char* what, std::size_t lineno) {
    std::uint32_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [next, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || next != last || first == last)
        throw ParseError(std::string("bad ") + what + " '" + text + "'", lineno);
    return value;
}

Timestamp parse_timestamp(const std::string& text, TimestampFormat format, std::size_t lineno) {
    if (format == TimestampFormat::EpochSeconds) {
        Timestamp value = 0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        auto [next, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || next != last || first == last || value < 0)
            throw ParseError("bad timestamp '" + text + "'", lineno);
        return value;
    }
    // ISO 8601, seconds resolution; 'T' or space separator, treated as UTC.
    std::tm tm{};
    int y, mo, d, h, mi, s;
    char sep;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &s) != 7 ||
        (sep != 'T' && sep != ' '))
        throw ParseError("bad ISO 8601 timestamp '" + text + "'", lineno);
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = s;
    std::time_t t = timegm(&tm);
    if (t < 0)
        throw ParseError("timestamp before epoch '" + text + "'", lineno);
    return static_cast<Timestamp>(t);
}

} // namespace

AlarmQueue parse_log(std::istream& in, const IngestConfig& config) {
    config.validate();

    struct Parsed {
        Timestamp bucket;
        AlarmType type;
        std::size_t order; // input order, ties broken deterministically
    };
    std::vector<Parsed> events;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        auto fields = split_fields(line, config.delimiter, lineno);
        if (fields.size() != 5)
            throw ParseError("expected 5 fields, got " + std::to_string(fields.size()), lineno);

        Timestamp t = parse_timestamp(fields[0], config.timestamp_format, lineno);
        AlarmType type{parse_u32(fields[1], "object_class", lineno),
                       parse_u32(fields[2], "object_instance", lineno),
                       parse_u32(fields[3], "alarm_num", lineno), fields[4]};
        Timestamp bucket = (t / config.bucket_seconds) * config.bucket_seconds;
        events.push_back(Parsed{bucket, std::move(type), events.size()});
    }

    // Real exports are only near-sorted; order by bucket, then canonical type
    // order inside a bucket, keeping input order for exact duplicates so the
    // first desc wins.
    std::sort(events.begin(), events.end(), [](const Parsed& a, const Parsed& b) {
        if (a.bucket != b.bucket) return a.bucket < b.bucket;
        if (a.type != b.type) return a.type < b.type;
        return a.order < b.order;
    });

    std::vector<AlarmTuple> tuples;
    std::size_t i = 0;
    while (i < events.size()) {
        std::size_t j = i;
        std::vector<AlarmType> types;
        while (j < events.size() && events[j].bucket == events[i].bucket) {
            if (types.empty() || !(types.back() == events[j].type))
                types.push_back(events[j].type);
            ++j;
        }
        tuples.emplace_back(std::move(types), events[i].bucket);
        i = j;
    }
    return AlarmQueue(std::move(tuples));
}

AlarmQueue parse_log_file(const std::filesystem::path& path, const IngestConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path.string() + "'");
    return parse_log(in, config);
}

std::vector<ViewingWindow> windows(const AlarmQueue& queue, const WindowingSpec& spec) {
    spec.validate();
    std::span<const AlarmTuple> all(queue.tuples());
    std::vector<ViewingWindow> out;
    if (spec.mode == WindowingSpec::Mode::WholeLog) {
        out.push_back(ViewingWindow{all, 0});
        return out;
    }
    for (std::size_t start = 0, k = 0; start < all.size(); start += spec.d, ++k)
        out.push_back(ViewingWindow{all.subspan(start, std::min(spec.d, all.size() - start)), k});
    return out;
}

} // namespace almine
