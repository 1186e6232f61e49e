#include "almine/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace almine {

AlarmType synth_type(std::uint32_t num) {
    return AlarmType{1, 1, num, "sim"};
}

void SynthSpec::validate() const {
    if (alphabet_size == 0) throw ConfigError("alphabet_size must be positive");
    if (total_events == 0) throw ConfigError("total_events must be positive");
    if (noise_rate < 0.0 || noise_rate > 1.0) throw ConfigError("noise_rate must be in [0,1]");
    if (base_rate <= 0.0) throw ConfigError("base_rate must be positive");
    if (burstiness.empty()) throw ConfigError("burstiness schedule must be non-empty");
    for (double m : burstiness)
        if (m <= 0.0) throw ConfigError("burstiness multipliers must be positive");
    if (background_zipf < 0.0) throw ConfigError("background_zipf must be non-negative");

    std::set<AlarmType> seen;
    for (const PlantSpec& plant : plants) {
        if (plant.occurrences == 0) throw ConfigError("plant occurrences must be positive");
        if (plant.mean_gap_seconds < 0.0) throw ConfigError("plant mean gap must be >= 0");
        if (plant.pattern.has_repeated_type())
            throw ConfigError("planted patterns must have distinct elements");
        if (win_add_target && plant.max_noise_per_occurrence > *win_add_target)
            throw ConfigError("plant noise budget exceeds the win_add target");
        for (const AlarmType& t : plant.pattern.elements()) {
            if (t.object_class != 1 || t.object_instance != 1 || t.alarm_num >= alphabet_size)
                throw ConfigError("plant type " + t.key_string() + " outside the alphabet");
            if (!seen.insert(t).second)
                throw ConfigError("planted patterns must be pairwise type-disjoint");
        }
    }
    if (!plants.empty() && seen.size() >= alphabet_size)
        throw ConfigError("alphabet leaves no background types");
}

std::size_t PatternRecord::expected_min_occur(std::size_t win_add) const {
    std::size_t n = 0;
    for (const OccurrenceRecord& occ : occurrences)
        if (occ.noise_count <= win_add) ++n;
    return n;
}

namespace {

struct Emitted {
    Timestamp time = 0;
    std::uint32_t num = 0;
    int plant = -1; // pattern index, -1 = background
    std::size_t occurrence = 0;
    std::size_t element = 0; // position within the pattern
    bool noise = false;      // injected inside an occurrence
};

// Draws background type numbers with optional Zipf skew toward low numbers.
class BackgroundDraw {
public:
    BackgroundDraw(std::vector<std::uint32_t> nums, double zipf) : nums_(std::move(nums)) {
        cdf_.reserve(nums_.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < nums_.size(); ++i) {
            acc += 1.0 / std::pow(static_cast<double>(i + 1), zipf);
            cdf_.push_back(acc);
        }
    }

    std::uint32_t operator()(std::mt19937_64& rng) const {
        double u = std::uniform_real_distribution<double>(0.0, cdf_.back())(rng);
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        return nums_[std::min<std::size_t>(it - cdf_.begin(), nums_.size() - 1)];
    }

    std::size_t size() const { return nums_.size(); }

private:
    std::vector<std::uint32_t> nums_;
    std::vector<double> cdf_;
};

} // namespace

SynthResult generate(const SynthSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.rng_seed);

    std::unordered_set<std::uint32_t> planted_nums;
    for (const PlantSpec& plant : spec.plants)
        for (const AlarmType& t : plant.pattern.elements())
            planted_nums.insert(t.alarm_num);
    std::vector<std::uint32_t> bg_nums;
    for (std::uint32_t n = 0; n < spec.alphabet_size; ++n)
        if (!planted_nums.contains(n)) bg_nums.push_back(n);
    BackgroundDraw draw_bg(bg_nums, spec.background_zipf);

    // Round-robin occurrence schedule across patterns.
    struct Slot {
        std::size_t plant;
        std::size_t occurrence;
        std::size_t noise; // injected count drawn up front (budget-feasibility)
    };
    std::vector<Slot> schedule;
    std::size_t max_occ = 0;
    for (const PlantSpec& p : spec.plants) max_occ = std::max(max_occ, p.occurrences);
    for (std::size_t k = 0; k < max_occ; ++k)
        for (std::size_t pi = 0; pi < spec.plants.size(); ++pi)
            if (k < spec.plants[pi].occurrences) schedule.push_back({pi, k, 0});

    std::size_t plant_events = 0;
    for (const PlantSpec& p : spec.plants) plant_events += p.pattern.length() * p.occurrences;
    std::size_t injected_total = 0;
    for (Slot& slot : schedule) {
        const std::size_t budget = spec.plants[slot.plant].max_noise_per_occurrence;
        slot.noise = std::uniform_int_distribution<std::size_t>(0, budget)(rng);
        injected_total += slot.noise;
    }

    if (plant_events + injected_total > spec.total_events)
        throw ConfigError("planted events exceed the total event budget");
    const std::size_t background_count = spec.total_events - plant_events - injected_total;
    if (static_cast<double>(background_count) <
        std::floor(spec.noise_rate * static_cast<double>(spec.total_events)))
        throw ConfigError("plants leave less background than noise_rate reserves");
    if (background_count > 0 && bg_nums.empty())
        throw ConfigError("no background types available");

    // Background stretches around the occurrences, evenly sized.
    const std::size_t n_stretches = schedule.size() + 1;
    std::vector<std::size_t> stretch(n_stretches, background_count / n_stretches);
    for (std::size_t i = 0; i < background_count % n_stretches; ++i) ++stretch[i];

    std::vector<Emitted> events;
    events.reserve(spec.total_events);
    Timestamp now = 0;
    std::unordered_set<std::uint32_t> used_now; // types already emitted at `now`

    auto advance = [&](Timestamp dt) {
        if (dt > 0) {
            now += dt;
            used_now.clear();
        }
    };

    auto emit_background = [&](std::size_t count, double multiplier) {
        std::exponential_distribution<double> gap(spec.base_rate * multiplier);
        for (std::size_t i = 0; i < count; ++i) {
            advance(std::llround(gap(rng)));
            std::uint32_t num = 0;
            for (int tries = 0;; ++tries) {
                num = draw_bg(rng);
                if (!used_now.contains(num)) break;
                if (tries >= 15 || used_now.size() >= draw_bg.size()) {
                    advance(1);
                    num = draw_bg(rng);
                    break;
                }
            }
            used_now.insert(num);
            events.push_back(Emitted{now, num, -1, 0, 0, false});
        }
    };

    std::vector<std::vector<OccurrenceRecord>> records(spec.plants.size());
    for (std::size_t pi = 0; pi < spec.plants.size(); ++pi)
        records[pi].resize(spec.plants[pi].occurrences);

    auto emit_occurrence = [&](const Slot& slot) {
        const PlantSpec& plant = spec.plants[slot.plant];
        const std::size_t m = plant.pattern.length();
        advance(1);

        std::vector<Timestamp> times(m);
        times[0] = now;
        std::uniform_real_distribution<double> jitter(0.8, 1.2);
        for (std::size_t k = 1; k < m; ++k) {
            Timestamp gap = 0;
            if (plant.mean_gap_seconds > 0.0)
                gap = std::max<Timestamp>(
                    1, std::llround(plant.mean_gap_seconds * jitter(rng)));
            times[k] = times[k - 1] + gap;
        }

        // Distribute injected noise over the inter-element slots that have
        // room for distinct interior seconds; overflow is dropped so the
        // recorded noise count stays truthful.
        std::vector<std::size_t> capacity(m > 1 ? m - 1 : 0);
        for (std::size_t s = 0; s + 1 < m; ++s) {
            Timestamp span = times[s + 1] - times[s];
            capacity[s] = span > 1 ? static_cast<std::size_t>(span - 1) : 0;
        }
        std::vector<std::size_t> per_slot(capacity.size(), 0);
        std::size_t placed = 0;
        for (std::size_t i = 0; i < slot.noise; ++i) {
            std::vector<std::size_t> open;
            for (std::size_t s = 0; s < capacity.size(); ++s)
                if (per_slot[s] < capacity[s]) open.push_back(s);
            if (open.empty()) break;
            std::size_t pick =
                open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
            ++per_slot[pick];
            ++placed;
        }

        OccurrenceRecord record;
        record.noise_count = placed;
        for (std::size_t k = 0; k < m; ++k)
            events.push_back(Emitted{times[k], plant.pattern[k].alarm_num,
                                     static_cast<int>(slot.plant), slot.occurrence, k, false});
        for (std::size_t s = 0; s < per_slot.size(); ++s) {
            if (per_slot[s] == 0) continue;
            std::vector<Timestamp> interior(capacity[s]);
            std::iota(interior.begin(), interior.end(), times[s] + 1);
            for (std::size_t i = 0; i < per_slot[s]; ++i) {
                std::size_t j = std::uniform_int_distribution<std::size_t>(
                    i, interior.size() - 1)(rng);
                std::swap(interior[i], interior[j]);
                events.push_back(Emitted{interior[i], draw_bg(rng),
                                         static_cast<int>(slot.plant), slot.occurrence, 0, true});
            }
        }

        records[slot.plant][slot.occurrence] = std::move(record);
        now = times[m - 1];
        used_now.clear();
        advance(1);
    };

    std::size_t burst_i = 0;
    for (std::size_t s = 0; s < schedule.size(); ++s) {
        emit_background(stretch[s], spec.burstiness[burst_i++ % spec.burstiness.size()]);
        emit_occurrence(schedule[s]);
    }
    emit_background(stretch[schedule.size()],
                    spec.burstiness[burst_i % spec.burstiness.size()]);

    // Flattened order after ingest: time, then canonical type order. No two
    // events share (time, type), so this is a strict total order.
    std::vector<std::size_t> order(events.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (events[a].time != events[b].time) return events[a].time < events[b].time;
        return events[a].num < events[b].num;
    });
    std::vector<std::size_t> flat_of(events.size());
    for (std::size_t i = 0; i < order.size(); ++i) flat_of[order[i]] = i;

    std::string log;
    log.reserve(events.size() * 16);
    char line[64];
    for (std::size_t i : order) {
        std::snprintf(line, sizeof(line), "%lld,1,1,%u,sim\n",
                      static_cast<long long>(events[i].time), events[i].num);
        log += line;
    }

    for (std::size_t i = 0; i < events.size(); ++i) {
        const Emitted& e = events[i];
        if (e.plant < 0) continue;
        OccurrenceRecord& record = records[e.plant][e.occurrence];
        if (e.noise) {
            record.noise_indices.push_back(flat_of[i]);
        } else {
            if (record.event_indices.empty()) {
                record.event_indices.resize(spec.plants[e.plant].pattern.length());
                record.event_times.resize(spec.plants[e.plant].pattern.length());
            }
            record.event_indices[e.element] = flat_of[i];
            record.event_times[e.element] = e.time;
        }
    }
    for (auto& plant_records : records)
        for (OccurrenceRecord& record : plant_records)
            std::sort(record.noise_indices.begin(), record.noise_indices.end());

    SynthResult result{std::move(log), Manifest{}};
    result.manifest.alphabet_size = spec.alphabet_size;
    result.manifest.total_events = spec.total_events;
    result.manifest.rng_seed = spec.rng_seed;
    for (std::size_t pi = 0; pi < spec.plants.size(); ++pi) {
        PatternRecord rec{spec.plants[pi].pattern, spec.plants[pi].mean_gap_seconds,
                          spec.plants[pi].max_noise_per_occurrence, std::move(records[pi])};
        result.manifest.patterns.push_back(std::move(rec));
    }
    return result;
}

std::string Manifest::to_json() const {
    nlohmann::json j;
    j["alphabet_size"] = alphabet_size;
    j["total_events"] = total_events;
    j["rng_seed"] = rng_seed;
    j["patterns"] = nlohmann::json::array();
    for (const PatternRecord& p : patterns) {
        nlohmann::json jp;
        jp["pattern"] = nlohmann::json::array();
        for (const AlarmType& t : p.pattern.elements()) jp["pattern"].push_back(t.key_string());
        jp["mean_gap_seconds"] = p.mean_gap_seconds;
        jp["max_noise_per_occurrence"] = p.max_noise_per_occurrence;
        jp["occurrences"] = nlohmann::json::array();
        for (const OccurrenceRecord& o : p.occurrences) {
            nlohmann::json jo;
            jo["event_indices"] = o.event_indices;
            jo["event_times"] = o.event_times;
            jo["noise_indices"] = o.noise_indices;
            jo["noise_count"] = o.noise_count;
            jp["occurrences"].push_back(std::move(jo));
        }
        j["patterns"].push_back(std::move(jp));
    }
    return j.dump(2) + "\n";
}

Manifest Manifest::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Manifest m;
    m.alphabet_size = j.at("alphabet_size").get<std::size_t>();
    m.total_events = j.at("total_events").get<std::size_t>();
    m.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    for (const auto& jp : j.at("patterns")) {
        std::vector<AlarmType> types;
        for (const auto& key : jp.at("pattern"))
            types.push_back(AlarmType::from_key_string(key.get<std::string>()));
        PatternRecord rec{TypeSequence(std::move(types)),
                          jp.at("mean_gap_seconds").get<double>(),
                          jp.at("max_noise_per_occurrence").get<std::size_t>(),
                          {}};
        for (const auto& jo : jp.at("occurrences")) {
            OccurrenceRecord o;
            o.event_indices = jo.at("event_indices").get<std::vector<std::size_t>>();
            o.event_times = jo.at("event_times").get<std::vector<Timestamp>>();
            o.noise_indices = jo.at("noise_indices").get<std::vector<std::size_t>>();
            o.noise_count = jo.at("noise_count").get<std::size_t>();
            rec.occurrences.push_back(std::move(o));
        }
        m.patterns.push_back(std::move(rec));
    }
    return m;
}

} // namespace almine
