#include "almine/miner.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace almine {

void MiningConfig::validate() const {
    if (min_occur.has_value() == min_support.has_value())
        throw ConfigError("exactly one of min_occur / min_support must be set");
    if (min_support && (*min_support <= 0.0 || *min_support > 1.0))
        throw ConfigError("relative min_support must be in (0,1]");
    if (max_len && *max_len == 0)
        throw ConfigError("max_len must be positive when set");
}

bool MiningConfig::meets_threshold(const OccurrenceReport& report) const {
    if (min_occur) return report.count >= *min_occur;
    return report.support >= *min_support;
}

std::size_t FrequentSet::total_count() const {
    std::size_t n = 0;
    for (const auto& [len, level] : levels) n += level.size();
    return n;
}

const OccurrenceReport* FrequentSet::find(const TypeSequence& seq) const {
    auto lit = levels.find(seq.length());
    if (lit == levels.end()) return nullptr;
    auto it = lit->second.find(seq);
    return it == lit->second.end() ? nullptr : &it->second;
}

std::vector<TypeSequence> seed_candidates(const ViewingWindow& window) {
    WindowIndex index(window);
    std::vector<TypeSequence> out;
    out.reserve(index.distinct_types().size());
    for (const AlarmType& t : index.distinct_types())
        out.push_back(TypeSequence{t});
    return out;
}

std::vector<TypeSequence> gen_candidates(std::span<const TypeSequence> level, PruneMode mode,
                                         bool allow_repeats) {
    if (level.empty()) return {};
    const std::size_t m = level.front().length();
    for (const TypeSequence& s : level)
        if (s.length() != m)
            throw ConfigError("gen_candidates requires sequences of one length");

    std::set<TypeSequence> frequent(level.begin(), level.end());
    std::set<TypeSequence> out;
    for (const TypeSequence& a : frequent) {
        for (const TypeSequence& b : frequent) {
            // join condition: a's length-(m-1) suffix equals b's prefix
            bool joinable = true;
            for (std::size_t k = 1; k < m && joinable; ++k)
                joinable = a[k] == b[k - 1];
            if (!joinable) continue;

            TypeSequence candidate = a.with_appended(b.back());
            if (!allow_repeats && candidate.has_repeated_type()) continue;
            if (out.contains(candidate)) continue;

            bool keep = true;
            if (mode == PruneMode::AllDeletions) {
                for (std::size_t i = 0; i <= m && keep; ++i)
                    keep = frequent.contains(candidate.without(i));
            } else {
                keep = frequent.contains(candidate.without(0)) &&
                       frequent.contains(candidate.without(m));
            }
            if (keep) out.insert(std::move(candidate));
        }
    }
    return {out.begin(), out.end()};
}

FrequentSet mine_frequent(const WindowIndex& index, const MiningConfig& config) {
    config.validate();
    if (index.size_d() == 0)
        throw DomainError("cannot mine an empty window");

    FrequentSet out;
    out.window_index = index.window_index();
    out.window_size_d = index.size_d();
    out.config = config;

    std::vector<TypeSequence> candidates;
    candidates.reserve(index.distinct_types().size());
    for (const AlarmType& t : index.distinct_types())
        candidates.push_back(TypeSequence{t});

    std::size_t m = 1;
    while (!candidates.empty()) {
        if (config.max_len && m > *config.max_len) break;

        std::map<TypeSequence, OccurrenceReport> level;
        for (TypeSequence& cand : candidates) {
            OccurrenceReport report = robust_count(cand, index, config.win_add);
            if (config.meets_threshold(report))
                level.emplace(std::move(cand), std::move(report));
        }
        if (level.empty()) break;

        std::vector<TypeSequence> seqs;
        seqs.reserve(level.size());
        for (const auto& [seq, report] : level) seqs.push_back(seq);

        out.levels.emplace(m, std::move(level));
        candidates = gen_candidates(seqs, config.prune_mode, config.allow_repeats);
        ++m;
    }
    return out;
}

FrequentSet mine_frequent(const ViewingWindow& window, const MiningConfig& config) {
    return mine_frequent(WindowIndex(window), config);
}

void write_frequent_report(std::ostream& out, const FrequentSet& freq) {
    char buf[64];
    out << "# window " << freq.window_index << " size_d=" << freq.window_size_d;
    if (freq.config.min_occur)
        out << " min_occur=" << *freq.config.min_occur;
    if (freq.config.min_support) {
        std::snprintf(buf, sizeof(buf), "%g", *freq.config.min_support);
        out << " min_support=" << buf;
    }
    out << " win_add=" << freq.config.win_add << " prune="
        << (freq.config.prune_mode == PruneMode::AllDeletions ? "all" : "endpoints") << "\n";
    for (const auto& [len, level] : freq.levels) {
        for (const auto& [seq, report] : level) {
            std::snprintf(buf, sizeof(buf), "%.6f", report.support);
            out << len << ',' << seq.key_string(" ") << ',' << report.count << ',' << buf << "\n";
        }
    }
}

} // namespace almine
