// almine: mines noise-tolerant frequent alarm sequences and correlation
// rules from alarm logs; also generates labelled synthetic corpora and the
// report series used to study window tolerance and rule measures.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "almine/ingest.hpp"
#include "almine/report.hpp"
#include "almine/rules.hpp"
#include "almine/synth.hpp"

namespace fs = std::filesystem;
using namespace almine;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool verbose() {
    const char* v = std::getenv("ALMINE_VERBOSE");
    return v && *v && std::string(v) != "0";
}

// Outputs are written next to the target and renamed into place, so a
// failing run never leaves a partial file.
void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw IoError("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

struct IngestOptions {
    std::string format = "epoch";
    std::string delimiter = ",";
    std::int64_t bucket_seconds = 1;
    std::string window = "whole";

    IngestConfig ingest_config() const {
        IngestConfig config;
        if (format == "epoch")
            config.timestamp_format = TimestampFormat::EpochSeconds;
        else if (format == "iso8601")
            config.timestamp_format = TimestampFormat::Iso8601;
        else
            throw ConfigError("unknown --format '" + format + "'");
        if (delimiter.size() != 1)
            throw ConfigError("--delimiter must be a single character");
        config.delimiter = delimiter[0];
        config.bucket_seconds = bucket_seconds;
        config.validate();
        return config;
    }

    WindowingSpec windowing() const {
        WindowingSpec spec;
        if (window == "whole") return spec;
        spec.mode = WindowingSpec::Mode::Tumbling;
        try {
            spec.d = std::stoul(window);
        } catch (const std::exception&) {
            throw ConfigError("--window expects 'whole' or a tuple count");
        }
        spec.validate();
        return spec;
    }
};

struct MiningOptions {
    std::size_t win_add = 0;
    std::size_t min_occur = 0;
    double min_support = 0.0;
    bool has_min_occur = false;
    bool has_min_support = false;
    std::size_t max_len = 0;
    std::string prune = "all";
    bool no_repeats = false;

    MiningConfig config() const {
        MiningConfig config;
        if (has_min_occur) config.min_occur = min_occur;
        if (has_min_support) config.min_support = min_support;
        if (!has_min_occur && !has_min_support) config.min_occur = 2;
        config.win_add = win_add;
        if (max_len > 0) config.max_len = max_len;
        if (prune == "all")
            config.prune_mode = PruneMode::AllDeletions;
        else if (prune == "endpoints")
            config.prune_mode = PruneMode::EndpointsOnly;
        else
            throw ConfigError("unknown --prune '" + prune + "'");
        config.allow_repeats = !no_repeats;
        config.validate();
        return config;
    }
};

struct RuleOptions {
    double min_conf = 0.0;
    std::string measure = "correlation";
    std::string split = "prefix";
    bool no_recount = false;

    RuleConfig config() const {
        RuleConfig config;
        config.min_conf = min_conf;
        if (measure == "confidence")
            config.kind = MeasureKind::Confidence;
        else if (measure == "correlation")
            config.kind = MeasureKind::Correlation;
        else
            throw ConfigError("unknown --measure '" + measure + "'");
        if (split == "prefix")
            config.split = SplitMode::PrefixOnly;
        else if (split == "all")
            config.split = SplitMode::AllSubsequences;
        else
            throw ConfigError("unknown --split '" + split + "'");
        config.recount_missing = !no_recount;
        return config;
    }
};

void add_ingest_options(CLI::App* cmd, IngestOptions& opts) {
    cmd->add_option("--format", opts.format, "timestamp format: epoch|iso8601");
    cmd->add_option("--delimiter", opts.delimiter, "field delimiter (single character)");
    cmd->add_option("--bucket-seconds", opts.bucket_seconds, "tuple grouping bucket");
    cmd->add_option("--window", opts.window, "viewing windows: whole|<tuple count>");
}

void add_mining_options(CLI::App* cmd, MiningOptions& opts) {
    cmd->add_option("--win-add", opts.win_add, "noise tolerance window");
    auto* occ = cmd->add_option("--min-occur", opts.min_occur, "absolute occurrence threshold");
    auto* sup = cmd->add_option("--min-support", opts.min_support, "relative support threshold");
    occ->excludes(sup);
    sup->excludes(occ);
    cmd->add_option("--max-len", opts.max_len, "candidate length cap, 0 = unlimited");
    cmd->add_option("--prune", opts.prune, "candidate pruning: all|endpoints");
    cmd->add_flag("--no-repeats", opts.no_repeats, "drop candidates with repeated types");
    cmd->callback([cmd, &opts] {
        opts.has_min_occur = cmd->count("--min-occur") > 0;
        opts.has_min_support = cmd->count("--min-support") > 0;
    });
}

void add_rule_options(CLI::App* cmd, RuleOptions& opts) {
    cmd->add_option("--min-conf", opts.min_conf, "measure threshold");
    cmd->add_option("--measure", opts.measure, "gate: confidence|correlation");
    cmd->add_option("--split", opts.split, "antecedent splits: prefix|all");
    cmd->add_flag("--no-recount", opts.no_recount, "skip splits whose supports are not stored");
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoul(item));
        } catch (const std::exception&) {
            throw ConfigError(std::string("bad ") + what + " list entry '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError(std::string(what) + " list is empty");
    return out;
}

PlantSpec parse_plant(const std::string& text) {
    // nums:occurrences:mean_gap:max_noise, e.g. 20,21,22:50:30:2
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4)
        throw ConfigError("--plant expects nums:occurrences:mean_gap:max_noise");
    PlantSpec plant{TypeSequence{AlarmType{}}, 0, 0.0, 0};
    std::vector<AlarmType> types;
    std::stringstream nums(parts[0]);
    while (std::getline(nums, item, ','))
        types.push_back(synth_type(static_cast<std::uint32_t>(std::stoul(item))));
    plant.pattern = TypeSequence(std::move(types));
    plant.occurrences = std::stoul(parts[1]);
    plant.mean_gap_seconds = std::stod(parts[2]);
    plant.max_noise_per_occurrence = std::stoul(parts[3]);
    return plant;
}

// Stand-in corpus for report runs without --input: mixed-length plants over
// a skewed background.
SynthSpec default_report_spec(std::uint64_t seed) {
    SynthSpec spec;
    spec.alphabet_size = 40;
    spec.total_events = 4000;
    spec.background_zipf = 0.8;
    spec.base_rate = 2.0;
    spec.burstiness = {1.0, 5.0, 0.5};
    spec.rng_seed = seed;
    spec.plants.push_back(PlantSpec{TypeSequence{synth_type(30), synth_type(31)}, 70, 20.0, 2});
    spec.plants.push_back(
        PlantSpec{TypeSequence{synth_type(32), synth_type(33), synth_type(34)}, 55, 25.0, 2});
    spec.plants.push_back(PlantSpec{
        TypeSequence{synth_type(35), synth_type(36), synth_type(37), synth_type(38)}, 40, 15.0, 4});
    return spec;
}

AlarmQueue load_queue(const std::string& input, const IngestOptions& opts,
                      bool allow_synth, bool has_seed, std::uint64_t seed) {
    if (!input.empty()) return parse_log_file(input, opts.ingest_config());
    if (!allow_synth)
        throw ConfigError("--input is required");
    if (!has_seed)
        throw ConfigError("--seed is required when no --input corpus is given");
    SynthResult built = generate(default_report_spec(seed));
    std::istringstream in(built.log_text);
    return parse_log(in);
}

int cmd_mine(const std::string& input, const std::string& output, const IngestOptions& ingest,
             const MiningOptions& mining) {
    auto started = std::chrono::steady_clock::now();
    AlarmQueue queue = parse_log_file(input, ingest.ingest_config());
    auto parts = windows(queue, ingest.windowing());

    std::ostringstream report;
    std::size_t total = 0;
    for (const ViewingWindow& window : parts) {
        if (window.size_d() == 0) continue;
        FrequentSet freq = mine_frequent(window, mining.config());
        write_frequent_report(report, freq);
        std::size_t levels = freq.levels.size();
        total += freq.total_count();
        std::cout << "window " << window.index << ": size_d=" << window.size_d()
                  << " levels=" << levels << " sequences=" << freq.total_count() << "\n";
    }
    write_file_atomic(output, report.str());

    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    std::cout << "total: windows=" << parts.size() << " sequences=" << total << " elapsed="
              << elapsed.count() << "s\n";
    return 0;
}

int cmd_rules(const std::string& input, const std::string& output, const std::string& text_output,
              const IngestOptions& ingest, const MiningOptions& mining, const RuleOptions& ropts) {
    AlarmQueue queue = parse_log_file(input, ingest.ingest_config());
    auto parts = windows(queue, ingest.windowing());

    std::vector<CorrelationRule> all;
    std::size_t skipped = 0;
    for (const ViewingWindow& window : parts) {
        if (window.size_d() == 0) continue;
        WindowIndex index(window);
        FrequentSet freq = mine_frequent(index, mining.config());
        RuleGenResult result = gen_rules(freq, ropts.config(), &index);
        skipped += result.skipped.size();
        if (verbose())
            for (const std::string& reason : result.skipped)
                std::cerr << "skipped: " << reason << "\n";
        all.insert(all.end(), result.rules.begin(), result.rules.end());
    }

    std::ostringstream csv;
    write_rules_csv(csv, all);
    write_file_atomic(output, csv.str());
    if (!text_output.empty()) {
        std::ostringstream text;
        write_rules_text(text, all);
        write_file_atomic(text_output, text.str());
    }
    std::cout << "rules=" << all.size() << " skipped_splits=" << skipped << "\n";
    return 0;
}

int cmd_synth(const SynthSpec& spec, const std::string& output, const std::string& manifest) {
    SynthResult built = generate(spec);
    write_file_atomic(output, built.log_text);
    if (!manifest.empty()) write_file_atomic(manifest, built.manifest.to_json());
    std::cout << "events=" << built.manifest.total_events
              << " alphabet=" << built.manifest.alphabet_size
              << " patterns=" << built.manifest.patterns.size() << "\n";
    return 0;
}

int cmd_report_fig3(const AlarmQueue& queue, const MiningOptions& mining,
                    const std::vector<std::size_t>& win_adds,
                    const std::vector<std::size_t>& min_occurs, std::size_t max_len,
                    const std::string& output) {
    WindowIndex index(ViewingWindow{std::span<const AlarmTuple>(queue.tuples()), 0});
    MiningConfig base = mining.config();
    auto rows = fig3_series(index, base, win_adds, min_occurs, max_len);
    std::ostringstream csv;
    write_fig3_csv(csv, rows);
    write_file_atomic(output, csv.str());
    std::cout << "rows=" << rows.size() << "\n";
    return 0;
}

int cmd_report_fig4(const AlarmQueue& queue, const MiningOptions& mining,
                    const RuleOptions& ropts, const std::string& output) {
    WindowIndex index(ViewingWindow{std::span<const AlarmTuple>(queue.tuples()), 0});
    FrequentSet freq = mine_frequent(index, mining.config());
    RuleGenResult result = gen_rules(freq, ropts.config(), &index);
    auto rows = fig4_rows(result.rules);
    std::ostringstream csv;
    write_fig4_csv(csv, rows);
    write_file_atomic(output, csv.str());
    std::cout << "rules=" << rows.size() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"noise-tolerant frequent alarm sequence and correlation rule miner"};
    app.require_subcommand(1);

    // mine
    auto* mine = app.add_subcommand("mine", "mine frequent alarm sequences from a log");
    std::string mine_input, mine_output;
    IngestOptions mine_ingest;
    MiningOptions mine_mining;
    mine->add_option("--input", mine_input, "alarm log")->required();
    mine->add_option("--output", mine_output, "frequent sequence report")->required();
    add_ingest_options(mine, mine_ingest);
    add_mining_options(mine, mine_mining);

    // rules
    auto* rules = app.add_subcommand("rules", "mine and emit correlation rules");
    std::string rules_input, rules_output, rules_text;
    IngestOptions rules_ingest;
    MiningOptions rules_mining;
    RuleOptions rules_ropts;
    rules->add_option("--input", rules_input, "alarm log")->required();
    rules->add_option("--output", rules_output, "rules CSV")->required();
    rules->add_option("--text-output", rules_text, "human-readable rules");
    add_ingest_options(rules, rules_ingest);
    add_mining_options(rules, rules_mining);
    add_rule_options(rules, rules_ropts);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a labelled synthetic corpus");
    std::string synth_output, synth_manifest, synth_burst = "1.0";
    std::vector<std::string> synth_plants;
    SynthSpec synth_spec;
    synth->add_option("--output", synth_output, "log file")->required();
    synth->add_option("--manifest", synth_manifest, "ground-truth manifest (JSON)");
    synth->add_option("--alphabet", synth_spec.alphabet_size, "distinct alarm types")->required();
    synth->add_option("--events", synth_spec.total_events, "total events")->required();
    synth->add_option("--plant", synth_plants, "nums:occurrences:mean_gap:max_noise");
    synth->add_option("--noise-rate", synth_spec.noise_rate, "background fraction reserved");
    synth->add_option("--base-rate", synth_spec.base_rate, "background events per second");
    synth->add_option("--burst", synth_burst, "rate multipliers, comma separated");
    synth->add_option("--zipf", synth_spec.background_zipf, "background type skew");
    synth->add_option("--seed", synth_spec.rng_seed, "rng seed")->required();

    // report-fig3
    auto* fig3 = app.add_subcommand("report-fig3",
                                    "frequent-sequence counts per win_add and threshold");
    std::string fig3_input, fig3_output, fig3_win_adds = "0,2,4", fig3_min_occurs = "2,4,8,16";
    std::uint64_t fig3_seed = 0;
    std::size_t fig3_max_len = 5;
    IngestOptions fig3_ingest;
    MiningOptions fig3_mining;
    fig3->add_option("--input", fig3_input, "alarm log (default: synthetic corpus)");
    fig3->add_option("--output", fig3_output, "CSV series")->required();
    auto* fig3_seed_opt = fig3->add_option("--seed", fig3_seed, "seed for the synthetic corpus");
    fig3->add_option("--win-adds", fig3_win_adds, "win_add values, comma separated");
    fig3->add_option("--min-occurs", fig3_min_occurs, "occurrence thresholds, comma separated");
    fig3->add_option("--max-len", fig3_max_len, "series length cap");
    add_ingest_options(fig3, fig3_ingest);
    fig3->add_option("--prune", fig3_mining.prune, "candidate pruning: all|endpoints");
    fig3->add_flag("--no-repeats", fig3_mining.no_repeats,
                   "drop candidates with repeated types");

    // report-fig4
    auto* fig4 = app.add_subcommand("report-fig4", "confidence/correlation scatter per rule");
    std::string fig4_input, fig4_output;
    std::uint64_t fig4_seed = 0;
    IngestOptions fig4_ingest;
    MiningOptions fig4_mining;
    RuleOptions fig4_ropts;
    fig4->add_option("--input", fig4_input, "alarm log (default: synthetic corpus)");
    fig4->add_option("--output", fig4_output, "CSV scatter")->required();
    auto* fig4_seed_opt = fig4->add_option("--seed", fig4_seed, "seed for the synthetic corpus");
    add_ingest_options(fig4, fig4_ingest);
    add_mining_options(fig4, fig4_mining);
    add_rule_options(fig4, fig4_ropts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (mine->parsed()) return cmd_mine(mine_input, mine_output, mine_ingest, mine_mining);
        if (rules->parsed())
            return cmd_rules(rules_input, rules_output, rules_text, rules_ingest, rules_mining,
                             rules_ropts);
        if (synth->parsed()) {
            synth_spec.burstiness.clear();
            std::stringstream ss(synth_burst);
            std::string item;
            while (std::getline(ss, item, ','))
                synth_spec.burstiness.push_back(std::stod(item));
            for (const std::string& plant : synth_plants)
                synth_spec.plants.push_back(parse_plant(plant));
            return cmd_synth(synth_spec, synth_output, synth_manifest);
        }
        if (fig3->parsed()) {
            AlarmQueue queue = load_queue(fig3_input, fig3_ingest, true,
                                          fig3_seed_opt->count() > 0, fig3_seed);
            return cmd_report_fig3(queue, fig3_mining, parse_size_list(fig3_win_adds, "win_add"),
                                   parse_size_list(fig3_min_occurs, "min_occur"), fig3_max_len,
                                   fig3_output);
        }
        if (fig4->parsed()) {
            AlarmQueue queue = load_queue(fig4_input, fig4_ingest, true,
                                          fig4_seed_opt->count() > 0, fig4_seed);
            return cmd_report_fig4(queue, fig4_mining, fig4_ropts, fig4_output);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
