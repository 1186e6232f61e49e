#include <doctest.h>

#include <random>
#include <sstream>

#include "almine/ingest.hpp"
#include "almine/miner.hpp"
#include "almine/synth.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace almine;
using fixtures::seq;
using fixtures::serial_queue;
using fixtures::type;
using fixtures::whole;

namespace {

MiningConfig occur_config(std::size_t min_occur, std::size_t win_add,
                          PruneMode prune = PruneMode::AllDeletions) {
    MiningConfig config;
    config.min_occur = min_occur;
    config.win_add = win_add;
    config.prune_mode = prune;
    return config;
}

std::vector<TypeSequence> seqs_of(const std::vector<std::vector<int>>& nums) {
    std::vector<TypeSequence> out;
    for (const auto& n : nums) out.push_back(seq(n));
    return out;
}

std::set<std::vector<int>> as_nums(const std::vector<TypeSequence>& seqs) {
    std::set<std::vector<int>> out;
    for (const TypeSequence& s : seqs) {
        std::vector<int> nums;
        for (const AlarmType& t : s.elements()) nums.push_back((int)t.alarm_num);
        out.insert(std::move(nums));
    }
    return out;
}

} // namespace

TEST_CASE("config validation") {
    MiningConfig config;
    CHECK_THROWS_AS(config.validate(), ConfigError); // neither threshold
    config.min_occur = 2;
    config.min_support = 0.5;
    CHECK_THROWS_AS(config.validate(), ConfigError); // both
    config.min_occur.reset();
    config.min_support = 1.5;
    CHECK_THROWS_AS(config.validate(), ConfigError);
    config.min_support = 0.5;
    CHECK_NOTHROW(config.validate());
    config.max_len = 0;
    CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("seed_candidates enumerates distinct window types") {
    AlarmQueue q = fixtures::queue({{{2, 0}, 0}, {{1}, 3}, {{0}, 9}});
    auto c1 = seed_candidates(whole(q));
    REQUIRE(c1.size() == 3);
    CHECK(c1[0] == seq({0}));
    CHECK(c1[1] == seq({1}));
    CHECK(c1[2] == seq({2}));

    AlarmQueue empty;
    CHECK(seed_candidates(whole(empty)).empty());
}

TEST_CASE("gen_candidates joins and prunes") {
    // all three deletions present: the triple survives AllDeletions
    auto f2 = seqs_of({{0, 1}, {1, 2}, {0, 2}});
    auto c3 = gen_candidates(f2, PruneMode::AllDeletions);
    REQUIRE(c3.size() == 1);
    CHECK(c3[0] == seq({0, 1, 2}));

    // missing middle deletion: pruned under AllDeletions, kept under EndpointsOnly
    f2 = seqs_of({{0, 1}, {1, 2}});
    CHECK(gen_candidates(f2, PruneMode::AllDeletions).empty());
    c3 = gen_candidates(f2, PruneMode::EndpointsOnly);
    REQUIRE(c3.size() == 1);
    CHECK(c3[0] == seq({0, 1, 2}));

    // m=1: the join condition is vacuous, self-pairs included
    auto f1 = seqs_of({{0}, {1}});
    auto c2 = gen_candidates(f1, PruneMode::AllDeletions);
    CHECK(as_nums(c2) == std::set<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    c2 = gen_candidates(f1, PruneMode::AllDeletions, /*allow_repeats=*/false);
    CHECK(as_nums(c2) == std::set<std::vector<int>>{{0, 1}, {1, 0}});

    CHECK_THROWS_AS(gen_candidates(seqs_of({{0}, {1, 2}}), PruneMode::AllDeletions),
                    ConfigError);
}

TEST_CASE("gen_candidates equals the brute-force join on random levels") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> sym(0, 3), m_dist(1, 3), count(0, 10);
    for (int iter = 0; iter < 400; ++iter) {
        const int m = m_dist(rng);
        std::set<std::vector<int>> level_nums;
        for (int i = count(rng); i > 0; --i) {
            std::vector<int> s(m);
            for (int& v : s) v = sym(rng);
            level_nums.insert(std::move(s));
        }
        std::vector<std::vector<int>> level_vec(level_nums.begin(), level_nums.end());
        for (auto prune : {PruneMode::AllDeletions, PruneMode::EndpointsOnly}) {
            auto got = as_nums(gen_candidates(seqs_of(level_vec), prune));
            auto want = oracle::gen_candidates(
                level_nums,
                prune == PruneMode::AllDeletions ? oracle::Prune::AllDeletions
                                                 : oracle::Prune::EndpointsOnly);
            CHECK(got == want);
        }
    }
}

TEST_CASE("mining the alternating toy log") {
    AlarmQueue q = serial_queue({0, 1, 0, 1, 0, 1});
    FrequentSet freq = mine_frequent(whole(q), occur_config(2, 0));

    REQUIRE(freq.levels.count(1) == 1);
    CHECK(freq.levels[1].size() == 2);
    CHECK(freq.find(seq({0}))->count == 3);
    CHECK(freq.find(seq({1}))->count == 3);

    REQUIRE(freq.levels.count(2) == 1);
    CHECK(freq.find(seq({0, 1}))->count == 3);
    CHECK(freq.find(seq({1, 0}))->count == 2);
    CHECK(freq.levels[2].size() == 2);

    CHECK(freq.levels.count(3) == 0); // both prune modes end here
    FrequentSet endpoints =
        mine_frequent(whole(q), occur_config(2, 0, PruneMode::EndpointsOnly));
    CHECK(endpoints.levels.count(3) == 0);

    CHECK(freq.window_size_d == 6);
    CHECK(freq.find(seq({0, 1}))->support == doctest::Approx(0.5));
}

TEST_CASE("nothing frequent yields an empty set") {
    AlarmQueue q = serial_queue({0, 1, 2});
    FrequentSet freq = mine_frequent(whole(q), occur_config(5, 2));
    CHECK(freq.levels.empty());
    CHECK(freq.total_count() == 0);
}

TEST_CASE("empty window is a domain error") {
    AlarmQueue empty;
    CHECK_THROWS_AS(mine_frequent(whole(empty), occur_config(1, 0)), DomainError);
}

TEST_CASE("relative support threshold") {
    AlarmQueue q = serial_queue({0, 1, 0, 1, 0, 2});
    MiningConfig config;
    config.min_support = 0.5;
    config.win_add = 0;
    FrequentSet freq = mine_frequent(whole(q), config);
    REQUIRE(freq.levels.count(1) == 1);
    CHECK(freq.levels[1].size() == 1); // only 0 reaches 3/6
    CHECK(freq.find(seq({0}))->support == doctest::Approx(0.5));
}

TEST_CASE("max_len caps the loop") {
    AlarmQueue q = serial_queue({0, 1, 0, 1, 0, 1, 0, 1});
    MiningConfig config = occur_config(2, 0);
    config.max_len = 1;
    FrequentSet freq = mine_frequent(whole(q), config);
    CHECK(freq.levels.rbegin()->first == 1);
}

TEST_CASE("planted pattern is recovered at the matching win_add") {
    SynthSpec spec;
    spec.alphabet_size = 12;
    spec.total_events = 700;
    spec.rng_seed = 71;
    spec.plants.push_back(PlantSpec{seq({8, 9, 10}), 50, 4.0, 2});
    SynthResult built = generate(spec);

    std::istringstream in(built.log_text);
    AlarmQueue q = parse_log(in);
    ViewingWindow w = whole(q);

    FrequentSet noisy =
        mine_frequent(w, occur_config(40, 2, PruneMode::EndpointsOnly));
    REQUIRE(noisy.find(seq({8, 9, 10})) != nullptr);
    CHECK(noisy.find(seq({8, 9, 10}))->count >=
          built.manifest.patterns[0].expected_min_occur(2));

    FrequentSet strict =
        mine_frequent(w, occur_config(40, 0, PruneMode::EndpointsOnly));
    CHECK(strict.find(seq({8, 9, 10})) == nullptr);
}

TEST_CASE("levels are sound: every stored report re-verifies") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> sym(0, 4), n_dist(5, 60), occ(1, 4), wa(0, 3);
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<int> events(n_dist(rng));
        for (int& e : events) e = sym(rng);
        AlarmQueue q = serial_queue(events);
        ViewingWindow w = whole(q);
        MiningConfig config = occur_config(occ(rng), wa(rng));
        FrequentSet freq = mine_frequent(w, config);
        for (const auto& [len, level] : freq.levels) {
            for (const auto& [s, report] : level) {
                CHECK(s.length() == len);
                OccurrenceReport fresh = robust_count(s, w, config.win_add);
                CHECK(fresh.count == report.count);
                CHECK(fresh.count >= *config.min_occur);
            }
        }
    }
}

TEST_CASE("levels 1 and 2 are complete against brute-force enumeration") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> sym(0, 2), n_dist(4, 28), occ(1, 3), wa(0, 2);
    for (int iter = 0; iter < 120; ++iter) {
        std::vector<int> events(n_dist(rng));
        for (int& e : events) e = sym(rng);
        AlarmQueue q = serial_queue(events);
        std::size_t min_occur = occ(rng);
        std::size_t win_add = wa(rng);
        FrequentSet freq =
            mine_frequent(whole(q), occur_config(min_occur, win_add, PruneMode::EndpointsOnly));

        for (int a = 0; a <= 2; ++a) {
            std::size_t c1 = oracle::robust_count(events, {a}, (int)win_add);
            CHECK((freq.find(seq({a})) != nullptr) == (c1 >= min_occur));
            for (int b = 0; b <= 2; ++b) {
                std::size_t c2 = oracle::robust_count(events, {a, b}, (int)win_add);
                const OccurrenceReport* found = freq.find(seq({a, b}));
                CHECK((found != nullptr) == (c2 >= min_occur));
                if (found) CHECK(found->count == c2);
            }
        }
    }
}

TEST_CASE("every generated candidate keeps its endpoints frequent") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> sym(0, 3), n_dist(10, 80);
    for (int iter = 0; iter < 80; ++iter) {
        std::vector<int> events(n_dist(rng));
        for (int& e : events) e = sym(rng);
        AlarmQueue q = serial_queue(events);
        FrequentSet freq = mine_frequent(whole(q), occur_config(2, 1));
        for (const auto& [len, level] : freq.levels) {
            if (len < 2) continue;
            for (const auto& [s, report] : level) {
                CHECK(freq.find(s.prefix(len - 1)) != nullptr);
                CHECK(freq.find(s.suffix(len - 1)) != nullptr);
            }
        }
    }
}

TEST_CASE("frequent report lines") {
    AlarmQueue q = serial_queue({0, 1, 0, 1});
    FrequentSet freq = mine_frequent(whole(q), occur_config(2, 0));
    std::ostringstream out;
    write_frequent_report(out, freq);
    std::string text = out.str();
    CHECK(text.find("# window 0 size_d=4 min_occur=2 win_add=0 prune=all\n") == 0);
    CHECK(text.find("1,1.1.0,2,0.500000\n") != std::string::npos);
    CHECK(text.find("2,1.1.0 1.1.1,2,0.500000\n") != std::string::npos);
}
