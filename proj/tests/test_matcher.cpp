#include <doctest.h>

#include <random>

#include "almine/matcher.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace almine;
using fixtures::seq;
using fixtures::serial_queue;
using fixtures::type;
using fixtures::whole;

namespace {

std::vector<int> nums_of(const ViewingWindow& w) {
    std::vector<int> out;
    for (const FlatEvent& e : flatten(w)) out.push_back(static_cast<int>(e.type.alarm_num));
    return out;
}

// Random window with occasional multi-type tuples, plus a random candidate.
struct RandomCase {
    AlarmQueue queue;
    TypeSequence alpha;
    std::size_t win_add;
};

RandomCase random_case(std::mt19937& rng, int max_events, int alphabet, int max_m,
                       int max_win_add) {
    std::uniform_int_distribution<int> sym(0, alphabet - 1);
    std::uniform_int_distribution<int> n_events(0, max_events);
    std::uniform_int_distribution<int> m_dist(1, max_m);
    std::uniform_int_distribution<int> wa(0, max_win_add);
    std::uniform_int_distribution<int> burst(0, 9);

    int remaining = n_events(rng);
    std::vector<std::pair<std::vector<int>, Timestamp>> tuples;
    Timestamp t = 0;
    while (remaining > 0) {
        int width = burst(rng) < 2 ? std::min(remaining, 1 + burst(rng) % 3) : 1;
        std::vector<int> types;
        for (int i = 0; i < width; ++i) types.push_back(sym(rng));
        // tuples hold unique types; duplicates collapse, keep the count honest
        std::sort(types.begin(), types.end());
        types.erase(std::unique(types.begin(), types.end()), types.end());
        remaining -= static_cast<int>(types.size());
        tuples.push_back({types, t});
        t += 1 + burst(rng) % 3;
    }

    std::vector<int> alpha(m_dist(rng));
    for (int& a : alpha) a = sym(rng);
    return RandomCase{fixtures::queue(tuples), seq(alpha),
                      static_cast<std::size_t>(wa(rng))};
}

} // namespace

TEST_CASE("flatten: tuple order, canonical order within a tuple") {
    AlarmQueue q = fixtures::queue({{{2, 1}, 1}, {{3}, 2}});
    auto flat = flatten(whole(q));
    REQUIRE(flat.size() == 3);
    CHECK(flat[0].type == type(1));
    CHECK(flat[0].time == 1);
    CHECK(flat[0].tuple_index == 0);
    CHECK(flat[1].type == type(2));
    CHECK(flat[2].type == type(3));
    CHECK(flat[2].tuple_index == 1);

    AlarmQueue empty;
    CHECK(flatten(whole(empty)).empty());
}

TEST_CASE("robust_count matches the documented toy traces") {
    // the worked two-of-seven case: win_freq=2, win_add=2
    AlarmQueue q = serial_queue({0, 2, 2, 1, 0, 2, 1}); // a c c b a c b with a=0,b=1,c=2
    OccurrenceReport rep = robust_count(seq({0, 1}), whole(q), 2);
    CHECK(rep.count == 2);
    CHECK(rep.windows.win_seq == 4);
    REQUIRE(rep.matches.size() == 2);
    CHECK(rep.matches[0].event_indices == std::vector<std::size_t>{0, 3});
    CHECK(rep.matches[1].event_indices == std::vector<std::size_t>{4, 6});
    CHECK(rep.support == doctest::Approx(2.0 / 7.0));

    // head type absent
    AlarmQueue bs = serial_queue({1, 1, 1});
    CHECK(robust_count(seq({0, 1}), whole(bs), 0).count == 0);
    CHECK(robust_count(seq({0, 1}), whole(bs), 5).count == 0);

    // window too tight, then loose enough
    AlarmQueue gap = serial_queue({0, 2, 2, 2, 1});
    CHECK(robust_count(seq({0, 1}), whole(gap), 1).count == 0);
    CHECK(robust_count(seq({0, 1}), whole(gap), 3).count == 1);

    // singleton candidate: every event is its own match
    AlarmQueue aaa = serial_queue({0, 0, 0});
    OccurrenceReport singles = robust_count(seq({0}), whole(aaa), 0);
    CHECK(singles.count == 3);
    CHECK(singles.support == doctest::Approx(1.0));
}

TEST_CASE("oracle agrees with its own frozen traces") {
    CHECK(oracle::robust_count({0, 1, 0, 1}, {0, 1}, 0) == 2);
    CHECK(oracle::robust_count({0, 1}, {0, 1, 2}, 4) == 0); // fewer events than m
    CHECK(oracle::robust_count({0, 2, 2, 1, 0, 2, 1}, {0, 1}, 2) == 2);
    CHECK_THROWS_AS(oracle::robust_count(std::vector<int>(1000, 0), {0}, 0),
                    std::length_error);
}

TEST_CASE("two sequence elements may match inside one tuple") {
    AlarmQueue q = fixtures::queue({{{0, 1}, 5}, {{2}, 9}});
    OccurrenceReport rep = robust_count(seq({0, 1}), whole(q), 0);
    REQUIRE(rep.count == 1);
    CHECK(rep.matches[0].times == std::vector<Timestamp>{5, 5});

    std::vector<std::vector<Timestamp>> times;
    for (const Match& m : rep.matches) times.push_back(m.times);
    CHECK(classify_sequence(time_weight(seq({0, 1}), times)) == Arrangement::Parallel);
}

TEST_CASE("support divides by tuple count and rejects empty windows") {
    AlarmQueue q = fixtures::queue({{{0, 1}, 0}, {{0}, 3}, {{1}, 5}});
    CHECK(support(seq({0}), whole(q), 0) == doctest::Approx(2.0 / 3.0));
    AlarmQueue empty;
    CHECK_THROWS_AS(support(seq({0}), whole(empty), 0), DomainError);
}

TEST_CASE("randomized equivalence with the step-by-step oracle") {
    std::mt19937 rng(20240901);
    for (int iter = 0; iter < 3000; ++iter) {
        RandomCase c = random_case(rng, 32, 6, 4, 4);
        ViewingWindow w = whole(c.queue);
        std::vector<int> events = nums_of(w);
        std::vector<int> alpha;
        for (const AlarmType& t : c.alpha.elements())
            alpha.push_back(static_cast<int>(t.alarm_num));

        OccurrenceReport rep = robust_count(c.alpha, w, c.win_add);
        INFO("win_add=" << c.win_add << " m=" << alpha.size() << " n=" << events.size());
        CHECK(rep.count ==
              static_cast<std::size_t>(oracle::robust_count(events, alpha, (int)c.win_add)));
    }
}

TEST_CASE("span bound, disjointness and ordering of matches") {
    std::mt19937 rng(4242);
    for (int iter = 0; iter < 1500; ++iter) {
        RandomCase c = random_case(rng, 40, 5, 4, 4);
        OccurrenceReport rep = robust_count(c.alpha, whole(c.queue), c.win_add);
        std::size_t prev_last = 0;
        bool first = true;
        for (const Match& m : rep.matches) {
            REQUIRE(m.event_indices.size() == c.alpha.length());
            CHECK(m.event_indices.back() - m.event_indices.front() + 1 <= rep.windows.win_seq);
            for (std::size_t k = 1; k < m.event_indices.size(); ++k) {
                CHECK(m.event_indices[k] > m.event_indices[k - 1]);
                CHECK(m.times[k] >= m.times[k - 1]);
            }
            if (!first) CHECK(m.event_indices.front() > prev_last);
            prev_last = m.event_indices.back();
            first = false;
        }
        CHECK(rep.count == rep.matches.size());
    }
}

TEST_CASE("win_add=0 on serial queues reduces to contiguous-run counting") {
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> sym(0, 3), n_dist(0, 40), m_dist(1, 4);
    for (int iter = 0; iter < 1500; ++iter) {
        std::vector<int> events(n_dist(rng));
        for (int& e : events) e = sym(rng);
        std::vector<int> alpha(m_dist(rng));
        for (int& a : alpha) a = sym(rng);

        AlarmQueue q = serial_queue(events);
        OccurrenceReport rep = robust_count(seq(alpha), whole(q), 0);
        CHECK(rep.count == static_cast<std::size_t>(oracle::contiguous_count(events, alpha)));
    }
}

TEST_CASE("one-sided deletions never occur less often than the full sequence") {
    std::mt19937 rng(31337);
    for (int iter = 0; iter < 2000; ++iter) {
        RandomCase c = random_case(rng, 48, 5, 1, 4);
        std::uniform_int_distribution<int> sym(0, 4), m_dist(2, 5);
        std::vector<int> gamma(m_dist(rng));
        for (int& g : gamma) g = sym(rng);

        ViewingWindow w = whole(c.queue);
        WindowIndex index(w);
        TypeSequence full = seq(gamma);
        std::size_t full_count = robust_count(full, index, c.win_add).count;
        std::size_t prefix_count =
            robust_count(full.prefix(gamma.size() - 1), index, c.win_add).count;
        std::size_t suffix_count =
            robust_count(full.suffix(gamma.size() - 1), index, c.win_add).count;
        CHECK(prefix_count >= full_count);
        CHECK(suffix_count >= full_count);
    }
}

TEST_CASE("scan work stays within the published bound") {
    std::mt19937 rng(555);
    for (int iter = 0; iter < 400; ++iter) {
        RandomCase c = random_case(rng, 64, 4, 4, 4);
        ViewingWindow w = whole(c.queue);
        WindowIndex index(w);
        if (index.size_d() == 0) continue;

        OccurrenceReport rep = robust_count(c.alpha, index, c.win_add);
        std::size_t head = 0;
        int id = index.type_id(c.alpha[0]);
        if (id >= 0) head = index.positions(id).size();
        // M*d plus one window scan per head event, small constant margin
        std::size_t bound =
            2 * (index.max_tuple_length() * index.size_d() + head * rep.windows.win_seq) + 8;
        CHECK(rep.work_steps <= bound);
    }
}
