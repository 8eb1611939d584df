#include <doctest.h>

#include "sgsmc/blackvi.hpp"
#include "sgsmc/model_io.hpp"
#include "test_util.hpp"

using namespace sgsmc;
using namespace sgsmc::testutil;

namespace {

/// Game shaped so the five-step exploration path below is playable:
/// s0 -a1-> s1, s1 has b1/b2/a2, s2 has b1/c, plus is the goal.
StochasticGame path_game() {
    std::vector<GameState> states(5);
    states[0] = GameState{"s0", Player::Minimizer,
                          {GameAction{"a1", {{{1, 1.0, Rational(1)}}}}}};
    states[1] = GameState{
        "s1", Player::Maximizer,
        {GameAction{"b1", {{{0, 1.0, Rational(1)}}}},
         GameAction{"b2", {{{2, 0.5, Rational(1, 2)}, {3, 0.5, Rational(1, 2)}}}},
         GameAction{"a2", {{{2, 1.0, Rational(1)}}}}}};
    states[2] = GameState{"s2", Player::Minimizer,
                          {GameAction{"b1", {{{1, 1.0, Rational(1)}}}},
                           GameAction{"c", {{{3, 1.0, Rational(1)}}}}}};
    states[3] = GameState{"plus", Player::Maximizer,
                          {GameAction{"loop", {{{3, 1.0, Rational(1)}}}}}};
    states[4] = GameState{"minus", Player::Minimizer,
                          {GameAction{"loop", {{{4, 1.0, Rational(1)}}}}}};
    return StochasticGame::build(std::move(states), 0, {3}, 0.5, Rational(1, 2));
}

}  // namespace

TEST_CASE("sample_successor follows the distribution") {
    const StochasticGame game = parse_model(read_model_file("fig1-half.json"));
    const GameOracle oracle(game, AccessMode::Black);
    const StateId s1 = *game.find_state("s1");
    Rng rng(12345);

    SUBCASE("empirical frequency of the goal branch") {
        const StateId plus = *game.find_state("plus");
        std::size_t hits = 0;
        const std::size_t n = 100000;
        for (std::size_t i = 0; i < n; ++i)
            if (oracle.sample_successor(s1, 1, rng) == plus) ++hits;
        CHECK(static_cast<double>(hits) / n == doctest::Approx(0.5).epsilon(0.02));
    }
    SUBCASE("deterministic action always yields its successor") {
        for (int i = 0; i < 100; ++i)
            CHECK(oracle.sample_successor(s1, 0, rng) == *game.find_state("s0"));
    }
    SUBCASE("frequencies over any sample set sum to one") {
        std::map<StateId, std::size_t> freq;
        const std::size_t n = 5000;
        for (std::size_t i = 0; i < n; ++i) ++freq[oracle.sample_successor(s1, 1, rng)];
        std::size_t total = 0;
        for (const auto& [t, cnt] : freq) total += cnt;
        CHECK(total == n);
        CHECK(freq.size() == 2);
    }
    SUBCASE("unavailable action throws") {
        CHECK_THROWS_AS(oracle.sample_successor(s1, 7, rng), std::out_of_range);
    }
}

TEST_CASE("record bookkeeping") {
    ObservationCounters counters;
    SUBCASE("single record") {
        counters.record(0, 0, 1);
        CHECK(counters.triple_count(0, 0, 1) == 1);
        CHECK(counters.pair_count(0, 0) == 1);
    }
    SUBCASE("five samples of one pair split one to four") {
        for (int i = 0; i < 1; ++i) counters.record(1, 1, 2);
        for (int i = 0; i < 4; ++i) counters.record(1, 1, 3);
        CHECK(counters.pair_count(1, 1) == 5);
        CHECK(counters.triple_count(1, 1, 2) == 1);
        CHECK(counters.triple_count(1, 1, 3) == 4);
    }
    SUBCASE("counts never decrease and totals stay consistent") {
        Rng rng(77);
        std::uint64_t prev_total = 0;
        for (int i = 0; i < 500; ++i) {
            counters.record(static_cast<StateId>(rng.uniform_index(3)),
                            static_cast<std::uint32_t>(rng.uniform_index(2)),
                            static_cast<StateId>(rng.uniform_index(3)));
            std::uint64_t total = 0, by_pair = 0;
            counters.for_each([&](StateId, std::uint32_t, StateId, std::uint64_t n) { total += n; });
            for (StateId s = 0; s < 3; ++s)
                for (std::uint32_t a = 0; a < 2; ++a) by_pair += counters.pair_count(s, a);
            CHECK(total == by_pair);
            CHECK(total > prev_total);
            prev_total = total;
        }
    }
}

TEST_CASE("build_partial_model from an exploration path") {
    const StochasticGame game = path_game();
    const GameOracle oracle(game, AccessMode::Black);
    ObservationCounters counters;
    // s0 a1 s1 b2 s2 b1 s1 a2 s2 c plus
    counters.record(0, 0, 1);
    counters.record(1, 1, 2);
    counters.record(2, 0, 1);
    counters.record(1, 2, 2);
    counters.record(2, 1, 3);

    const PartialModel pm = build_partial_model(counters, oracle);
    CHECK(pm.size() == 4);  // s0 s1 s2 plus, minus untouched
    CHECK(pm.contains(0));
    CHECK(pm.contains(1));
    CHECK(pm.contains(2));
    CHECK(pm.contains(3));
    CHECK_FALSE(pm.contains(4));
    CHECK(pm.state(pm.local(1)).actions[1].observed == std::vector<StateId>{2});
    CHECK(pm.action_pair_count() == 1 + 3 + 2 + 1);
}

TEST_CASE("empty counters leave just the initial state") {
    const StochasticGame game = path_game();
    const GameOracle oracle(game, AccessMode::Black);
    const PartialModel pm = build_partial_model(ObservationCounters{}, oracle);
    CHECK(pm.size() == 1);
    CHECK(pm.state(0).id == game.initial());
}

TEST_CASE("grey mode annotates unseen successor counts") {
    std::vector<GameState> states(4);
    states[0] = GameState{"s", Player::Maximizer,
                          {GameAction{"spread",
                                      {{{1, 0.25, Rational(1, 4)},
                                        {2, 0.25, Rational(1, 4)},
                                        {3, 0.5, Rational(1, 2)}}}}}};
    states[1] = GameState{"t1", Player::Maximizer, {GameAction{"l", {{{1, 1.0, Rational(1)}}}}}};
    states[2] = GameState{"t2", Player::Maximizer, {GameAction{"l", {{{2, 1.0, Rational(1)}}}}}};
    states[3] = GameState{"g", Player::Maximizer, {GameAction{"l", {{{3, 1.0, Rational(1)}}}}}};
    const auto game = StochasticGame::build(std::move(states), 0, {3}, 0.25, Rational(1, 4));

    const GameOracle grey(game, AccessMode::Grey);
    ObservationCounters counters;
    counters.record(0, 0, 1);
    counters.record(0, 0, 2);
    const PartialModel pm = build_partial_model(counters, grey);
    const auto& action = pm.state(pm.local(0)).actions[0];
    REQUIRE(action.successor_count.has_value());
    CHECK(*action.successor_count == 3);
    CHECK(*action.unseen() == 1);
    CHECK_FALSE(action.support_known());

    const GameOracle black(game, AccessMode::Black);
    const PartialModel pm_black = build_partial_model(counters, black);
    CHECK_FALSE(pm_black.state(pm_black.local(0)).actions[0].successor_count.has_value());
}

TEST_CASE("observed successors never exceed the declared count") {
    const StochasticGame game = parse_model(read_model_file("fig1-third.json"));
    const GameOracle oracle(game, AccessMode::Grey);
    ObservationCounters counters;
    Rng rng(4);
    PartialModel pm(oracle);
    for (int i = 0; i < 2000; ++i) {
        const StateId t = oracle.sample_successor(1, 1, rng);
        counters.record(1, 1, t);
        pm.note_observation(1, 1, t);
    }
    const auto& act = pm.state(pm.local(1)).actions[1];
    CHECK(act.observed.size() <= *act.successor_count);
    CHECK(act.support_known());  // 2000 draws see all three successors
}

TEST_CASE("counter snapshots round-trip through JSON") {
    ObservationCounters counters;
    Rng rng(99);
    for (int i = 0; i < 300; ++i)
        counters.record(static_cast<StateId>(rng.uniform_index(4)),
                        static_cast<std::uint32_t>(rng.uniform_index(3)),
                        static_cast<StateId>(rng.uniform_index(4)));
    const auto snapshot = counters.to_json();
    const ObservationCounters back = ObservationCounters::from_json(snapshot);
    for (StateId s = 0; s < 4; ++s)
        for (std::uint32_t a = 0; a < 3; ++a) {
            CHECK(back.pair_count(s, a) == counters.pair_count(s, a));
            for (StateId t = 0; t < 4; ++t)
                CHECK(back.triple_count(s, a, t) == counters.triple_count(s, a, t));
        }
}

namespace {

/// Hand-rolled oracle over a two-step chain, not backed by any game object:
/// the engine must run against the access contract alone.
class ChainOracle final : public SampleOracle {
public:
    StateId initial_state() const override { return 10; }
    Player player(StateId) const override { return Player::Maximizer; }
    std::uint32_t action_count(StateId) const override { return 1; }
    bool is_goal(StateId s) const override { return s == 30; }
    double p_min() const override { return 1.0; }
    StateId sample_successor(StateId s, std::uint32_t a, Rng&) const override {
        if (a != 0) throw std::out_of_range("unavailable action");
        return s == 10 ? 20 : 30;
    }
    std::optional<std::uint32_t> successor_count(StateId, std::uint32_t) const override {
        return std::nullopt;
    }
};

}  // namespace

TEST_CASE("black_vi runs against a minimal hand-rolled oracle") {
    ChainOracle oracle;
    BlackViConfig cfg;
    cfg.epsilon = 0.05;
    cfg.delta = 0.1;
    cfg.nk = 200;
    cfg.seed = 1;
    cfg.timeout_ms = 10000;
    const RunReport r = black_vi(oracle, cfg);
    CHECK(r.lower <= 1.0);
    CHECK(r.upper == 1.0);  // the chain reaches the goal surely
    CHECK(r.converged);
    CHECK(r.lower >= 0.95);
}
