#include <doctest.h>

#include "sgsmc/model_io.hpp"
#include "sgsmc/oracle_value.hpp"
#include "test_util.hpp"

using namespace sgsmc;
using namespace sgsmc::testutil;

TEST_CASE("oracle on fig1 with even coin") {
    const StochasticGame game = parse_model(read_model_file("fig1-half.json"));
    const auto v = oracle_value(game);
    CHECK(v[*game.find_state("s0")] == 0.5);  // exact: the model is in fractions
    CHECK(v[*game.find_state("s1")] == 0.5);
    CHECK(v[*game.find_state("plus")] == 1.0);
    CHECK(v[*game.find_state("minus")] == 0.0);

    const auto exact = oracle_value_exact(game);
    REQUIRE(exact.has_value());
    CHECK((*exact)[0] == Rational(1, 2));
}

TEST_CASE("oracle on the full fig1 with thirds") {
    // hand fixpoint for b2: x = 1/3 + x/3 gives x = 1/2
    const StochasticGame game = parse_model(read_model_file("fig1-full.json"));
    const auto v = oracle_value(game);
    CHECK(v[*game.find_state("s0")] == 0.5);
    CHECK(v[*game.find_state("s1")] == 0.5);
    CHECK(v[*game.find_state("s2")] == 1.0);
}

TEST_CASE("oracle on the six-state MDP") {
    const StochasticGame game = parse_model(read_model_file("mec6.json"));
    const auto v = oracle_value(game);
    for (const char* name : {"m0", "m1", "m2", "m3"})
        CHECK(v[*game.find_state(name)] == 0.5);
}

TEST_CASE("all-Minimizer game with an avoidable goal has value zero") {
    std::vector<GameState> states(3);
    states[0] = GameState{"a", Player::Minimizer,
                          {GameAction{"to_goal", {{{1, 1.0, Rational(1)}}}},
                           GameAction{"to_sink", {{{2, 1.0, Rational(1)}}}}}};
    states[1] = GameState{"g", Player::Minimizer, {GameAction{"l", {{{1, 1.0, Rational(1)}}}}}};
    states[2] = GameState{"z", Player::Minimizer, {GameAction{"l", {{{2, 1.0, Rational(1)}}}}}};
    const auto game = StochasticGame::build(std::move(states), 0, {1}, 1.0, Rational(1));
    CHECK(oracle_value(game)[0] == 0.0);
}

TEST_CASE("oracle rejects oversized instances") {
    std::vector<GameState> states(13);
    for (int i = 0; i < 13; ++i) {
        const StateId next = static_cast<StateId>((i + 1) % 13);
        states[i] = GameState{"q" + std::to_string(i), Player::Maximizer,
                              {GameAction{"x", {{{next, 1.0, Rational(1)}}}}}};
    }
    const auto game = StochasticGame::build(std::move(states), 0, {0}, 1.0, Rational(1));
    CHECK_THROWS_AS(oracle_value(game), InstanceTooLarge);
}

TEST_CASE("exact and floating oracle agree on random games") {
    Rng rng(23);
    for (int i = 0; i < 15; ++i) {
        const StochasticGame game = random_game(rng, 6);
        const auto exact = oracle_value_exact(game);
        REQUIRE(exact.has_value());
        const auto approx = oracle_value(game);
        for (StateId s = 0; s < game.state_count(); ++s)
            CHECK(approx[s] == doctest::Approx((*exact)[s].to_double()).epsilon(1e-12));
    }
}
