#include <doctest.h>

#include "sgsmc/model_io.hpp"
#include "test_util.hpp"

using namespace sgsmc;
using namespace sgsmc::testutil;

TEST_CASE("MECs of fig1 without the self-loop") {
    const StochasticGame game = parse_model(read_model_file("fig1-half.json"));
    const auto mecs = mec_decomposition(full_view(game));
    // absorbing plus and minus are singleton MECs, {s0,s1} closes under a1/b1
    REQUIRE(mecs.size() == 3);
    CHECK(mecs[0].states == std::vector<StateId>{0, 1});
    CHECK(mecs[0].staying ==
          std::vector<ActionRef>{ActionRef{0, 0}, ActionRef{1, 0}});
    CHECK(mecs[1].states == std::vector<StateId>{2});
    CHECK(mecs[2].states == std::vector<StateId>{3});
}

TEST_CASE("MEC of the restricted view") {
    const StochasticGame game = parse_model(read_model_file("fig1-half.json"));
    const std::vector<StateId> X{0, 1};
    const auto mecs = mec_decomposition(restrict_view(game, X));
    REQUIRE(mecs.size() == 1);
    CHECK(mecs[0].states == std::vector<StateId>{0, 1});
    // b2 exits the view, so only a1 and b1 stay
    CHECK(mecs[0].staying == std::vector<ActionRef>{ActionRef{0, 0}, ActionRef{1, 0}});
}

TEST_CASE("mec_decomposition matches the subset-enumeration oracle") {
    Rng rng(7);
    for (int i = 0; i < 40; ++i) {
        const StochasticGame game = random_game(rng, 8);
        const SubGameView view = full_view(game);
        const auto fast = mec_decomposition(view);
        const auto brute = brute_force_mecs(view);
        CAPTURE(i);
        CHECK(fast == brute);
    }
}

TEST_CASE("MEC outputs satisfy the end-component conditions and maximality") {
    Rng rng(11);
    for (int i = 0; i < 25; ++i) {
        const StochasticGame game = random_game(rng, 10);
        const SubGameView view = full_view(game);
        const auto mecs = mec_decomposition(view);
        std::vector<char> seen(game.state_count(), 0);
        for (const auto& ec : mecs) {
            CHECK(is_end_component(view, ec.states));
            for (StateId s : ec.states) {
                CHECK_FALSE(seen[s]);  // pairwise disjoint
                seen[s] = 1;
            }
            // maximality: adding any adjacent state breaks the conditions
            for (StateId extra = 0; extra < game.state_count(); ++extra) {
                if (std::binary_search(ec.states.begin(), ec.states.end(), extra)) continue;
                auto bigger = ec.states;
                bigger.insert(std::lower_bound(bigger.begin(), bigger.end(), extra), extra);
                CHECK_FALSE(is_end_component(view, bigger));
            }
        }
    }
}

TEST_CASE("best_exit") {
    const StochasticGame game = parse_model(read_model_file("fig1-half.json"));
    std::vector<double> f(game.state_count(), 0.0);
    f[2] = 1.0;  // plus
    f[3] = 0.0;  // minus

    SUBCASE("goal inside T short-circuits to 1") {
        CHECK(best_exit(game, std::vector<StateId>{1, 2}, f) == 1.0);
    }
    SUBCASE("maximizer exit value") {
        CHECK(best_exit(game, std::vector<StateId>{0, 1}, f) == doctest::Approx(0.5));
    }
    SUBCASE("no maximizer exit gives 0") {
        // minus is a Minimizer sink: T={minus} has no Maximizer exit
        CHECK(best_exit(game, std::vector<StateId>{3}, f) == 0.0);
    }
    SUBCASE("monotone in f") {
        Rng rng(3);
        for (int i = 0; i < 20; ++i) {
            std::vector<double> lo(game.state_count()), hi(game.state_count());
            for (std::size_t s = 0; s < lo.size(); ++s) {
                lo[s] = rng.uniform01();
                hi[s] = lo[s] + (1.0 - lo[s]) * rng.uniform01();
            }
            const std::vector<StateId> T{0, 1};
            CHECK(best_exit(game, T, lo) <= best_exit(game, T, hi) + 1e-12);
        }
    }
}

TEST_CASE("find_msecs_white removes suboptimal Minimizer actions") {
    const StochasticGame game = parse_model(read_model_file("fig1-full.json"));
    const StateId s0 = *game.find_state("s0");
    const StateId s1 = *game.find_state("s1");
    std::vector<StateId> all(game.state_count());
    for (StateId s = 0; s < game.state_count(); ++s) all[s] = s;

    SUBCASE("with a learned lower bound a2 is dropped and {s0,s1} shows up") {
        std::vector<double> lower(game.state_count(), 0.0);
        lower[*game.find_state("plus")] = 1.0;
        lower[*game.find_state("s2")] = 1.0;
        lower[s0] = 0.5;
        lower[s1] = 0.5;
        const auto msecs = find_msecs_white(game, all, lower);
        bool found = false;
        for (const auto& ec : msecs)
            if (ec.states == std::vector<StateId>{s0, s1}) found = true;
        CHECK(found);
    }
    SUBCASE("all-zero lower bound removes nothing") {
        const std::vector<double> lower(game.state_count(), 0.0);
        const auto msecs = find_msecs_white(game, all, lower);
        const auto plain = mec_decomposition(full_view(game));
        CHECK(msecs == plain);
    }
}

TEST_CASE("find_msecs_white agrees with enumeration on random games") {
    Rng rng(19);
    for (int i = 0; i < 20; ++i) {
        const StochasticGame game = random_game(rng, 6);
        std::vector<double> lower(game.state_count());
        for (auto& v : lower) v = rng.uniform01();
        for (StateId g : game.goal()) lower[g] = 1.0;
        std::vector<StateId> all(game.state_count());
        for (StateId s = 0; s < game.state_count(); ++s) all[s] = s;

        // independent route: restrict the view by the same rule, then
        // enumerate subsets
        SubGameView view = full_view(game);
        for (auto& vs : view.states) {
            if (vs.player != Player::Minimizer) continue;
            std::erase_if(vs.actions, [&](const ViewAction& a) {
                return pair_value(game, vs.id, a.index, lower) > lower[vs.id] + 1e-12;
            });
        }
        CHECK(find_msecs_white(game, all, lower) == brute_force_mecs(view));
    }
}

TEST_CASE("zero_states") {
    const StochasticGame game = parse_model(read_model_file("fig1-half.json"));
    SUBCASE("only the sink cannot reach the goal") {
        CHECK(zero_states(game) == std::vector<StateId>{*game.find_state("minus")});
    }
    SUBCASE("goal everywhere leaves nothing") {
        std::vector<GameState> states(2);
        states[0] = GameState{"a", Player::Maximizer, {GameAction{"x", {{{1, 1.0, Rational(1)}}}}}};
        states[1] = GameState{"b", Player::Maximizer, {GameAction{"y", {{{0, 1.0, Rational(1)}}}}}};
        const auto g = StochasticGame::build(std::move(states), 0, {0, 1}, 1.0, Rational(1));
        CHECK(zero_states(g).empty());
    }
    SUBCASE("disconnected sink component is contained in zero") {
        std::vector<GameState> states(3);
        states[0] = GameState{"a", Player::Maximizer, {GameAction{"x", {{{1, 1.0, Rational(1)}}}}}};
        states[1] = GameState{"goal", Player::Maximizer, {GameAction{"l", {{{1, 1.0, Rational(1)}}}}}};
        states[2] = GameState{"lost", Player::Maximizer, {GameAction{"l", {{{2, 1.0, Rational(1)}}}}}};
        const auto g = StochasticGame::build(std::move(states), 0, {1}, 1.0, Rational(1));
        CHECK(zero_states(g) == std::vector<StateId>{2});
    }
}
