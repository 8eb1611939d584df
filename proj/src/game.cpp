#include "sgsmc/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace sgsmc {

namespace {

constexpr double kSumTolerance = 1e-9;

bool is_unit_self_loop(const GameAction& action, StateId s) {
    return action.dist.entries.size() == 1 &&
           action.dist.entries[0].target == s &&
           std::abs(action.dist.entries[0].prob - 1.0) <= kSumTolerance;
}

/// Goal states become absorbing: any goal state that is not already a single
/// unit self-loop gets its actions replaced by one synthesized loop.
void absorb_goals(std::vector<GameState>& states, const std::vector<StateId>& goal) {
    for (StateId g : goal) {
        auto& st = states[g];
        if (st.actions.size() == 1 && is_unit_self_loop(st.actions[0], g)) continue;
        GameAction loop;
        loop.name = "loop";
        loop.dist.entries.push_back(TransitionEntry{g, 1.0, Rational(1)});
        st.actions.assign(1, std::move(loop));
    }
}

}  // namespace

StochasticGame StochasticGame::build_unchecked(std::vector<GameState> states, StateId initial,
                                               std::vector<StateId> goal, double p_min_declared,
                                               std::optional<Rational> p_min_exact) {
    StochasticGame g;
    for (StateId gs : goal)
        if (gs >= states.size()) throw std::invalid_argument("goal state index out of range");
    if (initial >= states.size() && !states.empty())
        throw std::invalid_argument("initial state index out of range");
    absorb_goals(states, goal);
    g.states_ = std::move(states);
    g.initial_ = initial;
    std::sort(goal.begin(), goal.end());
    goal.erase(std::unique(goal.begin(), goal.end()), goal.end());
    g.goal_ = std::move(goal);
    g.goal_mask_.assign(g.states_.size(), 0);
    for (StateId gs : g.goal_) g.goal_mask_[gs] = 1;
    g.p_min_ = p_min_declared;
    g.p_min_exact_ = p_min_exact;
    return g;
}

StochasticGame StochasticGame::build(std::vector<GameState> states, StateId initial,
                                     std::vector<StateId> goal, double p_min_declared,
                                     std::optional<Rational> p_min_exact) {
    StochasticGame g = build_unchecked(std::move(states), initial, std::move(goal),
                                       p_min_declared, p_min_exact);
    auto violations = validate(g);
    if (!violations.empty()) {
        std::string msg = "invalid model:";
        for (const auto& v : violations) msg += "\n  " + v.message;
        throw std::invalid_argument(msg);
    }
    return g;
}

const Distribution& StochasticGame::distribution(StateId s, std::uint32_t a) const {
    if (s >= states_.size() || a >= states_[s].actions.size())
        throw std::out_of_range("unavailable action");
    return states_[s].actions[a].dist;
}

std::optional<StateId> StochasticGame::find_state(const std::string& name) const {
    for (StateId s = 0; s < states_.size(); ++s)
        if (states_[s].name == name) return s;
    return std::nullopt;
}

bool StochasticGame::fully_exact() const {
    if (!p_min_exact_) return false;
    for (const auto& st : states_)
        for (const auto& act : st.actions)
            for (const auto& e : act.dist.entries)
                if (!e.exact) return false;
    return true;
}

std::vector<Violation> validate(const StochasticGame& game) {
    std::vector<Violation> out;
    const double pmin = game.p_min_declared();
    if (!(pmin > 0.0 && pmin <= 1.0))
        out.push_back({"p_min not in (0,1]: " + std::to_string(pmin)});

    double min_prob = 1.0;
    for (StateId s = 0; s < game.state_count(); ++s) {
        const auto& st = game.state(s);
        if (st.actions.empty()) {
            out.push_back({"blocking state " + st.name});
            continue;
        }
        for (std::uint32_t a = 0; a < st.actions.size(); ++a) {
            const auto& act = st.actions[a];
            double sum = 0.0;
            std::unordered_set<StateId> seen;
            for (const auto& e : act.dist.entries) {
                if (e.target >= game.state_count()) {
                    out.push_back({"target out of range in " + st.name + "/" + act.name});
                    continue;
                }
                if (!(e.prob > 0.0)) {
                    out.push_back({"non-positive probability in " + st.name + "/" + act.name});
                }
                if (!seen.insert(e.target).second)
                    out.push_back({"duplicate successor in " + st.name + "/" + act.name});
                sum += e.prob;
                min_prob = std::min(min_prob, e.prob);
            }
            if (std::abs(sum - 1.0) > 1e-9)
                out.push_back({"distribution not stochastic in " + st.name + "/" + act.name +
                               " (sums to " + std::to_string(sum) + ")"});
        }
    }
    if (pmin > min_prob + 1e-12)
        out.push_back({"p_min exceeds minimum transition (" + std::to_string(pmin) + " > " +
                       std::to_string(min_prob) + ")"});

    for (StateId g : game.goal()) {
        const auto& st = game.state(g);
        const bool ok = st.actions.size() == 1 && st.actions[0].dist.entries.size() == 1 &&
                        st.actions[0].dist.entries[0].target == g;
        if (!ok) out.push_back({"goal state " + st.name + " is not absorbing"});
    }
    return out;
}

std::vector<StateId> post(const StochasticGame& game, StateId s, std::uint32_t a) {
    const auto& dist = game.distribution(s, a);
    std::vector<StateId> out;
    out.reserve(dist.entries.size());
    for (const auto& e : dist.entries) out.push_back(e.target);
    return out;
}

bool is_exit(const StochasticGame& game, StateId s, std::uint32_t a,
             std::span<const StateId> T) {
    const auto& dist = game.distribution(s, a);
    for (const auto& e : dist.entries)
        if (std::find(T.begin(), T.end(), e.target) == T.end()) return true;
    return false;
}

ReachabilityQuery make_query(const StochasticGame& game, double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must be in (0,1]");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("delta must be in (0,1)");
    return ReachabilityQuery{&game, epsilon, delta};
}

}  // namespace sgsmc
