#include "sgsmc/graph.hpp"

#include <algorithm>
#include <unordered_map>

namespace sgsmc {

namespace {

/// Iterative Tarjan SCC over the positions of `view` using only edges whose
/// action survives `act_alive` and whose endpoints survive `alive`.
std::vector<int> scc_components(const SubGameView& view,
                                const std::unordered_map<StateId, int>& pos,
                                const std::vector<char>& alive,
                                const std::vector<std::vector<char>>& act_alive,
                                int& comp_count) {
    const int n = static_cast<int>(view.states.size());
    std::vector<int> comp(n, -1), low(n, 0), disc(n, -1), stack;
    std::vector<char> on_stack(n, 0);
    comp_count = 0;
    int timer = 0;

    struct Frame {
        int v;
        std::size_t ai = 0;  // action cursor
        std::size_t ti = 0;  // successor cursor
    };

    for (int root = 0; root < n; ++root) {
        if (!alive[root] || disc[root] != -1) continue;
        std::vector<Frame> call;
        call.push_back({root});
        disc[root] = low[root] = timer++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& actions = view.states[f.v].actions;
            bool descended = false;
            while (f.ai < actions.size()) {
                if (!act_alive[f.v][actions[f.ai].index]) { ++f.ai; f.ti = 0; continue; }
                const auto& succ = actions[f.ai].successors;
                while (f.ti < succ.size()) {
                    const auto it = pos.find(succ[f.ti]);
                    ++f.ti;
                    if (it == pos.end() || !alive[it->second]) continue;
                    const int w = it->second;
                    if (disc[w] == -1) {
                        disc[w] = low[w] = timer++;
                        stack.push_back(w);
                        on_stack[w] = 1;
                        call.push_back({w});
                        descended = true;
                        break;
                    }
                    if (on_stack[w]) low[f.v] = std::min(low[f.v], disc[w]);
                }
                if (descended) break;
                ++f.ai;
                f.ti = 0;
            }
            if (descended) continue;
            if (low[f.v] == disc[f.v]) {
                while (true) {
                    const int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comp_count;
                    if (w == f.v) break;
                }
                ++comp_count;
            }
            const int v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
    }
    return comp;
}

}  // namespace

SubGameView full_view(const StochasticGame& game) {
    std::vector<StateId> all(game.state_count());
    for (StateId s = 0; s < game.state_count(); ++s) all[s] = s;
    return restrict_view(game, all);
}

SubGameView restrict_view(const StochasticGame& game, std::span<const StateId> X) {
    SubGameView view;
    view.states.reserve(X.size());
    for (StateId s : X) {
        ViewState vs;
        vs.id = s;
        vs.player = game.player(s);
        vs.goal = game.is_goal(s);
        for (std::uint32_t a = 0; a < game.action_count(s); ++a)
            vs.actions.push_back(ViewAction{a, post(game, s, a)});
        view.states.push_back(std::move(vs));
    }
    return view;
}

std::vector<EcCandidate> mec_decomposition(const SubGameView& view) {
    const int n = static_cast<int>(view.states.size());
    if (n == 0) return {};
    std::unordered_map<StateId, int> pos;
    pos.reserve(n);
    for (int i = 0; i < n; ++i) pos.emplace(view.states[i].id, i);

    std::vector<char> alive(n, 1);
    std::vector<std::vector<char>> act_alive(n);
    for (int i = 0; i < n; ++i) {
        std::uint32_t max_index = 0;
        for (const auto& a : view.states[i].actions) max_index = std::max(max_index, a.index);
        act_alive[i].assign(view.states[i].actions.empty() ? 0 : max_index + 1, 0);
        for (const auto& a : view.states[i].actions) act_alive[i][a.index] = 1;
    }

    std::vector<int> comp;
    int comp_count = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        comp = scc_components(view, pos, alive, act_alive, comp_count);
        for (int i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            bool any_action = false;
            for (const auto& a : view.states[i].actions) {
                if (!act_alive[i][a.index]) continue;
                bool stays = true;
                for (StateId t : a.successors) {
                    const auto it = pos.find(t);
                    if (it == pos.end() || !alive[it->second] || comp[it->second] != comp[i]) {
                        stays = false;
                        break;
                    }
                }
                if (!stays) {
                    act_alive[i][a.index] = 0;
                    changed = true;
                } else {
                    any_action = true;
                }
            }
            if (!any_action) {
                alive[i] = 0;
                changed = true;
            }
        }
    }

    std::vector<std::vector<int>> groups(comp_count);
    for (int i = 0; i < n; ++i)
        if (alive[i]) groups[comp[i]].push_back(i);

    std::vector<EcCandidate> out;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        EcCandidate ec;
        for (int i : g) {
            ec.states.push_back(view.states[i].id);
            for (const auto& a : view.states[i].actions)
                if (act_alive[i][a.index])
                    ec.staying.push_back(ActionRef{view.states[i].id, a.index});
        }
        std::sort(ec.states.begin(), ec.states.end());
        std::sort(ec.staying.begin(), ec.staying.end());
        out.push_back(std::move(ec));
    }
    std::sort(out.begin(), out.end(), [](const EcCandidate& a, const EcCandidate& b) {
        return a.states < b.states;
    });
    return out;
}

double best_exit(const SubGameView& view, std::span<const StateId> T,
                 const std::function<double(StateId, std::uint32_t)>& pair_score) {
    const auto in_T = [&](StateId s) {
        return std::find(T.begin(), T.end(), s) != T.end();
    };
    for (const auto& vs : view.states)
        if (vs.goal && in_T(vs.id)) return 1.0;

    double best = 0.0;  // Maximizer without exits: max over the empty set
    for (const auto& vs : view.states) {
        if (vs.player != Player::Maximizer || !in_T(vs.id)) continue;
        for (const auto& a : vs.actions) {
            bool exits = false;
            for (StateId t : a.successors)
                if (!in_T(t)) { exits = true; break; }
            if (exits) best = std::max(best, pair_score(vs.id, a.index));
        }
    }
    return best;
}

double pair_value(const StochasticGame& game, StateId s, std::uint32_t a,
                  std::span<const double> f) {
    double v = 0.0;
    for (const auto& e : game.distribution(s, a).entries) v += e.prob * f[e.target];
    return v;
}

double best_exit(const StochasticGame& game, std::span<const StateId> T,
                 std::span<const double> f) {
    const auto in_T = [&](StateId s) {
        return std::find(T.begin(), T.end(), s) != T.end();
    };
    for (StateId s : T)
        if (game.is_goal(s)) return 1.0;
    double best = 0.0;
    for (StateId s : T) {
        if (game.player(s) != Player::Maximizer) continue;
        for (std::uint32_t a = 0; a < game.action_count(s); ++a) {
            bool exits = false;
            for (const auto& e : game.distribution(s, a).entries)
                if (!in_T(e.target)) { exits = true; break; }
            if (exits) best = std::max(best, pair_value(game, s, a, f));
        }
    }
    return best;
}

SubGameView filter_minimizer_actions(
    SubGameView view, const std::function<double(StateId, std::uint32_t)>& pair_score,
    const std::function<double(StateId)>& state_value, double tol) {
    for (auto& vs : view.states) {
        if (vs.player != Player::Minimizer) continue;
        const double bound = state_value(vs.id);
        std::erase_if(vs.actions, [&](const ViewAction& a) {
            return pair_score(vs.id, a.index) > bound + tol;
        });
    }
    return view;
}

std::vector<EcCandidate> find_msecs_white(const StochasticGame& game,
                                          std::span<const StateId> X,
                                          std::span<const double> lower) {
    SubGameView view = filter_minimizer_actions(
        restrict_view(game, X),
        [&](StateId s, std::uint32_t a) { return pair_value(game, s, a, lower); },
        [&](StateId s) { return lower[s]; });
    return mec_decomposition(view);
}

std::vector<StateId> zero_states(const StochasticGame& game) {
    const std::size_t n = game.state_count();
    std::vector<std::vector<StateId>> reverse(n);
    for (StateId s = 0; s < n; ++s)
        for (std::uint32_t a = 0; a < game.action_count(s); ++a)
            for (const auto& e : game.distribution(s, a).entries)
                reverse[e.target].push_back(s);

    std::vector<char> reaches(n, 0);
    std::vector<StateId> queue;
    for (StateId g : game.goal()) {
        reaches[g] = 1;
        queue.push_back(g);
    }
    while (!queue.empty()) {
        const StateId t = queue.back();
        queue.pop_back();
        for (StateId s : reverse[t])
            if (!reaches[s]) {
                reaches[s] = 1;
                queue.push_back(s);
            }
    }
    std::vector<StateId> zero;
    for (StateId s = 0; s < n; ++s)
        if (!reaches[s]) zero.push_back(s);
    return zero;
}

}  // namespace sgsmc
