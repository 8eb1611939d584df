#include "sgsmc/oracle_value.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace sgsmc {

namespace {

/// Gaussian elimination for the reachability system of one induced chain.
/// T is double or Rational; double uses partial pivoting, Rational any
/// nonzero pivot (exact).
template <typename T>
std::vector<T> solve_chain(const StochasticGame& game, const std::vector<std::uint32_t>& choice,
                           const std::function<T(const TransitionEntry&)>& prob_of) {
    const std::size_t n = game.state_count();

    // Which states can reach a goal at all under this strategy pair.
    std::vector<std::vector<StateId>> reverse(n);
    for (StateId s = 0; s < n; ++s)
        for (const auto& e : game.distribution(s, choice[s]).entries)
            reverse[e.target].push_back(s);
    std::vector<char> reaches(n, 0);
    std::vector<StateId> queue;
    for (StateId g : game.goal()) {
        reaches[g] = 1;
        queue.push_back(g);
    }
    while (!queue.empty()) {
        StateId t = queue.back();
        queue.pop_back();
        for (StateId s : reverse[t])
            if (!reaches[s]) {
                reaches[s] = 1;
                queue.push_back(s);
            }
    }

    // Unknowns: states that reach a goal but are not goals themselves.
    std::vector<int> var(n, -1);
    std::vector<StateId> unknowns;
    for (StateId s = 0; s < n; ++s)
        if (reaches[s] && !game.is_goal(s)) {
            var[s] = static_cast<int>(unknowns.size());
            unknowns.push_back(s);
        }

    const std::size_t m = unknowns.size();
    std::vector<std::vector<T>> A(m, std::vector<T>(m, T(0)));
    std::vector<T> b(m, T(0));
    for (std::size_t i = 0; i < m; ++i) {
        const StateId s = unknowns[i];
        A[i][i] = T(1);
        for (const auto& e : game.distribution(s, choice[s]).entries) {
            const T p = prob_of(e);
            if (game.is_goal(e.target)) {
                b[i] += p;
            } else if (var[e.target] >= 0) {
                A[i][var[e.target]] -= p;
            }
            // value-0 successors contribute nothing
        }
    }

    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        if constexpr (std::is_same_v<T, double>) {
            for (std::size_t r = col + 1; r < m; ++r)
                if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
        } else {
            while (pivot < m && A[pivot][col].is_zero()) ++pivot;
            if (pivot == m) throw std::runtime_error("singular reachability system");
        }
        std::swap(A[col], A[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            const T factor = A[r][col] / A[col][col];
            if constexpr (std::is_same_v<T, double>) {
                if (factor == 0.0) continue;
            } else {
                if (factor.is_zero()) continue;
            }
            for (std::size_t c = col; c < m; ++c) A[r][c] -= factor * A[col][c];
            b[r] -= factor * b[col];
        }
    }

    std::vector<T> values(n, T(0));
    for (StateId g : game.goal()) values[g] = T(1);
    for (std::size_t i = 0; i < m; ++i) values[unknowns[i]] = b[i] / A[i][i];
    return values;
}

template <typename T>
std::vector<T> enumerate_values(const StochasticGame& game,
                                const std::function<T(const TransitionEntry&)>& prob_of) {
    const std::size_t n = game.state_count();
    std::vector<StateId> max_states, min_states;
    for (StateId s = 0; s < n; ++s)
        (game.player(s) == Player::Maximizer ? max_states : min_states).push_back(s);

    std::vector<std::uint32_t> choice(n, 0);
    const auto advance = [&](const std::vector<StateId>& owners) {
        for (StateId s : owners) {
            if (++choice[s] < game.action_count(s)) return true;
            choice[s] = 0;
        }
        return false;
    };

    std::vector<T> value(n, T(0));
    bool first_sigma = true;
    do {
        std::vector<T> best_response(n, T(0));
        bool first_tau = true;
        do {
            const std::vector<T> x = solve_chain<T>(game, choice, prob_of);
            if (first_tau) {
                best_response = x;
                first_tau = false;
            } else {
                for (std::size_t s = 0; s < n; ++s)
                    if (x[s] < best_response[s]) best_response[s] = x[s];
            }
        } while (advance(min_states));
        if (first_sigma) {
            value = best_response;
            first_sigma = false;
        } else {
            for (std::size_t s = 0; s < n; ++s)
                if (best_response[s] > value[s]) value[s] = best_response[s];
        }
    } while (advance(max_states));
    return value;
}

void check_limits(const StochasticGame& game) {
    if (game.state_count() > 12)
        throw InstanceTooLarge("oracle limited to 12 states, got " +
                               std::to_string(game.state_count()));
    double combos = 1.0;
    for (StateId s = 0; s < game.state_count(); ++s) combos *= game.action_count(s);
    if (combos > 1e6)
        throw InstanceTooLarge("too many strategy combinations for enumeration");
}

}  // namespace

std::vector<double> oracle_value(const StochasticGame& game) {
    check_limits(game);
    if (auto exact = oracle_value_exact(game)) {
        std::vector<double> out;
        out.reserve(exact->size());
        for (const auto& r : *exact) out.push_back(r.to_double());
        return out;
    }
    return enumerate_values<double>(game,
                                    [](const TransitionEntry& e) { return e.prob; });
}

std::optional<std::vector<Rational>> oracle_value_exact(const StochasticGame& game) {
    check_limits(game);
    if (!game.fully_exact()) return std::nullopt;
    try {
        return enumerate_values<Rational>(
            game, [](const TransitionEntry& e) { return *e.exact; });
    } catch (const RationalOverflow&) {
        return std::nullopt;
    }
}

}  // namespace sgsmc
