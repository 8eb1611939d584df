#include "sgsmc/blackvi.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_set>

namespace sgsmc {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kMsecTolerance = 1e-12;

void grow_bounds(const PartialModel& pm, std::vector<double>& lower,
                 std::vector<double>& upper) {
    for (std::size_t i = lower.size(); i < pm.size(); ++i) {
        lower.push_back(pm.state(static_cast<std::uint32_t>(i)).goal ? 1.0 : 0.0);
        upper.push_back(1.0);
    }
}

std::uint32_t pick_action(const PartialModel& pm, const ObservationCounters& counters,
                          const EstimatorConfig& est, std::span<const double> lower,
                          std::span<const double> upper, std::uint32_t ls, Rng& rng) {
    const auto& st = pm.state(ls);
    const bool maximizer = st.player == Player::Maximizer;
    const auto action_count = static_cast<std::uint32_t>(st.actions.size());

    // Estimated score, capped by the state bound: V(s,a) cannot beat V(s) for
    // Maximizer (dually for Minimizer).
    const auto score = [&](std::uint32_t a) {
        if (maximizer)
            return std::min(estimated_bound(BoundKind::Upper, upper, counters, est, pm, ls, a),
                            upper[ls]);
        return std::max(estimated_bound(BoundKind::Lower, lower, counters, est, pm, ls, a),
                        lower[ls]);
    };

    double best = score(0);
    std::vector<double> scores{best};
    for (std::uint32_t a = 1; a < action_count; ++a) {
        const double v = score(a);
        scores.push_back(v);
        if (maximizer ? v > best : v < best) best = v;
    }
    // Randomize uniformly over the actions that look best up to the state's
    // remaining uncertainty: full exploration while nothing is known, pure
    // greed once the interval has closed. A strict argmax starves deflated
    // exits and freezes the achievable width at the first phase's level.
    const double band = kTieTolerance + 0.5 * (upper[ls] - lower[ls]);
    std::vector<std::uint32_t> ties;
    for (std::uint32_t a = 0; a < action_count; ++a)
        if (maximizer ? scores[a] >= best - band : scores[a] <= best + band) ties.push_back(a);
    return ties[rng.uniform_index(ties.size())];
}

}  // namespace

bool delta_sure_ec(std::span<const StateId> T, const ObservationCounters& counters,
                   double delta_t, double p_min, AccessMode mode, const PartialModel& pm) {
    const auto in_T = [&](StateId t) {
        return std::find(T.begin(), T.end(), t) != T.end();
    };
    const double threshold = required_samples_real(delta_t, p_min);
    for (StateId s : T) {
        const auto& st = pm.state(pm.local(s));
        for (std::uint32_t a = 0; a < st.actions.size(); ++a) {
            const auto& act = st.actions[a];
            bool staying = true;
            for (StateId t : act.observed)
                if (!in_T(t)) { staying = false; break; }
            if (!staying) continue;
            if (mode == AccessMode::Grey) {
                if (!act.support_known()) return false;
            } else {
                if (!(static_cast<double>(counters.pair_count(s, a)) > threshold)) return false;
            }
        }
    }
    return true;
}

bool looping(std::span<const StateId> X, StateId s, const ObservationCounters& counters,
             const PartialModel& pm, double delta_t, double p_min, AccessMode mode) {
    if (std::find(X.begin(), X.end(), s) == X.end()) return false;
    for (const auto& ec : mec_decomposition(pm.view_restricted(X))) {
        if (!std::binary_search(ec.states.begin(), ec.states.end(), s)) continue;
        return delta_sure_ec(ec.states, counters, delta_t, p_min, mode, pm);
    }
    return false;
}

std::vector<StateId> simulate_counting(const SampleOracle& oracle, PartialModel& pm,
                                       ObservationCounters& counters,
                                       std::vector<double>& lower, std::vector<double>& upper,
                                       const EstimatorConfig& est, double p_min, Rng& rng) {
    std::vector<StateId> X;
    std::unordered_set<StateId> member;
    StateId s = oracle.initial_state();
    // Length guard scaling with the explored model; the EC detector is the
    // real stopping rule, this only bounds a single unlucky episode.
    std::size_t budget = 1000 + 100 * pm.size();
    while (true) {
        const std::uint32_t ls = pm.explore(s);
        grow_bounds(pm, lower, upper);
        if (member.insert(s).second) X.push_back(s);
        const std::uint32_t a = pick_action(pm, counters, est, lower, upper, ls, rng);
        const StateId t = oracle.sample_successor(s, a, rng);
        counters.record(s, a, t);
        pm.note_observation(s, a, t);
        grow_bounds(pm, lower, upper);
        s = t;
        if (oracle.is_goal(s)) break;
        if (member.count(s) && looping(X, s, counters, pm, est.delta_t, p_min, est.mode)) break;
        if (--budget == 0) break;
    }
    if (!member.count(s)) X.push_back(s);
    return X;
}

void update_estimated(const PartialModel& pm, const ObservationCounters& counters,
                      const EstimatorConfig& est, std::vector<double>& lower,
                      std::vector<double>& upper, std::vector<double>& pair_lower,
                      std::vector<double>& pair_upper, std::span<const StateId> X) {
    std::vector<StateId> all;
    if (X.empty()) {
        all.reserve(pm.size());
        for (const auto& st : pm.states()) all.push_back(st.id);
        X = all;
    }
    for (StateId s : X) {
        const std::uint32_t ls = pm.local(s);
        const auto& st = pm.state(ls);
        if (st.goal) continue;
        const bool maximizer = st.player == Player::Maximizer;
        double lo = 0.0, hi = 0.0;
        for (std::uint32_t a = 0; a < st.actions.size(); ++a) {
            const double l = estimated_bound(BoundKind::Lower, lower, counters, est, pm, ls, a);
            const double u = estimated_bound(BoundKind::Upper, upper, counters, est, pm, ls, a);
            const std::size_t p = pm.pair_index(ls, a);
            pair_lower[p] = l;
            pair_upper[p] = u;
            if (a == 0) {
                lo = l;
                hi = u;
            } else if (maximizer) {
                lo = std::max(lo, l);
                hi = std::max(hi, u);
            } else {
                lo = std::min(lo, l);
                hi = std::min(hi, u);
            }
        }
        // Monotone within a phase: estimates may flicker between rounds when
        // deflation sets change, but certified bounds never loosen.
        lower[ls] = std::max(lower[ls], lo);
        upper[ls] = std::min(upper[ls], hi);
    }
}

std::vector<std::vector<StateId>> find_msecs_black(
    const PartialModel& pm, std::span<const double> lower, std::span<const double> pair_lower,
    const ObservationCounters& counters, double delta_t, double p_min, AccessMode mode) {
    SubGameView view = filter_minimizer_actions(
        pm.view_all(),
        [&](StateId s, std::uint32_t a) { return pair_lower[pm.pair_index(pm.local(s), a)]; },
        [&](StateId s) { return lower[pm.local(s)]; }, kMsecTolerance);
    std::vector<std::vector<StateId>> out;
    for (auto& ec : mec_decomposition(view))
        if (delta_sure_ec(ec.states, counters, delta_t, p_min, mode, pm))
            out.push_back(std::move(ec.states));
    return out;
}

void deflate_black(std::span<const StateId> T, const PartialModel& pm,
                   std::span<const double> pair_upper, std::vector<double>& upper) {
    const auto in_T = [&](StateId t) {
        return std::find(T.begin(), T.end(), t) != T.end();
    };
    for (StateId s : T)
        if (pm.state(pm.local(s)).goal) return;  // best exit is 1, nothing to cap

    double cap = 0.0;
    for (StateId s : T) {
        const std::uint32_t ls = pm.local(s);
        const auto& st = pm.state(ls);
        if (st.player != Player::Maximizer) continue;
        for (std::uint32_t a = 0; a < st.actions.size(); ++a) {
            bool exits = false;
            for (StateId t : st.actions[a].observed)
                if (!in_T(t)) { exits = true; break; }
            if (exits) cap = std::max(cap, pair_upper[pm.pair_index(ls, a)]);
        }
    }
    for (StateId s : T) {
        const std::uint32_t ls = pm.local(s);
        upper[ls] = std::min(upper[ls], cap);
    }
}

RunReport black_vi(const SampleOracle& oracle, const BlackViConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const auto wall_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    };
    const auto timed_out = [&] { return wall_ms() >= config.timeout_ms; };

    const double p_min = oracle.p_min();
    PartialModel pm(oracle);
    ObservationCounters counters;
    Rng rng(config.seed);

    std::vector<double> lower, upper, pair_lower, pair_upper;
    grow_bounds(pm, lower, upper);

    EstimatorConfig est;
    est.sided = config.sided;
    est.mode = config.mode;
    est.zero_width = config.corrupt_zero_width;

    RunReport report;
    const std::uint32_t init_local = pm.local(oracle.initial_state());
    const auto width = [&] { return upper[init_local] - lower[init_local]; };
    double best_lower = 0.0;
    double best_upper = 1.0;

    std::uint64_t k = 1;
    std::size_t phase_index = 0;
    bool out_of_time = false;
    while (true) {
        if (k < (1ULL << 62)) k *= 2;  // saturate instead of wrapping
        const double delta_k = config.delta / static_cast<double>(k);

        // Guided simulation phase.
        std::uint64_t n_k = config.nk_sequence.empty()
                                ? config.nk
                                : config.nk_sequence[std::min(phase_index,
                                                              config.nk_sequence.size() - 1)];
        if (config.max_total_simulations)
            n_k = std::min(n_k, config.max_total_simulations - report.total_simulations);
        for (std::uint64_t i = 0; i < n_k; ++i) {
            if (timed_out()) { out_of_time = true; break; }
            est.delta_t = std::max(distribute_delta(delta_k, p_min, pm), 1e-300);
            simulate_counting(oracle, pm, counters, lower, upper, est, p_min, rng);
            ++report.total_simulations;
        }
        if (out_of_time) break;  // bounds of the last finished phase still hold

        // Guaranteed value-iteration phase over re-initialized bounds.
        // The floor keeps late phases sound (more conservative) instead of
        // underflowing once k has doubled past what double can represent.
        est.delta_t = std::max(distribute_delta(delta_k, p_min, pm), 1e-300);
        lower.assign(pm.size(), 0.0);
        upper.assign(pm.size(), 1.0);
        for (std::uint32_t i = 0; i < pm.size(); ++i)
            if (pm.state(i).goal) lower[i] = 1.0;
        pair_lower.assign(pm.action_pair_count(), 0.0);
        pair_upper.assign(pm.action_pair_count(), 1.0);

        const std::uint64_t rounds = k * pm.size();
        std::vector<double> prev_lower, prev_upper;
        for (std::uint64_t r = 0; r < rounds; ++r) {
            if (timed_out()) { out_of_time = true; break; }
            prev_lower = lower;
            prev_upper = upper;
            update_estimated(pm, counters, est, lower, upper, pair_lower, pair_upper);
            if (config.observer)
                config.observer({BlackViConfig::Stage::AfterUpdate, k, r, &pm, lower, upper});
            for (const auto& T : find_msecs_black(pm, lower, pair_lower, counters, est.delta_t,
                                                  p_min, config.mode))
                deflate_black(T, pm, pair_upper, upper);
            if (config.observer)
                config.observer({BlackViConfig::Stage::AfterDeflate, k, r, &pm, lower, upper});
            if (width() < config.epsilon) break;  // monotone within the phase
            // Frozen counters make the round operator deterministic; once it
            // stops moving the remaining rounds of this phase are no-ops.
            double moved = 0.0;
            for (std::size_t i = 0; i < lower.size(); ++i)
                moved = std::max({moved, lower[i] - prev_lower[i], prev_upper[i] - upper[i]});
            if (moved < 1e-15) break;
        }

        const PhaseRecord record{wall_ms(), k, delta_k, pm.size(),
                                 lower[init_local], upper[init_local]};
        report.phases.push_back(record);
        if (config.sink) config.sink(record);

        // The per-phase error budget is a union bound over all phases, so
        // every certified phase interval is simultaneously valid; keep the
        // narrowest instead of letting a late, sample-starved phase widen
        // the answer again.
        if (width() < best_upper - best_lower) {
            best_lower = lower[init_local];
            best_upper = upper[init_local];
        }

        if (best_upper - best_lower < config.epsilon) {
            report.cause = StopCause::Precision;
            report.converged = true;
            break;
        }
        if (out_of_time) break;
        if (config.max_total_simulations &&
            report.total_simulations >= config.max_total_simulations) {
            report.cause = StopCause::SimulationBudget;
            break;
        }
        ++phase_index;
    }

    // A mid-phase interruption still leaves sound bounds; take them if better.
    if (upper[init_local] - lower[init_local] < best_upper - best_lower) {
        best_lower = lower[init_local];
        best_upper = upper[init_local];
    }
    if (out_of_time && !report.converged) report.cause = StopCause::Timeout;
    report.lower = best_lower;
    report.upper = best_upper;
    return report;
}

}  // namespace sgsmc
