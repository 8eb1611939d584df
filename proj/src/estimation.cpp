#include "sgsmc/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgsmc {

double confidence_width(double delta_t, std::uint64_t n, Sidedness sided) {
    if (n == 0) throw std::invalid_argument("confidence width needs at least one sample");
    if (!(delta_t > 0.0 && delta_t < 1.0))
        throw std::invalid_argument("delta_t must be in (0,1)");
    const double d = sided == Sidedness::TwoSided ? delta_t / 2.0 : delta_t;
    return std::sqrt(std::log(d) / (-2.0 * static_cast<double>(n)));
}

double t_hat(const ObservationCounters& counters, const EstimatorConfig& config,
             StateId s, std::uint32_t a, StateId t) {
    const std::uint64_t total = counters.pair_count(s, a);
    if (total == 0) return 0.0;
    const double freq =
        static_cast<double>(counters.triple_count(s, a, t)) / static_cast<double>(total);
    const double c =
        config.zero_width ? 0.0 : confidence_width(config.delta_t, total, config.sided);
    return std::max(0.0, freq - c);
}

double distribute_delta(double delta_k, double p_min, const PartialModel& pm) {
    const std::size_t pairs = pm.action_pair_count();
    if (pairs == 0) throw std::invalid_argument("partial model has no actions");
    return delta_k * p_min / static_cast<double>(pairs);
}

double estimated_bound(BoundKind kind, std::span<const double> values,
                       const ObservationCounters& counters, const EstimatorConfig& config,
                       const PartialModel& pm, std::uint32_t local_state, std::uint32_t action) {
    const auto& st = pm.state(local_state);
    const auto& act = st.actions[action];
    const auto* pc = counters.find(st.id, action);

    if (pc == nullptr || pc->total == 0)
        return kind == BoundKind::Lower ? 0.0 : 1.0;

    const double c =
        config.zero_width ? 0.0 : confidence_width(config.delta_t, pc->total, config.sided);
    double weighted = 0.0;
    double mass = 0.0;
    for (const auto& [t, n] : pc->successors) {
        const double est =
            std::max(0.0, static_cast<double>(n) / static_cast<double>(pc->total) - c);
        weighted += est * values[pm.local(t)];
        mass += est;
    }
    const double remainder = std::max(0.0, 1.0 - mass);

    double tail;
    if (config.mode == AccessMode::Grey && act.support_known()) {
        // Full support known: the unassigned mass cannot do better/worse than
        // the extreme bound among the actual successors.
        double extreme = kind == BoundKind::Lower ? 1.0 : 0.0;
        for (const auto& [t, n] : pc->successors) {
            const double v = values[pm.local(t)];
            extreme = kind == BoundKind::Lower ? std::min(extreme, v) : std::max(extreme, v);
        }
        tail = remainder * extreme;
    } else {
        tail = kind == BoundKind::Lower ? 0.0 : remainder;
    }
    return std::clamp(weighted + tail, 0.0, 1.0);
}

std::uint64_t required_samples(double delta_t, double p_min) {
    if (!(delta_t > 0.0 && delta_t < 1.0))
        throw std::invalid_argument("delta_t must be in (0,1)");
    if (!(p_min > 0.0 && p_min <= 1.0))
        throw std::invalid_argument("p_min must be in (0,1]");
    if (p_min == 1.0) return 1;
    return static_cast<std::uint64_t>(std::ceil(std::log(delta_t) / std::log(1.0 - p_min)));
}

double required_samples_real(double delta_t, double p_min) {
    if (p_min >= 1.0) return 0.0;
    return std::log(delta_t) / std::log(1.0 - p_min);
}

TheoreticalSamples theoretical_samples(double epsilon, double delta_t,
                                       std::size_t state_count, std::uint64_t horizon,
                                       double p_min) {
    if (!(epsilon > 0.0) || !(delta_t > 0.0 && delta_t < 1.0) || state_count == 0 ||
        horizon == 0 || !(p_min > 0.0 && p_min <= 1.0))
        throw std::invalid_argument("theoretical_samples: all inputs must be positive");
    const double s = static_cast<double>(state_count);
    const double r = static_cast<double>(horizon);
    // log-space so that tiny p_min powers do not underflow to inf/0
    const double log_n = std::log(-32.0 * std::log(delta_t / 2.0)) + 2.0 * std::log(s) +
                         2.0 * std::log(r) - 2.0 * std::log(epsilon) -
                         2.0 * s * r * std::log(p_min);
    constexpr double kLogMax = 43.0;  // ln(INT64_MAX) ~ 43.67
    if (log_n > kLogMax) return {INT64_MAX, true};
    // Within range: evaluate the formula directly for full precision.
    const double n = std::ceil(-32.0 * std::log(delta_t / 2.0) * s * s * r * r /
                               (epsilon * epsilon * std::pow(p_min, 2.0 * s * r)));
    if (n >= static_cast<double>(INT64_MAX)) return {INT64_MAX, true};
    return {static_cast<std::int64_t>(n), false};
}

}  // namespace sgsmc
