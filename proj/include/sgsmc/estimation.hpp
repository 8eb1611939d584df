#pragma once

#include "sgsmc/counters.hpp"

namespace sgsmc {

enum class Sidedness { OneSided, TwoSided };

/// Parameters of the transition estimator. `zero_width` collapses every
/// confidence width to 0; it exists purely as a negative control for the
/// statistical test harness and is never set by regular runs.
struct EstimatorConfig {
    double delta_t = 0.05;
    Sidedness sided = Sidedness::OneSided;
    AccessMode mode = AccessMode::Black;
    bool zero_width = false;
};

/// Hoeffding confidence width for n samples at per-transition error
/// tolerance delta_t. One-sided: sqrt(ln(delta_t) / (-2n)); two-sided uses
/// delta_t/2. Not clamped, so it may exceed 1. Requires n >= 1.
double confidence_width(double delta_t, std::uint64_t n, Sidedness sided);

/// Lower estimate of the transition probability (s,a) -> t:
/// max(0, #(s,a,t)/#(s,a) - c); 0 when the pair has no samples.
double t_hat(const ObservationCounters& counters, const EstimatorConfig& config,
             StateId s, std::uint32_t a, StateId t);

/// Splits a phase error tolerance over all transitions of the partial model,
/// over-approximating successor counts by 1/p_min:
/// delta_t = delta_k * p_min / |{(s,a) : s explored}|.
double distribute_delta(double delta_k, double p_min, const PartialModel& pm);

enum class BoundKind { Lower, Upper };

/// Estimated Bellman backup of one state-action pair. `values` holds the
/// matching bound (L for Lower, U for Upper) indexed by partial-model local
/// state. Black mode sends the unassigned probability mass to the
/// conservative 0/1; grey mode, once every successor has been observed,
/// sends it to the min/max bound over the known support instead. Result is
/// clamped to [0,1].
double estimated_bound(BoundKind kind, std::span<const double> values,
                       const ObservationCounters& counters, const EstimatorConfig& config,
                       const PartialModel& pm, std::uint32_t local_state, std::uint32_t action);

/// Samples required before an unseen exit of probability >= p_min is missed
/// with probability below delta_t: ceil(ln(delta_t) / ln(1 - p_min)).
/// Degenerates to 1 when p_min = 1.
std::uint64_t required_samples(double delta_t, double p_min);

/// Real-valued version of the same threshold, for the strict comparison
/// #(s,a) > ln(delta_t)/ln(1-p_min); 0 when p_min = 1.
double required_samples_real(double delta_t, double p_min);

struct TheoreticalSamples {
    std::int64_t n;
    bool saturated;  // formula overflowed int64; n holds the max
};

/// A-priori per-transition sample count sufficient for an eps-precise
/// two-sided run over horizon r:
/// ceil(-32 ln(delta_t/2) |S|^2 r^2 / (eps^2 p_min^(2|S|r))).
/// Astronomically large in general; a calculator, never a default schedule.
TheoreticalSamples theoretical_samples(double epsilon, double delta_t,
                                       std::size_t state_count, std::uint64_t horizon,
                                       double p_min);

}  // namespace sgsmc
