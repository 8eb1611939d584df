#pragma once

#include <optional>

#include "sgsmc/game.hpp"
#include "sgsmc/rng.hpp"

namespace sgsmc {

enum class AccessMode { Black, Grey, White };

/// Everything a limited-information engine may ask about a system. There is
/// deliberately no way to read transition probabilities through this
/// interface: black-box and grey-box code can only sample, query players and
/// available actions, and rely on the declared p_min. Grey mode additionally
/// exposes the successor count per state-action pair. Implementations must
/// be stateless with respect to sampling so that one oracle can serve many
/// concurrent runs.
class SampleOracle {
public:
    virtual ~SampleOracle() = default;

    virtual StateId initial_state() const = 0;
    virtual Player player(StateId s) const = 0;
    virtual std::uint32_t action_count(StateId s) const = 0;
    virtual bool is_goal(StateId s) const = 0;
    virtual double p_min() const = 0;

    /// Draws a successor of (s, a) with the true distribution.
    /// Throws std::out_of_range for an unavailable action.
    virtual StateId sample_successor(StateId s, std::uint32_t a, Rng& rng) const = 0;

    /// |post(s,a)| in grey mode, nullopt in black mode.
    virtual std::optional<std::uint32_t> successor_count(StateId s, std::uint32_t a) const = 0;
};

/// Simulated oracle backed by a parsed game. The engine side never touches
/// the game object itself.
class GameOracle final : public SampleOracle {
public:
    GameOracle(const StochasticGame& game, AccessMode mode,
               std::optional<double> p_min_override = std::nullopt)
        : game_(&game), mode_(mode), p_min_override_(p_min_override) {}

    StateId initial_state() const override { return game_->initial(); }
    Player player(StateId s) const override { return game_->player(s); }
    std::uint32_t action_count(StateId s) const override { return game_->action_count(s); }
    bool is_goal(StateId s) const override { return game_->is_goal(s); }
    double p_min() const override {
        return p_min_override_ ? *p_min_override_ : game_->p_min_declared();
    }

    StateId sample_successor(StateId s, std::uint32_t a, Rng& rng) const override {
        const auto& dist = game_->distribution(s, a);
        const double u = rng.uniform01();
        double acc = 0.0;
        for (const auto& e : dist.entries) {
            acc += e.prob;
            if (u < acc) return e.target;
        }
        return dist.entries.back().target;
    }

    std::optional<std::uint32_t> successor_count(StateId s, std::uint32_t a) const override {
        if (mode_ != AccessMode::Grey && mode_ != AccessMode::White) return std::nullopt;
        return static_cast<std::uint32_t>(game_->distribution(s, a).entries.size());
    }

    AccessMode mode() const { return mode_; }

private:
    const StochasticGame* game_;
    AccessMode mode_;
    std::optional<double> p_min_override_;
};

}  // namespace sgsmc
