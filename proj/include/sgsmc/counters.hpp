#pragma once

#include <unordered_map>

#include <json.hpp>

#include "sgsmc/access.hpp"
#include "sgsmc/graph.hpp"

namespace sgsmc {

/// Aggregate occurrence counts #(s,a,t) over all simulations ever run; this
/// is the entire learned model state. Counts only grow.
class ObservationCounters {
public:
    struct PairCounts {
        std::uint64_t total = 0;
        std::vector<std::pair<StateId, std::uint64_t>> successors;
    };

    void record(StateId s, std::uint32_t a, StateId t) {
        PairCounts& pc = pairs_[key(s, a)];
        pc.total += 1;
        for (auto& [succ, n] : pc.successors)
            if (succ == t) {
                n += 1;
                return;
            }
        pc.successors.emplace_back(t, 1);
    }

    std::uint64_t pair_count(StateId s, std::uint32_t a) const {
        const auto it = pairs_.find(key(s, a));
        return it == pairs_.end() ? 0 : it->second.total;
    }

    std::uint64_t triple_count(StateId s, std::uint32_t a, StateId t) const {
        const auto it = pairs_.find(key(s, a));
        if (it == pairs_.end()) return 0;
        for (const auto& [succ, n] : it->second.successors)
            if (succ == t) return n;
        return 0;
    }

    const PairCounts* find(StateId s, std::uint32_t a) const {
        const auto it = pairs_.find(key(s, a));
        return it == pairs_.end() ? nullptr : &it->second;
    }

    template <typename Fn>  // Fn(StateId s, uint32_t a, StateId t, uint64_t n)
    void for_each(Fn&& fn) const {
        for (const auto& [k, pc] : pairs_) {
            const StateId s = static_cast<StateId>(k >> 32);
            const std::uint32_t a = static_cast<std::uint32_t>(k);
            for (const auto& [t, n] : pc.successors) fn(s, a, t, n);
        }
    }

    /// Snapshot as a list of {"s","a","t","n"} records, for resumption and
    /// debugging.
    nlohmann::json to_json() const;
    static ObservationCounters from_json(const nlohmann::json& doc);

private:
    static std::uint64_t key(StateId s, std::uint32_t a) {
        return (static_cast<std::uint64_t>(s) << 32) | a;
    }
    std::unordered_map<std::uint64_t, PairCounts> pairs_;
};

/// The sub-game induced by the observations: explored states, their declared
/// available actions, observed successor sets, and (grey) successor counts.
class PartialModel {
public:
    struct ExploredAction {
        std::vector<StateId> observed;  // sorted distinct successors
        std::optional<std::uint32_t> successor_count;

        std::optional<std::uint32_t> unseen() const {
            if (!successor_count) return std::nullopt;
            return *successor_count - static_cast<std::uint32_t>(observed.size());
        }
        bool support_known() const {
            return successor_count && observed.size() == *successor_count;
        }
    };

    struct ExploredState {
        StateId id;
        Player player;
        bool goal;
        std::vector<ExploredAction> actions;
    };

    explicit PartialModel(const SampleOracle& oracle) : oracle_(&oracle) {
        explore(oracle.initial_state());
    }

    std::uint32_t explore(StateId s);
    void note_observation(StateId s, std::uint32_t a, StateId t);

    bool contains(StateId s) const { return index_.count(s) != 0; }
    std::uint32_t local(StateId s) const { return index_.at(s); }
    std::size_t size() const { return states_.size(); }
    const ExploredState& state(std::uint32_t local) const { return states_[local]; }
    const std::vector<ExploredState>& states() const { return states_; }

    /// Total number of available actions over explored states.
    std::size_t action_pair_count() const { return pair_count_; }
    std::size_t pair_offset(std::uint32_t local) const { return offsets_[local]; }
    std::size_t pair_index(std::uint32_t local, std::uint32_t a) const {
        return offsets_[local] + a;
    }

    SubGameView view_all() const;
    SubGameView view_restricted(std::span<const StateId> X) const;

private:
    const SampleOracle* oracle_;
    std::vector<ExploredState> states_;
    std::unordered_map<StateId, std::uint32_t> index_;
    std::vector<std::size_t> offsets_;
    std::size_t pair_count_ = 0;
};

/// Rebuilds the explored sub-game from a counter snapshot.
PartialModel build_partial_model(const ObservationCounters& counters,
                                 const SampleOracle& oracle);

}  // namespace sgsmc
