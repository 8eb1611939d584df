#include "sgsmc/counters.hpp"

#include <algorithm>

namespace sgsmc {

nlohmann::json ObservationCounters::to_json() const {
    // Sorted output keeps snapshots diff-friendly.
    std::vector<std::tuple<StateId, std::uint32_t, StateId, std::uint64_t>> rows;
    for_each([&](StateId s, std::uint32_t a, StateId t, std::uint64_t n) {
        rows.emplace_back(s, a, t, n);
    });
    std::sort(rows.begin(), rows.end());
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [s, a, t, n] : rows)
        out.push_back({{"s", s}, {"a", a}, {"t", t}, {"n", n}});
    return out;
}

ObservationCounters ObservationCounters::from_json(const nlohmann::json& doc) {
    ObservationCounters c;
    for (const auto& row : doc) {
        const StateId s = row.at("s").get<StateId>();
        const std::uint32_t a = row.at("a").get<std::uint32_t>();
        const StateId t = row.at("t").get<StateId>();
        const std::uint64_t n = row.at("n").get<std::uint64_t>();
        PairCounts& pc = c.pairs_[key(s, a)];
        pc.total += n;
        pc.successors.emplace_back(t, n);
    }
    return c;
}

std::uint32_t PartialModel::explore(StateId s) {
    const auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    ExploredState st;
    st.id = s;
    st.player = oracle_->player(s);
    st.goal = oracle_->is_goal(s);
    const std::uint32_t av = oracle_->action_count(s);
    st.actions.resize(av);
    for (std::uint32_t a = 0; a < av; ++a)
        st.actions[a].successor_count = oracle_->successor_count(s, a);
    const auto local = static_cast<std::uint32_t>(states_.size());
    offsets_.push_back(pair_count_);
    pair_count_ += av;
    states_.push_back(std::move(st));
    index_.emplace(s, local);
    return local;
}

void PartialModel::note_observation(StateId s, std::uint32_t a, StateId t) {
    const std::uint32_t ls = explore(s);
    explore(t);
    auto& obs = states_[ls].actions.at(a).observed;
    const auto pos = std::lower_bound(obs.begin(), obs.end(), t);
    if (pos == obs.end() || *pos != t) obs.insert(pos, t);
}

SubGameView PartialModel::view_all() const {
    SubGameView view;
    view.states.reserve(states_.size());
    for (const auto& st : states_) {
        ViewState vs;
        vs.id = st.id;
        vs.player = st.player;
        vs.goal = st.goal;
        for (std::uint32_t a = 0; a < st.actions.size(); ++a)
            vs.actions.push_back(ViewAction{a, st.actions[a].observed});
        view.states.push_back(std::move(vs));
    }
    return view;
}

SubGameView PartialModel::view_restricted(std::span<const StateId> X) const {
    SubGameView view;
    for (StateId s : X) {
        const auto it = index_.find(s);
        if (it == index_.end()) continue;
        const auto& st = states_[it->second];
        ViewState vs;
        vs.id = st.id;
        vs.player = st.player;
        vs.goal = st.goal;
        for (std::uint32_t a = 0; a < st.actions.size(); ++a)
            vs.actions.push_back(ViewAction{a, st.actions[a].observed});
        view.states.push_back(std::move(vs));
    }
    return view;
}

PartialModel build_partial_model(const ObservationCounters& counters,
                                 const SampleOracle& oracle) {
    PartialModel pm(oracle);
    counters.for_each([&](StateId s, std::uint32_t a, StateId t, std::uint64_t) {
        pm.note_observation(s, a, t);
    });
    return pm;
}

}  // namespace sgsmc
