#include "sgsmc/pac.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace sgsmc {

PacTestReport run_pac_test(const StochasticGame& game, const BlackViConfig& base,
                           std::size_t runs, double truth, unsigned jobs) {
    if (jobs == 0) jobs = 1;
    jobs = std::min<unsigned>(jobs, runs == 0 ? 1 : static_cast<unsigned>(runs));

    std::vector<char> violated(runs, 0);
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        // Each run owns its oracle handle, counters and rng; nothing shared.
        GameOracle oracle(game, base.mode);
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= runs) return;
            BlackViConfig cfg = base;
            cfg.seed = Rng::derive(base.seed, i);
            cfg.sink = nullptr;
            cfg.observer = nullptr;
            const RunReport r = black_vi(oracle, cfg);
            violated[i] = (truth < r.lower || truth > r.upper) ? 1 : 0;
        }
    };

    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    PacTestReport report;
    report.runs = runs;
    for (char v : violated) report.violations += v;
    report.rate = runs ? static_cast<double>(report.violations) / runs : 0.0;
    report.delta = base.delta;
    report.threshold =
        base.delta + 3.0 * std::sqrt(base.delta * (1.0 - base.delta) / std::max<std::size_t>(runs, 1));
    report.pass = report.rate <= report.threshold;
    report.truth = truth;
    return report;
}

}  // namespace sgsmc
