#include <doctest.h>

#include <sstream>

#include "sgsmc/model_io.hpp"
#include "sgsmc/oracle_value.hpp"
#include "sgsmc/pac.hpp"
#include "sgsmc/trace_csv.hpp"
#include "test_util.hpp"

using namespace sgsmc;
using namespace sgsmc::testutil;

TEST_CASE("trace CSV round-trips with the exact column layout") {
    std::vector<PhaseRecord> phases{
        {12, 2, 0.05, 4, 0.4, 0.52},
        {30, 4, 0.025, 4, 0.45, 0.51},
    };
    std::stringstream ss;
    write_trace_csv(ss, phases, 8);
    const std::string text = ss.str();
    CHECK(text.substr(0, std::string(kTraceHeader).size()) == kTraceHeader);

    std::stringstream in(text);
    const auto rows = read_trace_csv(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].wall_ms == 12);
    CHECK(rows[0].k == 2);
    CHECK(rows[0].delta_k == doctest::Approx(0.05));
    CHECK(rows[0].explored_states == 4);
    CHECK(rows[0].explored_pct == doctest::Approx(50.0));
    CHECK(rows[1].lower == doctest::Approx(0.45));
    CHECK(rows[1].upper == doctest::Approx(0.51));

    std::stringstream bad("nope\n1,2\n");
    CHECK_THROWS(read_trace_csv(bad));
}

TEST_CASE("pac harness verdicts") {
    const StochasticGame game = parse_model(read_model_file("fig1-half.json"));
    const double truth = oracle_value(game)[game.initial()];
    REQUIRE(truth == 0.5);

    BlackViConfig base;
    base.epsilon = 0.05;
    base.delta = 0.1;
    base.timeout_ms = 30000;
    base.seed = 424242;

    SUBCASE("sound estimator passes") {
        const PacTestReport r = run_pac_test(game, base, 30, truth, 2);
        CHECK(r.runs == 30);
        CHECK(r.rate == doctest::Approx(static_cast<double>(r.violations) / 30));
        CHECK(r.pass);
    }
    SUBCASE("zero-width negative control fails") {
        BlackViConfig corrupt = base;
        corrupt.corrupt_zero_width = true;
        const PacTestReport r = run_pac_test(game, corrupt, 20, truth, 2);
        CHECK_FALSE(r.pass);
        CHECK(r.rate > r.threshold);
    }
    SUBCASE("results are reproducible for a fixed master seed") {
        const PacTestReport a = run_pac_test(game, base, 10, truth, 1);
        const PacTestReport b = run_pac_test(game, base, 10, truth, 3);
        CHECK(a.violations == b.violations);  // worker count must not matter
    }
}

TEST_CASE("interval soundness holds on every bundled model") {
    // 200 seeded runs per model at delta 0.1; runs are budget-capped, which
    // only widens the reported (still valid) intervals.
    const char* files[] = {"fig1-half.json", "fig1-third.json", "fig1-full.json", "mec6.json"};
    for (const char* f : files) {
        CAPTURE(f);
        const StochasticGame game = parse_model(read_model_file(f));
        const double truth = oracle_value(game)[game.initial()];
        BlackViConfig base;
        base.epsilon = 0.05;
        base.delta = 0.1;
        base.nk = 5000;
        base.max_total_simulations = 20000;
        base.timeout_ms = 20000;
        base.seed = 20260808;
        const PacTestReport r = run_pac_test(game, base, 200, truth, 2);
        CHECK(r.pass);
        CHECK(r.rate <= r.threshold);
    }
}
