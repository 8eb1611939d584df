#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sgsmc/blackvi.hpp"
#include "sgsmc/model_io.hpp"
#include "sgsmc/oracle_value.hpp"
#include "sgsmc/pac.hpp"
#include "sgsmc/trace_csv.hpp"
#include "sgsmc/whitebox.hpp"

namespace {

using namespace sgsmc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTimeout = 2;  // anytime result was still printed
constexpr int kExitPacFail = 3;

struct EngineFlags {
    std::string mode = "black";
    double epsilon = 1e-8;
    double delta = 0.1;
    double pmin_override = 0.0;
    std::string nk = "10000";
    double timeout_s = 30.0 * 60.0;
    std::uint64_t seed = 0;
    std::string sided = "one";
    std::string trace_path;
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
    cmd->add_option("--mode", f.mode, "access mode: white|grey|black")
        ->check(CLI::IsMember({"white", "grey", "black"}));
    cmd->add_option("--epsilon", f.epsilon, "target interval width");
    cmd->add_option("--delta", f.delta, "total error tolerance");
    cmd->add_option("--pmin-override", f.pmin_override,
                    "use this minimum-transition-probability bound instead of the model's");
    cmd->add_option("--nk", f.nk, "simulations per phase: a constant or a comma list");
    cmd->add_option("--timeout", f.timeout_s, "wall-clock budget in seconds");
    cmd->add_option("--seed", f.seed, "rng seed");
    cmd->add_option("--sided", f.sided, "Hoeffding bound variant: one|two")
        ->check(CLI::IsMember({"one", "two"}));
    cmd->add_option("--trace", f.trace_path, "trace CSV path (default: <model>.trace.csv)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::uint64_t> parse_nk_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
    if (out.empty()) throw std::runtime_error("empty --nk");
    return out;
}

BlackViConfig make_black_config(const EngineFlags& f) {
    BlackViConfig cfg;
    cfg.epsilon = f.epsilon;
    cfg.delta = f.delta;
    const auto nk = parse_nk_list(f.nk);
    if (nk.size() == 1) cfg.nk = nk[0];
    else cfg.nk_sequence = nk;
    cfg.timeout_ms = static_cast<std::int64_t>(f.timeout_s * 1000.0);
    cfg.mode = f.mode == "grey" ? AccessMode::Grey : AccessMode::Black;
    cfg.sided = f.sided == "two" ? Sidedness::TwoSided : Sidedness::OneSided;
    cfg.seed = f.seed;
    return cfg;
}

std::string default_trace_path(const std::string& model_path) {
    return std::filesystem::path(model_path).stem().string() + ".trace.csv";
}

void write_trace(const std::string& path, const std::vector<PhaseRecord>& phases,
                 std::size_t total_states) {
    std::ofstream out(path);
    write_trace_csv(out, phases, total_states);
}

const char* cause_name(StopCause c) {
    switch (c) {
        case StopCause::Precision: return "precision";
        case StopCause::Timeout: return "timeout";
        case StopCause::IterationCap: return "iteration-cap";
        case StopCause::SimulationBudget: return "simulation-budget";
    }
    return "?";
}

int cmd_run(const std::string& model_path, const EngineFlags& f) {
    const StochasticGame game = parse_model(read_file(model_path));
    RunReport report;
    if (f.mode == "white") {
        WhiteConfig cfg;
        cfg.epsilon = f.epsilon;
        cfg.seed = f.seed;
        report = bvi_white(game, cfg);
    } else {
        const BlackViConfig cfg = make_black_config(f);
        GameOracle oracle(game, cfg.mode,
                          f.pmin_override > 0.0 ? std::optional<double>(f.pmin_override)
                                                : std::nullopt);
        report = black_vi(oracle, cfg);
    }
    const std::string trace = f.trace_path.empty() ? default_trace_path(model_path) : f.trace_path;
    write_trace(trace, report.phases, game.state_count());

    std::cout.precision(10);
    std::cout << "model: " << model_path << " (" << game.state_count() << " states)\n"
              << "mode: " << f.mode << "\n"
              << "interval: [" << report.lower << ", " << report.upper << "]\n"
              << "width: " << report.width() << "\n"
              << "cause: " << cause_name(report.cause) << "\n"
              << "simulations: " << report.total_simulations << "\n"
              << "trace: " << trace << "\n";
    return report.cause == StopCause::Precision ? kExitOk : kExitTimeout;
}

int cmd_oracle(const std::string& model_path) {
    const StochasticGame game = parse_model(read_file(model_path));
    const std::vector<double> values = oracle_value(game);
    std::cout.precision(10);
    for (StateId s = 0; s < game.state_count(); ++s)
        std::cout << game.state(s).name << ": " << values[s] << "\n";
    return kExitOk;
}

int cmd_pac_test(const std::string& model_path, const EngineFlags& f, std::size_t runs,
                 unsigned jobs, bool corrupt) {
    const StochasticGame game = parse_model(read_file(model_path));
    const double truth = oracle_value(game)[game.initial()];
    BlackViConfig cfg = make_black_config(f);
    cfg.corrupt_zero_width = corrupt;
    const PacTestReport report = run_pac_test(game, cfg, runs, truth, jobs);
    std::cout.precision(10);
    std::cout << "runs: " << report.runs << "\n"
              << "true value: " << report.truth << "\n"
              << "violations: " << report.violations << "\n"
              << "violation rate: " << report.rate << "\n"
              << "delta: " << report.delta << " (threshold with slack: " << report.threshold
              << ")\n"
              << "verdict: " << (report.pass ? "PASS" : "FAIL") << "\n";
    return report.pass ? kExitOk : kExitPacFail;
}

int cmd_validate(const std::string& model_path) {
    const StochasticGame game = parse_model_unchecked(read_file(model_path));
    const auto violations = validate(game);
    if (violations.empty()) {
        std::cout << "ok: " << game.state_count() << " states, "
                  << game.goal().size() << " goal states\n";
        return kExitOk;
    }
    for (const auto& v : violations) std::cout << "violation: " << v.message << "\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical model checking of reachability in stochastic games"};
    app.require_subcommand(1);

    std::string model_path;
    EngineFlags flags;
    std::size_t runs = 200;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    bool corrupt = false;

    CLI::App* run = app.add_subcommand("run", "solve one model and emit a trace");
    run->add_option("model", model_path, "model file (JSON)")->required();
    add_engine_flags(run, flags);

    CLI::App* oracle = app.add_subcommand("oracle", "exact values by strategy enumeration");
    oracle->add_option("model", model_path, "model file (JSON)")->required();

    CLI::App* pac = app.add_subcommand("pac-test", "repeated-run interval soundness check");
    pac->add_option("model", model_path, "model file (JSON)")->required();
    add_engine_flags(pac, flags);
    pac->add_option("--runs", runs, "number of independent seeded runs");
    pac->add_option("--jobs", jobs, "worker pool size");
    pac->add_flag("--corrupt-zero-width", corrupt,
                  "negative control: force all confidence widths to zero");

    CLI::App* val = app.add_subcommand("validate", "report model invariant violations");
    val->add_option("model", model_path, "model file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(model_path, flags);
        if (oracle->parsed()) return cmd_oracle(model_path);
        if (pac->parsed()) return cmd_pac_test(model_path, flags, runs, jobs, corrupt);
        if (val->parsed()) return cmd_validate(model_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
