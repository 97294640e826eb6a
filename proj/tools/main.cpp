#include "itc/errors.hpp"
#include "itc/experiment.hpp"
#include "itc/kernels.hpp"
#include "itc/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using itc::ExperimentConfig;

struct SweepFlags {
    std::string config_path, n_start, n_stop, n_step, rmax, trials, seed, model, trace_file,
        algo, region, dim, out, cadence, sim_length, vmin, vmax, pause_max, timing, threads;
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
    cmd->add_option("--config", f.config_path, "config file (key = value lines)");
    cmd->add_option("--n-start", f.n_start, "first node count");
    cmd->add_option("--n-stop", f.n_stop, "last node count");
    cmd->add_option("--n-step", f.n_step, "node count increment");
    cmd->add_option("--rmax", f.rmax, "comma-separated maximum radii (metres)");
    cmd->add_option("--trials", f.trials, "trials per (n, rmax) cell");
    cmd->add_option("--seed", f.seed, "base seed");
    cmd->add_option("--model", f.model, "static|walk|waypoint|trace");
    cmd->add_option("--trace-file", f.trace_file, "trace file path (model=trace)");
    cmd->add_option("--algo", f.algo, "comma-separated algorithms (udg,gabriel,mst,lrr)");
    cmd->add_option("--region", f.region, "region extents, e.g. 1000x1000");
    cmd->add_option("--dim", f.dim, "dimension (static placement only)");
    cmd->add_option("--out", f.out, "output CSV path (default stdout)");
    cmd->add_option("--cadence", f.cadence, "seconds between mobility snapshots");
    cmd->add_option("--sim-length", f.sim_length, "warm-up seconds before the first snapshot");
    cmd->add_option("--vmin", f.vmin, "minimum speed (m/s)");
    cmd->add_option("--vmax", f.vmax, "maximum speed (m/s)");
    cmd->add_option("--pause-max", f.pause_max, "maximum waypoint pause (s)");
    cmd->add_option("--timing", f.timing, "emit wall times (on|off; off keeps CSVs reproducible)");
    cmd->add_option("--threads", f.threads, "worker threads (0 = auto)");
}

// Config file first, then whichever flags were actually given.
ExperimentConfig build_config(const SweepFlags& f, ExperimentConfig cfg = {}) {
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw itc::ConfigError("cannot open config file: " + f.config_path);
        cfg = itc::load_config_file(in, cfg);
    }
    const std::pair<const char*, const std::string*> overrides[] = {
        {"n-start", &f.n_start},     {"n-stop", &f.n_stop},       {"n-step", &f.n_step},
        {"rmax", &f.rmax},           {"trials", &f.trials},       {"seed", &f.seed},
        {"model", &f.model},         {"trace-file", &f.trace_file}, {"algo", &f.algo},
        {"region", &f.region},       {"dim", &f.dim},             {"out", &f.out},
        {"cadence", &f.cadence},     {"sim-length", &f.sim_length}, {"vmin", &f.vmin},
        {"vmax", &f.vmax},           {"pause-max", &f.pause_max}, {"timing", &f.timing},
        {"threads", &f.threads},
    };
    for (const auto& [key, value] : overrides)
        if (!value->empty()) itc::apply_config_line(cfg, key, *value);
    return cfg;
}

void emit_records(const ExperimentConfig& cfg, const std::vector<itc::TrialRecord>& records) {
    if (cfg.out_path.empty()) {
        itc::write_csv(std::cout, records);
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw itc::ConfigError("cannot open output file: " + cfg.out_path);
    itc::write_csv(out, records);
}

std::vector<itc::TrialRecord> read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw itc::ConfigError("cannot open CSV: " + path);
    return itc::parse_csv(in);
}

int cmd_fit(const std::string& in_path, const std::string& algo, double rmax) {
    const auto records = read_records(in_path);
    const auto report = itc::fit_log(records, itc::parse_algorithm(algo), rmax);
    std::cout << "fit " << algo << " rmax=" << rmax << ": I ~ " << report.a << " * ln(n) + "
              << report.b << "  (R^2 = " << report.r_squared << ", cells used "
              << report.cells_used << ", excluded " << report.cells_excluded << ")\n";
    for (const auto& [n, mean] : report.per_n_means)
        std::cout << "  n=" << n << "  mean_max_interference=" << mean << "\n";
    return 0;
}

int cmd_compare(const std::string& in_path) {
    const auto records = read_records(in_path);
    const auto table = itc::compare_topologies(records);
    std::cout << "n";
    for (auto a : table.algorithms) std::cout << '\t' << itc::to_string(a);
    std::cout << "\tpairs\n";
    for (const auto& row : table.rows) {
        std::cout << row.n;
        for (double m : row.mean_max_interference) std::cout << '\t' << m;
        std::cout << '\t' << row.paired_trials << '\n';
    }
    for (const auto& rate : table.rates)
        std::cout << itc::to_string(rate.first) << " <= " << itc::to_string(rate.second) << ": "
                  << rate.first_le_second << "/" << rate.pairs << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interference-aware topology control simulator"};
    app.require_subcommand(1);

    SweepFlags run_flags;
    auto* run = app.add_subcommand("run", "run a parameter sweep and emit CSV records");
    add_sweep_flags(run, run_flags);

    SweepFlags trace_flags;
    auto* trace = app.add_subcommand("trace", "evaluate topologies over a mobility trace");
    add_sweep_flags(trace, trace_flags);

    std::string fit_in, fit_algo = "lrr";
    double fit_rmax = 300.0;
    auto* fit = app.add_subcommand("fit", "logarithmic fit over an existing CSV");
    fit->add_option("--in", fit_in, "input CSV")->required();
    fit->add_option("--algo", fit_algo, "algorithm to fit");
    fit->add_option("--rmax", fit_rmax, "rmax cell to fit");

    std::string cmp_in;
    auto* cmp = app.add_subcommand("compare", "paired per-trial comparison across algorithms");
    cmp->add_option("--in", cmp_in, "input CSV")->required();

    std::uint64_t oracle_seed = 1;
    int oracle_instances = 500;
    auto* oracle = app.add_subcommand("oracle", "run the brute-force verification suite");
    oracle->add_option("--seed", oracle_seed, "suite seed");
    oracle->add_option("--instances", oracle_instances, "random instances to check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto cfg = build_config(run_flags);
            emit_records(cfg, itc::run_experiment(cfg));
        } else if (trace->parsed()) {
            ExperimentConfig base;
            base.algorithms = {itc::Algorithm::Udg, itc::Algorithm::Lrr};
            auto cfg = build_config(trace_flags, base);
            cfg.model = itc::Model::Trace;
            emit_records(cfg, itc::run_trace_eval(cfg));
        } else if (fit->parsed()) {
            return cmd_fit(fit_in, fit_algo, fit_rmax);
        } else if (cmp->parsed()) {
            return cmd_compare(cmp_in);
        } else if (oracle->parsed()) {
            const auto result = itc::oracle::run_suite(oracle_seed, oracle_instances, &std::cout);
            std::cout << "kernels: " << itc::kernels::active().name << '\n';
            std::cout << (result.ok() ? "oracle suite passed\n" : "oracle suite FAILED\n");
            return result.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
