#pragma once

#include "itc/comm_graph.hpp"
#include "itc/geometry.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace itc {

enum class Model { Static, Walk, Waypoint, Trace };
enum class Algorithm { Udg, Gabriel, Mst, Lrr };

std::string to_string(Model m);
std::string to_string(Algorithm a);
Model parse_model(const std::string& s);
Algorithm parse_algorithm(const std::string& s);

struct ExperimentConfig {
    Region region;                            // default 1000 x 1000
    int dim = 2;
    int n_start = 50;
    int n_stop = 1000;
    int n_step = 50;
    std::vector<double> rmax_set = {100.0, 200.0, 300.0};
    int trials = 100;
    Model model = Model::Static;
    std::string trace_file;
    std::vector<Algorithm> algorithms = {Algorithm::Udg, Algorithm::Gabriel,
                                         Algorithm::Mst, Algorithm::Lrr};
    std::uint64_t base_seed = 1;
    double snapshot_cadence_s = 1.0; // spacing between mobility snapshots
    double sim_length_s = 10000.0;   // warm-up simulated before the first snapshot
    double v_min = 0.2;
    double v_max = 10.0;
    double pause_max = 10.0;
    bool timing = false; // when off, wall_ms is emitted as 0 so reruns are byte-identical
    int threads = 0;     // 0 = hardware concurrency
    std::string out_path; // empty = stdout (used by the CLI layer)
};

void validate(const ExperimentConfig& cfg);
std::vector<int> n_values(const ExperimentConfig& cfg);

struct TrialRecord {
    int n = 0;
    double rmax = 0.0;
    Model model = Model::Static;
    Algorithm algo = Algorithm::Udg;
    int trial = 0;
    bool connected = false; // of G_max
    std::optional<std::uint32_t> max_interference;
    std::optional<double> mean_interference;
    std::optional<double> d_min;
    std::optional<double> d_max;
    double wall_ms = 0.0;

    bool operator==(const TrialRecord&) const = default;
};

struct TopologyMetrics {
    std::uint32_t max_interference = 0;
    double mean_interference = 0.0;
    double d_min = 0.0;
    double d_max = 0.0;
};

// Evaluate one algorithm on one placement. For udg/gabriel/lrr the topology
// respects rmax; mst ignores it. The caller is responsible for only asking
// on placements whose G_max is connected (run_experiment's filtering rule).
TopologyMetrics evaluate_topology(Algorithm algo,
                                  const std::shared_ptr<const PointSet>& points,
                                  double rmax);

// Full sweep over (n, rmax, trial): placement (or mobility snapshot),
// G_max = unit disc graph of radius rmax, connectivity flag, and per
// requested algorithm the interference metrics of the resulting topology.
// Disconnected instances are recorded with empty metrics and not evaluated.
// Deterministic for a given config; records come out in canonical
// (n, rmax, trial, algorithm) order regardless of thread count.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

// Trace-driven evaluation: per n, a seeded subsample of the trace
// population; per snapshot (trial = snapshot index), G_max and requested
// algorithms. Snapshots missing a selected node are skipped.
std::vector<TrialRecord> run_trace_eval(const ExperimentConfig& cfg);

struct FitReport {
    double a = 0.0; // I ~ a ln n + b
    double b = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<int, double>> per_n_means;
    int cells_used = 0;
    int cells_excluded = 0; // connectivity filter (< half connected)
};

// Least-squares fit of per-n mean max interference to a ln n + b over cells
// where at least half of the generated instances were connected.
FitReport fit_log(const std::vector<TrialRecord>& records, Algorithm algo, double rmax);

struct PairwiseRate {
    Algorithm first, second;
    std::size_t pairs = 0;
    std::size_t first_le_second = 0; // max interference of first <= second
};

struct ComparisonTable {
    std::vector<Algorithm> algorithms;
    struct Row {
        int n = 0;
        std::vector<double> mean_max_interference; // parallel to algorithms
        std::size_t paired_trials = 0;
    };
    std::vector<Row> rows;                // ascending n
    std::vector<PairwiseRate> rates;      // all ordered pairs, over all n
};

// Paired per-trial comparison of max interference across algorithms run on
// identical G_max instances.
ComparisonTable compare_topologies(const std::vector<TrialRecord>& records);

// CSV: fixed column order, header mandatory, LF endings, '.' decimal,
// shortest round-trip float formatting. Empty metric fields on rows whose
// G_max was disconnected.
extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::string to_csv(const std::vector<TrialRecord>& records);
std::vector<TrialRecord> parse_csv(std::istream& in);

// Line-oriented `key = value` config file; same keys as the CLI flags.
void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value);
ExperimentConfig load_config_file(std::istream& in, ExperimentConfig base = {});

} // namespace itc
