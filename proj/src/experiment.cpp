#include "itc/experiment.hpp"

#include "itc/construct.hpp"
#include "itc/errors.hpp"
#include "itc/mobility.hpp"
#include "itc/reduction.hpp"
#include "itc/rng.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace itc {

std::string to_string(Model m) {
    switch (m) {
    case Model::Static: return "static";
    case Model::Walk: return "walk";
    case Model::Waypoint: return "waypoint";
    case Model::Trace: return "trace";
    }
    return "?";
}

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::Udg: return "udg";
    case Algorithm::Gabriel: return "gabriel";
    case Algorithm::Mst: return "mst";
    case Algorithm::Lrr: return "lrr";
    }
    return "?";
}

Model parse_model(const std::string& s) {
    if (s == "static") return Model::Static;
    if (s == "walk") return Model::Walk;
    if (s == "waypoint") return Model::Waypoint;
    if (s == "trace") return Model::Trace;
    throw ConfigError("unknown model: " + s);
}

Algorithm parse_algorithm(const std::string& s) {
    if (s == "udg") return Algorithm::Udg;
    if (s == "gabriel") return Algorithm::Gabriel;
    if (s == "mst") return Algorithm::Mst;
    if (s == "lrr") return Algorithm::Lrr;
    throw ConfigError("unknown algorithm: " + s);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.dim < 1) throw ConfigError("dim must be >= 1");
    if (cfg.region.dim() != cfg.dim) throw ConfigError("region extents do not match dim");
    for (double e : cfg.region.extent)
        if (!(e > 0.0)) throw ConfigError("region extents must be positive");
    if (cfg.n_start < 2) throw ConfigError("n-start must be >= 2");
    if (cfg.n_step < 1) throw ConfigError("n-step must be >= 1");
    if (cfg.n_stop < cfg.n_start) throw ConfigError("empty n range");
    if (cfg.rmax_set.empty()) throw ConfigError("rmax set must be non-empty");
    for (double r : cfg.rmax_set)
        if (!(r > 0.0)) throw ConfigError("rmax values must be positive");
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    if (cfg.algorithms.empty()) throw ConfigError("algorithm list must be non-empty");
    if (cfg.model == Model::Trace && cfg.trace_file.empty())
        throw ConfigError("trace model requires a trace file");
    if ((cfg.model == Model::Walk || cfg.model == Model::Waypoint) && cfg.dim != 2)
        throw ConfigError("mobility models require dim 2");
    if (!(cfg.snapshot_cadence_s > 0.0)) throw ConfigError("cadence must be positive");
    if (cfg.sim_length_s < 0.0) throw ConfigError("sim length must be >= 0");
    if (!(cfg.v_min >= 0.0 && cfg.v_max >= cfg.v_min)) throw ConfigError("bad speed range");
    if (cfg.pause_max < 0.0) throw ConfigError("pause-max must be >= 0");
}

std::vector<int> n_values(const ExperimentConfig& cfg) {
    std::vector<int> ns;
    for (int n = cfg.n_start; n <= cfg.n_stop; n += cfg.n_step) ns.push_back(n);
    return ns;
}

namespace {

std::uint64_t model_tag(Model m) { return static_cast<std::uint64_t>(m) + 0x100; }

std::uint64_t trial_seed(const ExperimentConfig& cfg, int n, double rmax, int trial) {
    return cfg.base_seed ^ mix_seed(static_cast<std::uint64_t>(n),
                                    std::bit_cast<std::uint64_t>(rmax),
                                    model_tag(cfg.model),
                                    static_cast<std::uint64_t>(trial));
}

std::uint64_t trajectory_seed(const ExperimentConfig& cfg, int n) {
    return cfg.base_seed ^ mix_seed(static_cast<std::uint64_t>(n), model_tag(cfg.model),
                                    0x7472616aULL); // trajectory stream tag
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        threads = hc == 0 ? 1 : static_cast<int>(std::min(hc, 8u));
    }
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

TopologyMetrics metrics_of(const CommGraph& g) {
    const auto [lo, hi] = edge_length_extremes(g);
    return {max_interference(g), mean_interference(g), lo, hi};
}

TopologyMetrics evaluate_with(Algorithm algo, const std::shared_ptr<const PointSet>& points,
                              double rmax, const std::shared_ptr<const DistanceMatrix>& matrix,
                              const CommGraph& gmax) {
    switch (algo) {
    case Algorithm::Udg: return metrics_of(gmax);
    case Algorithm::Gabriel: return metrics_of(closure(gabriel_udg(points, rmax, matrix), matrix));
    case Algorithm::Mst: return metrics_of(closure(euclidean_mst(points, matrix), matrix));
    case Algorithm::Lrr: return metrics_of(run_protocol(gmax));
    }
    throw ConfigError("unknown algorithm");
}

// Fills the per-algorithm records for one placement.
void evaluate_trial(const ExperimentConfig& cfg, int n, double rmax, int trial,
                    const std::shared_ptr<const PointSet>& points, TrialRecord* out) {
    const auto matrix = build_distance_matrix(*points);
    const CommGraph gmax = unit_disc_graph(points, rmax, matrix);
    const bool connected = gmax.connected();
    for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
        TrialRecord& rec = out[ai];
        rec = TrialRecord{};
        rec.n = n;
        rec.rmax = rmax;
        rec.model = cfg.model;
        rec.algo = cfg.algorithms[ai];
        rec.trial = trial;
        rec.connected = connected;
        if (!connected) continue;
        const auto t0 = std::chrono::steady_clock::now();
        const TopologyMetrics m = evaluate_with(rec.algo, points, rmax, matrix, gmax);
        if (cfg.timing) {
            const auto t1 = std::chrono::steady_clock::now();
            rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
        rec.max_interference = m.max_interference;
        rec.mean_interference = m.mean_interference;
        rec.d_min = m.d_min;
        rec.d_max = m.d_max;
    }
}

std::vector<TrialRecord> run_static(const ExperimentConfig& cfg) {
    const auto ns = n_values(cfg);
    const std::size_t algs = cfg.algorithms.size();
    const std::size_t cells = ns.size() * cfg.rmax_set.size();
    const std::size_t items = cells * static_cast<std::size_t>(cfg.trials);
    std::vector<TrialRecord> records(items * algs);

    const auto trials = static_cast<std::size_t>(cfg.trials);
    parallel_for(items, cfg.threads, [&](std::size_t idx) {
        const int trial = static_cast<int>(idx % trials);
        const std::size_t cell = idx / trials;
        const double rmax = cfg.rmax_set[cell % cfg.rmax_set.size()];
        const int n = ns[cell / cfg.rmax_set.size()];
        const auto points = std::make_shared<const PointSet>(
            place_uniform(static_cast<std::size_t>(n), cfg.region,
                          trial_seed(cfg, n, rmax, trial)));
        evaluate_trial(cfg, n, rmax, trial, points, records.data() + idx * algs);
    });
    return records;
}

std::vector<TrialRecord> run_mobile(const ExperimentConfig& cfg) {
    const auto ns = n_values(cfg);
    const std::size_t algs = cfg.algorithms.size();
    std::vector<TrialRecord> records(ns.size() * cfg.rmax_set.size() *
                                     static_cast<std::size_t>(cfg.trials) * algs);

    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const int n = ns[ni];
        // one trajectory per n; trial t is the t-th snapshot
        std::vector<std::shared_ptr<const PointSet>> snapshots;
        snapshots.reserve(static_cast<std::size_t>(cfg.trials));
        const std::uint64_t seed = trajectory_seed(cfg, n);
        if (cfg.model == Model::Walk) {
            WalkSim sim(static_cast<std::size_t>(n), cfg.region,
                        WalkParams{cfg.v_min, cfg.v_max, 1.0}, seed);
            sim.advance(cfg.sim_length_s);
            for (int t = 0; t < cfg.trials; ++t) {
                sim.advance(cfg.snapshot_cadence_s);
                snapshots.push_back(std::make_shared<const PointSet>(sim.snapshot()));
            }
        } else {
            WaypointSim sim(static_cast<std::size_t>(n), cfg.region,
                            WaypointParams{cfg.v_min, cfg.v_max, cfg.pause_max}, seed);
            sim.advance(cfg.sim_length_s);
            for (int t = 0; t < cfg.trials; ++t) {
                sim.advance(cfg.snapshot_cadence_s);
                snapshots.push_back(std::make_shared<const PointSet>(sim.snapshot()));
            }
        }
        const auto trials = static_cast<std::size_t>(cfg.trials);
        const std::size_t items = cfg.rmax_set.size() * trials;
        const std::size_t base = ni * items * algs;
        parallel_for(items, cfg.threads, [&](std::size_t idx) {
            const int trial = static_cast<int>(idx % trials);
            const double rmax = cfg.rmax_set[idx / trials];
            evaluate_trial(cfg, n, rmax, trial, snapshots[static_cast<std::size_t>(trial)],
                           records.data() + base + idx * algs);
        });
    }
    return records;
}

} // namespace

TopologyMetrics evaluate_topology(Algorithm algo,
                                  const std::shared_ptr<const PointSet>& points,
                                  double rmax) {
    const auto matrix = build_distance_matrix(*points);
    const CommGraph gmax = unit_disc_graph(points, rmax, matrix);
    return evaluate_with(algo, points, rmax, matrix, gmax);
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    if (cfg.model == Model::Trace) return run_trace_eval(cfg);
    if (cfg.model == Model::Static) return run_static(cfg);
    return run_mobile(cfg);
}

std::vector<TrialRecord> run_trace_eval(const ExperimentConfig& cfg) {
    validate(cfg);
    if (cfg.model != Model::Trace) throw ConfigError("run_trace_eval requires model=trace");
    std::ifstream in(cfg.trace_file);
    if (!in) throw ConfigError("cannot open trace file: " + cfg.trace_file);
    const Trace trace = load_trace(in);

    const auto ns = n_values(cfg);
    for (int n : ns)
        if (static_cast<std::size_t>(n) > trace.population())
            throw ConfigError("trace population smaller than requested n=" + std::to_string(n));

    const std::size_t algs = cfg.algorithms.size();
    std::vector<TrialRecord> records;

    for (int n : ns) {
        // seeded subsample of the trace population
        std::vector<NodeId> pool(trace.population());
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<NodeId>(i);
        Rng rng(cfg.base_seed ^ mix_seed(static_cast<std::uint64_t>(n), model_tag(cfg.model),
                                         0x73656c65ULL)); // selection stream tag
        for (std::size_t i = pool.size(); i > 1; --i)
            std::swap(pool[i - 1], pool[rng.below(i)]);
        std::vector<NodeId> selected(pool.begin(), pool.begin() + n);
        std::sort(selected.begin(), selected.end());

        struct Item {
            std::shared_ptr<const PointSet> points;
            int trial;
        };
        std::vector<Item> items;
        for (std::size_t s = 0; s < trace.snapshots.size(); ++s) {
            const auto& snap = trace.snapshots[s];
            std::vector<double> xs, ys;
            xs.reserve(selected.size());
            ys.reserve(selected.size());
            bool complete = true;
            for (NodeId id : selected) {
                const auto it = std::lower_bound(snap.ids.begin(), snap.ids.end(), id);
                if (it == snap.ids.end() || *it != id) {
                    complete = false;
                    break;
                }
                const auto k = static_cast<std::size_t>(it - snap.ids.begin());
                xs.push_back(snap.xs[k]);
                ys.push_back(snap.ys[k]);
            }
            if (!complete) continue; // node absent at this timestamp
            items.push_back({std::make_shared<const PointSet>(
                                 PointSet::from_xy(std::move(xs), std::move(ys))),
                             static_cast<int>(s)});
        }

        const std::size_t base = records.size();
        records.resize(base + items.size() * cfg.rmax_set.size() * algs);
        parallel_for(items.size() * cfg.rmax_set.size(), cfg.threads, [&](std::size_t idx) {
            const std::size_t ri = idx % cfg.rmax_set.size();
            const auto& item = items[idx / cfg.rmax_set.size()];
            evaluate_trial(cfg, n, cfg.rmax_set[ri], item.trial, item.points,
                           records.data() + base + idx * algs);
        });
        // canonical order: rmax major, trial minor
        std::sort(records.begin() + static_cast<std::ptrdiff_t>(base), records.end(),
                  [](const TrialRecord& l, const TrialRecord& r) {
                      if (l.rmax != r.rmax) return l.rmax < r.rmax;
                      if (l.trial != r.trial) return l.trial < r.trial;
                      return static_cast<int>(l.algo) < static_cast<int>(r.algo);
                  });
    }
    return records;
}

FitReport fit_log(const std::vector<TrialRecord>& records, Algorithm algo, double rmax) {
    struct Cell {
        int total = 0;
        int connected = 0;
        double sum = 0.0;
    };
    std::map<int, Cell> cells;
    for (const auto& rec : records) {
        if (rec.algo != algo || rec.rmax != rmax) continue;
        auto& c = cells[rec.n];
        ++c.total;
        if (rec.connected && rec.max_interference) {
            ++c.connected;
            c.sum += static_cast<double>(*rec.max_interference);
        }
    }

    FitReport report;
    for (const auto& [n, c] : cells) {
        // only cells where at least half the generated networks were
        // connected enter the fit
        if (2 * c.connected < c.total) {
            ++report.cells_excluded;
            continue;
        }
        report.per_n_means.emplace_back(n, c.sum / c.connected);
    }
    if (report.per_n_means.size() < 3)
        throw AnalysisError("fit_log: need at least 3 usable n-cells");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(report.per_n_means.size());
    for (const auto& [n, mean] : report.per_n_means) {
        const double x = std::log(static_cast<double>(n));
        sx += x;
        sy += mean;
        sxx += x * x;
        sxy += x * mean;
    }
    const double denom = m * sxx - sx * sx;
    report.a = (m * sxy - sx * sy) / denom;
    report.b = (sy - report.a * sx) / m;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / m;
    for (const auto& [n, mean] : report.per_n_means) {
        const double fit = report.a * std::log(static_cast<double>(n)) + report.b;
        ss_res += (mean - fit) * (mean - fit);
        ss_tot += (mean - mean_y) * (mean - mean_y);
    }
    report.r_squared = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
    report.cells_used = static_cast<int>(report.per_n_means.size());
    return report;
}

ComparisonTable compare_topologies(const std::vector<TrialRecord>& records) {
    std::set<Algorithm> algo_set;
    for (const auto& rec : records) algo_set.insert(rec.algo);
    if (algo_set.size() < 2)
        throw AnalysisError("compare_topologies: need records for at least 2 algorithms");

    ComparisonTable table;
    table.algorithms.assign(algo_set.begin(), algo_set.end());
    const auto algo_index = [&](Algorithm a) {
        return static_cast<std::size_t>(
            std::find(table.algorithms.begin(), table.algorithms.end(), a) -
            table.algorithms.begin());
    };

    // group by (model, n, rmax, trial)
    using Key = std::tuple<int, int, double, int>;
    std::map<Key, std::vector<std::optional<std::uint32_t>>> groups;
    for (const auto& rec : records) {
        if (!rec.connected) continue;
        auto& slot = groups[{static_cast<int>(rec.model), rec.n, rec.rmax, rec.trial}];
        if (slot.empty()) slot.assign(table.algorithms.size(), std::nullopt);
        auto& cell = slot[algo_index(rec.algo)];
        if (cell.has_value()) throw AnalysisError("compare_topologies: duplicate record");
        cell = rec.max_interference;
    }

    std::map<int, std::pair<std::vector<double>, std::size_t>> per_n; // n -> (sums, count)
    for (auto i = 0u; i < table.algorithms.size(); ++i)
        for (auto j = 0u; j < table.algorithms.size(); ++j)
            if (i != j) table.rates.push_back({table.algorithms[i], table.algorithms[j], 0, 0});

    for (const auto& [key, vals] : groups) {
        for (const auto& v : vals)
            if (!v.has_value())
                throw AnalysisError("compare_topologies: unpaired records (missing algorithm)");
        auto& [sums, count] = per_n[std::get<1>(key)];
        if (sums.empty()) sums.assign(table.algorithms.size(), 0.0);
        for (std::size_t i = 0; i < vals.size(); ++i) sums[i] += static_cast<double>(*vals[i]);
        ++count;
        for (auto& rate : table.rates) {
            const auto i = algo_index(rate.first);
            const auto j = algo_index(rate.second);
            ++rate.pairs;
            if (*vals[i] <= *vals[j]) ++rate.first_le_second;
        }
    }
    if (per_n.empty()) throw AnalysisError("compare_topologies: no connected paired trials");

    for (const auto& [n, agg] : per_n) {
        ComparisonTable::Row row;
        row.n = n;
        row.paired_trials = agg.second;
        for (double s : agg.first)
            row.mean_max_interference.push_back(s / static_cast<double>(agg.second));
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_opt_double(std::string_view s, std::size_t line_no) {
    if (s.empty()) return std::nullopt;
    double v;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError("csv line " + std::to_string(line_no) + ": bad numeric field");
    return v;
}

long long parse_int_field(std::string_view s, std::size_t line_no) {
    long long v;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError("csv line " + std::to_string(line_no) + ": bad integer field");
    return v;
}

} // namespace

const char* const kCsvHeader =
    "n,rmax,model,algo,trial,connected,max_interference,mean_interference,dmin,dmax,wall_ms";

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << kCsvHeader << '\n';
    for (const auto& rec : records) {
        out << rec.n << ',' << fmt_double(rec.rmax) << ',' << to_string(rec.model) << ','
            << to_string(rec.algo) << ',' << rec.trial << ',' << (rec.connected ? '1' : '0')
            << ',';
        if (rec.max_interference) out << *rec.max_interference;
        out << ',';
        if (rec.mean_interference) out << fmt_double(*rec.mean_interference);
        out << ',';
        if (rec.d_min) out << fmt_double(*rec.d_min);
        out << ',';
        if (rec.d_max) out << fmt_double(*rec.d_max);
        out << ',' << fmt_double(rec.wall_ms) << '\n';
    }
}

std::string to_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream oss;
    write_csv(oss, records);
    return oss.str();
}

std::vector<TrialRecord> parse_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<TrialRecord> records;
    bool header_seen = false;
    std::vector<std::string_view> fields;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kCsvHeader)
                throw ParseError("csv line 1: unexpected header");
            header_seen = true;
            continue;
        }
        fields.clear();
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(std::string_view(line).substr(start));
                break;
            }
            fields.push_back(std::string_view(line).substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() != 11)
            throw ParseError("csv line " + std::to_string(line_no) + ": expected 11 fields");
        TrialRecord rec;
        rec.n = static_cast<int>(parse_int_field(fields[0], line_no));
        rec.rmax = *parse_opt_double(fields[1], line_no);
        rec.model = parse_model(std::string(fields[2]));
        rec.algo = parse_algorithm(std::string(fields[3]));
        rec.trial = static_cast<int>(parse_int_field(fields[4], line_no));
        rec.connected = parse_int_field(fields[5], line_no) != 0;
        if (!fields[6].empty())
            rec.max_interference = static_cast<std::uint32_t>(parse_int_field(fields[6], line_no));
        rec.mean_interference = parse_opt_double(fields[7], line_no);
        rec.d_min = parse_opt_double(fields[8], line_no);
        rec.d_max = parse_opt_double(fields[9], line_no);
        rec.wall_ms = *parse_opt_double(fields[10], line_no);
        records.push_back(rec);
    }
    if (!header_seen && !records.empty())
        throw ParseError("csv: missing header");
    return records;
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = value.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(value.substr(start));
            break;
        }
        parts.push_back(value.substr(start, comma - start));
        start = comma + 1;
    }
    return parts;
}

double parse_cfg_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad value for " + key + ": " + value);
    }
}

long long parse_cfg_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad value for " + key + ": " + value);
    }
}

bool parse_cfg_bool(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw ConfigError("bad value for " + key + ": " + value);
}

} // namespace

void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value) {
    if (key == "n-start") cfg.n_start = static_cast<int>(parse_cfg_int(key, value));
    else if (key == "n-stop") cfg.n_stop = static_cast<int>(parse_cfg_int(key, value));
    else if (key == "n-step") cfg.n_step = static_cast<int>(parse_cfg_int(key, value));
    else if (key == "rmax") {
        cfg.rmax_set.clear();
        for (const auto& part : split_list(value))
            cfg.rmax_set.push_back(parse_cfg_double(key, part));
    } else if (key == "trials") cfg.trials = static_cast<int>(parse_cfg_int(key, value));
    else if (key == "seed") cfg.base_seed = static_cast<std::uint64_t>(parse_cfg_int(key, value));
    else if (key == "model") cfg.model = parse_model(value);
    else if (key == "trace-file") cfg.trace_file = value;
    else if (key == "algo") {
        cfg.algorithms.clear();
        for (const auto& part : split_list(value)) cfg.algorithms.push_back(parse_algorithm(part));
    } else if (key == "region") {
        std::vector<double> extents;
        std::size_t start = 0;
        while (true) {
            const std::size_t x = value.find('x', start);
            if (x == std::string::npos) {
                extents.push_back(parse_cfg_double(key, value.substr(start)));
                break;
            }
            extents.push_back(parse_cfg_double(key, value.substr(start, x - start)));
            start = x + 1;
        }
        cfg.region = Region(std::move(extents));
    } else if (key == "dim") cfg.dim = static_cast<int>(parse_cfg_int(key, value));
    else if (key == "out") cfg.out_path = value;
    else if (key == "cadence") cfg.snapshot_cadence_s = parse_cfg_double(key, value);
    else if (key == "sim-length") cfg.sim_length_s = parse_cfg_double(key, value);
    else if (key == "vmin") cfg.v_min = parse_cfg_double(key, value);
    else if (key == "vmax") cfg.v_max = parse_cfg_double(key, value);
    else if (key == "pause-max") cfg.pause_max = parse_cfg_double(key, value);
    else if (key == "timing") cfg.timing = parse_cfg_bool(key, value);
    else if (key == "threads") cfg.threads = static_cast<int>(parse_cfg_int(key, value));
    else throw ConfigError("unknown config key: " + key);
}

ExperimentConfig load_config_file(std::istream& in, ExperimentConfig base) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view v(line);
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        if (v.empty() || v.front() == '#' || v.front() == ';') continue;
        const std::size_t eq = v.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        auto strip = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
            return std::string(s);
        };
        try {
            apply_config_line(base, strip(v.substr(0, eq)), strip(v.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

} // namespace itc
