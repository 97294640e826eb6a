#include "itc/mobility.hpp"

#include "itc/errors.hpp"
#include "itc/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <string>

namespace itc {

PointSet place_uniform(std::size_t n, const Region& region, std::uint64_t seed) {
    if (n < 1) throw ModelError("place_uniform: need n >= 1");
    const int d = region.dim();
    Rng rng(seed);
    std::vector<std::vector<double>> axes(static_cast<std::size_t>(d));
    for (auto& ax : axes) ax.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int a = 0; a < d; ++a)
            axes[static_cast<std::size_t>(a)][i] =
                rng.uniform(0.0, region.extent[static_cast<std::size_t>(a)]);
    return PointSet(d, std::move(axes));
}

double min_pairwise_distance(const PointSet& points) {
    const std::size_t n = points.size();
    if (n < 2) throw ModelError("min_pairwise_distance: need n >= 2");
    double best = std::numeric_limits<double>::infinity();
    if (points.dim() == 2) {
        const double* xs = points.axis(0).data();
        const double* ys = points.axis(1).data();
        const auto& k = kernels::active();
        std::vector<double> row(n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            k.distance_row_2d(xs + i + 1, ys + i + 1, n - i - 1, xs[i], ys[i], row.data());
            for (std::size_t j = 0; j < n - i - 1; ++j) best = std::min(best, row[j]);
        }
    } else {
        for (NodeId i = 0; i + 1 < n; ++i)
            for (NodeId j = i + 1; j < n; ++j)
                best = std::min(best, points.node_distance(i, j));
    }
    return best;
}

double DistributionSpec::class_d_exponent() const {
    if (density_bound < 1.0) throw ModelError("DistributionSpec: density bound below 1");
    if (dim < 1) throw ModelError("DistributionSpec: bad dimension");
    return 1.0 + (std::log2(density_bound) + 2.0) / static_cast<double>(dim);
}

namespace {

bool inside(const Region& region, double x, double y) {
    return x >= 0.0 && x <= region.extent[0] && y >= 0.0 && y <= region.extent[1];
}

} // namespace

WalkState walk_step(const WalkState& state, const Region& region, double dt,
                    bool interval_elapsed, const WalkParams& params, Rng& rng) {
    if (!(dt > 0.0)) throw ModelError("walk_step: dt must be positive");
    WalkState next = state;
    if (interval_elapsed) {
        next.speed = rng.uniform(params.v_min, params.v_max);
        next.direction = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    double sx = next.speed * dt * std::cos(next.direction);
    double sy = next.speed * dt * std::sin(next.direction);
    double nx = state.x + sx;
    double ny = state.y + sy;
    if (!inside(region, nx, ny)) {
        next.direction += std::numbers::pi;
        if (next.direction >= 2.0 * std::numbers::pi) next.direction -= 2.0 * std::numbers::pi;
        nx = state.x - sx;
        ny = state.y - sy;
        if (!inside(region, nx, ny)) {
            nx = std::clamp(nx, 0.0, region.extent[0]);
            ny = std::clamp(ny, 0.0, region.extent[1]);
        }
    }
    next.x = nx;
    next.y = ny;
    return next;
}

WaypointState waypoint_step(const WaypointState& state, const Region& region, double dt,
                            const WaypointParams& params, Rng& rng) {
    if (!(dt > 0.0)) throw ModelError("waypoint_step: dt must be positive");
    WaypointState next = state;
    if (next.pause_s > 0.0) {
        next.pause_s = std::max(0.0, next.pause_s - dt);
        return next;
    }
    if (next.x == next.dest_x && next.y == next.dest_y) {
        // pause expired at the destination: pick the next leg
        next.dest_x = rng.uniform(0.0, region.extent[0]);
        next.dest_y = rng.uniform(0.0, region.extent[1]);
        next.speed = rng.uniform(params.v_min, params.v_max);
    }
    const double gx = next.dest_x - next.x;
    const double gy = next.dest_y - next.y;
    const double gap = std::sqrt(gx * gx + gy * gy);
    const double step = next.speed * dt;
    if (gap <= step) {
        next.x = next.dest_x;
        next.y = next.dest_y;
        next.pause_s = rng.uniform(0.0, params.pause_max);
    } else {
        const double f = step / gap;
        next.x += gx * f;
        next.y += gy * f;
    }
    return next;
}

WalkSim::WalkSim(std::size_t n, Region region, WalkParams params, std::uint64_t seed)
    : region_(std::move(region)), params_(params) {
    if (region_.dim() != 2) throw ConfigError("random walk model requires dimension 2");
    Rng root(seed);
    states_.resize(n);
    since_resample_.assign(n, params_.resample_interval_s); // resample on first step
    for (std::size_t i = 0; i < n; ++i) {
        streams_.push_back(root.fork(i));
        states_[i].x = streams_[i].uniform(0.0, region_.extent[0]);
        states_[i].y = streams_[i].uniform(0.0, region_.extent[1]);
    }
}

void WalkSim::advance(double seconds) {
    const auto steps = static_cast<std::size_t>(std::llround(seconds));
    for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < states_.size(); ++i) {
            const bool elapsed = since_resample_[i] >= params_.resample_interval_s;
            if (elapsed) since_resample_[i] = 0.0;
            states_[i] = walk_step(states_[i], region_, 1.0, elapsed, params_, streams_[i]);
            since_resample_[i] += 1.0;
        }
    }
}

PointSet WalkSim::snapshot() const {
    std::vector<double> xs(states_.size()), ys(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        xs[i] = states_[i].x;
        ys[i] = states_[i].y;
    }
    return PointSet::from_xy(std::move(xs), std::move(ys));
}

WaypointSim::WaypointSim(std::size_t n, Region region, WaypointParams params,
                         std::uint64_t seed)
    : region_(std::move(region)), params_(params) {
    if (region_.dim() != 2) throw ConfigError("random waypoint model requires dimension 2");
    Rng root(seed);
    states_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        streams_.push_back(root.fork(i));
        auto& st = states_[i];
        st.x = streams_[i].uniform(0.0, region_.extent[0]);
        st.y = streams_[i].uniform(0.0, region_.extent[1]);
        st.dest_x = streams_[i].uniform(0.0, region_.extent[0]);
        st.dest_y = streams_[i].uniform(0.0, region_.extent[1]);
        st.speed = streams_[i].uniform(params_.v_min, params_.v_max);
        st.pause_s = 0.0;
    }
}

void WaypointSim::advance(double seconds) {
    const auto steps = static_cast<std::size_t>(std::llround(seconds));
    for (std::size_t s = 0; s < steps; ++s)
        for (std::size_t i = 0; i < states_.size(); ++i)
            states_[i] = waypoint_step(states_[i], region_, 1.0, params_, streams_[i]);
}

PointSet WaypointSim::snapshot() const {
    std::vector<double> xs(states_.size()), ys(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        xs[i] = states_[i].x;
        ys[i] = states_[i].y;
    }
    return PointSet::from_xy(std::move(xs), std::move(ys));
}

namespace {

struct TraceRecord {
    long long node;
    double t, x, y;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && p == end;
}

bool parse_ll(std::string_view s, long long& out) {
    s = trim(s);
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && p == end;
}

std::vector<std::string_view> split_csv(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

} // namespace

Trace load_trace(std::istream& in) {
    std::vector<TraceRecord> records;
    std::map<long long, double> last_t;
    std::string line;
    std::vector<std::string_view> fields;
    std::size_t line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        split_csv(line, fields);
        if (first_content_line) {
            first_content_line = false;
            long long probe;
            if (!parse_ll(fields[0], probe)) continue; // header row
        }
        if (fields.size() != 4)
            throw ParseError("trace line " + std::to_string(line_no) + ": expected 4 fields");
        TraceRecord rec{};
        if (!parse_ll(fields[0], rec.node) || rec.node < 0)
            throw ParseError("trace line " + std::to_string(line_no) + ": bad node id");
        if (!parse_double(fields[1], rec.t) || !parse_double(fields[2], rec.x) ||
            !parse_double(fields[3], rec.y))
            throw ParseError("trace line " + std::to_string(line_no) + ": bad numeric field");
        const auto it = last_t.find(rec.node);
        if (it != last_t.end() && rec.t < it->second)
            throw ParseError("trace line " + std::to_string(line_no) +
                             ": non-monotone timestamp for node " + std::to_string(rec.node));
        last_t[rec.node] = rec.t;
        records.push_back(rec);
    }

    Trace trace;
    if (records.empty()) return trace;

    for (const auto& [node, t] : last_t) trace.original_ids.push_back(node);
    std::map<long long, NodeId> dense;
    for (std::size_t i = 0; i < trace.original_ids.size(); ++i)
        dense[trace.original_ids[i]] = static_cast<NodeId>(i);

    // group by timestamp; within one, the last record per node wins
    std::map<double, std::map<NodeId, std::pair<double, double>>> grouped;
    for (const auto& rec : records)
        grouped[rec.t][dense[rec.node]] = {rec.x, rec.y};

    for (const auto& [t, nodes] : grouped) {
        TraceSnapshot snap;
        snap.t_seconds = t;
        for (const auto& [id, pos] : nodes) {
            snap.ids.push_back(id);
            snap.xs.push_back(pos.first);
            snap.ys.push_back(pos.second);
        }
        trace.snapshots.push_back(std::move(snap));
    }
    return trace;
}

} // namespace itc
