#pragma once

#include "itc/geometry.hpp"
#include "itc/rng.hpp"

#include <iosfwd>
#include <vector>

namespace itc {

// n points independently uniform over the region; reproducible from seed.
PointSet place_uniform(std::size_t n, const Region& region, std::uint64_t seed);

// Minimum pairwise distance (class-D diagnostic).
double min_pairwise_distance(const PointSet& points);

enum class DistributionKind { Uniform, WalkStationary, WaypointStationary, Trace };

// Density facts about a placement distribution on [0,1]^d. For a density
// bounded by c', n sampled points keep all pairwise distances above
// n^(-c'') with probability at least 1 - 1/n, where c'' is the exponent
// below (base-2 logarithm).
struct DistributionSpec {
    DistributionKind kind = DistributionKind::Uniform;
    double density_bound = 1.0; // c'
    int dim = 2;

    double class_d_exponent() const; // c'' = 1 + (log2 c' + 2) / d
};

struct WalkParams {
    double v_min = 0.2;
    double v_max = 10.0;
    double resample_interval_s = 1.0;
};

struct WalkState {
    double x = 0.0, y = 0.0;
    double speed = 0.0;
    double direction = 0.0; // radians
};

// One movement step. When the interval has elapsed the node first redraws
// speed ~ U[v_min, v_max] then direction ~ U[0, 2pi). A step that would
// leave the region reverses direction (rotation by pi) and takes the full
// step from the original position; if even the reversed step exits (extreme
// speed near a corner) the position clamps to the boundary.
WalkState walk_step(const WalkState& state, const Region& region, double dt,
                    bool interval_elapsed, const WalkParams& params, Rng& rng);

struct WaypointParams {
    double v_min = 0.2;
    double v_max = 10.0;
    double pause_max = 10.0;
};

struct WaypointState {
    double x = 0.0, y = 0.0;
    double dest_x = 0.0, dest_y = 0.0;
    double speed = 0.0;
    double pause_s = 0.0;
};

// One waypoint step: consume pause time, otherwise advance straight toward
// the destination; on arrival (remaining distance <= speed*dt) land exactly
// on it and draw pause ~ U[0, pause_max]. Once the pause has expired the
// node draws a fresh destination ~ U(region) and speed ~ U[v_min, v_max].
WaypointState waypoint_step(const WaypointState& state, const Region& region, double dt,
                            const WaypointParams& params, Rng& rng);

// Trajectory engines. Per-node RNG streams are split deterministically from
// the trajectory seed, so results do not depend on iteration order. Steps
// are 1 s; advance() takes whole seconds.
class WalkSim {
public:
    WalkSim(std::size_t n, Region region, WalkParams params, std::uint64_t seed);
    void advance(double seconds);
    PointSet snapshot() const;

private:
    Region region_;
    WalkParams params_;
    std::vector<WalkState> states_;
    std::vector<Rng> streams_;
    std::vector<double> since_resample_;
};

class WaypointSim {
public:
    WaypointSim(std::size_t n, Region region, WaypointParams params, std::uint64_t seed);
    void advance(double seconds);
    PointSet snapshot() const;

private:
    Region region_;
    WaypointParams params_;
    std::vector<WaypointState> states_;
    std::vector<Rng> streams_;
};

// One timestamp of an ingested trace; ids are dense per-trace indices.
struct TraceSnapshot {
    double t_seconds = 0.0;
    std::vector<NodeId> ids; // sorted ascending
    std::vector<double> xs, ys;
};

struct Trace {
    std::vector<long long> original_ids; // dense id -> id as recorded in the file
    std::vector<TraceSnapshot> snapshots; // ascending timestamps
    std::size_t population() const { return original_ids.size(); }
};

// Parses `node_id,t_seconds,x_m,y_m` records (optional header, LF or CRLF).
// Positions are pre-projected planar metres. Within one node, timestamps
// must be non-decreasing in file order; at equal timestamps the last record
// wins. Errors name the offending line.
Trace load_trace(std::istream& in);

} // namespace itc
