#pragma once

#include "itc/comm_graph.hpp"
#include "itc/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

// Brute-force reference implementations used to check the library. They
// re-derive everything (distances, edges, connectivity) with their own naive
// loops and deliberately share no graph logic with the model code.
namespace itc::oracle {

// Literal quadratic count of nodes whose radius covers p.
std::uint32_t naive_interference(const PointSet& points, const std::vector<double>& radii,
                                 NodeId p);

// Exhaustive enumeration of simple paths of at most three edges between the
// endpoints of e, with strict length comparisons.
bool exhaustive_bridged(const CommGraph& g, Edge e);

// Exact opt(P): minimum over all connected radius assignments drawn from the
// per-node candidate lattice {dist(p,q) : q != p} of the maximum
// interference. Feasible for 2 <= n <= 6.
std::uint32_t brute_force_opt(const PointSet& points);

// Minimum spanning-tree weight by enumerating all n^(n-2) labelled trees
// (Pruefer sequences); n <= 8.
double exhaustive_min_spanning_weight(const PointSet& points);

// Each radius rounded down to the largest candidate-lattice value <= it
// (0 when it is below every candidate). Preserves edge and coverage sets.
std::vector<double> round_down_to_lattice(const PointSet& points,
                                          const std::vector<double>& radii);

struct SuiteResult {
    int instances = 0;
    int interference_checks = 0;
    int bridged_checks = 0;
    int mismatches = 0;
    int opt_instances = 0;
    int opt_violations = 0;   // protocol below brute-force optimum (impossible)
    int opt_equalities = 0;   // protocol met the optimum exactly
    int lattice_checks = 0;
    int lattice_failures = 0;

    bool ok() const { return mismatches == 0 && opt_violations == 0 && lattice_failures == 0; }
};

// Randomized equivalence battery: interference and bridging against the
// model implementations on instances with n <= 8 (mixed radius schemes),
// the opt(P) lower bound on protocol outputs for n <= 5, and the lattice
// rounding check. Logs one line per section when log is non-null.
SuiteResult run_suite(std::uint64_t seed, int instances, std::ostream* log = nullptr);

} // namespace itc::oracle
