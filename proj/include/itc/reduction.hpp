#pragma once

#include "itc/comm_graph.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace itc {

// Everything one node learns in the data-acquisition phase: the nodes within
// two hops, their positions and maximum radii, and the adjacency among them.
struct LocalView {
    NodeId centre = 0;
    int dim = 2;
    std::vector<NodeId> nodes;                      // sorted ascending, centre included
    std::vector<double> coords;                     // nodes.size() * dim, node-major
    std::vector<double> max_radius;                 // parallel to nodes
    std::vector<std::vector<std::uint32_t>> adj;    // local indices, sorted

    std::size_t size() const { return nodes.size(); }
    std::optional<std::uint32_t> local_index(NodeId id) const;
    std::uint32_t centre_index() const;
    double dist(std::uint32_t li, std::uint32_t lj) const;
    bool adjacent(std::uint32_t li, std::uint32_t lj) const;
};

// View of u: u itself, adj(u) and adj(adj(u)), with adjacency restricted to
// pairs inside the view.
LocalView two_hop_view(const CommGraph& g_max, NodeId u);

// The Bridged subroutine over a node's 2-hop data: a 2-edge detour through a
// common neighbour, or a 3-edge detour, every hop strictly shorter than
// dist(a,b). a must be the view centre.
bool bridged_local(const LocalView& view, NodeId a, NodeId b);

// Radius-reduction loop at the view centre: repeatedly, while the furthest
// neighbour within the current radius is bridged, shrink the radius to the
// next-furthest neighbour strictly inside it. Returns 0 when every
// neighbour link is bridged away.
double reduce_radius(const LocalView& view);

// Final radius at u after the asymmetric-edge round: the distance to its
// furthest neighbour v with dist(u,v) <= min(r_self, r'(v)), or 0 when no
// neighbour communicates bidirectionally.
double remove_asymmetric(NodeId u, double r_self,
                         const std::unordered_map<NodeId, double>& neighbour_radii,
                         const LocalView& view);

// Full protocol on a snapshot: 2-hop acquisition, per-node radius reduction
// and one synchronous asymmetric-removal round using the phase-2 radii.
// Handles disconnected inputs component-wise.
CommGraph run_protocol(const CommGraph& g_max);

// Phase-2 radii alone (before asymmetric removal); exposed for tests.
std::vector<double> reduce_all_radii(const CommGraph& g_max);

} // namespace itc
