#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "layr/layered/lgraph.hpp"

namespace layr::layered {

/// Number of crossing pairs among straight edges between two parallel lines,
/// each given as (position on first line, position on second line). Edges
/// sharing an endpoint do not cross. O(E log E).
long long count_crossings(std::span<const std::pair<int, int>> edges);

/// Ports of `node` as seen from `facing` (EAST or WEST), top to bottom. Ports
/// on other sides whose edges leave towards `facing` are appended in reverse
/// order, as if the edge were wrapped around the bottom of the node.
std::vector<int> port_view(const LGraph& graph, int node, PortSide facing);

/// Crossings between layer `left` and layer `left + 1`, at port level.
long long count_layer_crossings(const LGraph& graph, int left);
long long count_all_crossings(const LGraph& graph);

/// Pairs of normal nodes (same layer) whose order disagrees with model order.
/// With a model order strategy other than NONE, pairs of external-port
/// dummies out of port model order count as well.
long long model_order_inversions(const LGraph& graph);

/// An entry for in-layer constraint resolution.
struct ConstraintEntry {
    int id = 0;
    std::optional<double> barycenter;
    int size = 1;
};

/// Orders `entries` by barycenter while keeping every (before, after)
/// constraint: violating neighbours are merged into groups with a size
/// weighted barycenter, as in Forster's method. Entries without a barycenter
/// keep their relative position. Throws LayoutError naming the ids on a cycle.
std::vector<int> resolve_in_layer_constraints(std::vector<ConstraintEntry> entries,
                                              std::span<const std::pair<int, int>> constraints);

/// Phase 3: layer sweep with barycenter ordering of nodes and ports. The
/// result never has more crossings than the arrangement it starts from.
void minimize_crossings(LGraph& graph);

}  // namespace layr::layered
