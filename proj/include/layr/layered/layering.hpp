#pragma once

#include <vector>

#include "layr/layered/lgraph.hpp"

namespace layr::layered {

// The functions below return one layer index per node (dead nodes get -1).
// They expect an acyclic graph; self-loops are ignored.

std::vector<int> longest_path_layering(const LGraph& graph);

struct NetworkSimplexStats {
    long long pivots = 0;
};

/// Minimises the weighted total edge length (parallel edges add weight).
/// Throws LayoutError if the pivot limit 4|V|^2 is exceeded.
std::vector<int> network_simplex_layering(const LGraph& graph, NetworkSimplexStats* stats = nullptr);

/// At most `width` normal nodes per layer. Throws LayoutError for width < 1.
std::vector<int> coffman_graham_layering(const LGraph& graph, int width);

/// Weighted total edge length of a layering.
long long total_edge_length(const LGraph& graph, const std::vector<int>& layer);

/// Moves nodes towards their successors while that lowers the number of
/// long-edge dummies. External-port dummies never move. Returns the number
/// of accepted promotions.
int promote_nodes(const LGraph& graph, std::vector<int>& layer);

/// Phase 2 entry point: runs the configured strategy, puts external-port
/// dummies into their own first/last layers and rebuilds the layer lists.
void assign_layers(LGraph& graph);

}  // namespace layr::layered
