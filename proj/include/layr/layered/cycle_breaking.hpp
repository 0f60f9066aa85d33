#pragma once

#include <vector>

#include "layr/layered/lgraph.hpp"

namespace layr::layered {

/// Eades-Lin-Smyth ordering heuristic. Sinks and sources are peeled off
/// first; otherwise the node with the largest out-degree minus in-degree goes
/// next, ties going to the lowest model order. Returns the edges pointing
/// backwards in the resulting order.
std::vector<int> greedy_cycle_break(const LGraph& graph);

/// Back edges of a depth-first search started from every unvisited node in
/// model order, following out-edges in edge model order.
std::vector<int> depth_first_cycle_break(const LGraph& graph);

/// Edges whose target precedes their source in model order. Edges touching
/// external-port dummies are left alone.
std::vector<int> model_order_cycle_break(const LGraph& graph);

/// Runs `strategy` and reverses the returned edges.
std::vector<int> break_cycles(LGraph& graph, CycleBreakingStrategy strategy);

}  // namespace layr::layered
