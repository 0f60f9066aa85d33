#pragma once

#include <vector>

#include "layr/layered/lgraph.hpp"

namespace layr::layered {

/// Vertical segment slots in one gap between two layers.
struct GapSlots {
    int slots = 0;                  // number of distinct x positions used
    std::vector<int> edge_slot;     // per edge id, -1 if not routed through a slot
};

/// Assigns slots to the edges leaving layer `left`. Edges from the same
/// source port share a slot. Slot order minimises crossings between the
/// vertical segments and the horizontal ones; cyclic preferences are broken
/// greedily.
GapSlots assign_slots(const LGraph& graph, int left);

/// Phase 5 entry point: computes layer x positions, centres nodes in their
/// layer and writes bend points for every edge (internal frame).
void route_edges(LGraph& graph);

}  // namespace layr::layered
