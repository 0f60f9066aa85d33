#pragma once

#include <array>
#include <vector>

#include "layr/layered/lgraph.hpp"

namespace layr::layered {

/// Minimum gap between two consecutive nodes of a layer, by node kinds.
double node_spacing(const LGraph& graph, int upper, int lower);

/// Vertical offset of an edge's attachment point on `port`, relative to the
/// node's top, when the edge leaves towards `facing`. Ports on other sides
/// are wrapped around the bottom of the node.
double port_offset(const LGraph& graph, int port, PortSide facing);

/// Brandes-Koepf: four alignments (up/down x top/bottom), each compacted,
/// then balanced by the average of the two median candidates. `candidates`
/// receives the four aligned layouts if given.
void place_brandes_koepf(LGraph& graph, std::array<std::vector<double>, 4>* candidates = nullptr);

/// Linear segments: dummy chains stay straight; segments are balanced by
/// the average pull of their edges, at most 50 rounds.
void place_linear_segments(LGraph& graph);

/// Stacks the nodes of each layer from the top.
void place_simple(LGraph& graph);

/// Phase 4 entry point. Shifts the result so the topmost node is at y = 0.
void place_nodes(LGraph& graph);

}  // namespace layr::layered
