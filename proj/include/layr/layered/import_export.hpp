#pragma once

#include "layr/graph.hpp"
#include "layr/hierarchy.hpp"
#include "layr/layered/lgraph.hpp"

namespace layr::layered {

/// Options of `level` as the layered algorithm sees them.
LayeredSettings resolve_settings(const GraphIndex& index, const Node& level);

/// Builds the working graph for the children of `level`, in the
/// left-to-right frame. Compound children must already have their final
/// size and port positions; boundary ports recorded in `context` are used
/// for edges that enter a child without an explicit port. Edges leaving
/// the level get external-port dummies.
LGraph import_graph(const GraphIndex& index, const Node& level, const HierarchyContext& context);

/// Writes positions back in the caller's direction: children, their ports,
/// the ports of `level` fed by external dummies, and the level's size
/// (content plus padding, at least its given size). `top_band` is extra
/// space reserved above the content, e.g. for a label. Routes go to
/// `context.pieces`.
void export_graph(const LGraph& graph, Node& level, HierarchyContext& context, double top_band = 0.0);

}  // namespace layr::layered
