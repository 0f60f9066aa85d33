#pragma once

#include <map>
#include <utility>
#include <vector>

#include "layr/graph.hpp"

namespace layr {

/// How an edge end looks from one hierarchy level.
enum class EndKind {
    Child,          // a direct child node itself
    ChildPort,      // an explicit port of a direct child
    ChildBoundary,  // something inside a direct child; enters it through its border
    External,       // the level node itself, one of its ports, or anything outside
};

struct LevelEnd {
    EndKind kind = EndKind::External;
    const Node* child = nullptr;
    const Port* port = nullptr;  // ChildPort, or an explicit port of the level node
};

/// An edge that has to be routed inside one level.
struct LevelEdge {
    const Edge* edge = nullptr;
    LevelEnd source;
    LevelEnd target;
};

/// Edges routed inside `level`, in graph edge order. An edge belongs to a
/// level if at least one end is a child of it (or inside one) and the two
/// ends are not both inside the same child.
std::vector<LevelEdge> level_edges(const GraphIndex& index, const Node& level);

/// A port created for an edge crossing a node border where the model has no
/// explicit port.
struct BoundaryPort {
    PortSide side = PortSide::Undefined;
    Rect bounds;  // relative to the node
};

/// State shared between the levels of one recursive layout.
struct HierarchyContext {
    std::map<std::pair<const Node*, const Edge*>, BoundaryPort> implicit_ports;
    /// Route piece of an edge inside one level, source to target, relative
    /// to that level's top-left corner.
    std::map<std::pair<const Node*, const Edge*>, std::vector<Point>> pieces;
};

}  // namespace layr
