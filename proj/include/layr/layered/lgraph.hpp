#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "layr/geometry.hpp"
#include "layr/graph.hpp"
#include "layr/options.hpp"

namespace layr::layered {

enum class NodeKind { Normal, LongEdgeDummy, ExternalPortDummy, NorthSouthDummy };

std::string_view to_string(NodeKind kind);

/// Options of one hierarchy level, resolved once at import.
struct LayeredSettings {
    Direction direction = Direction::Right;
    CycleBreakingStrategy cycle_breaking = CycleBreakingStrategy::Greedy;
    LayeringStrategy layering = LayeringStrategy::NetworkSimplex;
    int coffman_graham_width = 4;
    bool node_promotion = false;
    CrossingMinimizationStrategy crossing_minimization = CrossingMinimizationStrategy::LayerSweep;
    bool force_node_model_order = false;
    ModelOrderStrategy model_order = ModelOrderStrategy::None;
    NodePlacementStrategy node_placement = NodePlacementStrategy::BrandesKoepf;
    EdgeRouting edge_routing = EdgeRouting::Orthogonal;
    double node_node = 20.0;
    double edge_edge = 10.0;
    double edge_node = 10.0;
    double port_port = 10.0;
    double label_port = 1.0;
    Padding padding{};
    double aspect_ratio = 1.6;
    bool separate_components = true;
    // Port constraints of the level node itself; FIXED_ORDER and above keep
    // external-port dummies in port model order.
    PortConstraints level_port_constraints = PortConstraints::Free;
};

struct LPort {
    int id = -1;
    int node = -1;
    PortSide side = PortSide::Undefined;
    Point pos;  // top-left, relative to the node
    double width = 0.0;
    double height = 0.0;
    const Port* origin = nullptr;
    int model_order = -1;
    bool fixed_position = false;
    std::vector<int> in_edges;
    std::vector<int> out_edges;

    Point anchor() const { return {pos.x + width / 2.0, pos.y + height / 2.0}; }
    std::size_t degree() const { return in_edges.size() + out_edges.size(); }
};

struct LNode {
    int id = -1;
    NodeKind kind = NodeKind::Normal;
    const Node* origin = nullptr;
    int layer = -1;
    int pos = -1;  // index inside its layer
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;
    std::vector<int> ports;
    int model_order = -1;
    PortConstraints constraints = PortConstraints::Free;
    bool alive = true;

    int origin_edge = -1;  // long-edge dummy: the edge piece it belongs to (first piece)
    int external = -1;     // external-port dummy: index into LGraph::externals
    int ns_owner = -1;     // north/south dummy: node and port it stands in for
    int ns_port = -1;

    bool is_dummy() const { return kind != NodeKind::Normal; }
    Rect bounds() const { return {x, y, width, height}; }
};

struct LEdge {
    int id = -1;
    int source = -1;  // port ids
    int target = -1;
    bool reversed = false;
    std::vector<Point> bends;
    int origin = -1;  // index into LGraph::edge_origins
    int model_order = -1;
    bool alive = true;
};

/// An edge endpoint outside this hierarchy level, represented by a dummy.
struct ExternalPort {
    const Port* port = nullptr;  // explicit port of the level node
    const Edge* edge = nullptr;  // implicit boundary crossing of this edge
    PortSide side = PortSide::West;  // internal frame, WEST or EAST
    double width = 0.0;
    double height = 0.0;
    int model_order = -1;
    int dummy = -1;
    Point anchor;  // internal frame, set once the dummy is removed
    bool placed = false;
};

/// The layered algorithm's working graph. Everything is index based; removed
/// elements are flagged dead instead of erased so indices stay stable.
class LGraph {
public:
    std::string name;
    LayeredSettings settings;
    std::vector<LNode> nodes;
    std::vector<LPort> ports;
    std::vector<LEdge> edges;
    std::vector<std::vector<int>> layers;
    std::vector<ExternalPort> externals;
    std::vector<const Edge*> edge_origins;
    std::vector<double> layer_x;
    std::vector<double> layer_width;
    long crossings = -1;  // after phase 3
    bool placed = false;  // after phase 4
    bool routed = false;  // after phase 5

    int add_node(NodeKind kind, double width, double height);
    int add_port(int node, PortSide side, double width = 0.0, double height = 0.0);
    int add_edge(int source_port, int target_port, int origin, int model_order);

    void set_target(int edge, int port);
    void set_source(int edge, int port);
    void reverse(int edge);
    void remove_edge(int edge);
    void remove_node(int node);

    int source_node(int edge) const { return ports[edges[edge].source].node; }
    int target_node(int edge) const { return ports[edges[edge].target].node; }
    bool is_self_loop(int edge) const { return source_node(edge) == target_node(edge); }

    std::vector<int> out_edges(int node) const;
    std::vector<int> in_edges(int node) const;
    /// Ports of `node` on `side`, in their current order.
    std::vector<int> ports_on(int node, PortSide side) const;

    Point anchor(int port) const;  // absolute, internal frame

    std::size_t alive_nodes() const;
    std::size_t alive_edges() const;
    std::size_t dummy_count() const;

    /// Rebuilds `layers` from node layer indices; drops empty layers and
    /// orders nodes by (current pos, id).
    void rebuild_layers();
    void renumber_positions();
};

/// Splits into connected components (undirected reachability), listed by
/// their lowest node model order.
std::vector<LGraph> split_components(const LGraph& graph);
/// Concatenates components back into one graph. Element order follows the
/// input order of components.
LGraph merge_components(std::vector<LGraph>&& parts);

/// True if the non-self-loop alive edges form a DAG.
bool is_acyclic(const LGraph& graph);

/// Number of long-edge dummies needed by the current layering.
long long dummy_demand(const LGraph& graph);

}  // namespace layr::layered
