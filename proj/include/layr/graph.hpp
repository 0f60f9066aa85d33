#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "layr/geometry.hpp"
#include "layr/options.hpp"

namespace layr {

struct Label {
    std::string id;  // optional
    std::string text;
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;

    friend bool operator==(const Label&, const Label&) = default;
};

struct Port {
    std::string id;
    PortSide side = PortSide::Undefined;
    double x = 0.0;  // relative to the owning node
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;
    std::vector<Label> labels;
    OptionTable options;

    Rect bounds() const { return {x, y, width, height}; }
    Point anchor() const { return bounds().center(); }

    friend bool operator==(const Port&, const Port&) = default;
};

/// Route of an edge: start, bend points, end. Coordinates are relative to the
/// edge's container node.
struct EdgeSection {
    Point start;
    Point end;
    std::vector<Point> bend_points;

    friend bool operator==(const EdgeSection&, const EdgeSection&) = default;
};

struct Edge {
    std::string id;
    std::string source;  // node or port id
    std::string target;
    std::vector<Label> labels;
    OptionTable options;
    std::optional<EdgeSection> section;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// A node; a node with children is a compound node. Child coordinates are
/// relative to the parent's top-left corner.
struct Node {
    std::string id;
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;
    std::vector<Node> children;
    std::vector<Port> ports;
    std::vector<Edge> edges;  // edges owned by this node's scope, in model order
    std::vector<Label> labels;
    OptionTable options;

    bool is_compound() const { return !children.empty(); }
    Rect bounds() const { return {x, y, width, height}; }

    friend bool operator==(const Node&, const Node&) = default;
};

struct LayoutGraph {
    Node root;

    friend bool operator==(const LayoutGraph&, const LayoutGraph&) = default;
};

struct Diagnostic {
    std::string element_id;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Resolved edge endpoint: the node itself, or a port together with its owner.
struct Endpoint {
    const Node* node = nullptr;
    const Port* port = nullptr;

    explicit operator bool() const { return node != nullptr; }
};

/// Lookup tables over a graph: ids, parents, port owners, edge containers.
/// Pointers stay valid while the graph is not structurally modified.
class GraphIndex {
public:
    explicit GraphIndex(const Node& root);

    const Node& root() const { return *root_; }
    const Node* find_node(std::string_view id) const;
    const Port* find_port(std::string_view id) const;
    const Edge* find_edge(std::string_view id) const;
    Endpoint resolve(std::string_view id) const;

    const Node* parent(const Node& node) const;
    const Node* owner(const Port& port) const;
    const Node* container(const Edge& edge) const;
    int depth(const Node& node) const;

    /// True if `node` is a strict descendant of `ancestor`.
    bool is_descendant(const Node& node, const Node& ancestor) const;

    std::size_t model_order(const Node& node) const;
    std::size_t model_order(const Port& port) const;
    std::size_t model_order(const Edge& edge) const;

    /// Every edge of the graph: containers in pre-order, each container's
    /// edges in model order.
    const std::vector<const Edge*>& all_edges() const { return edges_; }
    /// Every node in pre-order (root first).
    const std::vector<const Node*>& all_nodes() const { return nodes_; }

    /// Ids that occur more than once, in first-seen order.
    const std::vector<std::string>& duplicate_ids() const { return duplicates_; }

private:
    void visit(const Node& node, const Node* parent, int depth);

    const Node* root_;
    std::map<std::string, const Node*, std::less<>> nodes_by_id_;
    std::map<std::string, const Port*, std::less<>> ports_by_id_;
    std::map<std::string, const Edge*, std::less<>> edges_by_id_;
    std::map<const Node*, std::pair<const Node*, int>> parent_;
    std::map<const Port*, const Node*> port_owner_;
    std::map<const Edge*, const Node*> edge_container_;
    std::map<const void*, std::size_t> order_;
    std::vector<const Edge*> edges_;
    std::vector<const Node*> nodes_;
    std::vector<std::string> duplicates_;
};

/// Checks every structural invariant. An empty result means the graph is
/// safe to lay out.
std::vector<Diagnostic> validate(const LayoutGraph& graph);

/// Option value set on the node, else on the nearest ancestor (inheritable
/// options only), else the registry default. Throws OptionError for unknown
/// keys.
OptionValue resolve_option(const GraphIndex& index, const Node& node, std::string_view key);
OptionValue resolve_option(const GraphIndex& index, const Port& port, std::string_view key);
OptionValue resolve_option(const GraphIndex& index, const Edge& edge, std::string_view key);

template <class T, class Element>
T resolve(const GraphIndex& index, const Element& element, std::string_view key) {
    return std::get<T>(resolve_option(index, element, key));
}

/// 0-based position of the element in its parent's ordered list.
template <class Element>
std::size_t model_order_index(const GraphIndex& index, const Element& element) {
    return index.model_order(element);
}

/// True if the port box touches the node border on its side.
bool port_on_border(const Port& port, double node_width, double node_height, double eps = kGeomEps);

}  // namespace layr
