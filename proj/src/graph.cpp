#include "layr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace layr {

GraphIndex::GraphIndex(const Node& root) : root_(&root) {
    std::set<std::string, std::less<>> seen;
    auto note = [&](const std::string& id) {
        if (id.empty()) return;
        if (!seen.insert(id).second) {
            if (std::find(duplicates_.begin(), duplicates_.end(), id) == duplicates_.end()) {
                duplicates_.push_back(id);
            }
        }
    };
    visit(root, nullptr, 0);
    for (const Node* n : nodes_) {
        note(n->id);
        for (const Port& p : n->ports) note(p.id);
        for (const Edge& e : n->edges) note(e.id);
    }
}

void GraphIndex::visit(const Node& node, const Node* parent, int depth) {
    nodes_.push_back(&node);
    nodes_by_id_.try_emplace(node.id, &node);
    parent_[&node] = {parent, depth};
    for (std::size_t i = 0; i < node.ports.size(); ++i) {
        const Port& p = node.ports[i];
        ports_by_id_.try_emplace(p.id, &p);
        port_owner_[&p] = &node;
        order_[&p] = i;
    }
    for (std::size_t i = 0; i < node.edges.size(); ++i) {
        const Edge& e = node.edges[i];
        edges_by_id_.try_emplace(e.id, &e);
        edge_container_[&e] = &node;
        order_[&e] = i;
        edges_.push_back(&e);
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        order_[&node.children[i]] = i;
        visit(node.children[i], &node, depth + 1);
    }
}

const Node* GraphIndex::find_node(std::string_view id) const {
    auto it = nodes_by_id_.find(id);
    return it == nodes_by_id_.end() ? nullptr : it->second;
}

const Port* GraphIndex::find_port(std::string_view id) const {
    auto it = ports_by_id_.find(id);
    return it == ports_by_id_.end() ? nullptr : it->second;
}

const Edge* GraphIndex::find_edge(std::string_view id) const {
    auto it = edges_by_id_.find(id);
    return it == edges_by_id_.end() ? nullptr : it->second;
}

Endpoint GraphIndex::resolve(std::string_view id) const {
    if (const Node* n = find_node(id)) return {n, nullptr};
    if (const Port* p = find_port(id)) return {owner(*p), p};
    return {};
}

const Node* GraphIndex::parent(const Node& node) const {
    auto it = parent_.find(&node);
    return it == parent_.end() ? nullptr : it->second.first;
}

const Node* GraphIndex::owner(const Port& port) const {
    auto it = port_owner_.find(&port);
    return it == port_owner_.end() ? nullptr : it->second;
}

const Node* GraphIndex::container(const Edge& edge) const {
    auto it = edge_container_.find(&edge);
    return it == edge_container_.end() ? nullptr : it->second;
}

int GraphIndex::depth(const Node& node) const {
    auto it = parent_.find(&node);
    return it == parent_.end() ? 0 : it->second.second;
}

bool GraphIndex::is_descendant(const Node& node, const Node& ancestor) const {
    for (const Node* p = parent(node); p != nullptr; p = parent(*p)) {
        if (p == &ancestor) return true;
    }
    return false;
}

std::size_t GraphIndex::model_order(const Node& node) const {
    auto it = order_.find(&node);
    return it == order_.end() ? 0 : it->second;
}

std::size_t GraphIndex::model_order(const Port& port) const {
    auto it = order_.find(&port);
    return it == order_.end() ? 0 : it->second;
}

std::size_t GraphIndex::model_order(const Edge& edge) const {
    auto it = order_.find(&edge);
    return it == order_.end() ? 0 : it->second;
}

bool port_on_border(const Port& port, double w, double h, double eps) {
    switch (port.side) {
        case PortSide::East: return port.x - eps <= w && w <= port.x + port.width + eps;
        case PortSide::West: return port.x - eps <= 0 && 0 <= port.x + port.width + eps;
        case PortSide::North: return port.y - eps <= 0 && 0 <= port.y + port.height + eps;
        case PortSide::South: return port.y - eps <= h && h <= port.y + port.height + eps;
        case PortSide::Undefined: break;
    }
    return false;
}

namespace {

bool bad_length(double v) { return !std::isfinite(v) || v < 0; }

void check_labels(const std::vector<Label>& labels, const std::string& owner, std::vector<Diagnostic>& out) {
    for (const Label& l : labels) {
        if (bad_length(l.width) || bad_length(l.height)) {
            out.push_back({l.id.empty() ? owner : l.id, "label size must be finite and non-negative"});
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate(const LayoutGraph& graph) {
    std::vector<Diagnostic> out;
    GraphIndex index(graph.root);
    for (const std::string& id : index.duplicate_ids()) out.push_back({id, "duplicate element id"});

    for (const Node* node : index.all_nodes()) {
        if (node->id.empty()) out.push_back({"", "node without id"});
        if (bad_length(node->width) || bad_length(node->height)) {
            out.push_back({node->id, "node size must be finite and non-negative"});
        }
        if (!std::isfinite(node->x) || !std::isfinite(node->y)) {
            out.push_back({node->id, "node coordinates must be finite"});
        }
        check_labels(node->labels, node->id, out);

        const auto constraints = resolve<PortConstraints>(index, *node, opt::kPortConstraints);
        for (const Port& port : node->ports) {
            if (port.id.empty()) out.push_back({node->id, "port without id"});
            if (bad_length(port.width) || bad_length(port.height)) {
                out.push_back({port.id, "port size must be finite and non-negative"});
            }
            if (!std::isfinite(port.x) || !std::isfinite(port.y)) {
                out.push_back({port.id, "port coordinates must be finite"});
            }
            check_labels(port.labels, port.id, out);
            if (constraints >= PortConstraints::FixedSide && port.side == PortSide::Undefined) {
                out.push_back({port.id, "port side must be defined when port constraints are " +
                                            format_option_value(constraints)});
            } else if (constraints == PortConstraints::FixedPos && !node->is_compound() &&
                       !port_on_border(port, node->width, node->height)) {
                out.push_back({port.id, "port with fixed position does not lie on the " +
                                            std::string(to_string(port.side)) + " border of its node"});
            }
        }

        for (const Edge& edge : node->edges) {
            if (edge.id.empty()) out.push_back({node->id, "edge without id"});
            check_labels(edge.labels, edge.id, out);
            for (const std::string* end : {&edge.source, &edge.target}) {
                if (!index.resolve(*end)) {
                    out.push_back({*end, "edge '" + edge.id + "' references unknown element '" + *end + "'"});
                }
            }
        }
    }
    return out;
}

namespace {

OptionValue resolve_from(const GraphIndex& index, const Node* node, const OptionDef& def) {
    for (const Node* n = node; n != nullptr; n = index.parent(*n)) {
        if (const OptionValue* v = n->options.find(def.key)) return *v;
        if (!def.inheritable) break;
    }
    return def.default_value;
}

}  // namespace

OptionValue resolve_option(const GraphIndex& index, const Node& node, std::string_view key) {
    return resolve_from(index, &node, require_option(key));
}

OptionValue resolve_option(const GraphIndex& index, const Port& port, std::string_view key) {
    const OptionDef& def = require_option(key);
    if (const OptionValue* v = port.options.find(def.key)) return *v;
    if (!def.inheritable) return def.default_value;
    return resolve_from(index, index.owner(port), def);
}

OptionValue resolve_option(const GraphIndex& index, const Edge& edge, std::string_view key) {
    const OptionDef& def = require_option(key);
    if (const OptionValue* v = edge.options.find(def.key)) return *v;
    if (!def.inheritable) return def.default_value;
    return resolve_from(index, index.container(edge), def);
}

}  // namespace layr
