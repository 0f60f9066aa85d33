#include "layr/layered/lgraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace layr::layered {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Normal: return "NORMAL";
        case NodeKind::LongEdgeDummy: return "LONG_EDGE_DUMMY";
        case NodeKind::ExternalPortDummy: return "EXTERNAL_PORT_DUMMY";
        case NodeKind::NorthSouthDummy: return "NORTH_SOUTH_DUMMY";
    }
    return "?";
}

int LGraph::add_node(NodeKind kind, double width, double height) {
    LNode n;
    n.id = static_cast<int>(nodes.size());
    n.kind = kind;
    n.width = width;
    n.height = height;
    nodes.push_back(std::move(n));
    return nodes.back().id;
}

int LGraph::add_port(int node, PortSide side, double width, double height) {
    LPort p;
    p.id = static_cast<int>(ports.size());
    p.node = node;
    p.side = side;
    p.width = width;
    p.height = height;
    ports.push_back(std::move(p));
    nodes[node].ports.push_back(ports.back().id);
    return ports.back().id;
}

int LGraph::add_edge(int source_port, int target_port, int origin, int model_order) {
    LEdge e;
    e.id = static_cast<int>(edges.size());
    e.source = source_port;
    e.target = target_port;
    e.origin = origin;
    e.model_order = model_order;
    edges.push_back(std::move(e));
    ports[source_port].out_edges.push_back(edges.back().id);
    ports[target_port].in_edges.push_back(edges.back().id);
    return edges.back().id;
}

namespace {
void erase_value(std::vector<int>& v, int value) {
    auto it = std::find(v.begin(), v.end(), value);
    if (it != v.end()) v.erase(it);
}
}  // namespace

void LGraph::set_target(int edge, int port) {
    erase_value(ports[edges[edge].target].in_edges, edge);
    edges[edge].target = port;
    ports[port].in_edges.push_back(edge);
}

void LGraph::set_source(int edge, int port) {
    erase_value(ports[edges[edge].source].out_edges, edge);
    edges[edge].source = port;
    ports[port].out_edges.push_back(edge);
}

void LGraph::reverse(int edge) {
    LEdge& e = edges[edge];
    erase_value(ports[e.source].out_edges, edge);
    erase_value(ports[e.target].in_edges, edge);
    std::swap(e.source, e.target);
    ports[e.source].out_edges.push_back(edge);
    ports[e.target].in_edges.push_back(edge);
    std::reverse(e.bends.begin(), e.bends.end());
    e.reversed = !e.reversed;
}

void LGraph::remove_edge(int edge) {
    LEdge& e = edges[edge];
    if (!e.alive) return;
    erase_value(ports[e.source].out_edges, edge);
    erase_value(ports[e.target].in_edges, edge);
    e.alive = false;
}

void LGraph::remove_node(int node) {
    LNode& n = nodes[node];
    for (int p : n.ports) {
        for (int e : std::vector<int>(ports[p].in_edges)) remove_edge(e);
        for (int e : std::vector<int>(ports[p].out_edges)) remove_edge(e);
    }
    if (n.layer >= 0 && n.layer < static_cast<int>(layers.size())) erase_value(layers[n.layer], node);
    n.alive = false;
}

std::vector<int> LGraph::out_edges(int node) const {
    std::vector<int> out;
    for (int p : nodes[node].ports) {
        for (int e : ports[p].out_edges) out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        return std::tie(edges[a].model_order, a) < std::tie(edges[b].model_order, b);
    });
    return out;
}

std::vector<int> LGraph::in_edges(int node) const {
    std::vector<int> in;
    for (int p : nodes[node].ports) {
        for (int e : ports[p].in_edges) in.push_back(e);
    }
    std::sort(in.begin(), in.end(), [&](int a, int b) {
        return std::tie(edges[a].model_order, a) < std::tie(edges[b].model_order, b);
    });
    return in;
}

std::vector<int> LGraph::ports_on(int node, PortSide side) const {
    std::vector<int> out;
    for (int p : nodes[node].ports) {
        if (ports[p].side == side) out.push_back(p);
    }
    return out;
}

Point LGraph::anchor(int port) const {
    const LPort& p = ports[port];
    const LNode& n = nodes[p.node];
    return Point{n.x, n.y} + p.anchor();
}

std::size_t LGraph::alive_nodes() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const LNode& n) { return n.alive; }));
}

std::size_t LGraph::alive_edges() const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const LEdge& e) { return e.alive; }));
}

std::size_t LGraph::dummy_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const LNode& n) { return n.alive && n.is_dummy(); }));
}

void LGraph::rebuild_layers() {
    int max_layer = -1;
    for (const LNode& n : nodes) {
        if (n.alive) max_layer = std::max(max_layer, n.layer);
    }
    std::vector<std::vector<int>> by_layer(static_cast<std::size_t>(max_layer + 1));
    for (const LNode& n : nodes) {
        if (n.alive && n.layer >= 0) by_layer[n.layer].push_back(n.id);
    }
    layers.clear();
    for (auto& layer : by_layer) {
        if (layer.empty()) continue;
        std::stable_sort(layer.begin(), layer.end(), [&](int a, int b) {
            const int pa = nodes[a].pos < 0 ? std::numeric_limits<int>::max() : nodes[a].pos;
            const int pb = nodes[b].pos < 0 ? std::numeric_limits<int>::max() : nodes[b].pos;
            return std::tie(pa, a) < std::tie(pb, b);
        });
        const int index = static_cast<int>(layers.size());
        for (int v : layer) nodes[v].layer = index;
        layers.push_back(std::move(layer));
    }
    renumber_positions();
}

void LGraph::renumber_positions() {
    for (auto& layer : layers) {
        for (std::size_t i = 0; i < layer.size(); ++i) nodes[layer[i]].pos = static_cast<int>(i);
    }
}

std::vector<LGraph> split_components(const LGraph& graph) {
    const int n = static_cast<int>(graph.nodes.size());
    std::vector<int> comp(n, -1);
    std::vector<int> first_member;
    for (int start = 0; start < n; ++start) {
        if (!graph.nodes[start].alive || comp[start] >= 0) continue;
        const int c = static_cast<int>(first_member.size());
        first_member.push_back(start);
        std::vector<int> stack{start};
        comp[start] = c;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int p : graph.nodes[v].ports) {
                for (const auto* list : {&graph.ports[p].in_edges, &graph.ports[p].out_edges}) {
                    for (int e : *list) {
                        for (int w : {graph.source_node(e), graph.target_node(e)}) {
                            if (comp[w] < 0) {
                                comp[w] = c;
                                stack.push_back(w);
                            }
                        }
                    }
                }
            }
        }
    }

    std::vector<LGraph> parts(first_member.size());
    std::vector<int> node_map(n, -1), port_map(graph.ports.size(), -1);
    for (std::size_t c = 0; c < parts.size(); ++c) {
        LGraph& part = parts[c];
        part.name = graph.name;
        part.settings = graph.settings;
        part.externals = graph.externals;
        part.edge_origins = graph.edge_origins;
    }
    for (int v = 0; v < n; ++v) {
        if (comp[v] < 0) continue;
        LGraph& part = parts[comp[v]];
        LNode copy = graph.nodes[v];
        copy.id = static_cast<int>(part.nodes.size());
        copy.ports.clear();
        node_map[v] = copy.id;
        part.nodes.push_back(std::move(copy));
        for (int p : graph.nodes[v].ports) {
            LPort pc = graph.ports[p];
            pc.id = static_cast<int>(part.ports.size());
            pc.node = node_map[v];
            pc.in_edges.clear();
            pc.out_edges.clear();
            port_map[p] = pc.id;
            part.nodes.back().ports.push_back(pc.id);
            part.ports.push_back(std::move(pc));
        }
    }
    for (const LEdge& e : graph.edges) {
        if (!e.alive) continue;
        LGraph& part = parts[comp[graph.ports[e.source].node]];
        const int id = part.add_edge(port_map[e.source], port_map[e.target], e.origin, e.model_order);
        part.edges[id].reversed = e.reversed;
        part.edges[id].bends = e.bends;
    }
    for (LGraph& part : parts) {
        for (LNode& node : part.nodes) {
            if (node.origin_edge >= 0) node.origin_edge = -1;  // edge ids were renumbered
            if (node.ns_owner >= 0) {
                node.ns_owner = node_map[node.ns_owner];
                node.ns_port = port_map[node.ns_port];
            }
            if (node.external >= 0) part.externals[node.external].dummy = node.id;
        }
        if (!graph.layers.empty()) part.rebuild_layers();
    }
    return parts;
}

LGraph merge_components(std::vector<LGraph>&& parts) {
    LGraph out;
    if (parts.empty()) return out;
    out.name = parts.front().name;
    out.settings = parts.front().settings;
    out.externals = parts.front().externals;
    out.edge_origins = parts.front().edge_origins;
    out.placed = true;
    out.routed = true;
    out.crossings = 0;
    for (LGraph& part : parts) {
        const int node_offset = static_cast<int>(out.nodes.size());
        const int port_offset = static_cast<int>(out.ports.size());
        const int edge_offset = static_cast<int>(out.edges.size());
        for (LNode node : part.nodes) {
            node.id += node_offset;
            for (int& p : node.ports) p += port_offset;
            if (node.ns_owner >= 0) {
                node.ns_owner += node_offset;
                node.ns_port += port_offset;
            }
            if (node.origin_edge >= 0) node.origin_edge += edge_offset;
            if (node.external >= 0) out.externals[node.external].dummy = node.id;
            out.nodes.push_back(std::move(node));
        }
        for (LPort port : part.ports) {
            port.id += port_offset;
            port.node += node_offset;
            for (int& e : port.in_edges) e += edge_offset;
            for (int& e : port.out_edges) e += edge_offset;
            out.ports.push_back(std::move(port));
        }
        for (LEdge edge : part.edges) {
            edge.id += edge_offset;
            edge.source += port_offset;
            edge.target += port_offset;
            out.edges.push_back(std::move(edge));
        }
        if (out.layers.size() < part.layers.size()) out.layers.resize(part.layers.size());
        for (std::size_t i = 0; i < part.layers.size(); ++i) {
            for (int v : part.layers[i]) out.layers[i].push_back(v + node_offset);
        }
        out.placed = out.placed && part.placed;
        out.routed = out.routed && part.routed;
        if (part.crossings > 0) out.crossings += part.crossings;
    }
    for (auto& layer : out.layers) {
        for (int v : layer) out.nodes[v].layer = static_cast<int>(&layer - out.layers.data());
    }
    out.renumber_positions();
    return out;
}

bool is_acyclic(const LGraph& graph) {
    const int n = static_cast<int>(graph.nodes.size());
    std::vector<int> indeg(n, 0);
    for (const LEdge& e : graph.edges) {
        if (!e.alive || graph.is_self_loop(e.id)) continue;
        ++indeg[graph.target_node(e.id)];
    }
    std::vector<int> queue;
    for (int v = 0; v < n; ++v) {
        if (graph.nodes[v].alive && indeg[v] == 0) queue.push_back(v);
    }
    std::size_t seen = 0;
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        ++seen;
        for (int p : graph.nodes[v].ports) {
            for (int e : graph.ports[p].out_edges) {
                if (graph.is_self_loop(e)) continue;
                if (--indeg[graph.target_node(e)] == 0) queue.push_back(graph.target_node(e));
            }
        }
    }
    return seen == graph.alive_nodes();
}

long long dummy_demand(const LGraph& graph) {
    long long total = 0;
    for (const LEdge& e : graph.edges) {
        if (!e.alive || graph.is_self_loop(e.id)) continue;
        const int span = graph.nodes[graph.target_node(e.id)].layer - graph.nodes[graph.source_node(e.id)].layer;
        if (span > 1) total += span - 1;
    }
    return total;
}

}  // namespace layr::layered
