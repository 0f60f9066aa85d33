#include "layr/layered/processors.hpp"

#include <algorithm>

#include "layr/layered/layering.hpp"

namespace layr::layered {

namespace {

void insert_into_layer(LGraph& g, int node, int layer, std::size_t index) {
    auto& list = g.layers[layer];
    index = std::min(index, list.size());
    list.insert(list.begin() + static_cast<std::ptrdiff_t>(index), node);
    g.nodes[node].layer = layer;
    for (std::size_t i = 0; i < list.size(); ++i) g.nodes[list[i]].pos = static_cast<int>(i);
}

std::size_t index_in_layer(const LGraph& g, int node) {
    const auto& list = g.layers[g.nodes[node].layer];
    return static_cast<std::size_t>(std::find(list.begin(), list.end(), node) - list.begin());
}

// A dummy with one WEST input and one EAST output port, both at its origin.
int add_pass_through(LGraph& g, NodeKind kind) {
    const int d = g.add_node(kind, 0.0, 0.0);
    g.add_port(d, PortSide::West);
    g.add_port(d, PortSide::East);
    return d;
}

int in_port(const LGraph& g, int dummy) { return g.nodes[dummy].ports[0]; }
int out_port(const LGraph& g, int dummy) { return g.nodes[dummy].ports[1]; }

}  // namespace

void orient_external_edges(LGraph& graph) {
    for (ExternalPort& ext : graph.externals) {
        if (ext.dummy < 0 || !graph.nodes[ext.dummy].alive) continue;
        const LNode& d = graph.nodes[ext.dummy];
        for (int p : d.ports) {
            const std::vector<int> in = graph.ports[p].in_edges;
            const std::vector<int> out = graph.ports[p].out_edges;
            if (ext.side == PortSide::West) {
                for (int e : in) graph.reverse(e);
            } else {
                for (int e : out) graph.reverse(e);
            }
        }
    }
}

void remove_external_dummies(LGraph& graph) {
    for (ExternalPort& ext : graph.externals) {
        if (ext.dummy < 0 || !graph.nodes[ext.dummy].alive) continue;
        LNode& d = graph.nodes[ext.dummy];
        ext.anchor = graph.anchor(d.ports.front());
        ext.placed = true;
        if (d.layer >= 0 && d.layer < static_cast<int>(graph.layers.size())) {
            auto& list = graph.layers[d.layer];
            list.erase(std::remove(list.begin(), list.end(), d.id), list.end());
        }
        d.alive = false;
    }
}

void promote_layers(LGraph& graph) {
    std::vector<int> layer(graph.nodes.size(), -1);
    for (const LNode& v : graph.nodes) {
        if (v.alive) layer[v.id] = v.layer;
    }
    if (promote_nodes(graph, layer) == 0) return;
    for (LNode& v : graph.nodes) {
        if (v.alive) v.layer = layer[v.id];
    }
    graph.rebuild_layers();
}

void assign_port_sides(LGraph& graph) {
    for (const LNode& v : graph.nodes) {
        if (!v.alive || v.kind != NodeKind::Normal || v.constraints != PortConstraints::Free) continue;
        for (int p : v.ports) {
            LPort& port = graph.ports[p];
            if (port.fixed_position) continue;
            const std::size_t in = port.in_edges.size();
            const std::size_t out = port.out_edges.size();
            if (in > out) {
                port.side = PortSide::West;
            } else if (out > 0 || port.side == PortSide::Undefined) {
                port.side = PortSide::East;
            }
        }
    }
    // Ports whose side is still open on constrained nodes fall back the same way.
    for (LPort& port : graph.ports) {
        if (port.side != PortSide::Undefined) continue;
        port.side = port.in_edges.size() > port.out_edges.size() ? PortSide::West : PortSide::East;
    }
}

void split_long_edges(LGraph& graph) {
    const std::size_t count = graph.edges.size();
    for (std::size_t i = 0; i < count; ++i) {
        if (!graph.edges[i].alive) continue;
        const int e = static_cast<int>(i);
        const int from = graph.nodes[graph.source_node(e)].layer;
        const int to = graph.nodes[graph.target_node(e)].layer;
        if (to - from <= 1) continue;
        const int final_target = graph.edges[e].target;
        int current = e;
        for (int l = from + 1; l < to; ++l) {
            const int d = add_pass_through(graph, NodeKind::LongEdgeDummy);
            graph.nodes[d].origin_edge = e;
            insert_into_layer(graph, d, l, graph.layers[l].size());
            graph.set_target(current, in_port(graph, d));
            const LEdge& base = graph.edges[e];
            const int next = graph.add_edge(out_port(graph, d), final_target, base.origin, base.model_order);
            graph.edges[next].reversed = graph.edges[e].reversed;
            current = next;
        }
    }
}

void join_long_edges(LGraph& graph) {
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        LEdge& e = graph.edges[i];
        if (!e.alive) continue;
        if (graph.nodes[graph.source_node(e.id)].kind == NodeKind::LongEdgeDummy) continue;
        int d = graph.target_node(e.id);
        while (graph.nodes[d].kind == NodeKind::LongEdgeDummy && graph.nodes[d].alive) {
            graph.edges[i].bends.push_back(graph.anchor(in_port(graph, d)));
            const std::vector<int>& outs = graph.ports[out_port(graph, d)].out_edges;
            if (outs.empty()) break;
            const int next = outs.front();
            const std::vector<Point> more = graph.edges[next].bends;
            const int target = graph.edges[next].target;
            auto& bends = graph.edges[i].bends;
            bends.insert(bends.end(), more.begin(), more.end());
            graph.remove_edge(next);
            graph.set_target(static_cast<int>(i), target);
            graph.remove_node(d);
            d = graph.ports[target].node;
        }
    }
}

void restore_reversed_edges(LGraph& graph) {
    for (LEdge& e : graph.edges) {
        if (e.alive && e.reversed) graph.reverse(e.id);
    }
}

void split_north_south_ports(LGraph& graph) {
    const std::size_t count = graph.nodes.size();
    for (std::size_t i = 0; i < count; ++i) {
        const LNode& v = graph.nodes[i];
        if (!v.alive || v.kind != NodeKind::Normal) continue;
        const int owner = v.id;
        for (PortSide side : {PortSide::North, PortSide::South}) {
            // Incoming ports rightmost first, then outgoing ports leftmost
            // first; this order lets the vertical segments avoid each other.
            std::vector<int> incoming, outgoing;
            for (int p : graph.nodes[owner].ports) {
                const LPort& port = graph.ports[p];
                if (port.side != side) continue;
                std::size_t in = 0, out = 0;
                for (int e : port.in_edges) in += graph.is_self_loop(e) ? 0 : 1;
                for (int e : port.out_edges) out += graph.is_self_loop(e) ? 0 : 1;
                if (in + out == 0) continue;
                (in >= out ? incoming : outgoing).push_back(p);
            }
            std::reverse(incoming.begin(), incoming.end());
            std::vector<int> order = incoming;
            order.insert(order.end(), outgoing.begin(), outgoing.end());
            if (side == PortSide::South) std::reverse(order.begin(), order.end());

            std::vector<int> dummies;
            for (int p : order) {
                const int d = add_pass_through(graph, NodeKind::NorthSouthDummy);
                graph.nodes[d].ns_owner = owner;
                graph.nodes[d].ns_port = p;
                for (int e : std::vector<int>(graph.ports[p].in_edges)) {
                    if (!graph.is_self_loop(e)) graph.set_target(e, in_port(graph, d));
                }
                for (int e : std::vector<int>(graph.ports[p].out_edges)) {
                    if (!graph.is_self_loop(e)) graph.set_source(e, out_port(graph, d));
                }
                dummies.push_back(d);
            }
            const int layer = graph.nodes[owner].layer;
            std::size_t at = index_in_layer(graph, owner) + (side == PortSide::South ? 1 : 0);
            for (int d : dummies) insert_into_layer(graph, d, layer, at++);
        }
    }
}

void join_north_south_ports(LGraph& graph) {
    for (LNode& d : graph.nodes) {
        if (!d.alive || d.kind != NodeKind::NorthSouthDummy) continue;
        const Point port = graph.anchor(d.ns_port);
        const double y = graph.anchor(in_port(graph, d.id)).y;
        for (int e : std::vector<int>(graph.ports[in_port(graph, d.id)].in_edges)) {
            graph.edges[e].bends.push_back({port.x, y});
            graph.set_target(e, d.ns_port);
        }
        for (int e : std::vector<int>(graph.ports[out_port(graph, d.id)].out_edges)) {
            auto& bends = graph.edges[e].bends;
            bends.insert(bends.begin(), Point{port.x, y});
            graph.set_source(e, d.ns_port);
        }
        graph.remove_node(d.id);
    }
}

void place_ports(LGraph& graph) {
    const double spacing = graph.settings.port_port;
    for (LNode& v : graph.nodes) {
        if (!v.alive || v.kind != NodeKind::Normal || v.constraints == PortConstraints::FixedPos) continue;
        for (PortSide side : {PortSide::North, PortSide::South, PortSide::East, PortSide::West}) {
            std::vector<int> free;
            bool explicit_ports = false;
            for (int p : v.ports) {
                const LPort& port = graph.ports[p];
                if (port.side != side || port.fixed_position) continue;
                free.push_back(p);
                explicit_ports = explicit_ports || port.origin != nullptr;
            }
            if (free.empty()) continue;
            const bool vertical = side == PortSide::East || side == PortSide::West;
            double total = 0.0;
            for (int p : free) total += vertical ? graph.ports[p].height : graph.ports[p].width;
            double& length = vertical ? v.height : v.width;
            if (explicit_ports) {
                length = std::max(length, total + static_cast<double>(free.size() + 1) * spacing);
            }
            const double gap = (length - total) / static_cast<double>(free.size() + 1);
            double along = gap;
            for (int p : free) {
                LPort& port = graph.ports[p];
                switch (side) {
                    case PortSide::East: port.pos = {v.width, along}; break;
                    case PortSide::West: port.pos = {-port.width, along}; break;
                    case PortSide::North: port.pos = {along, -port.height}; break;
                    case PortSide::South: port.pos = {along, v.height}; break;
                    case PortSide::Undefined: break;
                }
                along += (vertical ? port.height : port.width) + gap;
            }
        }
        // A later width change moves EAST ports and SOUTH ports.
        for (int p : v.ports) {
            LPort& port = graph.ports[p];
            if (port.fixed_position) continue;
            if (port.side == PortSide::East) port.pos.x = v.width;
            if (port.side == PortSide::South) port.pos.y = v.height;
        }
    }
}

}  // namespace layr::layered
