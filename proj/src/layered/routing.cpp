#include "layr/layered/routing.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "layr/layered/placement.hpp"

namespace layr::layered {

namespace {

// Attachment height of an edge end after wrapping (see port_offset).
double source_y(const LGraph& g, int edge) {
    const int p = g.edges[edge].source;
    return g.nodes[g.ports[p].node].y + port_offset(g, p, PortSide::East);
}

double target_y(const LGraph& g, int edge) {
    const int p = g.edges[edge].target;
    return g.nodes[g.ports[p].node].y + port_offset(g, p, PortSide::West);
}

struct SlotGroup {
    int port = -1;
    double start = 0.0;
    std::vector<double> ends;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<int> edges;
};

bool strictly_inside(double y, const SlotGroup& g) { return y > g.lo + kGeomEps && y < g.hi - kGeomEps; }

// Crossings caused when `a` gets the slot left of `b`.
int crossings_if_left(const SlotGroup& a, const SlotGroup& b) {
    int c = strictly_inside(b.start, a) ? 1 : 0;
    for (double y : a.ends) c += strictly_inside(y, b) ? 1 : 0;
    return c;
}

}  // namespace

GapSlots assign_slots(const LGraph& graph, int left) {
    GapSlots result;
    result.edge_slot.assign(graph.edges.size(), -1);
    std::vector<SlotGroup> groups;
    std::map<int, int> group_of_port;
    for (int v : graph.layers[left]) {
        for (int p : graph.nodes[v].ports) {
            for (int e : graph.ports[p].out_edges) {
                if (graph.is_self_loop(e) || graph.nodes[graph.target_node(e)].layer != left + 1) continue;
                const double sy = source_y(graph, e);
                const double ty = target_y(graph, e);
                if (near(sy, ty)) continue;
                auto [it, fresh] = group_of_port.try_emplace(p, static_cast<int>(groups.size()));
                if (fresh) {
                    SlotGroup g;
                    g.port = p;
                    g.start = g.lo = g.hi = sy;
                    groups.push_back(g);
                }
                SlotGroup& g = groups[it->second];
                g.ends.push_back(ty);
                g.lo = std::min(g.lo, ty);
                g.hi = std::max(g.hi, ty);
                g.edges.push_back(e);
            }
        }
    }
    const int n = static_cast<int>(groups.size());
    if (n == 0) return result;

    // Preference graph between overlapping groups.
    std::vector<std::vector<int>> succ(n), pred(n);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const bool overlap = groups[a].lo <= groups[b].hi + kGeomEps && groups[b].lo <= groups[a].hi + kGeomEps;
            if (!overlap) continue;
            const int ab = crossings_if_left(groups[a], groups[b]);
            const int ba = crossings_if_left(groups[b], groups[a]);
            if (ba < ab) {
                succ[b].push_back(a);
                pred[a].push_back(b);
            } else {
                succ[a].push_back(b);
                pred[b].push_back(a);
            }
        }
    }

    // Greedy linear ordering (sinks last, sources first, else the largest
    // out-minus-in degree) removes cycles; then slots are longest paths.
    std::vector<int> outdeg(n), indeg(n), rank(n, -1);
    for (int v = 0; v < n; ++v) {
        outdeg[v] = static_cast<int>(succ[v].size());
        indeg[v] = static_cast<int>(pred[v].size());
    }
    std::vector<bool> removed(n, false);
    std::vector<int> front, back;
    int remaining = n;
    auto remove = [&](int v) {
        removed[v] = true;
        --remaining;
        for (int w : succ[v]) --indeg[w];
        for (int u : pred[v]) --outdeg[u];
    };
    while (remaining > 0) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int v = 0; v < n; ++v) {
                if (!removed[v] && outdeg[v] == 0) {
                    back.push_back(v);
                    remove(v);
                    progress = true;
                }
            }
            for (int v = 0; v < n; ++v) {
                if (!removed[v] && indeg[v] == 0) {
                    front.push_back(v);
                    remove(v);
                    progress = true;
                }
            }
        }
        if (remaining == 0) break;
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (!removed[v] && (best < 0 || outdeg[v] - indeg[v] > outdeg[best] - indeg[best])) best = v;
        }
        front.push_back(best);
        remove(best);
    }
    int r = 0;
    for (int v : front) rank[v] = r++;
    for (auto it = back.rbegin(); it != back.rend(); ++it) rank[*it] = r++;

    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[rank[v]] = v;
    std::vector<int> slot(n, 0);
    for (int v : order) {
        for (int u : pred[v]) {
            if (rank[u] < rank[v]) slot[v] = std::max(slot[v], slot[u] + 1);
        }
        for (int u : succ[v]) {
            if (rank[u] < rank[v]) slot[v] = std::max(slot[v], slot[u] + 1);
        }
    }
    for (int v = 0; v < n; ++v) {
        result.slots = std::max(result.slots, slot[v] + 1);
        for (int e : groups[v].edges) result.edge_slot[e] = slot[v];
    }
    return result;
}

namespace {

Point side_normal(PortSide side) {
    switch (side) {
        case PortSide::North: return {0.0, -1.0};
        case PortSide::South: return {0.0, 1.0};
        case PortSide::West: return {-1.0, 0.0};
        case PortSide::East:
        case PortSide::Undefined: break;
    }
    return {1.0, 0.0};
}

void route_self_loop(LGraph& g, int e) {
    const double d = g.settings.edge_node / 2.0;
    const LPort& sp = g.ports[g.edges[e].source];
    const LPort& tp = g.ports[g.edges[e].target];
    const LNode& v = g.nodes[sp.node];
    const Point s = g.anchor(sp.id);
    const Point t = g.anchor(tp.id);
    const Point so = s + side_normal(sp.side) * (d + (sp.side == PortSide::East || sp.side == PortSide::West ? sp.width / 2 : sp.height / 2));
    const Point to = t + side_normal(tp.side) * (d + (tp.side == PortSide::East || tp.side == PortSide::West ? tp.width / 2 : tp.height / 2));
    std::vector<Point> bends{so};
    if (sp.side != tp.side) {
        const bool via_top = sp.side == PortSide::North || tp.side == PortSide::North;
        const double line = via_top ? v.y - d - std::max(sp.height, tp.height) : v.y + v.height + d + std::max(sp.height, tp.height);
        if (!near(so.y, line)) bends.push_back({so.x, line});
        if (!near(to.y, line)) bends.push_back({to.x, line});
    }
    bends.push_back(to);
    g.edges[e].bends = std::move(bends);
}

}  // namespace

void route_edges(LGraph& graph) {
    const LayeredSettings& s = graph.settings;
    const bool orthogonal = s.edge_routing == EdgeRouting::Orthogonal;
    const int nl = static_cast<int>(graph.layers.size());
    graph.layer_width.assign(nl, 0.0);
    for (int l = 0; l < nl; ++l) {
        for (int v : graph.layers[l]) graph.layer_width[l] = std::max(graph.layer_width[l], graph.nodes[v].width);
    }
    std::vector<GapSlots> gaps;
    std::vector<double> gap_width;
    for (int l = 0; l + 1 < nl; ++l) {
        if (orthogonal) {
            gaps.push_back(assign_slots(graph, l));
            gap_width.push_back(s.node_node + (gaps.back().slots + 1) * s.edge_edge);
        } else {
            gaps.emplace_back();
            gap_width.push_back(s.node_node);
        }
    }
    graph.layer_x.assign(nl, 0.0);
    for (int l = 1; l < nl; ++l) graph.layer_x[l] = graph.layer_x[l - 1] + graph.layer_width[l - 1] + gap_width[l - 1];
    for (int l = 0; l < nl; ++l) {
        for (int v : graph.layers[l]) {
            graph.nodes[v].x = graph.layer_x[l] + (graph.layer_width[l] - graph.nodes[v].width) / 2.0;
        }
    }

    const double d = s.edge_node / 2.0;
    for (LEdge& e : graph.edges) {
        if (!e.alive) continue;
        e.bends.clear();
        if (graph.is_self_loop(e.id)) {
            route_self_loop(graph, e.id);
            continue;
        }
        if (!orthogonal) continue;
        const int src = graph.source_node(e.id);
        const int left = graph.nodes[src].layer;
        if (left < 0 || left + 1 >= nl || graph.nodes[graph.target_node(e.id)].layer != left + 1) continue;

        const LPort& sp = graph.ports[e.source];
        const LPort& tp = graph.ports[e.target];
        const Point sa = graph.anchor(sp.id);
        const Point ta = graph.anchor(tp.id);
        const double sy = source_y(graph, e.id);
        const double ty = target_y(graph, e.id);
        std::vector<Point> bends;
        if (sp.side != PortSide::East) {
            const double x = sa.x - d - sp.width / 2.0;
            bends.push_back({x, sa.y});
            bends.push_back({x, sy});
        }
        const int slot = gaps[left].edge_slot[e.id];
        if (slot >= 0) {
            const double x = graph.layer_x[left] + graph.layer_width[left] + s.node_node / 2.0 + (slot + 1) * s.edge_edge;
            bends.push_back({x, sy});
            bends.push_back({x, ty});
        }
        if (tp.side != PortSide::West) {
            const double x = ta.x + d + tp.width / 2.0;
            bends.push_back({x, ty});
            bends.push_back({x, ta.y});
        }
        e.bends = std::move(bends);
    }
    graph.routed = true;
}

}  // namespace layr::layered
