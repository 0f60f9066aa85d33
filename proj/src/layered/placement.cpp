#include "layr/layered/placement.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace layr::layered {

double node_spacing(const LGraph& graph, int upper, int lower) {
    const NodeKind a = graph.nodes[upper].kind;
    const NodeKind b = graph.nodes[lower].kind;
    const LayeredSettings& s = graph.settings;
    if (a == NodeKind::ExternalPortDummy && b == NodeKind::ExternalPortDummy) return s.port_port;
    if (a == NodeKind::Normal && b == NodeKind::Normal) return s.node_node;
    if (a != NodeKind::Normal && b != NodeKind::Normal) return s.edge_edge;
    return s.edge_node;
}

double port_offset(const LGraph& graph, int port, PortSide facing) {
    const LPort& p = graph.ports[port];
    if (p.side == facing) return p.anchor().y;
    return graph.nodes[p.node].height + graph.settings.edge_node / 2.0;
}

namespace {

struct Neighbor {
    int node;
    int edge;
    double own_offset;    // offset at the aligned node, view frame
    double other_offset;  // offset at the neighbour, view frame
};

class BrandesKoepf {
public:
    explicit BrandesKoepf(const LGraph& graph) : g_(graph), marked_(graph.edges.size(), false) {
        mark_type1_conflicts();
    }

    // y coordinate of every node for one of the four directions.
    std::vector<double> solve(bool up, bool top) const {
        const int nl = static_cast<int>(g_.layers.size());
        std::vector<std::vector<int>> view;
        for (int i = 0; i < nl; ++i) {
            std::vector<int> layer = g_.layers[up ? i : nl - 1 - i];
            if (!top) std::reverse(layer.begin(), layer.end());
            view.push_back(std::move(layer));
        }
        const std::size_t n = g_.nodes.size();
        std::vector<int> pos(n, -1);
        for (const auto& layer : view) {
            for (std::size_t i = 0; i < layer.size(); ++i) pos[layer[i]] = static_cast<int>(i);
        }
        auto height = [&](int v) { return g_.nodes[v].height; };
        // View offsets are mirrored for bottom-up compaction.
        auto view_offset = [&](int v, double offset) { return top ? offset : height(v) - offset; };

        std::vector<int> root(n), align(n);
        std::iota(root.begin(), root.end(), 0);
        std::iota(align.begin(), align.end(), 0);
        std::vector<double> inner(n, 0.0);

        for (std::size_t i = 1; i < view.size(); ++i) {
            int r = -1;
            for (int v : view[i]) {
                std::vector<Neighbor> nbrs = neighbors(v, up, view_offset);
                if (nbrs.empty()) continue;
                std::stable_sort(nbrs.begin(), nbrs.end(), [&](const Neighbor& a, const Neighbor& b) {
                    if (pos[a.node] != pos[b.node]) return pos[a.node] < pos[b.node];
                    return a.other_offset < b.other_offset;
                });
                const std::size_t d = nbrs.size();
                for (std::size_t m : {(d - 1) / 2, d / 2}) {
                    if (align[v] != v) break;
                    const Neighbor& u = nbrs[m];
                    if (marked_[u.edge] || r >= pos[u.node]) continue;
                    align[u.node] = v;
                    root[v] = root[u.node];
                    align[v] = root[v];
                    inner[v] = inner[u.node] + u.other_offset - u.own_offset;
                    r = pos[u.node];
                }
            }
        }

        // Block graph with separation constraints between consecutive nodes.
        std::vector<std::vector<std::pair<int, double>>> out(n), in(n);
        for (const auto& layer : view) {
            for (std::size_t i = 1; i < layer.size(); ++i) {
                const int a = layer[i - 1];
                const int b = layer[i];
                const double sep = top ? node_spacing(g_, a, b) : node_spacing(g_, b, a);
                const double w = inner[a] + height(a) + sep - inner[b];
                const int ra = root[a];
                const int rb = root[b];
                auto it = std::find_if(out[ra].begin(), out[ra].end(), [&](const auto& e) { return e.first == rb; });
                if (it == out[ra].end()) {
                    out[ra].push_back({rb, w});
                    in[rb].push_back({ra, w});
                } else if (w > it->second) {
                    it->second = w;
                    auto jt = std::find_if(in[rb].begin(), in[rb].end(), [&](const auto& e) { return e.first == ra; });
                    jt->second = w;
                }
            }
        }
        std::vector<int> roots;
        for (const auto& layer : view) {
            for (int v : layer) {
                if (root[v] == v) roots.push_back(v);
            }
        }
        std::vector<int> indeg(n, 0);
        for (int r : roots) indeg[r] = static_cast<int>(in[r].size());
        std::deque<int> ready;
        for (int r : roots) {
            if (indeg[r] == 0) ready.push_back(r);
        }
        std::vector<int> topo;
        while (!ready.empty()) {
            const int r = ready.front();
            ready.pop_front();
            topo.push_back(r);
            for (const auto& [s, w] : out[r]) {
                if (--indeg[s] == 0) ready.push_back(s);
            }
        }
        std::vector<double> coord(n, 0.0);
        for (int r : topo) {
            double y = 0.0;
            for (const auto& [p, w] : in[r]) y = std::max(y, coord[p] + w);
            coord[r] = y;
        }
        for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
            double limit = std::numeric_limits<double>::infinity();
            for (const auto& [s, w] : out[*it]) limit = std::min(limit, coord[s] - w);
            if (std::isfinite(limit)) coord[*it] = std::max(coord[*it], limit);
        }

        std::vector<double> y(n, 0.0);
        for (const auto& layer : view) {
            for (int v : layer) {
                const double vy = coord[root[v]] + inner[v];
                y[v] = top ? vy : -vy - height(v);
            }
        }
        return y;
    }

private:
    template <class Offset>
    std::vector<Neighbor> neighbors(int v, bool up, Offset view_offset) const {
        std::vector<Neighbor> result;
        const int layer = g_.nodes[v].layer;
        for (int p : g_.nodes[v].ports) {
            const LPort& port = g_.ports[p];
            for (int e : up ? port.in_edges : port.out_edges) {
                const int other_port = up ? g_.edges[e].source : g_.edges[e].target;
                const int other = g_.ports[other_port].node;
                if (g_.nodes[other].layer != layer + (up ? -1 : 1)) continue;
                const double own = port_offset(g_, p, up ? PortSide::West : PortSide::East);
                const double theirs = port_offset(g_, other_port, up ? PortSide::East : PortSide::West);
                result.push_back({other, e, view_offset(v, own), view_offset(other, theirs)});
            }
        }
        return result;
    }

    bool is_inner_segment(int e) const {
        return g_.nodes[g_.source_node(e)].kind == NodeKind::LongEdgeDummy &&
               g_.nodes[g_.target_node(e)].kind == NodeKind::LongEdgeDummy;
    }

    void mark_type1_conflicts() {
        for (std::size_t i = 0; i + 1 < g_.layers.size(); ++i) {
            const auto& upper = g_.layers[i];
            const auto& lower = g_.layers[i + 1];
            int k0 = 0;
            std::size_t l = 0;
            for (std::size_t l1 = 0; l1 < lower.size(); ++l1) {
                int inner_upper = -1;
                for (int e : g_.in_edges(lower[l1])) {
                    if (is_inner_segment(e) && g_.nodes[g_.source_node(e)].layer == static_cast<int>(i)) {
                        inner_upper = g_.source_node(e);
                    }
                }
                if (l1 + 1 != lower.size() && inner_upper < 0) continue;
                const int k1 = inner_upper >= 0 ? g_.nodes[inner_upper].pos : static_cast<int>(upper.size()) - 1;
                for (; l <= l1; ++l) {
                    for (int e : g_.in_edges(lower[l])) {
                        const int u = g_.source_node(e);
                        if (g_.nodes[u].layer != static_cast<int>(i) || is_inner_segment(e)) continue;
                        const int k = g_.nodes[u].pos;
                        if (k < k0 || k > k1) marked_[e] = true;
                    }
                }
                k0 = k1;
            }
        }
    }

    const LGraph& g_;
    std::vector<bool> marked_;
};

}  // namespace

void place_brandes_koepf(LGraph& graph, std::array<std::vector<double>, 4>* candidates) {
    graph.renumber_positions();
    BrandesKoepf bk(graph);
    std::array<std::vector<double>, 4> ys;
    const std::array<bool, 4> tops{true, true, false, false};
    const std::array<bool, 4> ups{true, false, true, false};
    for (int k = 0; k < 4; ++k) ys[k] = bk.solve(ups[k], tops[k]);

    std::vector<int> alive;
    for (const LNode& v : graph.nodes) {
        if (v.alive && v.layer >= 0) alive.push_back(v.id);
    }
    if (alive.empty()) return;
    std::array<double, 4> lo{}, hi{};
    int smallest = 0;
    for (int k = 0; k < 4; ++k) {
        lo[k] = std::numeric_limits<double>::infinity();
        hi[k] = -std::numeric_limits<double>::infinity();
        for (int v : alive) {
            lo[k] = std::min(lo[k], ys[k][v]);
            hi[k] = std::max(hi[k], ys[k][v] + graph.nodes[v].height);
        }
        if (hi[k] - lo[k] < hi[smallest] - lo[smallest]) smallest = k;
    }
    for (int k = 0; k < 4; ++k) {
        const double shift = tops[k] ? lo[smallest] - lo[k] : hi[smallest] - hi[k];
        for (int v : alive) ys[k][v] += shift;
    }
    for (int v : alive) {
        std::array<double, 4> c{ys[0][v], ys[1][v], ys[2][v], ys[3][v]};
        std::sort(c.begin(), c.end());
        graph.nodes[v].y = (c[1] + c[2]) / 2.0;
    }
    if (candidates) *candidates = std::move(ys);
}

void place_linear_segments(LGraph& graph) {
    graph.renumber_positions();
    const std::size_t n = graph.nodes.size();
    std::vector<int> segment(n, -1);
    std::vector<std::vector<int>> segments;
    for (const auto& layer : graph.layers) {
        for (int v : layer) {
            if (segment[v] >= 0) continue;
            segment[v] = static_cast<int>(segments.size());
            segments.push_back({v});
            if (graph.nodes[v].kind != NodeKind::LongEdgeDummy) continue;
            int cur = v;
            for (;;) {
                const std::vector<int> outs = graph.out_edges(cur);
                if (outs.size() != 1) break;
                const int next = graph.target_node(outs.front());
                if (graph.nodes[next].kind != NodeKind::LongEdgeDummy || segment[next] >= 0) break;
                segment[next] = segment[v];
                segments.back().push_back(next);
                cur = next;
            }
        }
    }

    // Order segments; split a segment whenever the ordering has a cycle.
    std::vector<int> topo;
    for (;;) {
        const std::size_t ns = segments.size();
        std::vector<std::vector<int>> succ(ns);
        std::vector<int> indeg(ns, 0);
        for (const auto& layer : graph.layers) {
            for (std::size_t i = 1; i < layer.size(); ++i) {
                const int a = segment[layer[i - 1]];
                const int b = segment[layer[i]];
                if (a == b) continue;
                succ[a].push_back(b);
                ++indeg[b];
            }
        }
        std::deque<int> ready;
        for (std::size_t s = 0; s < ns; ++s) {
            if (indeg[s] == 0) ready.push_back(static_cast<int>(s));
        }
        topo.clear();
        while (!ready.empty()) {
            const int s = ready.front();
            ready.pop_front();
            topo.push_back(s);
            for (int t : succ[s]) {
                if (--indeg[t] == 0) ready.push_back(t);
            }
        }
        if (topo.size() == ns) break;
        int victim = -1;
        for (std::size_t s = 0; s < ns; ++s) {
            if (indeg[s] > 0 && segments[s].size() > 1) {
                victim = static_cast<int>(s);
                break;
            }
        }
        if (victim < 0) break;  // cannot happen: single-node segments are ordered by position
        std::vector<int>& seg = segments[victim];
        const std::size_t half = seg.size() / 2;
        std::vector<int> tail(seg.begin() + static_cast<std::ptrdiff_t>(half), seg.end());
        seg.resize(half);
        for (int v : tail) segment[v] = static_cast<int>(segments.size());
        segments.push_back(std::move(tail));
    }

    auto above = [&](int v) { return graph.nodes[v].pos > 0 ? graph.layers[graph.nodes[v].layer][graph.nodes[v].pos - 1] : -1; };
    auto below = [&](int v) {
        const auto& layer = graph.layers[graph.nodes[v].layer];
        return graph.nodes[v].pos + 1 < static_cast<int>(layer.size()) ? layer[graph.nodes[v].pos + 1] : -1;
    };
    auto lower_bound = [&](int s) {
        double y = -std::numeric_limits<double>::infinity();
        for (int v : segments[s]) {
            const int a = above(v);
            if (a >= 0 && segment[a] != s) y = std::max(y, graph.nodes[a].y + graph.nodes[a].height + node_spacing(graph, a, v));
        }
        return y;
    };
    auto upper_bound = [&](int s) {
        double y = std::numeric_limits<double>::infinity();
        for (int v : segments[s]) {
            const int b = below(v);
            if (b >= 0 && segment[b] != s) y = std::min(y, graph.nodes[b].y - node_spacing(graph, v, b) - graph.nodes[v].height);
        }
        return y;
    };
    auto set_segment = [&](int s, double y) {
        for (int v : segments[s]) graph.nodes[v].y = y;
    };

    for (int s : topo) set_segment(s, std::max(0.0, lower_bound(s)));

    for (int round = 0; round < 50; ++round) {
        double moved = 0.0;
        for (int s : topo) {
            double pull = 0.0;
            int count = 0;
            for (int v : segments[s]) {
                for (int p : graph.nodes[v].ports) {
                    const LPort& port = graph.ports[p];
                    for (int e : port.in_edges) {
                        const int other = graph.edges[e].source;
                        const int u = graph.ports[other].node;
                        if (segment[u] == s || graph.is_self_loop(e)) continue;
                        pull += graph.nodes[u].y + port_offset(graph, other, PortSide::East) -
                                (graph.nodes[v].y + port_offset(graph, p, PortSide::West));
                        ++count;
                    }
                    for (int e : port.out_edges) {
                        const int other = graph.edges[e].target;
                        const int u = graph.ports[other].node;
                        if (segment[u] == s || graph.is_self_loop(e)) continue;
                        pull += graph.nodes[u].y + port_offset(graph, other, PortSide::West) -
                                (graph.nodes[v].y + port_offset(graph, p, PortSide::East));
                        ++count;
                    }
                }
            }
            if (count == 0) continue;
            const double current = graph.nodes[segments[s].front()].y;
            double target = current + pull / count;
            target = std::min(target, upper_bound(s));
            target = std::max(target, lower_bound(s));
            if (std::abs(target - current) > 1e-9) {
                moved += std::abs(target - current);
                set_segment(s, target);
            }
        }
        if (moved < 1e-2) break;
    }
}

void place_simple(LGraph& graph) {
    for (const auto& layer : graph.layers) {
        double y = 0.0;
        for (std::size_t i = 0; i < layer.size(); ++i) {
            if (i > 0) y += node_spacing(graph, layer[i - 1], layer[i]);
            graph.nodes[layer[i]].y = y;
            y += graph.nodes[layer[i]].height;
        }
    }
}

void place_nodes(LGraph& graph) {
    switch (graph.settings.node_placement) {
        case NodePlacementStrategy::BrandesKoepf: place_brandes_koepf(graph); break;
        case NodePlacementStrategy::LinearSegments: place_linear_segments(graph); break;
        case NodePlacementStrategy::Simple: place_simple(graph); break;
    }
    double lo = std::numeric_limits<double>::infinity();
    for (const LNode& v : graph.nodes) {
        if (v.alive && v.layer >= 0) lo = std::min(lo, v.y);
    }
    if (std::isfinite(lo)) {
        for (LNode& v : graph.nodes) {
            if (v.alive) v.y -= lo;
        }
    }
    graph.placed = true;
}

}  // namespace layr::layered
