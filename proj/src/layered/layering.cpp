#include "layr/layered/layering.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "layr/errors.hpp"

namespace layr::layered {

namespace {

int order_key(const LNode& n) { return n.model_order >= 0 ? n.model_order : 1'000'000 + n.id; }

bool is_core(const LNode& n) { return n.alive && n.kind != NodeKind::ExternalPortDummy; }

// Node-level view of the edges between core nodes.
struct CoreGraph {
    std::vector<int> nodes;  // by model order
    std::vector<std::vector<int>> succ, pred;  // with multiplicity
};

CoreGraph core_graph(const LGraph& g) {
    CoreGraph c;
    const std::size_t n = g.nodes.size();
    c.succ.resize(n);
    c.pred.resize(n);
    for (const LNode& v : g.nodes) {
        if (is_core(v)) c.nodes.push_back(v.id);
    }
    std::stable_sort(c.nodes.begin(), c.nodes.end(),
                     [&](int a, int b) { return order_key(g.nodes[a]) < order_key(g.nodes[b]); });
    for (const LEdge& e : g.edges) {
        if (!e.alive || g.is_self_loop(e.id)) continue;
        const int u = g.source_node(e.id);
        const int v = g.target_node(e.id);
        if (!is_core(g.nodes[u]) || !is_core(g.nodes[v])) continue;
        c.succ[u].push_back(v);
        c.pred[v].push_back(u);
    }
    return c;
}

// Kahn's algorithm in model order; throws on cycles.
std::vector<int> topological_order(const LGraph& g, const CoreGraph& c) {
    std::vector<int> indeg(g.nodes.size(), 0);
    for (int v : c.nodes) indeg[v] = static_cast<int>(c.pred[v].size());
    std::deque<int> ready;
    for (int v : c.nodes) {
        if (indeg[v] == 0) ready.push_back(v);
    }
    std::vector<int> order;
    while (!ready.empty()) {
        const int v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (int w : c.succ[v]) {
            if (--indeg[w] == 0) ready.push_back(w);
        }
    }
    if (order.size() != c.nodes.size()) throw LayoutError("layering requires an acyclic graph");
    return order;
}

std::vector<int> longest_path(const LGraph& g, const CoreGraph& c) {
    std::vector<int> layer(g.nodes.size(), -1);
    for (int v : topological_order(g, c)) {
        int l = 0;
        for (int u : c.pred[v]) l = std::max(l, layer[u] + 1);
        layer[v] = l;
    }
    return layer;
}

struct AggEdge {
    int u = 0;
    int v = 0;
    long long weight = 0;
};

// Network simplex on one connected component, local indices, edges sorted
// by model order.
class Simplex {
public:
    Simplex(int n, std::vector<AggEdge> edges, std::vector<long long> rank)
        : n_(n), edges_(std::move(edges)), rank_(std::move(rank)), incident_(n) {
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
            incident_[edges_[e].u].push_back(e);
            incident_[edges_[e].v].push_back(e);
        }
    }

    long long run() {
        if (n_ <= 1) return 0;
        feasible_tree();
        init_tree();
        const long long limit = 4LL * n_ * n_;
        long long pivots = 0;
        for (;;) {
            const int leave = leave_edge();
            if (leave < 0) break;
            if (++pivots > limit) throw LayoutError("network simplex did not converge");
            const int enter = enter_edge(leave);
            tree_edge_[leave] = false;
            tree_edge_[enter] = true;
            init_tree();
            update_ranks();
        }
        const long long lo = *std::min_element(rank_.begin(), rank_.end());
        for (long long& r : rank_) r -= lo;
        return pivots;
    }

    const std::vector<long long>& ranks() const { return rank_; }

private:
    long long slack(int e) const { return rank_[edges_[e].v] - rank_[edges_[e].u] - 1; }
    int other(int e, int x) const { return edges_[e].u == x ? edges_[e].v : edges_[e].u; }

    void feasible_tree() {
        tree_edge_.assign(edges_.size(), false);
        std::vector<bool> in_tree(n_, false);
        std::vector<int> members{0};
        in_tree[0] = true;
        for (;;) {
            for (std::size_t i = 0; i < members.size(); ++i) {
                const int x = members[i];
                for (int e : incident_[x]) {
                    const int y = other(e, x);
                    if (!in_tree[y] && slack(e) == 0) {
                        in_tree[y] = true;
                        tree_edge_[e] = true;
                        members.push_back(y);
                    }
                }
            }
            if (static_cast<int>(members.size()) == n_) return;
            int best = -1;
            for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
                if (in_tree[edges_[e].u] == in_tree[edges_[e].v]) continue;
                if (best < 0 || slack(e) < slack(best)) best = e;
            }
            long long delta = slack(best);
            if (in_tree[edges_[best].v]) delta = -delta;
            for (int x : members) rank_[x] += delta;
        }
    }

    // Parent pointers, postorder numbers and cut values for the current tree.
    void init_tree() {
        std::vector<std::vector<int>> adj(n_);
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
            if (!tree_edge_[e]) continue;
            adj[edges_[e].u].push_back(e);
            adj[edges_[e].v].push_back(e);
        }
        parent_.assign(n_, -1);
        parent_edge_.assign(n_, -1);
        low_.assign(n_, 0);
        lim_.assign(n_, 0);
        preorder_.clear();
        std::vector<int> postorder;
        struct Frame {
            int node;
            std::size_t next;
        };
        std::vector<Frame> stack{{0, 0}};
        std::vector<bool> seen(n_, false);
        seen[0] = true;
        preorder_.push_back(0);
        int counter = 1;
        std::vector<int> first(n_, 0);
        first[0] = counter;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next == adj[f.node].size()) {
                low_[f.node] = first[f.node];
                lim_[f.node] = counter++;
                postorder.push_back(f.node);
                stack.pop_back();
                continue;
            }
            const int e = adj[f.node][f.next++];
            const int y = other(e, f.node);
            if (seen[y]) continue;
            seen[y] = true;
            parent_[y] = f.node;
            parent_edge_[y] = e;
            first[y] = counter;
            preorder_.push_back(y);
            stack.push_back({y, 0});
        }
        cut_.assign(n_, 0);
        for (int x : postorder) {
            if (x != 0) cut_[x] = cut_value(x);
        }
    }

    long long cut_value(int child) const {
        const int par = parent_[child];
        const int pe = parent_edge_[child];
        const bool child_is_tail = edges_[pe].u == child;
        long long value = edges_[pe].weight;
        for (int e : incident_[child]) {
            const bool out = edges_[e].u == child;
            const int o = out ? edges_[e].v : edges_[e].u;
            if (o == par) continue;
            const bool points_to_head = out == child_is_tail;
            value += points_to_head ? edges_[e].weight : -edges_[e].weight;
            if (tree_edge_[e]) value += points_to_head ? -cut_[o] : cut_[o];
        }
        return value;
    }

    int leave_edge() const {
        int best = -1;
        for (int x = 0; x < n_; ++x) {
            if (parent_edge_[x] >= 0 && cut_[x] < 0 && (best < 0 || parent_edge_[x] < best)) best = parent_edge_[x];
        }
        return best;
    }

    bool descends(int x, int root) const { return low_[root] <= lim_[x] && lim_[x] <= lim_[root]; }

    int enter_edge(int leave) const {
        int tail = edges_[leave].u;
        bool flip = false;
        if (lim_[edges_[leave].u] > lim_[edges_[leave].v]) {
            tail = edges_[leave].v;
            flip = true;
        }
        int best = -1;
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
            if (flip != descends(edges_[e].u, tail) || flip == descends(edges_[e].v, tail)) continue;
            if (best < 0 || slack(e) < slack(best)) best = e;
        }
        if (best < 0) throw LayoutError("network simplex found no entering edge");
        return best;
    }

    void update_ranks() {
        for (std::size_t i = 1; i < preorder_.size(); ++i) {
            const int x = preorder_[i];
            const int e = parent_edge_[x];
            rank_[x] = edges_[e].u == x ? rank_[parent_[x]] - 1 : rank_[parent_[x]] + 1;
        }
    }

    int n_;
    std::vector<AggEdge> edges_;
    std::vector<long long> rank_;
    std::vector<std::vector<int>> incident_;
    std::vector<bool> tree_edge_;
    std::vector<int> parent_, parent_edge_, low_, lim_, preorder_;
    std::vector<long long> cut_;
};

using Bits = std::vector<std::uint64_t>;

bool test_bit(const Bits& b, int i) { return (b[i / 64] >> (i % 64)) & 1U; }
void set_bit(Bits& b, int i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

}  // namespace

std::vector<int> longest_path_layering(const LGraph& graph) {
    return longest_path(graph, core_graph(graph));
}

std::vector<int> network_simplex_layering(const LGraph& graph, NetworkSimplexStats* stats) {
    const CoreGraph c = core_graph(graph);
    const std::vector<int> initial = longest_path(graph, c);

    // Aggregate parallel edges; remember the first model order per pair.
    struct Agg {
        long long weight = 0;
        int order = std::numeric_limits<int>::max();
    };
    std::map<std::pair<int, int>, Agg> agg;
    for (const LEdge& e : graph.edges) {
        if (!e.alive || graph.is_self_loop(e.id)) continue;
        const int u = graph.source_node(e.id);
        const int v = graph.target_node(e.id);
        if (!is_core(graph.nodes[u]) || !is_core(graph.nodes[v])) continue;
        Agg& a = agg[{u, v}];
        a.weight += 1;
        a.order = std::min(a.order, e.model_order >= 0 ? e.model_order : 1'000'000 + e.id);
    }

    // Connected components by union-find.
    std::vector<int> uf(graph.nodes.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (const auto& [key, a] : agg) uf[find(key.first)] = find(key.second);

    std::vector<int> layer(graph.nodes.size(), -1);
    std::vector<bool> done(graph.nodes.size(), false);
    long long pivots = 0;
    for (int seed : c.nodes) {
        if (done[find(seed)]) continue;
        const int comp = find(seed);
        done[comp] = true;
        std::vector<int> members;
        std::vector<int> local(graph.nodes.size(), -1);
        for (int v : c.nodes) {
            if (find(v) == comp) {
                local[v] = static_cast<int>(members.size());
                members.push_back(v);
            }
        }
        std::vector<std::pair<int, AggEdge>> sorted;
        for (const auto& [key, a] : agg) {
            if (find(key.first) == comp) sorted.push_back({a.order, {local[key.first], local[key.second], a.weight}});
        }
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<AggEdge> edges;
        for (auto& s : sorted) edges.push_back(s.second);
        std::vector<long long> rank;
        for (int v : members) rank.push_back(initial[v]);
        Simplex simplex(static_cast<int>(members.size()), std::move(edges), std::move(rank));
        pivots += simplex.run();
        for (std::size_t i = 0; i < members.size(); ++i) layer[members[i]] = static_cast<int>(simplex.ranks()[i]);
    }
    if (stats) stats->pivots = pivots;
    return layer;
}

std::vector<int> coffman_graham_layering(const LGraph& graph, int width) {
    if (width < 1) throw LayoutError("Coffman-Graham width must be at least 1, got " + std::to_string(width));
    const CoreGraph c = core_graph(graph);
    const std::vector<int> topo = topological_order(graph, c);
    const int n = static_cast<int>(graph.nodes.size());
    const std::size_t words = (graph.nodes.size() + 63) / 64;

    // Reachability, then the transitive reduction's predecessor lists.
    std::vector<Bits> reach(n, Bits(words, 0));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        for (int w : c.succ[*it]) {
            set_bit(reach[*it], w);
            for (std::size_t k = 0; k < words; ++k) reach[*it][k] |= reach[w][k];
        }
    }
    std::vector<std::vector<int>> reduced_pred(n);
    for (int u : c.nodes) {
        std::vector<int> succ = c.succ[u];
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        for (int v : succ) {
            bool redundant = false;
            for (int w : succ) {
                if (w != v && test_bit(reach[w], v)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant) reduced_pred[v].push_back(u);
        }
    }

    // Lexicographic labelling.
    std::vector<int> label(n, 0);
    for (int next = 1; next <= static_cast<int>(c.nodes.size()); ++next) {
        int best = -1;
        std::vector<int> best_key;
        for (int v : c.nodes) {
            if (label[v] != 0) continue;
            std::vector<int> key;
            bool ready = true;
            for (int u : reduced_pred[v]) {
                if (label[u] == 0) {
                    ready = false;
                    break;
                }
                key.push_back(label[u]);
            }
            if (!ready) continue;
            std::sort(key.rbegin(), key.rend());
            if (best < 0 || key < best_key) {
                best = v;
                best_key = std::move(key);
            }
        }
        label[best] = next;
    }

    // Fill layers from the sinks upwards. A node is available for the
    // current layer once all its successors sit in lower layers; the highest
    // label among the available nodes goes first.
    std::vector<int> level(n, -1);
    int current = 0;
    int normals = 0;
    for (std::size_t placed = 0; placed < c.nodes.size();) {
        int best = -1;
        for (int v : c.nodes) {
            if (level[v] >= 0) continue;
            const bool available =
                std::all_of(c.succ[v].begin(), c.succ[v].end(), [&](int w) { return level[w] >= 0 && level[w] < current; });
            if (!available) continue;
            if (normals >= width && graph.nodes[v].kind == NodeKind::Normal) continue;
            if (best < 0 || label[v] > label[best]) best = v;
        }
        if (best < 0) {
            ++current;
            normals = 0;
            continue;
        }
        level[best] = current;
        if (graph.nodes[best].kind == NodeKind::Normal) ++normals;
        ++placed;
    }
    std::vector<int> layer(n, -1);
    for (int v : c.nodes) layer[v] = current - level[v];
    return layer;
}

long long total_edge_length(const LGraph& graph, const std::vector<int>& layer) {
    long long total = 0;
    for (const LEdge& e : graph.edges) {
        if (!e.alive || graph.is_self_loop(e.id)) continue;
        const int u = graph.source_node(e.id);
        const int v = graph.target_node(e.id);
        if (layer[u] < 0 || layer[v] < 0) continue;
        total += layer[v] - layer[u];
    }
    return total;
}

int promote_nodes(const LGraph& graph, std::vector<int>& layer) {
    const CoreGraph c = core_graph(graph);
    const int n = static_cast<int>(graph.nodes.size());

    // Returns the change in dummy count caused by moving `v` one layer down
    // together with every successor it would collide with.
    auto promote = [&](auto& self, int v) -> long long {
        long long delta = 0;
        for (int w : c.succ[v]) {
            if (layer[w] == layer[v] + 1) delta += self(self, w);
        }
        ++layer[v];
        delta += static_cast<long long>(c.pred[v].size()) - static_cast<long long>(c.succ[v].size());
        return delta;
    };

    int accepted = 0;
    for (int round = 0; round < n + 1; ++round) {
        int promotions = 0;
        for (int v : c.nodes) {
            if (c.succ[v].empty()) continue;
            const std::vector<int> backup = layer;
            if (promote(promote, v) < 0) {
                ++promotions;
            } else {
                layer = backup;
            }
        }
        accepted += promotions;
        if (promotions == 0) break;
    }
    return accepted;
}

void assign_layers(LGraph& graph) {
    const LayeredSettings& s = graph.settings;
    std::vector<int> layer;
    switch (s.layering) {
        case LayeringStrategy::LongestPath: layer = longest_path_layering(graph); break;
        case LayeringStrategy::NetworkSimplex: layer = network_simplex_layering(graph); break;
        case LayeringStrategy::CoffmanGraham: layer = coffman_graham_layering(graph, s.coffman_graham_width); break;
    }

    bool has_west = false;
    for (const LNode& v : graph.nodes) {
        if (v.alive && v.kind == NodeKind::ExternalPortDummy &&
            graph.externals[v.external].side == PortSide::West) {
            has_west = true;
        }
    }
    const int shift = has_west ? 1 : 0;
    int last = shift - 1;
    for (const LNode& v : graph.nodes) {
        if (is_core(v)) {
            layer[v.id] += shift;
            last = std::max(last, layer[v.id]);
        }
    }
    for (LNode& v : graph.nodes) {
        if (!v.alive) continue;
        if (v.kind == NodeKind::ExternalPortDummy) {
            v.layer = graph.externals[v.external].side == PortSide::West ? 0 : last + 1;
        } else {
            v.layer = layer[v.id];
        }
    }
    graph.rebuild_layers();
}

}  // namespace layr::layered
