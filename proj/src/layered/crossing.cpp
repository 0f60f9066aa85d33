#include "layr/layered/crossing.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "layr/errors.hpp"

namespace layr::layered {

long long count_crossings(std::span<const std::pair<int, int>> edges) {
    std::vector<std::pair<int, int>> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> values;
    values.reserve(sorted.size());
    for (const auto& e : sorted) values.push_back(e.second);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    // Fenwick tree over compressed second coordinates.
    std::vector<long long> tree(values.size() + 1, 0);
    long long inserted = 0;
    long long crossings = 0;
    for (const auto& e : sorted) {
        const int index = static_cast<int>(std::lower_bound(values.begin(), values.end(), e.second) - values.begin()) + 1;
        long long at_most = 0;
        for (int i = index; i > 0; i -= i & -i) at_most += tree[i];
        crossings += inserted - at_most;
        for (int i = index; i < static_cast<int>(tree.size()); i += i & -i) ++tree[i];
        ++inserted;
    }
    return crossings;
}

std::vector<int> port_view(const LGraph& graph, int node, PortSide facing) {
    std::vector<int> view;
    std::vector<int> wrapped;
    for (int p : graph.nodes[node].ports) {
        const LPort& port = graph.ports[p];
        if (port.side == facing) {
            view.push_back(p);
            continue;
        }
        const auto& edges = facing == PortSide::East ? port.out_edges : port.in_edges;
        const bool leaves = std::any_of(edges.begin(), edges.end(), [&](int e) { return !graph.is_self_loop(e); });
        if (leaves) wrapped.push_back(p);
    }
    view.insert(view.end(), wrapped.rbegin(), wrapped.rend());
    return view;
}

namespace {

// Rank of every port in the concatenated views of one layer.
std::vector<int> layer_ranks(const LGraph& graph, int layer, PortSide facing) {
    std::vector<int> rank(graph.ports.size(), -1);
    int r = 0;
    for (int v : graph.layers[layer]) {
        for (int p : port_view(graph, v, facing)) rank[p] = r++;
    }
    return rank;
}

}  // namespace

long long count_layer_crossings(const LGraph& graph, int left) {
    const std::vector<int> lr = layer_ranks(graph, left, PortSide::East);
    const std::vector<int> rr = layer_ranks(graph, left + 1, PortSide::West);
    std::vector<std::pair<int, int>> pairs;
    for (int v : graph.layers[left]) {
        for (int p : graph.nodes[v].ports) {
            for (int e : graph.ports[p].out_edges) {
                const int t = graph.edges[e].target;
                if (graph.nodes[graph.ports[t].node].layer != left + 1) continue;
                if (lr[p] < 0 || rr[t] < 0) continue;
                pairs.push_back({lr[p], rr[t]});
            }
        }
    }
    return count_crossings(pairs);
}

long long count_all_crossings(const LGraph& graph) {
    long long total = 0;
    for (int l = 0; l + 1 < static_cast<int>(graph.layers.size()); ++l) total += count_layer_crossings(graph, l);
    return total;
}

long long model_order_inversions(const LGraph& graph) {
    const bool ports_too = graph.settings.model_order != ModelOrderStrategy::None;
    long long total = 0;
    auto count = [&](const std::vector<int>& orders) {
        for (std::size_t i = 0; i < orders.size(); ++i) {
            for (std::size_t j = i + 1; j < orders.size(); ++j) total += orders[i] > orders[j] ? 1 : 0;
        }
    };
    for (const auto& layer : graph.layers) {
        std::vector<int> normal, external;
        for (int v : layer) {
            const LNode& n = graph.nodes[v];
            if (n.kind == NodeKind::Normal) normal.push_back(n.model_order);
            if (ports_too && n.kind == NodeKind::ExternalPortDummy) external.push_back(graph.externals[n.external].model_order);
        }
        count(normal);
        count(external);
    }
    return total;
}

namespace {

// Unknown values take the mean of their nearest known neighbours, or the one
// neighbour they have, or their index if nothing is known.
std::vector<double> fill_unknown(const std::vector<std::optional<double>>& values) {
    const std::size_t n = values.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i]) {
            out[i] = *values[i];
            continue;
        }
        std::optional<double> before, after;
        for (std::size_t j = i; j-- > 0;) {
            if (values[j]) {
                before = values[j];
                break;
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (values[j]) {
                after = values[j];
                break;
            }
        }
        if (before && after) {
            out[i] = (*before + *after) / 2.0;
        } else if (before) {
            out[i] = *before;
        } else if (after) {
            out[i] = *after;
        } else {
            out[i] = static_cast<double>(i);
        }
    }
    return out;
}

struct Group {
    std::vector<int> members;  // entry indices
    double barycenter = 0.0;
    int size = 0;
    int first = 0;
    std::vector<int> out;  // group indices
    std::vector<int> in;
    bool alive = true;
};

std::vector<int> find_cycle(int n, const std::vector<std::vector<int>>& succ) {
    std::vector<int> state(n, 0), parent(n, -1);
    for (int start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
        state[start] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next == succ[v].size()) {
                state[v] = 2;
                stack.pop_back();
                continue;
            }
            const int w = succ[v][next++];
            if (state[w] == 1) {
                std::vector<int> cycle{w};
                for (int x = v; x != w; x = parent[x]) cycle.push_back(x);
                std::reverse(cycle.begin() + 1, cycle.end());
                return cycle;
            }
            if (state[w] == 0) {
                state[w] = 1;
                parent[w] = v;
                stack.push_back({w, 0});
            }
        }
    }
    return {};
}

}  // namespace

std::vector<int> resolve_in_layer_constraints(std::vector<ConstraintEntry> entries,
                                              std::span<const std::pair<int, int>> constraints) {
    const int n = static_cast<int>(entries.size());
    std::map<int, int> index_of;
    for (int i = 0; i < n; ++i) index_of[entries[i].id] = i;

    std::vector<std::vector<int>> succ(n);
    for (const auto& [a, b] : constraints) {
        auto ia = index_of.find(a);
        auto ib = index_of.find(b);
        if (ia == index_of.end() || ib == index_of.end()) continue;
        succ[ia->second].push_back(ib->second);
    }
    if (std::vector<int> cycle = find_cycle(n, succ); !cycle.empty()) {
        std::string text;
        for (int i : cycle) text += (text.empty() ? "" : " -> ") + std::to_string(entries[i].id);
        text += " -> " + std::to_string(entries[cycle.front()].id);
        throw LayoutError("cyclic in-layer constraints: " + text);
    }

    std::vector<std::optional<double>> raw;
    for (const auto& e : entries) raw.push_back(e.barycenter);
    const std::vector<double> bary = fill_unknown(raw);

    std::vector<Group> groups(n);
    for (int i = 0; i < n; ++i) {
        groups[i].members = {i};
        groups[i].barycenter = bary[i];
        groups[i].size = std::max(1, entries[i].size);
        groups[i].first = i;
    }
    auto link = [&](int a, int b) {
        if (a == b) return;
        if (std::find(groups[a].out.begin(), groups[a].out.end(), b) == groups[a].out.end()) {
            groups[a].out.push_back(b);
            groups[b].in.push_back(a);
        }
    };
    for (int i = 0; i < n; ++i) {
        for (int j : succ[i]) link(i, j);
    }

    // Repeatedly look for a violated constraint in topological order and
    // merge its two groups.
    for (;;) {
        std::vector<int> pending(groups.size(), 0);
        std::vector<std::vector<int>> seen_in(groups.size());
        std::vector<int> active;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (!groups[g].alive) continue;
            pending[g] = static_cast<int>(groups[g].in.size());
            if (pending[g] == 0) active.push_back(static_cast<int>(g));
        }
        std::pair<int, int> violated{-1, -1};
        while (!active.empty() && violated.first < 0) {
            const int g = active.front();
            active.erase(active.begin());
            for (int pred : seen_in[g]) {
                if (groups[pred].barycenter >= groups[g].barycenter) {
                    violated = {pred, g};
                    break;
                }
            }
            if (violated.first >= 0) break;
            for (int s : groups[g].out) {
                seen_in[s].insert(seen_in[s].begin(), g);
                if (--pending[s] == 0) active.push_back(s);
            }
        }
        if (violated.first < 0) break;

        const auto [a, b] = violated;
        Group merged;
        merged.members = groups[a].members;
        merged.members.insert(merged.members.end(), groups[b].members.begin(), groups[b].members.end());
        merged.size = groups[a].size + groups[b].size;
        merged.barycenter =
            (groups[a].barycenter * groups[a].size + groups[b].barycenter * groups[b].size) / merged.size;
        merged.first = std::min(groups[a].first, groups[b].first);
        const int id = static_cast<int>(groups.size());
        groups[a].alive = groups[b].alive = false;
        std::vector<int> outs, ins;
        for (int x : {a, b}) {
            for (int s : groups[x].out) {
                if (s != a && s != b) outs.push_back(s);
            }
            for (int p : groups[x].in) {
                if (p != a && p != b) ins.push_back(p);
            }
        }
        groups.push_back(std::move(merged));
        for (Group& g : groups) {
            for (auto* list : {&g.out, &g.in}) {
                list->erase(std::remove_if(list->begin(), list->end(), [&](int x) { return x == a || x == b; }),
                            list->end());
            }
        }
        for (int s : outs) link(id, s);
        for (int p : ins) link(p, id);
    }

    std::vector<int> alive;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].alive) alive.push_back(static_cast<int>(g));
    }
    std::stable_sort(alive.begin(), alive.end(), [&](int x, int y) {
        if (groups[x].barycenter != groups[y].barycenter) return groups[x].barycenter < groups[y].barycenter;
        return groups[x].first < groups[y].first;
    });
    // Equal barycenters may still hide a constraint; order those by topology.
    std::vector<int> position(groups.size(), 0);
    for (std::size_t i = 0; i < alive.size(); ++i) position[alive[i]] = static_cast<int>(i);
    std::vector<int> result_groups;
    {
        std::vector<int> pending(groups.size(), 0);
        for (int g : alive) pending[g] = static_cast<int>(groups[g].in.size());
        std::vector<int> ready;
        for (int g : alive) {
            if (pending[g] == 0) ready.push_back(g);
        }
        while (!ready.empty()) {
            auto it = std::min_element(ready.begin(), ready.end(),
                                       [&](int x, int y) { return position[x] < position[y]; });
            const int g = *it;
            ready.erase(it);
            result_groups.push_back(g);
            for (int s : groups[g].out) {
                if (--pending[s] == 0) ready.push_back(s);
            }
        }
    }
    if (result_groups.size() != alive.size()) throw LayoutError("in-layer constraints could not be resolved");

    std::vector<int> result;
    for (int g : result_groups) {
        for (int m : groups[g].members) result.push_back(entries[m].id);
    }
    return result;
}

namespace {

using TieKey = std::pair<double, double>;

class Sweeper {
public:
    explicit Sweeper(LGraph& graph) : g_(graph), s_(graph.settings) {}

    void run() {
        const auto cost = [&] { return std::pair{count_all_crossings(g_), model_order_inversions(g_)}; };
        const Snapshot initial = snapshot();
        auto best_cost = cost();
        Snapshot best = initial;
        if (g_.layers.size() > 1) {
            for (bool forward_first : {true, false}) {
                restore(initial);
                auto run_cost = cost();
                Snapshot run_best = initial;
                for (int pass = 0; pass < kMaxPasses; ++pass) {
                    sweep(forward_first);
                    sweep(!forward_first);
                    const auto c = cost();
                    if (c < run_cost) {
                        run_cost = c;
                        run_best = snapshot();
                    } else {
                        break;
                    }
                }
                if (run_cost < best_cost) {
                    best_cost = run_cost;
                    best = std::move(run_best);
                }
            }
        }
        restore(best);
        g_.crossings = best_cost.first;
    }

private:
    static constexpr int kMaxPasses = 10;

    struct Snapshot {
        std::vector<std::vector<int>> layers;
        std::vector<std::vector<int>> ports;
    };

    Snapshot snapshot() const {
        Snapshot s;
        s.layers = g_.layers;
        for (const LNode& v : g_.nodes) s.ports.push_back(v.ports);
        return s;
    }

    void restore(const Snapshot& s) {
        g_.layers = s.layers;
        for (std::size_t i = 0; i < s.ports.size(); ++i) g_.nodes[i].ports = s.ports[i];
        g_.renumber_positions();
    }

    void sweep(bool forward) {
        const int count = static_cast<int>(g_.layers.size());
        if (forward) {
            for (int l = 1; l < count; ++l) order_layer(l, l - 1, true);
        } else {
            for (int l = count - 2; l >= 0; --l) order_layer(l, l + 1, false);
        }
    }

    int leader(int v) const {
        const LNode& n = g_.nodes[v];
        return n.kind == NodeKind::NorthSouthDummy ? n.ns_owner : v;
    }

    // Connections of `port` to the fixed layer, as ranks.
    void connections(int port, bool forward, int fixed, const std::vector<int>& rank, double& sum, int& count,
                     int* min_edge_order = nullptr) const {
        const LPort& p = g_.ports[port];
        const auto& edges = forward ? p.in_edges : p.out_edges;
        for (int e : edges) {
            const int other = forward ? g_.edges[e].source : g_.edges[e].target;
            if (g_.nodes[g_.ports[other].node].layer != fixed || rank[other] < 0) continue;
            sum += rank[other];
            ++count;
            if (min_edge_order) *min_edge_order = std::min(*min_edge_order, g_.edges[e].model_order);
        }
    }

    void order_ports(int v, bool forward, int fixed, const std::vector<int>& rank) {
        LNode& node = g_.nodes[v];
        if (node.kind != NodeKind::Normal || node.constraints >= PortConstraints::FixedOrder) return;
        const PortSide side = forward ? PortSide::West : PortSide::East;
        std::vector<int> slots, movable;
        for (std::size_t i = 0; i < node.ports.size(); ++i) {
            const LPort& p = g_.ports[node.ports[i]];
            if (p.side == side && !p.fixed_position) {
                slots.push_back(static_cast<int>(i));
                movable.push_back(node.ports[i]);
            }
        }
        if (movable.size() < 2) return;
        std::vector<std::optional<double>> raw;
        for (int p : movable) {
            double sum = 0.0;
            int count = 0;
            connections(p, forward, fixed, rank, sum, count);
            raw.push_back(count > 0 ? std::optional<double>(sum / count) : std::nullopt);
        }
        const std::vector<double> bary = fill_unknown(raw);
        std::vector<int> idx(movable.size());
        std::iota(idx.begin(), idx.end(), 0);
        const bool by_model = s_.model_order != ModelOrderStrategy::None;
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            if (bary[a] != bary[b]) return bary[a] < bary[b];
            if (by_model) return g_.ports[movable[a]].model_order < g_.ports[movable[b]].model_order;
            return false;
        });
        for (std::size_t i = 0; i < idx.size(); ++i) node.ports[slots[i]] = movable[idx[i]];
    }

    TieKey tie_key(int v, bool forward, int fixed) const {
        const LNode& n = g_.nodes[v];
        const double big = 1e9;
        switch (s_.model_order) {
            case ModelOrderStrategy::None: return {0.0, 0.0};
            case ModelOrderStrategy::NodesAndEdges:
                if (n.kind == NodeKind::Normal) return {n.model_order, 0.0};
                if (n.kind == NodeKind::ExternalPortDummy) return {g_.externals[n.external].model_order, 0.0};
                if (n.kind == NodeKind::LongEdgeDummy && n.origin_edge >= 0) {
                    const LEdge& e = g_.edges[n.origin_edge];
                    return {g_.nodes[g_.ports[e.source].node].model_order + 0.5, e.model_order};
                }
                return {big, 0.0};
            case ModelOrderStrategy::PreferEdges: {
                int min_edge = std::numeric_limits<int>::max();
                for (int p : n.ports) {
                    const LPort& port = g_.ports[p];
                    for (int e : forward ? port.in_edges : port.out_edges) {
                        const int other = forward ? g_.edges[e].source : g_.edges[e].target;
                        if (g_.nodes[g_.ports[other].node].layer == fixed) {
                            min_edge = std::min(min_edge, g_.edges[e].model_order);
                        }
                    }
                }
                const double node_order = n.kind == NodeKind::Normal ? n.model_order : big;
                return {min_edge == std::numeric_limits<int>::max() ? big : min_edge, node_order};
            }
        }
        return {0.0, 0.0};
    }

    void order_layer(int free, int fixed, bool forward) {
        const std::vector<int> rank = layer_ranks(g_, fixed, forward ? PortSide::East : PortSide::West);
        for (int v : g_.layers[free]) order_ports(v, forward, fixed, rank);

        // Units: a node followed or preceded by its north/south dummies.
        std::vector<int> unit_of(g_.nodes.size(), -1);
        std::vector<std::vector<int>> units;
        std::vector<int> leaders;
        for (int v : g_.layers[free]) {
            const int l = leader(v);
            if (unit_of[l] < 0) {
                unit_of[l] = static_cast<int>(units.size());
                units.emplace_back();
                leaders.push_back(l);
            }
            units[unit_of[l]].push_back(v);
        }
        const std::size_t count = units.size();
        if (count < 2) return;

        std::vector<std::optional<double>> raw(count);
        std::vector<TieKey> ties(count);
        for (std::size_t u = 0; u < count; ++u) {
            double sum = 0.0;
            int connected = 0;
            for (int v : units[u]) {
                for (int p : g_.nodes[v].ports) connections(p, forward, fixed, rank, sum, connected);
            }
            if (connected > 0) raw[u] = sum / connected;
            ties[u] = tie_key(leaders[u], forward, fixed);
        }

        std::vector<std::pair<int, int>> constraints;
        if (s_.force_node_model_order) add_order_constraints(units, leaders, NodeKind::Normal, constraints);
        if (s_.level_port_constraints >= PortConstraints::FixedOrder) {
            add_order_constraints(units, leaders, NodeKind::ExternalPortDummy, constraints);
        }

        std::vector<int> order;
        if (!constraints.empty()) {
            std::vector<ConstraintEntry> entries;
            for (std::size_t u = 0; u < count; ++u) {
                entries.push_back({static_cast<int>(u), raw[u], static_cast<int>(units[u].size())});
            }
            order = resolve_in_layer_constraints(std::move(entries), constraints);
        } else {
            const std::vector<double> bary = fill_unknown(raw);
            order.resize(count);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                if (bary[a] != bary[b]) return bary[a] < bary[b];
                return ties[a] < ties[b];
            });
        }
        std::vector<int>& layer = g_.layers[free];
        layer.clear();
        for (int u : order) layer.insert(layer.end(), units[u].begin(), units[u].end());
        for (std::size_t i = 0; i < layer.size(); ++i) g_.nodes[layer[i]].pos = static_cast<int>(i);
    }

    void add_order_constraints(const std::vector<std::vector<int>>& units, const std::vector<int>& leaders,
                               NodeKind kind, std::vector<std::pair<int, int>>& constraints) const {
        std::vector<std::pair<int, int>> keyed;  // (model order, unit)
        for (std::size_t u = 0; u < units.size(); ++u) {
            const LNode& n = g_.nodes[leaders[u]];
            if (n.kind != kind) continue;
            const int order = kind == NodeKind::ExternalPortDummy ? g_.externals[n.external].model_order : n.model_order;
            keyed.push_back({order, static_cast<int>(u)});
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t i = 1; i < keyed.size(); ++i) constraints.push_back({keyed[i - 1].second, keyed[i].second});
    }

    LGraph& g_;
    const LayeredSettings& s_;
};

}  // namespace

void minimize_crossings(LGraph& graph) {
    if (graph.settings.crossing_minimization == CrossingMinimizationStrategy::None) {
        graph.crossings = count_all_crossings(graph);
        return;
    }
    Sweeper(graph).run();
}

}  // namespace layr::layered
