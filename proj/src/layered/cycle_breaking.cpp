#include "layr/layered/cycle_breaking.hpp"

#include <algorithm>
#include <limits>

namespace layr::layered {

namespace {

int order_key(const LNode& n) { return n.model_order >= 0 ? n.model_order : 1'000'000 + n.id; }

bool counts(const LGraph& g, const LEdge& e) { return e.alive && !g.is_self_loop(e.id); }

}  // namespace

std::vector<int> greedy_cycle_break(const LGraph& graph) {
    const int n = static_cast<int>(graph.nodes.size());
    std::vector<int> indeg(n, 0), outdeg(n, 0);
    for (const LEdge& e : graph.edges) {
        if (!counts(graph, e)) continue;
        ++outdeg[graph.source_node(e.id)];
        ++indeg[graph.target_node(e.id)];
    }

    std::vector<int> candidates;
    for (const LNode& v : graph.nodes) {
        if (v.alive) candidates.push_back(v.id);
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](int a, int b) { return order_key(graph.nodes[a]) < order_key(graph.nodes[b]); });

    std::vector<bool> removed(n, false);
    std::vector<int> left, right;  // right is filled back to front
    std::size_t remaining = candidates.size();

    auto remove = [&](int v) {
        removed[v] = true;
        --remaining;
        for (int p : graph.nodes[v].ports) {
            for (int e : graph.ports[p].out_edges) {
                if (!graph.is_self_loop(e)) --indeg[graph.target_node(e)];
            }
            for (int e : graph.ports[p].in_edges) {
                if (!graph.is_self_loop(e)) --outdeg[graph.source_node(e)];
            }
        }
    };

    while (remaining > 0) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int v : candidates) {
                if (!removed[v] && outdeg[v] == 0) {
                    right.push_back(v);
                    remove(v);
                    progress = true;
                }
            }
            for (int v : candidates) {
                if (!removed[v] && indeg[v] == 0) {
                    left.push_back(v);
                    remove(v);
                    progress = true;
                }
            }
        }
        if (remaining == 0) break;
        int best = -1;
        int best_delta = std::numeric_limits<int>::min();
        for (int v : candidates) {
            if (removed[v]) continue;
            const int delta = outdeg[v] - indeg[v];
            if (delta > best_delta) {
                best_delta = delta;
                best = v;
            }
        }
        left.push_back(best);
        remove(best);
    }

    std::vector<int> rank(n, -1);
    int r = 0;
    for (int v : left) rank[v] = r++;
    for (auto it = right.rbegin(); it != right.rend(); ++it) rank[*it] = r++;

    std::vector<int> reversed;
    for (const LEdge& e : graph.edges) {
        if (counts(graph, e) && rank[graph.source_node(e.id)] > rank[graph.target_node(e.id)]) {
            reversed.push_back(e.id);
        }
    }
    return reversed;
}

std::vector<int> depth_first_cycle_break(const LGraph& graph) {
    const int n = static_cast<int>(graph.nodes.size());
    enum class Mark { Unvisited, OnStack, Done };
    std::vector<Mark> mark(n, Mark::Unvisited);
    std::vector<std::vector<int>> out(n);
    for (const LNode& v : graph.nodes) {
        if (v.alive) out[v.id] = graph.out_edges(v.id);
    }
    std::vector<int> roots;
    for (const LNode& v : graph.nodes) {
        if (v.alive) roots.push_back(v.id);
    }
    std::stable_sort(roots.begin(), roots.end(),
                     [&](int a, int b) { return order_key(graph.nodes[a]) < order_key(graph.nodes[b]); });

    std::vector<int> reversed;
    struct Frame {
        int node;
        std::size_t next;
    };
    for (int root : roots) {
        if (mark[root] != Mark::Unvisited) continue;
        std::vector<Frame> stack{{root, 0}};
        mark[root] = Mark::OnStack;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next == out[f.node].size()) {
                mark[f.node] = Mark::Done;
                stack.pop_back();
                continue;
            }
            const int e = out[f.node][f.next++];
            if (graph.is_self_loop(e)) continue;
            const int w = graph.target_node(e);
            if (mark[w] == Mark::OnStack) {
                reversed.push_back(e);
            } else if (mark[w] == Mark::Unvisited) {
                mark[w] = Mark::OnStack;
                stack.push_back({w, 0});
            }
        }
    }
    std::sort(reversed.begin(), reversed.end());
    return reversed;
}

std::vector<int> model_order_cycle_break(const LGraph& graph) {
    std::vector<int> reversed;
    for (const LEdge& e : graph.edges) {
        if (!counts(graph, e)) continue;
        const LNode& s = graph.nodes[graph.source_node(e.id)];
        const LNode& t = graph.nodes[graph.target_node(e.id)];
        if (s.kind == NodeKind::ExternalPortDummy || t.kind == NodeKind::ExternalPortDummy) continue;
        if (order_key(t) < order_key(s)) reversed.push_back(e.id);
    }
    return reversed;
}

std::vector<int> break_cycles(LGraph& graph, CycleBreakingStrategy strategy) {
    std::vector<int> reversed;
    switch (strategy) {
        case CycleBreakingStrategy::Greedy: reversed = greedy_cycle_break(graph); break;
        case CycleBreakingStrategy::DepthFirst: reversed = depth_first_cycle_break(graph); break;
        case CycleBreakingStrategy::ModelOrder: reversed = model_order_cycle_break(graph); break;
    }
    for (int e : reversed) graph.reverse(e);
    return reversed;
}

}  // namespace layr::layered
