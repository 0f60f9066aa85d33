#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "layr/graph.hpp"
#include "layr/layered/crossing.hpp"
#include "layr/layered/lgraph.hpp"

namespace layr::fixtures {

/// Working graph with `n` normal 20x20 nodes.
inline layered::LGraph make_lgraph(int n, double w = 20.0, double h = 20.0) {
    layered::LGraph g;
    for (int i = 0; i < n; ++i) {
        const int v = g.add_node(layered::NodeKind::Normal, w, h);
        g.nodes[v].model_order = i;
    }
    return g;
}

/// Edge u -> v through fresh ports (EAST on u, WEST on v).
inline int connect(layered::LGraph& g, int u, int v) {
    const int sp = g.add_port(u, PortSide::East);
    const int tp = g.add_port(v, PortSide::West);
    const int order = static_cast<int>(g.edges.size());
    return g.add_edge(sp, tp, -1, order);
}

inline layered::LGraph lgraph_of(int n, const std::vector<std::pair<int, int>>& edges) {
    layered::LGraph g = make_lgraph(n);
    for (auto [u, v] : edges) connect(g, u, v);
    return g;
}

/// Puts nodes into layers as given (one list per layer, top to bottom).
inline void set_layers(layered::LGraph& g, const std::vector<std::vector<int>>& layers) {
    g.layers = layers;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        for (std::size_t i = 0; i < layers[l].size(); ++i) {
            g.nodes[layers[l][i]].layer = static_cast<int>(l);
            g.nodes[layers[l][i]].pos = static_cast<int>(i);
        }
    }
}

/// Random simple digraph: no self-loops, no parallel edges, no 2-cycles.
inline std::vector<std::pair<int, int>> random_edges(std::mt19937& rng, int n, int m, bool connected) {
    std::set<std::pair<int, int>> used;
    std::vector<std::pair<int, int>> out;
    auto add = [&](int u, int v) {
        if (u == v || used.count({u, v}) || used.count({v, u})) return false;
        used.insert({u, v});
        out.emplace_back(u, v);
        return true;
    };
    if (connected) {
        for (int v = 1; v < n; ++v) {
            const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
            if (rng() % 2) {
                add(u, v);
            } else {
                add(v, u);
            }
        }
    }
    const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
    int guard = 0;
    while (static_cast<long long>(out.size()) < std::min<long long>(m, max_edges) && guard++ < 100 * m + 100) {
        const int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
        const int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
        add(u, v);
    }
    return out;
}

/// Flat graph document with `n` nodes of varying size and the given edges.
inline LayoutGraph flat_graph(int n, const std::vector<std::pair<int, int>>& edges, std::mt19937* rng = nullptr) {
    LayoutGraph g;
    g.root.id = "root";
    for (int i = 0; i < n; ++i) {
        Node c;
        c.id = "n" + std::to_string(i);
        c.width = rng ? 10.0 + static_cast<double>((*rng)() % 40) : 30.0;
        c.height = rng ? 10.0 + static_cast<double>((*rng)() % 30) : 20.0;
        g.root.children.push_back(std::move(c));
    }
    int k = 0;
    for (auto [u, v] : edges) {
        Edge e;
        e.id = "e" + std::to_string(k++);
        e.source = "n" + std::to_string(u);
        e.target = "n" + std::to_string(v);
        g.root.edges.push_back(std::move(e));
    }
    return g;
}

/// Kahn check, independent of the engine.
inline bool acyclic(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (auto [u, v] : edges) {
        if (u == v) continue;
        out[u].push_back(v);
        ++indeg[v];
    }
    std::vector<int> stack;
    for (int v = 0; v < n; ++v) {
        if (indeg[v] == 0) stack.push_back(v);
    }
    int seen = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int w : out[v]) {
            if (--indeg[w] == 0) stack.push_back(w);
        }
    }
    return seen == n;
}

/// Straightforward O(m^2) crossing count between two ordered layers.
inline long long naive_crossings(const std::vector<std::pair<int, int>>& edges) {
    long long c = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto [a1, b1] = edges[i];
            const auto [a2, b2] = edges[j];
            if ((a1 < a2 && b1 > b2) || (a1 > a2 && b1 < b2)) ++c;
        }
    }
    return c;
}

/// Hierarchical port-order scenario in two steps.
///
/// Inner level: node `chrono` feeds the compound's three ports m, s, d (port
/// model order 0, 1, 2) through one output port, so the three port dummies
/// tie on barycenter. `adversarial` starts the dummy layer as [d, s, m].
/// Outer level: the compound's ports, in the order the inner level chose,
/// connect to a consumer whose ports m, s, d are fixed in model order.
struct PortOrderScenario {
    std::vector<int> inner_order;  // port model orders, top to bottom
    long long outer_crossings = 0;
};

inline PortOrderScenario port_order_scenario(ModelOrderStrategy mode, bool adversarial) {
    using namespace layered;
    PortOrderScenario out;

    LGraph inner;
    inner.settings.model_order = mode;
    const int chrono = inner.add_node(NodeKind::Normal, 30, 30);
    inner.nodes[chrono].model_order = 0;
    const int out_port = inner.add_port(chrono, PortSide::East);
    std::vector<int> dummies;
    for (int k = 0; k < 3; ++k) {
        ExternalPort ext;
        ext.side = PortSide::East;
        ext.height = 6;
        ext.model_order = k;
        const int d = inner.add_node(NodeKind::ExternalPortDummy, 0, 6);
        ext.dummy = d;
        inner.nodes[d].external = static_cast<int>(inner.externals.size());
        inner.externals.push_back(ext);
        inner.add_edge(out_port, inner.add_port(d, PortSide::West), -1, k);
        dummies.push_back(d);
    }
    if (adversarial) std::reverse(dummies.begin(), dummies.end());
    set_layers(inner, {{chrono}, dummies});
    minimize_crossings(inner);
    for (int d : inner.layers[1]) out.inner_order.push_back(inner.externals[inner.nodes[d].external].model_order);

    LGraph outer;
    outer.settings.model_order = mode;
    const int compound = outer.add_node(NodeKind::Normal, 60, 60);
    const int consumer = outer.add_node(NodeKind::Normal, 60, 60);
    outer.nodes[compound].model_order = 0;
    outer.nodes[consumer].model_order = 1;
    outer.nodes[compound].constraints = PortConstraints::FixedOrder;
    outer.nodes[consumer].constraints = PortConstraints::FixedOrder;
    std::vector<int> source_port(3), target_port(3);
    for (int k : out.inner_order) source_port[k] = outer.add_port(compound, PortSide::East);
    for (int k = 0; k < 3; ++k) target_port[k] = outer.add_port(consumer, PortSide::West);
    for (int k = 0; k < 3; ++k) outer.add_edge(source_port[k], target_port[k], -1, k);
    set_layers(outer, {{compound}, {consumer}});
    minimize_crossings(outer);
    out.outer_crossings = outer.crossings;
    return out;
}

}  // namespace layr::fixtures
