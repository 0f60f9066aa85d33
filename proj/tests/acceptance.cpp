// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "layr/errors.hpp"
#include "layr/io.hpp"
#include "layr/layered/crossing.hpp"
#include "layr/layered/cycle_breaking.hpp"
#include "layr/layered/layering.hpp"
#include "layr/layered/placement.hpp"
#include "layr/layout.hpp"
#include "layr/pipeline.hpp"
#include "support.hpp"

using namespace layr;
using namespace layr::layered;
using Clock = std::chrono::steady_clock;
using EdgeList = std::vector<std::pair<int, int>>;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int number, const std::string& title, const Outcome& o) {
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", number, title.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::filesystem::path> corpus() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(LAYR_TEST_DATA)) {
        if (e.path().extension() == ".json") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <class E>
E pick(std::mt19937& rng, std::initializer_list<E> values) {
    return *(values.begin() + rng() % values.size());
}

// --- 1: pipeline invariants on random graphs --------------------------------

Outcome pipeline_invariants() {
    std::mt19937 rng(1001);
    const auto start = Clock::now();
    int graphs = 0;
    std::string first_problem;
    auto problem = [&](const std::string& what) {
        if (first_problem.empty()) first_problem = "graph " + std::to_string(graphs) + ": " + what;
    };

    for (; graphs < 1000; ++graphs) {
        const int n = 1 + static_cast<int>(rng() % 30);
        const int m = static_cast<int>(rng() % 61);
        // Arbitrary digraph: cycles, parallel edges and the odd self-loop.
        EdgeList edges;
        for (int i = 0; i < m; ++i) {
            const int u = static_cast<int>(rng() % n);
            int v = static_cast<int>(rng() % n);
            if (u == v && rng() % 4 != 0) v = (v + 1) % n;
            edges.emplace_back(u, v);
        }
        LGraph g = fixtures::lgraph_of(n, edges);
        for (LNode& v : g.nodes) v.height = 10.0 + static_cast<double>(rng() % 30);
        auto& s = g.settings;
        s.cycle_breaking = pick(rng, {CycleBreakingStrategy::Greedy, CycleBreakingStrategy::DepthFirst,
                                      CycleBreakingStrategy::ModelOrder});
        s.layering = pick(rng, {LayeringStrategy::LongestPath, LayeringStrategy::NetworkSimplex,
                                LayeringStrategy::CoffmanGraham});
        s.coffman_graham_width = 1 + static_cast<int>(rng() % 5);
        s.node_promotion = rng() % 2;
        s.node_placement = pick(rng, {NodePlacementStrategy::BrandesKoepf, NodePlacementStrategy::LinearSegments,
                                      NodePlacementStrategy::Simple});
        s.edge_routing = pick(rng, {EdgeRouting::Orthogonal, EdgeRouting::Polyline});
        s.model_order = pick(rng, {ModelOrderStrategy::None, ModelOrderStrategy::NodesAndEdges,
                                   ModelOrderStrategy::PreferEdges});
        s.separate_components = rng() % 2;

        auto observer = [&](const TraceEntry& step, std::span<const LGraph> parts) {
            for (const LGraph& part : parts) {
                if (step.name == "P1_CYCLE_BREAKING" && !is_acyclic(part)) problem("cyclic after P1");
                if (step.name == "P2_LAYERING") {
                    for (const LEdge& e : part.edges) {
                        if (!e.alive || part.is_self_loop(e.id)) continue;
                        if (part.nodes[part.source_node(e.id)].layer >= part.nodes[part.target_node(e.id)].layer) {
                            problem("edge " + std::to_string(e.id) + " not forward after P2");
                        }
                    }
                }
                if (step.name == "P4_NODE_PLACEMENT") {
                    for (const auto& layer : part.layers) {
                        for (std::size_t i = 1; i < layer.size(); ++i) {
                            const LNode& a = part.nodes[layer[i - 1]];
                            const LNode& b = part.nodes[layer[i]];
                            if (b.y - (a.y + a.height) < node_spacing(part, a.id, b.id) - 1e-6) {
                                problem("overlap after P4");
                            }
                        }
                    }
                }
            }
        };
        try {
            execute(default_plan(g), g, observer);
        } catch (const std::exception& e) {
            problem(std::string("threw: ") + e.what());
            continue;
        }
        if (g.dummy_count() != 0) problem("dummies left");
        std::size_t alive = 0;
        for (const LEdge& e : g.edges) {
            if (!e.alive) continue;
            ++alive;
            if (e.reversed) problem("reversed edge left");
        }
        if (alive != edges.size()) problem("edge count changed");
        // Each input edge keeps its original direction. Node model order is
        // the input index; merging components may renumber nodes.
        std::multiset<std::pair<int, int>> want(edges.begin(), edges.end()), got;
        for (const LEdge& e : g.edges) {
            if (e.alive) got.emplace(g.nodes[g.source_node(e.id)].model_order, g.nodes[g.target_node(e.id)].model_order);
        }
        if (want != got) {
            std::string diff;
            for (auto [u, v] : want) {
                if (!got.count({u, v})) diff += " " + std::to_string(u) + ">" + std::to_string(v);
            }
            problem("edge directions not restored, missing" + diff);
        }
    }
    const double ms = ms_since(start);
    if (ms >= 60000.0) problem("took " + std::to_string(ms) + " ms");
    Outcome o;
    o.pass = first_problem.empty();
    o.detail = std::to_string(graphs) + " graphs in " + std::to_string(static_cast<long>(ms)) + " ms" +
               (o.pass ? "" : "; " + first_problem);
    return o;
}

// --- 2: greedy cycle breaking bound -----------------------------------------

Outcome greedy_bound() {
    std::mt19937 rng(2002);
    int worst_slack = 1 << 30;
    std::string first_problem;
    for (int round = 0; round < 500; ++round) {
        const int n = 2 + static_cast<int>(rng() % 29);
        const int m = n - 1 + static_cast<int>(rng() % (2 * n));
        const EdgeList edges = fixtures::random_edges(rng, n, m, true);
        LGraph g = fixtures::lgraph_of(n, edges);
        const auto reversed = greedy_cycle_break(g);
        const double bound = edges.size() / 2.0 - n / 6.0;
        EdgeList flipped = edges;
        for (int e : reversed) std::swap(flipped[e].first, flipped[e].second);
        if (reversed.size() > bound + 1e-9 && first_problem.empty()) {
            first_problem = "round " + std::to_string(round) + " reversed " + std::to_string(reversed.size()) +
                            " > " + std::to_string(bound);
        }
        if (!fixtures::acyclic(n, flipped) && first_problem.empty()) {
            first_problem = "round " + std::to_string(round) + " still cyclic";
        }
        worst_slack = std::min(worst_slack, static_cast<int>(std::floor(bound - reversed.size())));
    }
    Outcome o;
    o.pass = first_problem.empty();
    o.detail = o.pass ? "500 graphs, smallest slack " + std::to_string(worst_slack) : first_problem;
    return o;
}

// --- 3: layer sweep on two-layer instances ----------------------------------

long long crossings_for(const LGraph& g, const std::vector<int>& pos) {
    EdgeList e;
    for (const LEdge& edge : g.edges) e.emplace_back(pos[g.source_node(edge.id)], pos[g.target_node(edge.id)]);
    return fixtures::naive_crossings(e);
}

long long bilayer_optimum(const LGraph& g, int top, int bottom) {
    std::vector<int> a(top), b(bottom), pos(top + bottom);
    std::iota(a.begin(), a.end(), 0);
    long long best = -1;
    do {
        for (int i = 0; i < top; ++i) pos[a[i]] = i;
        std::iota(b.begin(), b.end(), top);
        do {
            for (int i = 0; i < bottom; ++i) pos[b[i]] = i;
            const long long c = crossings_for(g, pos);
            if (best < 0 || c < best) best = c;
        } while (best > 0 && std::next_permutation(b.begin(), b.end()));
    } while (best > 0 && std::next_permutation(a.begin(), a.end()));
    return best;
}

Outcome layer_sweep_quality() {
    std::mt19937 rng(3003);
    const int rounds = 10000;
    int not_worse = 0;
    int near = 0;
    std::map<long long, int> gap;  // result minus optimum
    for (int round = 0; round < rounds; ++round) {
        const int top = 1 + static_cast<int>(rng() % 5);
        const int bottom = 1 + static_cast<int>(rng() % 5);
        const int m = static_cast<int>(rng() % 9);
        EdgeList edges;
        for (int i = 0; i < m; ++i) {
            std::pair<int, int> e{static_cast<int>(rng() % top), top + static_cast<int>(rng() % bottom)};
            if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
        }
        LGraph g = fixtures::lgraph_of(top + bottom, edges);
        std::vector<int> l0(top), l1(bottom);
        std::iota(l0.begin(), l0.end(), 0);
        std::iota(l1.begin(), l1.end(), top);
        fixtures::set_layers(g, {l0, l1});

        std::vector<int> start_pos(top + bottom);
        for (int i = 0; i < top + bottom; ++i) start_pos[i] = i < top ? i : i - top;
        const long long initial = crossings_for(g, start_pos);
        const long long best = bilayer_optimum(g, top, bottom);
        minimize_crossings(g);
        std::vector<int> pos(top + bottom);
        for (const auto& layer : g.layers) {
            for (std::size_t i = 0; i < layer.size(); ++i) pos[layer[i]] = static_cast<int>(i);
        }
        const long long result = crossings_for(g, pos);
        if (result <= initial) ++not_worse;
        if (result <= best + 2) ++near;
        ++gap[result - best];
    }
    std::string dist;
    for (auto [d, count] : gap) dist += (dist.empty() ? "" : " ") + ("+" + std::to_string(d)) + ":" + std::to_string(count);
    Outcome o;
    o.pass = not_worse == rounds && near * 10 >= rounds * 9;
    o.detail = "not worse " + std::to_string(not_worse) + "/" + std::to_string(rounds) + ", within optimum+2 " +
               std::to_string(near) + "/" + std::to_string(rounds) + "; gap distribution " + dist;
    return o;
}

// --- 4: network simplex is optimal on small DAGs ----------------------------

EdgeList random_dag(std::mt19937& rng, int n, int m) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::set<std::pair<int, int>> used;
    EdgeList out;
    for (int tries = 0; tries < 4 * m && static_cast<int>(out.size()) < m; ++tries) {
        int a = static_cast<int>(rng() % n);
        int b = static_cast<int>(rng() % n);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (used.insert({order[a], order[b]}).second) out.emplace_back(order[a], order[b]);
    }
    return out;
}

// Exhaustive search over layer values 0..n-1 in topological order, pruned by
// the partial length. Optimal layerings span at most n-1 layers.
long long min_total_length(int n, const EdgeList& edges) {
    std::vector<std::vector<int>> preds(n), succs(n);
    std::vector<int> indeg(n, 0);
    for (auto [u, v] : edges) {
        preds[v].push_back(u);
        succs[u].push_back(v);
        ++indeg[v];
    }
    std::vector<int> topo;
    for (int v = 0; v < n; ++v) {
        if (indeg[v] == 0) topo.push_back(v);
    }
    for (std::size_t i = 0; i < topo.size(); ++i) {
        for (int w : succs[topo[i]]) {
            if (--indeg[w] == 0) topo.push_back(w);
        }
    }
    std::vector<int> layer(n, -1);
    long long best = std::numeric_limits<long long>::max();
    std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long length) {
        if (length >= best) return;
        if (i == topo.size()) {
            best = length;
            return;
        }
        const int v = topo[i];
        int low = 0;
        for (int u : preds[v]) low = std::max(low, layer[u] + 1);
        for (int r = low; r < n; ++r) {
            long long add = 0;
            for (int u : preds[v]) add += r - layer[u];
            layer[v] = r;
            rec(i + 1, length + add);
        }
        layer[v] = -1;
    };
    rec(0, 0);
    return best;
}

Outcome network_simplex_optimal() {
    std::mt19937 rng(4004);
    std::string first_problem;
    int checked = 0;
    for (; checked < 1000; ++checked) {
        const int n = 1 + static_cast<int>(rng() % 7);
        const EdgeList edges = random_dag(rng, n, static_cast<int>(rng() % (2 * n + 1)));
        const LGraph g = fixtures::lgraph_of(n, edges);
        const auto layer = network_simplex_layering(g);
        long long length = 0;
        bool valid = true;
        for (auto [u, v] : edges) {
            valid = valid && layer[v] > layer[u];
            length += layer[v] - layer[u];
        }
        const long long best = min_total_length(n, edges);
        if ((!valid || length != best) && first_problem.empty()) {
            first_problem = "dag " + std::to_string(checked) + ": length " + std::to_string(length) +
                            ", optimum " + std::to_string(best) + (valid ? "" : ", invalid layering");
        }
    }
    Outcome o;
    o.pass = first_problem.empty();
    o.detail = o.pass ? std::to_string(checked) + " DAGs match the exhaustive optimum" : first_problem;
    return o;
}

// --- 5: hierarchical port order follows model order -------------------------

Outcome port_order() {
    const auto on = fixtures::port_order_scenario(ModelOrderStrategy::NodesAndEdges, true);
    const auto off = fixtures::port_order_scenario(ModelOrderStrategy::None, true);
    auto order = [](const std::vector<int>& v) {
        std::string s;
        for (int k : v) s += std::to_string(k);
        return s;
    };
    Outcome o;
    o.pass = on.outer_crossings == 0 && off.outer_crossings >= 1;
    o.detail = "model order on: ports " + order(on.inner_order) + ", crossings " + std::to_string(on.outer_crossings) +
               "; off with adversarial start: ports " + order(off.inner_order) + ", crossings " +
               std::to_string(off.outer_crossings);
    return o;
}

// --- 6: determinism ---------------------------------------------------------

Outcome determinism() {
    const auto files = corpus();
    std::string first_problem;
    for (const auto& f : files) {
        const std::string text = slurp(f);
        LayoutGraph a = parse(text);
        LayoutGraph b = parse(text);
        layout(a);
        layout(b);
        if ((serialize(a) != serialize(b) || render_svg(a) != render_svg(b)) && first_problem.empty()) {
            first_problem = f.filename().string() + " differs between runs";
        }
    }
    Outcome o;
    o.pass = first_problem.empty() && !files.empty();
    o.detail = o.pass ? std::to_string(files.size()) + " documents byte-identical across two runs (JSON and SVG)"
                      : (files.empty() ? "no documents" : first_problem);
    return o;
}

// --- 7: performance ---------------------------------------------------------

// 50 nodes (5 compounds of 7 leaves, 10 top-level leaves) and 80 edges, a
// quarter of them crossing compound borders.
LayoutGraph compound_benchmark() {
    std::mt19937 rng(7007);
    LayoutGraph g;
    g.root.id = "root";
    std::vector<std::string> leaves;
    int edge_id = 0;
    auto edge = [&](Node& owner, const std::string& s, const std::string& t) {
        owner.edges.push_back(Edge{.id = "e" + std::to_string(edge_id++), .source = s, .target = t});
    };
    for (int c = 0; c < 5; ++c) {
        Node group{.id = "g" + std::to_string(c)};
        for (int i = 0; i < 7; ++i) {
            group.children.push_back(Node{.id = group.id + "_" + std::to_string(i),
                                          .width = 20.0 + rng() % 30,
                                          .height = 15.0 + rng() % 20});
        }
        for (int k = 0; k < 8; ++k) {
            const int u = static_cast<int>(rng() % 7);
            const int v = (u + 1 + static_cast<int>(rng() % 6)) % 7;
            edge(group, group.children[u].id, group.children[v].id);
        }
        for (const Node& leaf : group.children) leaves.push_back(leaf.id);
        g.root.children.push_back(std::move(group));
    }
    for (int i = 0; i < 10; ++i) {
        g.root.children.push_back(Node{.id = "t" + std::to_string(i), .width = 30, .height = 20});
    }
    for (int k = 0; k < 20; ++k) {
        const int u = static_cast<int>(rng() % 15);
        const int v = (u + 1 + static_cast<int>(rng() % 14)) % 15;
        edge(g.root, g.root.children[u].id, g.root.children[v].id);
    }
    for (int k = 0; k < 20; ++k) {
        const std::string& s = leaves[rng() % leaves.size()];
        std::string t = leaves[rng() % leaves.size()];
        while (t.substr(0, 2) == s.substr(0, 2)) t = leaves[rng() % leaves.size()];
        edge(g.root, s, t);
    }
    return g;
}

Outcome performance() {
    LayoutGraph small = compound_benchmark();
    std::size_t nodes = 0;
    for (const Node& c : small.root.children) nodes += 1 + c.children.size();
    std::size_t edges = small.root.edges.size();
    for (const Node& c : small.root.children) edges += c.edges.size();

    // Best of three, after one warm-up run.
    double small_ms = 1e18;
    for (int run = 0; run < 4; ++run) {
        LayoutGraph g = small;
        const auto start = Clock::now();
        layout(g);
        if (run > 0) small_ms = std::min(small_ms, ms_since(start));
    }

    std::mt19937 rng(7008);
    const int n = 1000;
    EdgeList dag;
    std::set<std::pair<int, int>> used;
    while (dag.size() < 1500) {
        int u = static_cast<int>(rng() % n);
        int v = static_cast<int>(rng() % n);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (v - u > 40) v = u + 1 + static_cast<int>(rng() % 40);
        if (v >= n || !used.insert({u, v}).second) continue;
        dag.emplace_back(u, v);
    }
    LayoutGraph big = fixtures::flat_graph(n, dag, &rng);
    const auto start = Clock::now();
    layout(big);
    const double big_ms = ms_since(start);

    Outcome o;
    o.pass = nodes == 50 && edges == 80 && small_ms < 100.0 && big_ms < 5000.0;
    char buf[200];
    std::snprintf(buf, sizeof buf, "compound %zu nodes/%zu edges %.1f ms (limit 100), DAG %d nodes/%zu edges %.0f ms (limit 5000)",
                  nodes, edges, small_ms, n, dag.size(), big_ms);
    o.detail = buf;
    return o;
}

// --- 8: round trip ----------------------------------------------------------

void collect_keys(const Node& n, std::set<std::string>& keys) {
    for (const auto& [k, v] : n.options) keys.insert(std::string(k));
    for (const Port& p : n.ports) {
        for (const auto& [k, v] : p.options) keys.insert(std::string(k));
    }
    for (const Edge& e : n.edges) {
        for (const auto& [k, v] : e.options) keys.insert(std::string(k));
    }
    for (const Node& c : n.children) collect_keys(c, keys);
}

Outcome round_trip() {
    const auto files = corpus();
    std::set<std::string> keys;
    std::string first_problem;
    for (const auto& f : files) {
        try {
            const LayoutGraph g = parse(slurp(f));
            collect_keys(g.root, keys);
            const std::string once = serialize(g);
            const LayoutGraph again = parse(once);
            if ((!(again == g) || serialize(again) != once) && first_problem.empty()) {
                first_problem = f.filename().string() + " is not a fixpoint";
            }
        } catch (const std::exception& e) {
            if (first_problem.empty()) first_problem = f.filename().string() + ": " + e.what();
        }
    }
    std::vector<std::string> missing;
    for (const OptionDef& def : option_registry()) {
        if (!keys.count(std::string(def.key))) missing.emplace_back(def.key);
    }
    Outcome o;
    o.pass = files.size() >= 20 && first_problem.empty() && missing.empty();
    o.detail = std::to_string(files.size()) + " documents, " + std::to_string(keys.size()) + "/" +
               std::to_string(option_registry().size()) + " option keys used";
    if (!first_problem.empty()) o.detail += "; " + first_problem;
    for (const auto& k : missing) o.detail += "; missing " + k;
    return o;
}

// --- 9: processor plan ------------------------------------------------------

Outcome processor_plan() {
    PhaseStrategies greedy;
    greedy.cycle_breaking = CycleBreakingStrategy::Greedy;
    const ProcessingRequest req = strategy_requests(greedy);
    const ProcessorPlan plan = assemble(std::span(&req, 1), greedy);
    const bool restorer = plan.contains(SlotId::AfterP5, ProcessorId::ReversedEdgeRestorer);

    LGraph g = fixtures::lgraph_of(3, {{0, 1}, {1, 2}, {0, 2}});
    ProcessorPlan broken = default_plan(g);
    auto& slot = broken.slots[static_cast<std::size_t>(SlotId::BeforeP3)];
    slot.erase(std::remove(slot.begin(), slot.end(), ProcessorId::LongEdgeSplitter), slot.end());
    std::string diagnostic;
    std::string step;
    try {
        execute(broken, g);
    } catch (const LayoutError& e) {
        diagnostic = e.what();
        step = e.step();
    }
    const bool named = step == "P4_NODE_PLACEMENT" &&
                       diagnostic.find("P4_NODE_PLACEMENT precondition violated") != std::string::npos;
    Outcome o;
    o.pass = restorer && named;
    o.detail = std::string("restorer in AFTER_P5: ") + (restorer ? "yes" : "no") + "; without splitter: " +
               (diagnostic.empty() ? "no error" : "\"" + diagnostic + "\"");
    return o;
}

}  // namespace

int main() {
    report(1, "pipeline invariants on 1000 random graphs", pipeline_invariants());
    report(2, "greedy cycle breaking bound", greedy_bound());
    report(3, "layer sweep on 10000 two-layer instances", layer_sweep_quality());
    report(4, "network simplex optimal on small DAGs", network_simplex_optimal());
    report(5, "hierarchical port order", port_order());
    report(6, "deterministic output", determinism());
    report(7, "performance", performance());
    report(8, "parse/serialize round trip", round_trip());
    report(9, "processor plan assembly", processor_plan());
    return failures == 0 ? 0 : 1;
}
