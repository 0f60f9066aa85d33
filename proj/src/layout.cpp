#include "layr/layout.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "layr/box.hpp"
#include "layr/errors.hpp"
#include "layr/layered/import_export.hpp"

namespace layr {

namespace {

std::string describe(const std::vector<Diagnostic>& diagnostics) {
    std::string text = "invalid graph";
    for (const Diagnostic& d : diagnostics) text += "\n  " + d.element_id + ": " + d.message;
    return text;
}

enum class Algorithm { Layered, Box };

Algorithm algorithm_of(const GraphIndex& index, const Node& node) {
    std::string id = resolve<std::string>(index, node, opt::kAlgorithm);
    for (std::string_view prefix : {"org.eclipse.elk.", "elk."}) {
        if (id.rfind(prefix, 0) == 0) id = id.substr(prefix.size());
    }
    if (id == "layered") return Algorithm::Layered;
    if (id == "box") return Algorithm::Box;
    throw LayoutError("node '" + node.id + "': unknown layout algorithm '" +
                      resolve<std::string>(index, node, opt::kAlgorithm) + "'");
}

double label_band(const GraphIndex& index, const Node& node) {
    double height = 0.0;
    for (const Label& l : node.labels) height = std::max(height, l.height);
    return height > 0.0 ? height + resolve<double>(index, node, opt::kSpacingLabelPort) : 0.0;
}

Rect side_slot(PortSide side, double w, double h, double along, double pw, double ph) {
    switch (side) {
        case PortSide::West: return {-pw, along - ph / 2.0, pw, ph};
        case PortSide::North: return {along - pw / 2.0, -ph, pw, ph};
        case PortSide::South: return {along - pw / 2.0, h, pw, ph};
        case PortSide::East:
        case PortSide::Undefined: break;
    }
    return {w, along - ph / 2.0, pw, ph};
}

class Driver {
public:
    Driver(LayoutGraph& graph, const LevelObserver& observer)
        : graph_(graph), index_(graph.root), observer_(observer) {}

    LayoutStats run() {
        estimate_labels(graph_.root);
        layout_node(graph_.root);
        assemble_routes();
        place_edge_labels(graph_.root);
        LayoutStats stats;
        stats.crossings = crossings_;
        stats.bends = count_bends(graph_.root);
        stats.width = graph_.root.width;
        stats.height = graph_.root.height;
        return stats;
    }

private:
    void estimate_labels(Node& n) {
        for (Label& l : n.labels) estimate_label_size(l);
        for (Port& p : n.ports) {
            for (Label& l : p.labels) estimate_label_size(l);
        }
        for (Edge& e : n.edges) {
            for (Label& l : e.labels) estimate_label_size(l);
        }
        for (Node& c : n.children) estimate_labels(c);
    }

    void layout_node(Node& n) {
        for (Node& c : n.children) {
            if (c.is_compound()) {
                layout_node(c);
            } else {
                size_leaf(c);
            }
        }
        if (!n.is_compound()) return;

        const double band = label_band(index_, n);
        std::set<const Port*> determined;
        if (algorithm_of(index_, n) == Algorithm::Layered) {
            run_layered(n, band);
            for (const LevelEdge& le : level_edges(index_, n)) {
                if (le.source.kind == EndKind::External && le.source.port) determined.insert(le.source.port);
                if (le.target.kind == EndKind::External && le.target.port) determined.insert(le.target.port);
            }
            place_default_ports(n, determined, {});
        } else {
            run_box(n, band);
        }
        place_node_labels(n);
    }

    void size_leaf(Node& c) {
        const Padding pad = resolve<Padding>(index_, c, opt::kPadding);
        for (const Label& l : c.labels) {
            c.width = std::max(c.width, l.width + pad.left + pad.right);
            c.height = std::max(c.height, l.height + pad.top + pad.bottom);
        }
        place_node_labels(c);
        for (Port& p : c.ports) place_port_labels(p);
    }

    void run_layered(Node& n, double band) {
        layered::LGraph lg = layered::import_graph(index_, n, context_);
        const ProcessorPlan plan = default_plan(lg);
        StepObserver step_observer;
        if (observer_) {
            step_observer = [&](const TraceEntry& entry, std::span<const layered::LGraph>) { observer_(n, entry); };
        }
        execute(plan, lg, step_observer);
        if (lg.crossings > 0) crossings_ += lg.crossings;
        layered::export_graph(lg, n, context_, band);
    }

    void run_box(Node& n, double band) {
        Padding pad = resolve<Padding>(index_, n, opt::kPadding);
        pad.top += band;
        std::vector<BoxItem> items;
        for (const Node& c : n.children) items.push_back({c.width, c.height});
        const BoxPacking packing = pack_boxes(items, resolve<double>(index_, n, opt::kAspectRatio),
                                              resolve<double>(index_, n, opt::kSpacingNodeNode), pad);
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            n.children[i].x = packing.positions[i].x;
            n.children[i].y = packing.positions[i].y;
        }
        n.width = std::max(n.width, packing.width);
        n.height = std::max(n.height, packing.height);

        // Boundary crossings get ports on the west (incoming) or east side.
        const std::vector<LevelEdge> edges = level_edges(index_, n);
        std::vector<std::pair<const Edge*, PortSide>> implicit;
        for (const LevelEdge& le : edges) {
            if (le.source.kind == EndKind::External && !le.source.port) implicit.push_back({le.edge, PortSide::West});
            if (le.target.kind == EndKind::External && !le.target.port) implicit.push_back({le.edge, PortSide::East});
        }
        place_default_ports(n, {}, implicit);
        for (Node& c : n.children) {
            if (!c.is_compound()) place_default_ports(c, {}, {});
        }

        // Straight pieces between the anchors of each end.
        for (const LevelEdge& le : edges) {
            const Point s = end_anchor(n, le.source, le.edge);
            const Point t = end_anchor(n, le.target, le.edge);
            context_.pieces[{&n, le.edge}] = simplify_route({s, t});
        }
    }

    // Anchor of an edge end at level `n`, relative to `n`.
    Point end_anchor(const Node& n, const LevelEnd& end, const Edge* edge) const {
        switch (end.kind) {
            case EndKind::Child: return end.child->bounds().center();
            case EndKind::ChildPort: return Point{end.child->x, end.child->y} + end.port->anchor();
            case EndKind::ChildBoundary: {
                auto it = context_.implicit_ports.find({end.child, edge});
                if (it != context_.implicit_ports.end()) {
                    return Point{end.child->x, end.child->y} + it->second.bounds.center();
                }
                return end.child->bounds().center();
            }
            case EndKind::External: {
                if (end.port) return end.port->anchor();
                auto it = context_.implicit_ports.find({&n, edge});
                if (it != context_.implicit_ports.end()) return it->second.bounds.center();
                return Point{n.width / 2.0, n.height / 2.0};
            }
        }
        return {};
    }

    // Evenly distributes the ports nobody else positioned, per side.
    void place_default_ports(Node& n, const std::set<const Port*>& determined,
                             const std::vector<std::pair<const Edge*, PortSide>>& implicit) {
        const bool fixed = resolve<PortConstraints>(index_, n, opt::kPortConstraints) == PortConstraints::FixedPos;
        for (PortSide side : {PortSide::North, PortSide::East, PortSide::South, PortSide::West}) {
            std::vector<Port*> ports;
            if (!fixed) {
                for (Port& p : n.ports) {
                    const PortSide s = p.side == PortSide::Undefined ? PortSide::East : p.side;
                    if (s == side && !determined.count(&p)) ports.push_back(&p);
                }
            }
            std::vector<const Edge*> edges;
            for (const auto& [e, s] : implicit) {
                if (s == side) edges.push_back(e);
            }
            const std::size_t k = ports.size() + edges.size();
            if (k == 0) continue;
            const double length = side == PortSide::East || side == PortSide::West ? n.height : n.width;
            std::size_t i = 0;
            for (Port* p : ports) {
                const double along = length * static_cast<double>(++i) / static_cast<double>(k + 1);
                const Rect r = side_slot(side, n.width, n.height, along, p->width, p->height);
                p->x = r.x;
                p->y = r.y;
                p->side = side;
            }
            for (const Edge* e : edges) {
                const double along = length * static_cast<double>(++i) / static_cast<double>(k + 1);
                context_.implicit_ports[{&n, e}] = BoundaryPort{side, side_slot(side, n.width, n.height, along, 0, 0)};
            }
        }
        for (Port& p : n.ports) place_port_labels(p);
    }

    void place_node_labels(Node& n) {
        if (n.is_compound()) {
            const Padding pad = resolve<Padding>(index_, n, opt::kPadding);
            for (Label& l : n.labels) {
                l.x = pad.left;
                l.y = pad.top;
            }
            return;
        }
        for (Label& l : n.labels) {
            l.x = (n.width - l.width) / 2.0;
            l.y = (n.height - l.height) / 2.0;
        }
    }

    void place_port_labels(Port& p) {
        const double gap = resolve<double>(index_, p, opt::kSpacingLabelPort);
        for (Label& l : p.labels) {
            l.x = (p.width - l.width) / 2.0;
            l.y = -l.height - gap;
        }
    }

    Point absolute(const Node& n) const {
        if (&n == &graph_.root) return {};
        return absolute(*index_.parent(n)) + Point{n.x, n.y};
    }

    Point endpoint_anchor(const Endpoint& ep) const {
        const Point base = absolute(*ep.node);
        if (ep.port) return base + ep.port->anchor();
        return base + Point{ep.node->width / 2.0, ep.node->height / 2.0};
    }

    void assemble_routes() {
        struct Piece {
            int group;
            int depth;
            std::vector<Point> points;  // absolute
        };
        std::map<const Edge*, std::vector<Piece>> by_edge;
        for (const auto& [key, points] : context_.pieces) {
            const auto [level, edge] = key;
            const Endpoint s = index_.resolve(edge->source);
            const Endpoint t = index_.resolve(edge->target);
            const bool s_in = index_.is_descendant(*s.node, *level);
            const bool t_in = index_.is_descendant(*t.node, *level);
            const int depth = index_.depth(*level);
            Piece piece;
            if (s_in && !t_in) {
                piece.group = 0;
                piece.depth = -depth;
            } else if (s_in && t_in) {
                piece.group = 1;
                piece.depth = 0;
            } else {
                piece.group = 2;
                piece.depth = depth;
            }
            const Point base = absolute(*level);
            for (Point p : points) piece.points.push_back(p + base);
            by_edge[edge].push_back(std::move(piece));
        }

        for (const Edge* edge_ptr : index_.all_edges()) {
            Edge& edge = const_cast<Edge&>(*edge_ptr);
            std::vector<Point> route;
            auto it = by_edge.find(edge_ptr);
            if (it != by_edge.end()) {
                std::stable_sort(it->second.begin(), it->second.end(), [](const Piece& a, const Piece& b) {
                    return std::tie(a.group, a.depth) < std::tie(b.group, b.depth);
                });
                for (const Piece& piece : it->second) {
                    for (Point p : piece.points) {
                        if (route.empty() || !near(route.back(), p)) route.push_back(p);
                    }
                }
            }
            if (route.size() < 2) {
                route = {endpoint_anchor(index_.resolve(edge.source)), endpoint_anchor(index_.resolve(edge.target))};
            }
            const Point base = absolute(*index_.container(edge));
            for (Point& p : route) p = p - base;
            route = simplify_route(route);
            if (route.size() < 2) route.push_back(route.front());
            EdgeSection section;
            section.start = route.front();
            section.end = route.back();
            section.bend_points.assign(route.begin() + 1, route.end() - 1);
            edge.section = std::move(section);
        }
    }

    void place_edge_labels(Node& n) {
        for (Edge& e : n.edges) {
            if (e.labels.empty() || !e.section) continue;
            std::vector<Point> route{e.section->start};
            route.insert(route.end(), e.section->bend_points.begin(), e.section->bend_points.end());
            route.push_back(e.section->end);
            // Midpoint of the route by length.
            double total = 0.0;
            for (std::size_t i = 1; i < route.size(); ++i) {
                total += std::hypot(route[i].x - route[i - 1].x, route[i].y - route[i - 1].y);
            }
            Point mid = route.front();
            double walked = 0.0;
            for (std::size_t i = 1; i < route.size(); ++i) {
                const double len = std::hypot(route[i].x - route[i - 1].x, route[i].y - route[i - 1].y);
                if (walked + len >= total / 2.0 && len > 0.0) {
                    const double f = (total / 2.0 - walked) / len;
                    mid = route[i - 1] + (route[i] - route[i - 1]) * f;
                    break;
                }
                walked += len;
            }
            double y = mid.y;
            for (Label& l : e.labels) {
                l.x = mid.x - l.width / 2.0;
                l.y = y - l.height - 2.0;
                y -= l.height;
            }
        }
        for (Node& c : n.children) place_edge_labels(c);
    }

    LayoutGraph& graph_;
    GraphIndex index_;
    const LevelObserver& observer_;
    HierarchyContext context_;
    long long crossings_ = 0;
};

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(describe(diagnostics)), diagnostics_(std::move(diagnostics)) {}

LayoutStats layout(LayoutGraph& graph, const LevelObserver& observer) {
    std::vector<Diagnostic> problems = validate(graph);
    if (!problems.empty()) throw ValidationError(std::move(problems));
    return Driver(graph, observer).run();
}

std::vector<Component> separate_components(const GraphIndex& index, const Node& level) {
    const std::size_t n = level.children.size();
    std::vector<std::size_t> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](std::size_t x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    auto child_index = [&](const Node* c) { return static_cast<std::size_t>(c - level.children.data()); };
    const std::vector<LevelEdge> edges = level_edges(index, level);
    for (const LevelEdge& le : edges) {
        if (le.source.kind == EndKind::External || le.target.kind == EndKind::External) continue;
        uf[find(child_index(le.source.child))] = find(child_index(le.target.child));
    }
    std::map<std::size_t, std::size_t> component_of_root;
    std::vector<Component> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        auto [it, fresh] = component_of_root.try_emplace(r, out.size());
        if (fresh) {
            out.emplace_back();
            out.back().model_order = i;
        }
        out[it->second].nodes.push_back(&level.children[i]);
    }
    for (const LevelEdge& le : edges) {
        if (le.source.kind == EndKind::External || le.target.kind == EndKind::External) continue;
        out[component_of_root.at(find(child_index(le.source.child)))].edges.push_back(le.edge);
    }
    return out;
}

std::vector<Point> pack_components(std::span<const Rect> sizes, double aspect_ratio, double spacing) {
    std::vector<BoxItem> items;
    for (const Rect& r : sizes) items.push_back({r.width, r.height});
    return pack_boxes(items, aspect_ratio, spacing, Padding{0, 0, 0, 0}).positions;
}

void estimate_label_size(Label& label) {
    if (label.width <= 0.0 && label.height <= 0.0 && !label.text.empty()) {
        label.width = 7.0 * static_cast<double>(label.text.size());
        label.height = 16.0;
    }
}

std::size_t count_bends(const Node& root) {
    std::size_t total = 0;
    for (const Edge& e : root.edges) {
        if (e.section) total += e.section->bend_points.size();
    }
    for (const Node& c : root.children) total += count_bends(c);
    return total;
}

}  // namespace layr
