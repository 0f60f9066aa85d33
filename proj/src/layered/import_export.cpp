#include "layr/layered/import_export.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace layr::layered {

LayeredSettings resolve_settings(const GraphIndex& index, const Node& level) {
    LayeredSettings s;
    s.direction = resolve<Direction>(index, level, opt::kDirection);
    s.cycle_breaking = resolve<CycleBreakingStrategy>(index, level, opt::kCycleBreaking);
    s.layering = resolve<LayeringStrategy>(index, level, opt::kLayering);
    s.coffman_graham_width = resolve<int>(index, level, opt::kCoffmanGrahamWidth);
    s.node_promotion = resolve<bool>(index, level, opt::kNodePromotion);
    s.crossing_minimization = resolve<CrossingMinimizationStrategy>(index, level, opt::kCrossingMinimization);
    s.force_node_model_order = resolve<bool>(index, level, opt::kForceNodeModelOrder);
    s.model_order = resolve<ModelOrderStrategy>(index, level, opt::kConsiderModelOrder);
    s.node_placement = resolve<NodePlacementStrategy>(index, level, opt::kNodePlacement);
    s.edge_routing = resolve<EdgeRouting>(index, level, opt::kEdgeRouting);
    s.node_node = resolve<double>(index, level, opt::kSpacingNodeNode);
    s.edge_edge = resolve<double>(index, level, opt::kSpacingEdgeEdge);
    s.edge_node = resolve<double>(index, level, opt::kSpacingEdgeNode);
    s.port_port = resolve<double>(index, level, opt::kSpacingPortPort);
    s.label_port = resolve<double>(index, level, opt::kSpacingLabelPort);
    s.padding = resolve<Padding>(index, level, opt::kPadding);
    s.aspect_ratio = resolve<double>(index, level, opt::kAspectRatio);
    s.separate_components = resolve<bool>(index, level, opt::kSeparateComponents);
    s.level_port_constraints = resolve<PortConstraints>(index, level, opt::kPortConstraints);
    return s;
}

namespace {

// Side of a port box on a w x h node, by the nearest border.
PortSide nearest_side(const Rect& r, double w, double h) {
    const Point c = r.center();
    const double d_west = std::abs(c.x);
    const double d_east = std::abs(c.x - w);
    const double d_north = std::abs(c.y);
    const double d_south = std::abs(c.y - h);
    const double best = std::min({d_west, d_east, d_north, d_south});
    if (best == d_west) return PortSide::West;
    if (best == d_east) return PortSide::East;
    if (best == d_north) return PortSide::North;
    return PortSide::South;
}

// A port rectangle relative to a w x h node, mapped into the internal frame.
Rect port_rect_internal(const DirectionTransform& t, const Rect& port, double w, double h) {
    const Rect node = t.to_internal(Rect{0.0, 0.0, w, h});
    const Rect r = t.to_internal(port);
    return {r.x - node.x, r.y - node.y, r.width, r.height};
}

class Importer {
public:
    Importer(const GraphIndex& index, const Node& level, const HierarchyContext& context)
        : index_(index), level_(level), context_(context), t_(Direction::Right) {}

    LGraph run() {
        g_.name = level_.id;
        g_.settings = resolve_settings(index_, level_);
        t_ = DirectionTransform(g_.settings.direction);
        for (std::size_t i = 0; i < level_.children.size(); ++i) add_child(level_.children[i], static_cast<int>(i));

        const std::vector<LevelEdge> edges = level_edges(index_, level_);
        // Sides of explicit level ports follow the majority of their edges.
        for (const LevelEdge& le : edges) {
            if (le.source.kind == EndKind::External && le.source.port) ++port_flow_[le.source.port].first;
            if (le.target.kind == EndKind::External && le.target.port) ++port_flow_[le.target.port].second;
        }
        for (std::size_t k = 0; k < edges.size(); ++k) {
            const LevelEdge& le = edges[k];
            const int origin = static_cast<int>(g_.edge_origins.size());
            g_.edge_origins.push_back(le.edge);
            const int s = end_port(le.source, le.edge, true, static_cast<int>(k));
            const int t = end_port(le.target, le.edge, false, static_cast<int>(k));
            g_.add_edge(s, t, origin, static_cast<int>(k));
        }
        return std::move(g_);
    }

private:
    void add_child(const Node& c, int order) {
        const Rect r = t_.to_internal(Rect{0.0, 0.0, c.width, c.height});
        const int v = g_.add_node(NodeKind::Normal, r.width, r.height);
        LNode& node = g_.nodes[v];
        node.origin = &c;
        node.model_order = order;
        node.constraints = c.is_compound() ? PortConstraints::FixedPos
                                           : resolve<PortConstraints>(index_, c, opt::kPortConstraints);
        node_of_[&c] = v;
        for (std::size_t j = 0; j < c.ports.size(); ++j) {
            const Port& p = c.ports[j];
            const Rect pr = port_rect_internal(t_, p.bounds(), c.width, c.height);
            const bool fixed = g_.nodes[v].constraints == PortConstraints::FixedPos;
            PortSide side = t_.to_internal(p.side);
            if (side == PortSide::Undefined && fixed) side = nearest_side(pr, r.width, r.height);
            const int lp = g_.add_port(v, side, pr.width, pr.height);
            LPort& port = g_.ports[lp];
            port.origin = &p;
            port.model_order = static_cast<int>(j);
            port.fixed_position = fixed;
            if (fixed) port.pos = {pr.x, pr.y};
            port_of_[&p] = lp;
        }
    }

    int end_port(const LevelEnd& end, const Edge* edge, bool is_source, int k) {
        switch (end.kind) {
            case EndKind::ChildPort: return port_of_.at(end.port);
            case EndKind::ChildBoundary: {
                const int v = node_of_.at(end.child);
                auto it = context_.implicit_ports.find({end.child, edge});
                if (it == context_.implicit_ports.end()) break;
                const Rect pr = port_rect_internal(t_, it->second.bounds, end.child->width, end.child->height);
                const int lp = g_.add_port(v, t_.to_internal(it->second.side), pr.width, pr.height);
                g_.ports[lp].pos = {pr.x, pr.y};
                g_.ports[lp].fixed_position = true;
                g_.ports[lp].model_order = static_cast<int>(end.child->ports.size()) + k;
                return lp;
            }
            case EndKind::Child: break;
            case EndKind::External: return external_port(end.port, edge, is_source, k);
        }
        const int v = node_of_.at(end.child);
        const int lp = g_.add_port(v, PortSide::Undefined);
        g_.ports[lp].model_order = static_cast<int>(end.child->ports.size()) + k;
        return lp;
    }

    int external_port(const Port* port, const Edge* edge, bool is_source, int k) {
        if (port) {
            auto it = external_of_.find(port);
            if (it != external_of_.end()) return g_.nodes[g_.externals[it->second].dummy].ports.front();
        }
        ExternalPort ext;
        ext.port = port;
        ext.edge = port ? nullptr : edge;
        // Edges entering the level come in from the WEST, leaving ones go EAST.
        PortSide side = is_source ? PortSide::West : PortSide::East;
        if (port) {
            const auto [out_of, into] = port_flow_[port];
            side = out_of >= into ? PortSide::West : PortSide::East;
            const PortSide fixed = t_.to_internal(port->side);
            if (g_.settings.level_port_constraints >= PortConstraints::FixedSide &&
                (fixed == PortSide::West || fixed == PortSide::East)) {
                side = fixed;
            }
            const Rect pr = t_.to_internal(port->bounds());
            ext.width = pr.width;
            ext.height = pr.height;
            ext.model_order = static_cast<int>(index_.model_order(*port));
        } else {
            ext.model_order = static_cast<int>(level_.ports.size()) + k;
        }
        ext.side = side;
        const int d = g_.add_node(NodeKind::ExternalPortDummy, 0.0, ext.height);
        const int lp = g_.add_port(d, side == PortSide::West ? PortSide::East : PortSide::West, 0.0, ext.height);
        g_.ports[lp].fixed_position = true;
        g_.ports[lp].model_order = ext.model_order;
        g_.nodes[d].external = static_cast<int>(g_.externals.size());
        g_.nodes[d].constraints = PortConstraints::FixedPos;
        ext.dummy = d;
        if (port) external_of_[port] = g_.nodes[d].external;
        g_.externals.push_back(ext);
        return lp;
    }

    const GraphIndex& index_;
    const Node& level_;
    const HierarchyContext& context_;
    DirectionTransform t_;
    LGraph g_;
    std::map<const Node*, int> node_of_;
    std::map<const Port*, int> port_of_;
    std::map<const Port*, int> external_of_;
    std::map<const Port*, std::pair<int, int>> port_flow_;  // (edges leaving it inwards, edges arriving)
};

}  // namespace

LGraph import_graph(const GraphIndex& index, const Node& level, const HierarchyContext& context) {
    return Importer(index, level, context).run();
}

void export_graph(const LGraph& graph, Node& level, HierarchyContext& context, double top_band) {
    const DirectionTransform t(graph.settings.direction);
    const Padding& pad = graph.settings.padding;

    auto external_point = [&](int port) -> Point {
        const LNode& n = graph.nodes[graph.ports[port].node];
        if (n.kind == NodeKind::ExternalPortDummy && !n.alive) return t.to_external(graph.externals[n.external].anchor);
        return t.to_external(graph.anchor(port));
    };

    BoundingBox box;
    for (const LNode& v : graph.nodes) {
        if (!v.alive) continue;
        if (v.kind == NodeKind::ExternalPortDummy) {
            box.add(t.to_external(graph.anchor(v.ports.front())));
            continue;
        }
        box.add(t.to_external(v.bounds()));
        for (int p : v.ports) {
            const LPort& port = graph.ports[p];
            box.add(t.to_external(Rect{v.x + port.pos.x, v.y + port.pos.y, port.width, port.height}));
        }
    }
    for (const ExternalPort& ext : graph.externals) {
        if (ext.placed) box.add(t.to_external(ext.anchor));
    }
    for (const LEdge& e : graph.edges) {
        if (!e.alive) continue;
        box.add(external_point(e.source));
        box.add(external_point(e.target));
        for (Point b : e.bends) box.add(t.to_external(b));
    }
    const Rect content = box.rect();
    const Point offset{pad.left - content.x, pad.top + top_band - content.y};
    level.width = std::max(level.width, content.width + pad.left + pad.right);
    level.height = std::max(level.height, content.height + pad.top + top_band + pad.bottom);

    // Children and their ports.
    for (const LNode& v : graph.nodes) {
        if (!v.alive || v.kind != NodeKind::Normal || !v.origin) continue;
        Node& child = level.children[static_cast<std::size_t>(v.origin - level.children.data())];
        const Rect r = t.to_external(v.bounds());
        child.x = r.x + offset.x;
        child.y = r.y + offset.y;
        child.width = r.width;
        child.height = r.height;
        for (int p : v.ports) {
            const LPort& lp = graph.ports[p];
            if (!lp.origin || lp.fixed_position) continue;
            Port& port = child.ports[static_cast<std::size_t>(lp.origin - child.ports.data())];
            const Rect pr = t.to_external(Rect{v.x + lp.pos.x, v.y + lp.pos.y, lp.width, lp.height});
            port.x = pr.x - r.x;
            port.y = pr.y - r.y;
            port.side = t.to_external(lp.side);
        }
    }

    // Ports of the level itself, on its border at the dummies' height.
    std::vector<Point> border_anchor(graph.externals.size());
    for (std::size_t i = 0; i < graph.externals.size(); ++i) {
        const ExternalPort& ext = graph.externals[i];
        Point a = t.to_external(ext.placed ? ext.anchor : graph.anchor(graph.nodes[ext.dummy].ports.front()));
        a = a + offset;
        const PortSide side = t.to_external(ext.side);
        const double pw = ext.port ? ext.port->width : 0.0;
        const double ph = ext.port ? ext.port->height : 0.0;
        Rect r{0.0, 0.0, pw, ph};
        switch (side) {
            case PortSide::West: r.x = -pw; r.y = a.y - ph / 2.0; break;
            case PortSide::East: r.x = level.width; r.y = a.y - ph / 2.0; break;
            case PortSide::North: r.x = a.x - pw / 2.0; r.y = -ph; break;
            case PortSide::South:
            case PortSide::Undefined: r.x = a.x - pw / 2.0; r.y = level.height; break;
        }
        border_anchor[i] = r.center();
        if (ext.port) {
            Port& port = level.ports[static_cast<std::size_t>(ext.port - level.ports.data())];
            port.x = r.x;
            port.y = r.y;
            port.side = side;
        } else {
            context.implicit_ports[{&level, ext.edge}] = BoundaryPort{side, r};
        }
    }

    for (const LEdge& e : graph.edges) {
        if (!e.alive || e.origin < 0) continue;
        auto end_point = [&](int port) {
            const LNode& n = graph.nodes[graph.ports[port].node];
            if (n.kind == NodeKind::ExternalPortDummy) return border_anchor[static_cast<std::size_t>(n.external)];
            return t.to_external(graph.anchor(port)) + offset;
        };
        std::vector<Point> points{end_point(e.source)};
        for (Point b : e.bends) points.push_back(t.to_external(b) + offset);
        points.push_back(end_point(e.target));
        context.pieces[{&level, graph.edge_origins[e.origin]}] = simplify_route(points);
    }
}

}  // namespace layr::layered
