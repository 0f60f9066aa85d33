#include <gtest/gtest.h>

#include <set>

#include "layr/box.hpp"
#include "layr/errors.hpp"
#include "layr/io.hpp"
#include "layr/layered/import_export.hpp"
#include "layr/layout.hpp"
#include "support.hpp"

using namespace layr;

namespace {

const Node& child(const Node& n, const std::string& id) {
    for (const Node& c : n.children) {
        if (c.id == id) return c;
    }
    throw std::runtime_error("no child " + id);
}

bool disjoint(const Rect& a, const Rect& b, double gap) {
    return a.right() + gap <= b.x + 1e-6 || b.right() + gap <= a.x + 1e-6 || a.bottom() + gap <= b.y + 1e-6 ||
           b.bottom() + gap <= a.y + 1e-6;
}

// Every compound encloses its children inside the padding, recursively.
void expect_enclosed(const Node& n) {
    for (const Node& c : n.children) {
        EXPECT_GE(c.x, 12 - 1e-6) << c.id;
        EXPECT_GE(c.y, 12 - 1e-6) << c.id;
        EXPECT_LE(c.x + c.width, n.width - 12 + 1e-6) << c.id;
        EXPECT_LE(c.y + c.height, n.height - 12 + 1e-6) << c.id;
        expect_enclosed(c);
    }
}

const std::string kHierarchy = R"({"id":"root","children":[
    {"id":"x","width":20,"height":20},
    {"id":"p","ports":[{"id":"gp","width":4,"height":4}],"children":[{"id":"a","width":30,"height":20},{"id":"b","width":30,"height":20}],
     "edges":[{"id":"gpa","sources":["gp"],"targets":["a"]}]}],
  "edges":[{"id":"xgp","sources":["x"],"targets":["gp"]},{"id":"xb","sources":["x"],"targets":["b"]}]})";

}  // namespace

TEST(Import, ChildrenAndEdges) {
    const LayoutGraph g = fixtures::flat_graph(2, {{0, 1}});
    const GraphIndex index(g.root);
    const layered::LGraph lg = layered::import_graph(index, g.root, {});
    EXPECT_EQ(lg.alive_nodes(), 2u);
    EXPECT_EQ(lg.alive_edges(), 1u);
    EXPECT_EQ(lg.nodes[0].origin, &g.root.children[0]);
}

TEST(Import, DownwardFlowRotatesPortSides) {
    LayoutGraph g = fixtures::flat_graph(1, {});
    g.root.options.set(opt::kDirection, Direction::Down);
    Node& n = g.root.children[0];
    n.options.set(opt::kPortConstraints, PortConstraints::FixedSide);
    n.ports.push_back(Port{.id = "s", .side = PortSide::South});
    n.ports.push_back(Port{.id = "w", .side = PortSide::West});
    const GraphIndex index(g.root);
    const layered::LGraph lg = layered::import_graph(index, g.root, {});
    EXPECT_EQ(lg.ports[lg.nodes[0].ports[0]].side, PortSide::East);
    EXPECT_EQ(lg.ports[lg.nodes[0].ports[1]].side, PortSide::North);
}

TEST(Import, IncomingHierarchicalEdgeBecomesWestDummy) {
    LayoutGraph g = parse(kHierarchy);
    const GraphIndex index(g.root);
    const layered::LGraph lg = layered::import_graph(index, child(g.root, "p"), {});
    // gp (explicit port, incoming) and the implicit crossing of xb.
    ASSERT_EQ(lg.externals.size(), 2u);
    for (const auto& ext : lg.externals) {
        EXPECT_EQ(ext.side, PortSide::West);
        EXPECT_EQ(lg.nodes[ext.dummy].kind, layered::NodeKind::ExternalPortDummy);
    }
}

TEST(DirectionTransform, RoundTripsEveryDirection) {
    for (Direction d : {Direction::Right, Direction::Left, Direction::Down, Direction::Up}) {
        const DirectionTransform t(d);
        const Point p{3.5, -7.25};
        EXPECT_EQ(t.to_external(t.to_internal(p)), p);
        const Rect r{1, 2, 30, 40};
        EXPECT_EQ(t.to_external(t.to_internal(r)), r);
        for (PortSide s : {PortSide::North, PortSide::East, PortSide::South, PortSide::West}) {
            EXPECT_EQ(t.to_external(t.to_internal(s)), s);
        }
    }
    EXPECT_EQ(DirectionTransform(Direction::Down).to_internal(PortSide::South), PortSide::East);
}

TEST(Layout, LeafKeepsItsSize) {
    LayoutGraph g = fixtures::flat_graph(1, {});
    g.root.children[0].width = 50;
    g.root.children[0].height = 30;
    layout(g);
    EXPECT_EQ(g.root.children[0].width, 50);
    EXPECT_EQ(g.root.children[0].height, 30);
    EXPECT_TRUE(std::isfinite(g.root.children[0].x));
}

TEST(Layout, CompoundEnclosesItsChildrenWithPadding) {
    LayoutGraph g = parse(kHierarchy);
    layout(g);
    expect_enclosed(g.root);
    const Node& p = child(g.root, "p");
    // Content 30x20 + 30x20 stacked or in a row, plus 12 on every side.
    EXPECT_GE(p.width, 30 + 24);
    EXPECT_GE(p.height, 20 + 24);
}

TEST(Layout, HierarchicalPortsMatchTheInnerLayout) {
    LayoutGraph g = parse(kHierarchy);
    layout(g);
    const Node& p = child(g.root, "p");
    const Port& gp = p.ports[0];
    EXPECT_EQ(gp.side, PortSide::West);
    EXPECT_NEAR(gp.x, -gp.width, 1e-6);
    const Point anchor = gp.anchor();
    // The inner piece starts at the port; the outer piece ends there.
    const Edge& inner = p.edges[0];
    ASSERT_TRUE(inner.section);
    EXPECT_TRUE(near(inner.section->start, anchor));
    const Edge& outer = g.root.edges[0];
    ASSERT_TRUE(outer.section);
    EXPECT_TRUE(near(outer.section->end, Point{p.x, p.y} + anchor));
    // The implicit crossing of xb meets the west border of p.
    const Edge& xb = g.root.edges[1];
    std::vector<Point> route{xb.section->start};
    route.insert(route.end(), xb.section->bend_points.begin(), xb.section->bend_points.end());
    route.push_back(xb.section->end);
    bool crosses = false;
    for (std::size_t i = 1; i < route.size(); ++i) {
        const double lo = std::min(route[i - 1].x, route[i].x);
        const double hi = std::max(route[i - 1].x, route[i].x);
        const double y = route[i].y;
        crosses = crosses || (lo <= p.x && p.x <= hi && p.y <= y && y <= p.y + p.height);
    }
    EXPECT_TRUE(crosses);
}

TEST(Layout, UnknownAlgorithmNamesNodeAndId) {
    LayoutGraph g = parse(kHierarchy);
    g.root.children[1].options.set_from_string("algorithm", "force");
    try {
        layout(g);
        FAIL();
    } catch (const LayoutError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("'p'"), std::string::npos) << what;
        EXPECT_NE(what.find("'force'"), std::string::npos) << what;
    }
    g.root.children[1].options.set_from_string("algorithm", "org.eclipse.elk.box");
    EXPECT_NO_THROW(layout(g));
}

TEST(Layout, InvalidGraphsAreRejected) {
    LayoutGraph g = fixtures::flat_graph(2, {{0, 1}});
    g.root.children[0].height = -3;
    EXPECT_THROW(layout(g), ValidationError);
}

TEST(Layout, ChildLevelsFinishBeforeTheirParents) {
    LayoutGraph g = parse(R"({"id":"root","children":[
        {"id":"p","children":[{"id":"q","children":[{"id":"a"},{"id":"b"}]},{"id":"c"}]},{"id":"d"}]})");
    std::vector<std::string> levels;
    layout(g, [&](const Node& level, const TraceEntry&) {
        if (levels.empty() || levels.back() != level.id) levels.push_back(level.id);
    });
    EXPECT_EQ(levels, (std::vector<std::string>{"q", "p", "root"}));
}

TEST(Layout, AlternatingAlgorithmsPerLevel) {
    LayoutGraph g = parse(R"({"id":"root","children":[
        {"id":"boxes","layoutOptions":{"algorithm":"box"},"children":[
           {"id":"inner","children":[{"id":"a","width":20,"height":20},{"id":"b","width":20,"height":20}],
            "edges":[{"id":"ab","sources":["a"],"targets":["b"]}]},
           {"id":"c","width":40,"height":10},{"id":"d","width":10,"height":40}]},
        {"id":"e","width":30,"height":30}],
      "edges":[{"id":"be","sources":["boxes"],"targets":["e"]}]})");
    layout(g);
    expect_enclosed(g.root);
    const Node& boxes = child(g.root, "boxes");
    for (std::size_t i = 0; i < boxes.children.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.children.size(); ++j) {
            EXPECT_TRUE(disjoint(boxes.children[i].bounds(), boxes.children[j].bounds(), 20));
        }
    }
    const Node& inner = child(boxes, "inner");
    EXPECT_LT(child(inner, "a").x, child(inner, "b").x);  // left to right inside the box level
}

TEST(Layout, ComponentsArePackedApart) {
    LayoutGraph g = fixtures::flat_graph(6, {{0, 1}, {2, 3}, {4, 5}});
    layout(g);
    std::vector<Rect> boxes;
    for (int k = 0; k < 3; ++k) {
        BoundingBox bb;
        bb.add(g.root.children[2 * k].bounds());
        bb.add(g.root.children[2 * k + 1].bounds());
        boxes.push_back(bb.rect());
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) EXPECT_TRUE(disjoint(boxes[i], boxes[j], 20 - 1e-6)) << i << " " << j;
    }
}

TEST(Layout, ConsistentPortModelOrderAvoidsTheCrossing) {
    LayoutGraph g = parse(R"({"id":"root","layoutOptions":{"considerModelOrder.strategy":"NODES_AND_EDGES"},"children":[
        {"id":"chrono","ports":[{"id":"m"},{"id":"s"},{"id":"d"}],
         "children":[{"id":"clock","width":30,"height":30}],
         "edges":[{"id":"cm","sources":["clock"],"targets":["m"]},{"id":"cs","sources":["clock"],"targets":["s"]},
                  {"id":"cd","sources":["clock"],"targets":["d"]}]},
        {"id":"view","ports":[{"id":"vm"},{"id":"vs"},{"id":"vd"}],
         "children":[{"id":"dm","width":20,"height":20},{"id":"ds","width":20,"height":20},{"id":"dd","width":20,"height":20}],
         "edges":[{"id":"m2","sources":["vm"],"targets":["dm"]},{"id":"s2","sources":["vs"],"targets":["ds"]},
                  {"id":"d2","sources":["vd"],"targets":["dd"]}]}],
      "edges":[{"id":"mm","sources":["m"],"targets":["vm"]},{"id":"ss","sources":["s"],"targets":["vs"]},
               {"id":"dd2","sources":["d"],"targets":["vd"]}]})");
    const LayoutStats stats = layout(g);
    EXPECT_EQ(stats.crossings, 0);
    const Node& chrono = child(g.root, "chrono");
    EXPECT_LT(chrono.ports[0].y, chrono.ports[1].y);
    EXPECT_LT(chrono.ports[1].y, chrono.ports[2].y);
}

TEST(PortOrderScenario, ModelOrderRemovesTheHierarchyCrossing) {
    const auto with = fixtures::port_order_scenario(ModelOrderStrategy::NodesAndEdges, true);
    EXPECT_EQ(with.inner_order, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(with.outer_crossings, 0);
    const auto without = fixtures::port_order_scenario(ModelOrderStrategy::None, true);
    EXPECT_EQ(without.inner_order, (std::vector<int>{2, 1, 0}));
    EXPECT_GE(without.outer_crossings, 1);
}

TEST(SeparateComponents, Partitions) {
    const LayoutGraph connected = fixtures::flat_graph(3, {{0, 1}, {1, 2}});
    EXPECT_EQ(separate_components(GraphIndex(connected.root), connected.root).size(), 1u);

    const LayoutGraph isolated = fixtures::flat_graph(3, {});
    const auto three = separate_components(GraphIndex(isolated.root), isolated.root);
    ASSERT_EQ(three.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(three[i].model_order, i);
        EXPECT_EQ(three[i].nodes[0]->id, "n" + std::to_string(i));
    }

    const LayoutGraph pairs = fixtures::flat_graph(4, {{0, 2}, {1, 3}});
    const auto two = separate_components(GraphIndex(pairs.root), pairs.root);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].nodes.size(), 2u);
    EXPECT_EQ(two[1].edges.size(), 1u);
    EXPECT_EQ(two[1].nodes[1]->id, "n3");
}

TEST(PackComponents, RowsTowardsTheAspectRatio) {
    const std::vector<Rect> one{{0, 0, 10, 10}};
    EXPECT_EQ(pack_components(one, 1.6, 20), (std::vector<Point>{{0, 0}}));

    const std::vector<Rect> four(4, Rect{0, 0, 1, 1});
    const auto grid = pack_components(four, 1.0, 0);
    std::set<double> xs, ys;
    for (Point p : grid) {
        xs.insert(p.x);
        ys.insert(p.y);
    }
    EXPECT_EQ(xs.size(), 2u);
    EXPECT_EQ(ys.size(), 2u);

    const std::vector<Rect> two(2, Rect{0, 0, 10, 10});
    const auto row = pack_components(two, 100, 20);
    EXPECT_EQ(row[0].y, row[1].y);
}

TEST(BoxPacking, Arithmetic) {
    const std::vector<BoxItem> one{{10, 10}};
    const BoxPacking p1 = pack_boxes(one, 1.6, 20, Padding{});
    EXPECT_EQ(p1.width, 34);
    EXPECT_EQ(p1.height, 34);
    EXPECT_EQ(p1.positions[0], (Point{12, 12}));

    const std::vector<BoxItem> four(4, BoxItem{10, 10});
    const BoxPacking p4 = pack_boxes(four, 1, 0, Padding{0, 0, 0, 0});
    EXPECT_EQ(p4.positions[0], (Point{0, 0}));
    EXPECT_EQ(p4.positions[1], (Point{10, 0}));
    EXPECT_EQ(p4.positions[2], (Point{0, 10}));
    EXPECT_EQ(p4.positions[3], (Point{10, 10}));

    const BoxPacking none = pack_boxes({}, 1, 5, Padding{});
    EXPECT_EQ(none.width, 24);
    EXPECT_EQ(none.height, 24);

    EXPECT_THROW(pack_boxes(one, 0, 0, Padding{}), std::invalid_argument);
    EXPECT_THROW(pack_boxes(one, -1, 0, Padding{}), std::invalid_argument);
}

TEST(BoxPacking, RandomItemsDoNotOverlap) {
    std::mt19937 rng(19);
    for (int round = 0; round < 200; ++round) {
        std::vector<BoxItem> items(1 + rng() % 15);
        for (BoxItem& b : items) b = {static_cast<double>(rng() % 50), static_cast<double>(rng() % 50)};
        const double spacing = static_cast<double>(rng() % 10);
        const double ar = 0.2 + static_cast<double>(rng() % 40) / 10.0;
        const Padding pad{3, 4, 5, 6};
        const BoxPacking p = pack_boxes(items, ar, spacing, pad);
        EXPECT_EQ(p.positions[0], (Point{pad.left, pad.top}));
        for (std::size_t i = 0; i < items.size(); ++i) {
            const Rect a{p.positions[i].x, p.positions[i].y, items[i].width, items[i].height};
            EXPECT_LE(a.right() + pad.right, p.width + 1e-6);
            EXPECT_LE(a.bottom() + pad.bottom, p.height + 1e-6);
            for (std::size_t j = i + 1; j < items.size(); ++j) {
                const Rect b{p.positions[j].x, p.positions[j].y, items[j].width, items[j].height};
                EXPECT_TRUE(disjoint(a, b, spacing)) << round << ": " << i << " " << j;
            }
        }
        EXPECT_EQ(pack_boxes(items, ar, spacing, pad).positions, p.positions);
    }
}
