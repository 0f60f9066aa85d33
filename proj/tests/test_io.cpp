#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <vector>

#include "layr/io.hpp"
#include "layr/layout.hpp"

using namespace layr;

namespace {

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

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

// Tag balance and attribute quoting; enough to catch broken markup without an
// XML library.
bool well_formed(const std::string& xml) {
    std::vector<std::string> stack;
    static const std::regex tag(R"(<(/?)([A-Za-z][\w:-]*)((?:\s+[\w:-]+="[^"<]*")*)\s*(/?)>)");
    std::size_t at = xml.find("<svg");
    if (at == std::string::npos) return false;
    while (true) {
        std::size_t lt = xml.find('<', at);
        if (lt == std::string::npos) break;
        std::smatch m;
        std::string rest = xml.substr(lt);
        if (!std::regex_search(rest, m, tag, std::regex_constants::match_continuous)) return false;
        if (m[1].length() > 0) {
            if (stack.empty() || stack.back() != m[2].str()) return false;
            stack.pop_back();
        } else if (m[4].length() == 0) {
            stack.push_back(m[2].str());
        }
        at = lt + m.length(0);
        // text between tags may not contain raw '<' or '&' without an entity
        std::size_t next = xml.find('<', at);
        std::string text = xml.substr(at, next == std::string::npos ? std::string::npos : next - at);
        for (std::size_t amp = text.find('&'); amp != std::string::npos; amp = text.find('&', amp + 1)) {
            if (text.find(';', amp) == std::string::npos) return false;
        }
    }
    return stack.empty();
}

}  // namespace

TEST(Parse, SingleNodeDocument) {
    LayoutGraph g = parse(R"({"id":"root","children":[{"id":"n1","width":10,"height":10}]})");
    ASSERT_EQ(g.root.children.size(), 1u);
    EXPECT_EQ(g.root.children[0].id, "n1");
    EXPECT_DOUBLE_EQ(g.root.children[0].width, 10.0);
    EXPECT_DOUBLE_EQ(g.root.children[0].height, 10.0);
}

TEST(Parse, DanglingEdgeEndIsNamed) {
    try {
        parse(R"({"id":"root","children":[{"id":"a"}],"edges":[{"id":"e","sources":["a"],"targets":["ghost"]}]})");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos) << e.what();
    }
}

TEST(Parse, NumericStringOptionBecomesDouble) {
    LayoutGraph g = parse(R"({"id":"root","layoutOptions":{"spacing.nodeNode":"30"}})");
    const OptionValue* v = g.root.options.find("spacing.nodeNode");
    ASSERT_NE(v, nullptr);
    ASSERT_TRUE(std::holds_alternative<double>(*v));
    EXPECT_DOUBLE_EQ(std::get<double>(*v), 30.0);
}

TEST(Parse, SyntaxErrorCarriesBytePosition) {
    const std::string text = R"({"id":"root", "children": [ )";
    try {
        parse(text);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(e.position(), ParseError::npos);
        EXPECT_LE(e.position(), text.size());
    }
    try {
        parse(R"({"id": "root",, })");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 14u);
    }
}

TEST(Parse, UnknownOptionKeyIsNamed) {
    try {
        parse(R"({"id":"root","layoutOptions":{"spacing.nodeNod":"30"}})");
        FAIL();
    } catch (const OptionError& e) {
        EXPECT_NE(std::string(e.what()).find("spacing.nodeNod"), std::string::npos);
    }
}

TEST(Parse, UnknownFieldIsRejectedWithItsPath) {
    try {
        parse(R"({"id":"root","children":[{"id":"a","colour":"red"}]})");
        FAIL();
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("/children/0"), std::string::npos) << msg;
        EXPECT_NE(msg.find("colour"), std::string::npos) << msg;
    }
}

TEST(Parse, HyperedgesAreRejected) {
    EXPECT_THROW(parse(R"({"id":"root","children":[{"id":"a"},{"id":"b"},{"id":"c"}],
        "edges":[{"id":"e","sources":["a","b"],"targets":["c"]}]})"),
                 ParseError);
    EXPECT_THROW(parse(R"({"id":"root","children":[{"id":"a"}],"edges":[{"id":"e","sources":["a"],"targets":[]}]})"),
                 ParseError);
}

TEST(Serialize, WritesIntegralCoordinatesWithoutFraction) {
    LayoutGraph g;
    g.root.id = "root";
    g.root.children.push_back(Node{.id = "a", .x = 5, .y = 7, .width = 10, .height = -0.0});
    const std::string out = serialize(g);
    EXPECT_NE(out.find("\"x\": 5,"), std::string::npos) << out;
    EXPECT_NE(out.find("\"y\": 7,"), std::string::npos);
    EXPECT_EQ(out.find("5.0"), std::string::npos);
    EXPECT_EQ(out.find("-0"), std::string::npos);
    EXPECT_EQ(out.back(), '\n');
}

TEST(Serialize, StraightEdgeHasEmptyBendPoints) {
    LayoutGraph g = parse(R"({"id":"root","children":[{"id":"a","width":10,"height":10},{"id":"b","width":10,"height":10}],
        "edges":[{"id":"e","sources":["a"],"targets":["b"]}]})");
    layout(g);
    ASSERT_TRUE(g.root.edges[0].section.has_value());
    EXPECT_TRUE(g.root.edges[0].section->bend_points.empty());
    const std::string out = serialize(g);
    EXPECT_NE(out.find("\"bendPoints\": []"), std::string::npos) << out;
}

TEST(Serialize, TwoBendRoundTrip) {
    const char* doc = R"({"id":"root","children":[{"id":"a","width":10,"height":10},{"id":"b","width":10,"height":10}],
        "edges":[{"id":"e","sources":["a"],"targets":["b"],"sections":[{"id":"e_s0",
        "startPoint":{"x":10,"y":5},"endPoint":{"x":40,"y":25},"bendPoints":[{"x":20,"y":5},{"x":20,"y":25}]}]}]})";
    LayoutGraph g = parse(doc);
    ASSERT_TRUE(g.root.edges[0].section.has_value());
    EXPECT_EQ(g.root.edges[0].section->bend_points.size(), 2u);
    EXPECT_EQ(parse(serialize(g)), g);
}

TEST(Serialize, CorpusIsAFixpointOfParseAndSerialize) {
    const auto files = corpus();
    ASSERT_GE(files.size(), 20u);
    for (const auto& f : files) {
        SCOPED_TRACE(f.filename().string());
        LayoutGraph g = parse(slurp(f));
        const std::string once = serialize(g);
        EXPECT_EQ(parse(once), g);
        EXPECT_EQ(serialize(parse(once)), once);
        // computed port sides are not part of the document, so laid-out
        // graphs are compared as text
        layout(g);
        const std::string laid = serialize(g);
        EXPECT_EQ(serialize(parse(laid)), laid);
    }
}

TEST(Svg, OneNodeGivesOneRect) {
    LayoutGraph g = parse(R"({"id":"root","children":[{"id":"a","width":10,"height":10}]})");
    layout(g);
    const std::string svg = render_svg(g);
    EXPECT_EQ(count(svg, "<rect"), 1u);
    EXPECT_TRUE(well_formed(svg));
}

TEST(Svg, CompoundWithTwoChildrenGivesThreeRects) {
    LayoutGraph g = parse(R"({"id":"root","children":[{"id":"p","children":[
        {"id":"a","width":10,"height":10},{"id":"b","width":10,"height":10}]}]})");
    layout(g);
    const std::string svg = render_svg(g);
    EXPECT_EQ(count(svg, "<rect"), 3u);
    EXPECT_TRUE(well_formed(svg));
}

TEST(Svg, TwoBendEdgeIsAFourPointPolyline) {
    LayoutGraph g = parse(R"({"id":"root","children":[{"id":"a","width":10,"height":10},{"id":"b","width":10,"height":10}],
        "edges":[{"id":"e","sources":["a"],"targets":["b"],"sections":[{"id":"e_s0",
        "startPoint":{"x":10,"y":5},"endPoint":{"x":40,"y":25},"bendPoints":[{"x":20,"y":5},{"x":20,"y":25}]}]}]})");
    const std::string svg = render_svg(g);
    std::smatch m;
    ASSERT_TRUE(std::regex_search(svg, m, std::regex(R"re(<polyline[^>]*points="([^"]*)")re")));
    std::istringstream pts(m[1].str());
    std::string tok;
    std::size_t n = 0;
    while (pts >> tok) ++n;
    EXPECT_EQ(n, 4u);
}

TEST(Svg, CorpusRendersWellFormedAndStable) {
    for (const auto& f : corpus()) {
        SCOPED_TRACE(f.filename().string());
        LayoutGraph a = parse(slurp(f));
        LayoutGraph b = parse(slurp(f));
        layout(a);
        layout(b);
        const std::string svg = render_svg(a);
        EXPECT_TRUE(well_formed(svg));
        EXPECT_EQ(svg, render_svg(b));
        EXPECT_EQ(serialize(a), serialize(b));
    }
}

TEST(Svg, LabelTextIsEscaped) {
    LayoutGraph g = parse(R"({"id":"root","children":[{"id":"a","width":40,"height":10,"labels":[{"text":"a<b & c"}]}]})");
    layout(g);
    const std::string svg = render_svg(g);
    EXPECT_NE(svg.find("a&lt;b &amp; c"), std::string::npos);
    EXPECT_TRUE(well_formed(svg));
}
