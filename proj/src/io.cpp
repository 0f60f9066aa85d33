#include "layr/io.hpp"

#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace layr {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// --- reading ---------------------------------------------------------------

class Reader {
public:
    LayoutGraph read(const Json& doc) {
        LayoutGraph graph;
        graph.root = node(doc, "");
        return graph;
    }

private:
    [[noreturn]] static void fail(const std::string& path, const std::string& what) {
        throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
    }

    static void expect_object(const Json& j, const std::string& path, std::initializer_list<std::string_view> keys) {
        if (!j.is_object()) fail(path, "expected an object");
        for (const auto& [key, value] : j.items()) {
            bool known = false;
            for (std::string_view k : keys) known = known || k == key;
            if (!known) fail(path, "unknown field '" + key + "'");
        }
    }

    static const Json* field(const Json& j, std::string_view key) {
        auto it = j.find(std::string(key));
        return it == j.end() ? nullptr : &*it;
    }

    static double number(const Json& j, std::string_view key, const std::string& path, double fallback = 0.0) {
        const Json* v = field(j, key);
        if (!v) return fallback;
        if (!v->is_number()) fail(path + "/" + std::string(key), "expected a number");
        return v->get<double>();
    }

    static std::string string(const Json& j, std::string_view key, const std::string& path, bool required) {
        const Json* v = field(j, key);
        if (!v) {
            if (required) fail(path, "missing field '" + std::string(key) + "'");
            return {};
        }
        if (!v->is_string()) fail(path + "/" + std::string(key), "expected a string");
        return v->get<std::string>();
    }

    static const Json& array(const Json& j, std::string_view key, const std::string& path) {
        static const Json empty = Json::array();
        const Json* v = field(j, key);
        if (!v) return empty;
        if (!v->is_array()) fail(path + "/" + std::string(key), "expected an array");
        return *v;
    }

    static Point point(const Json& j, const std::string& path) {
        expect_object(j, path, {"x", "y"});
        return {number(j, "x", path), number(j, "y", path)};
    }

    static OptionTable options(const Json& j, const std::string& path) {
        OptionTable table;
        const Json* v = field(j, "layoutOptions");
        if (!v) return table;
        if (!v->is_object()) fail(path + "/layoutOptions", "expected an object");
        for (const auto& [key, value] : v->items()) {
            std::string text;
            if (value.is_string()) {
                text = value.get<std::string>();
            } else if (value.is_number() || value.is_boolean()) {
                text = value.dump();
            } else {
                fail(path + "/layoutOptions/" + key, "expected a string value");
            }
            table.set_from_string(key, text);
        }
        return table;
    }

    static std::vector<Label> labels(const Json& j, const std::string& path) {
        std::vector<Label> out;
        const Json& list = array(j, "labels", path);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string p = path + "/labels/" + std::to_string(i);
            expect_object(list[i], p, {"id", "text", "x", "y", "width", "height"});
            Label l;
            l.id = string(list[i], "id", p, false);
            l.text = string(list[i], "text", p, false);
            l.x = number(list[i], "x", p);
            l.y = number(list[i], "y", p);
            l.width = number(list[i], "width", p);
            l.height = number(list[i], "height", p);
            out.push_back(std::move(l));
        }
        return out;
    }

    static Port port(const Json& j, const std::string& path) {
        expect_object(j, path, {"id", "x", "y", "width", "height", "labels", "layoutOptions"});
        Port p;
        p.id = string(j, "id", path, true);
        p.x = number(j, "x", path);
        p.y = number(j, "y", path);
        p.width = number(j, "width", path);
        p.height = number(j, "height", path);
        p.labels = labels(j, path);
        p.options = options(j, path);
        if (const OptionValue* side = p.options.find(opt::kPortSide)) p.side = std::get<PortSide>(*side);
        return p;
    }

    static std::string single_end(const Json& j, std::string_view key, const std::string& path,
                                  const std::string& id) {
        const Json* v = field(j, key);
        if (!v) fail(path, "missing field '" + std::string(key) + "'");
        if (!v->is_array()) fail(path + "/" + std::string(key), "expected an array");
        if (v->size() != 1) {
            fail(path + "/" + std::string(key),
                 "edge '" + id + "' must have exactly one entry in '" + std::string(key) + "'");
        }
        if (!(*v)[0].is_string()) fail(path + "/" + std::string(key) + "/0", "expected a string");
        return (*v)[0].get<std::string>();
    }

    static Edge edge(const Json& j, const std::string& path) {
        expect_object(j, path, {"id", "sources", "targets", "labels", "layoutOptions", "sections"});
        Edge e;
        e.id = string(j, "id", path, true);
        e.source = single_end(j, "sources", path, e.id);
        e.target = single_end(j, "targets", path, e.id);
        e.labels = labels(j, path);
        e.options = options(j, path);
        const Json& sections = array(j, "sections", path);
        if (sections.size() > 1) fail(path + "/sections", "at most one section per edge");
        if (!sections.empty()) {
            const std::string p = path + "/sections/0";
            expect_object(sections[0], p, {"id", "startPoint", "endPoint", "bendPoints"});
            EdgeSection s;
            const Json* start = field(sections[0], "startPoint");
            const Json* end = field(sections[0], "endPoint");
            if (!start || !end) fail(p, "a section needs startPoint and endPoint");
            s.start = point(*start, p + "/startPoint");
            s.end = point(*end, p + "/endPoint");
            const Json& bends = array(sections[0], "bendPoints", p);
            for (std::size_t i = 0; i < bends.size(); ++i) {
                s.bend_points.push_back(point(bends[i], p + "/bendPoints/" + std::to_string(i)));
            }
            e.section = std::move(s);
        }
        return e;
    }

    Node node(const Json& j, const std::string& path) {
        expect_object(j, path,
                      {"id", "x", "y", "width", "height", "children", "ports", "edges", "labels", "layoutOptions"});
        Node n;
        n.id = string(j, "id", path, true);
        n.x = number(j, "x", path);
        n.y = number(j, "y", path);
        n.width = number(j, "width", path);
        n.height = number(j, "height", path);
        n.options = options(j, path);
        n.labels = labels(j, path);
        const Json& ports = array(j, "ports", path);
        for (std::size_t i = 0; i < ports.size(); ++i) {
            n.ports.push_back(port(ports[i], path + "/ports/" + std::to_string(i)));
        }
        const Json& children = array(j, "children", path);
        for (std::size_t i = 0; i < children.size(); ++i) {
            n.children.push_back(node(children[i], path + "/children/" + std::to_string(i)));
        }
        const Json& edges = array(j, "edges", path);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            n.edges.push_back(edge(edges[i], path + "/edges/" + std::to_string(i)));
        }
        return n;
    }
};

// --- writing ---------------------------------------------------------------

OrderedJson num(double v) {
    if (v == 0) return 0;
    if (std::isfinite(v) && std::trunc(v) == v && std::abs(v) < 1e15) return static_cast<long long>(v);
    return v;
}

OrderedJson point_json(Point p) {
    OrderedJson j;
    j["x"] = num(p.x);
    j["y"] = num(p.y);
    return j;
}

void put_options(OrderedJson& j, const OptionTable& table) {
    if (table.empty()) return;
    OrderedJson o = OrderedJson::object();
    for (const auto& [key, value] : table) o[key] = format_option_value(value);
    j["layoutOptions"] = std::move(o);
}

void put_labels(OrderedJson& j, const std::vector<Label>& labels) {
    if (labels.empty()) return;
    OrderedJson list = OrderedJson::array();
    for (const Label& l : labels) {
        OrderedJson o;
        if (!l.id.empty()) o["id"] = l.id;
        o["text"] = l.text;
        o["x"] = num(l.x);
        o["y"] = num(l.y);
        o["width"] = num(l.width);
        o["height"] = num(l.height);
        list.push_back(std::move(o));
    }
    j["labels"] = std::move(list);
}

OrderedJson edge_json(const Edge& e) {
    OrderedJson j;
    j["id"] = e.id;
    j["sources"] = OrderedJson::array({e.source});
    j["targets"] = OrderedJson::array({e.target});
    put_options(j, e.options);
    put_labels(j, e.labels);
    if (e.section) {
        OrderedJson s;
        s["id"] = e.id + "_s0";
        s["startPoint"] = point_json(e.section->start);
        s["endPoint"] = point_json(e.section->end);
        OrderedJson bends = OrderedJson::array();
        for (Point p : e.section->bend_points) bends.push_back(point_json(p));
        s["bendPoints"] = std::move(bends);
        j["sections"] = OrderedJson::array({std::move(s)});
    }
    return j;
}

OrderedJson node_json(const Node& n) {
    OrderedJson j;
    j["id"] = n.id;
    j["x"] = num(n.x);
    j["y"] = num(n.y);
    j["width"] = num(n.width);
    j["height"] = num(n.height);
    put_options(j, n.options);
    put_labels(j, n.labels);
    if (!n.ports.empty()) {
        OrderedJson ports = OrderedJson::array();
        for (const Port& p : n.ports) {
            OrderedJson o;
            o["id"] = p.id;
            o["x"] = num(p.x);
            o["y"] = num(p.y);
            o["width"] = num(p.width);
            o["height"] = num(p.height);
            put_options(o, p.options);
            put_labels(o, p.labels);
            ports.push_back(std::move(o));
        }
        j["ports"] = std::move(ports);
    }
    if (!n.children.empty()) {
        OrderedJson children = OrderedJson::array();
        for (const Node& c : n.children) children.push_back(node_json(c));
        j["children"] = std::move(children);
    }
    if (!n.edges.empty()) {
        OrderedJson edges = OrderedJson::array();
        for (const Edge& e : n.edges) edges.push_back(edge_json(e));
        j["edges"] = std::move(edges);
    }
    return j;
}

// --- svg -------------------------------------------------------------------

std::string fmt(double v) {
    if (v == 0) v = 0;
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void svg_labels(std::ostream& out, const std::vector<Label>& labels, const std::string& indent) {
    for (const Label& l : labels) {
        out << indent << "<text x=\"" << fmt(l.x) << "\" y=\"" << fmt(l.y + l.height * 0.75)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(l.text) << "</text>\n";
    }
}

void svg_node(std::ostream& out, const Node& n, bool is_root, const std::string& indent) {
    std::string inner = indent;
    if (!is_root) {
        out << indent << "<g id=\"" << escape(n.id) << "\" transform=\"translate(" << fmt(n.x) << ","
            << fmt(n.y) << ")\">\n";
        inner += "  ";
        out << inner << "<rect class=\"node\" x=\"0\" y=\"0\" width=\"" << fmt(n.width) << "\" height=\""
            << fmt(n.height) << "\" fill=\"" << (n.is_compound() ? "#f4f4f4" : "#ffffff")
            << "\" stroke=\"#333333\"/>\n";
        svg_labels(out, n.labels, inner);
        for (const Port& p : n.ports) {
            out << inner << "<rect class=\"port\" x=\"" << fmt(p.x) << "\" y=\"" << fmt(p.y) << "\" width=\""
                << fmt(p.width) << "\" height=\"" << fmt(p.height) << "\" fill=\"#333333\"/>\n";
            if (!p.labels.empty()) {
                out << inner << "<g transform=\"translate(" << fmt(p.x) << "," << fmt(p.y) << ")\">\n";
                svg_labels(out, p.labels, inner + "  ");
                out << inner << "</g>\n";
            }
        }
    }
    for (const Node& c : n.children) svg_node(out, c, false, inner);
    for (const Edge& e : n.edges) {
        if (!e.section) continue;
        out << inner << "<polyline class=\"edge\" points=\"" << fmt(e.section->start.x) << ","
            << fmt(e.section->start.y);
        for (Point p : e.section->bend_points) out << " " << fmt(p.x) << "," << fmt(p.y);
        out << " " << fmt(e.section->end.x) << "," << fmt(e.section->end.y)
            << "\" fill=\"none\" stroke=\"#1f4e79\"/>\n";
        svg_labels(out, e.labels, inner);
    }
    if (!is_root) out << indent << "</g>\n";
}

}  // namespace

LayoutGraph parse(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
        throw ParseError("syntax error at byte " + std::to_string(at) + ": " + e.what(), at);
    }
    LayoutGraph graph = Reader().read(doc);

    GraphIndex index(graph.root);
    for (const Edge* e : index.all_edges()) {
        for (const std::string* end : {&e->source, &e->target}) {
            if (!index.resolve(*end)) {
                throw ParseError("edge '" + e->id + "' references unknown element '" + *end + "'");
            }
        }
    }
    return graph;
}

std::string serialize(const LayoutGraph& graph) { return node_json(graph.root).dump(2) + "\n"; }

std::string render_svg(const LayoutGraph& graph) {
    constexpr double kMargin = 20.0;
    const Node& root = graph.root;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(root.width + 2 * kMargin)
        << "\" height=\"" << fmt(root.height + 2 * kMargin) << "\">\n"
        << "  <g transform=\"translate(" << fmt(kMargin) << "," << fmt(kMargin) << ")\">\n";
    svg_node(out, root, true, "    ");
    out << "  </g>\n</svg>\n";
    return out.str();
}

}  // namespace layr
