#include "layr/options.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace layr {

namespace {

template <class E>
struct EnumNames;

#define LAYR_ENUM_NAMES(Type, ...)                                                   \
    template <>                                                                      \
    struct EnumNames<Type> {                                                         \
        static constexpr std::array entries = {__VA_ARGS__};                         \
    };

using DirName = std::pair<std::string_view, Direction>;
LAYR_ENUM_NAMES(Direction, DirName{"RIGHT", Direction::Right}, DirName{"LEFT", Direction::Left},
                DirName{"DOWN", Direction::Down}, DirName{"UP", Direction::Up})
using SideName = std::pair<std::string_view, PortSide>;
LAYR_ENUM_NAMES(PortSide, SideName{"UNDEFINED", PortSide::Undefined}, SideName{"NORTH", PortSide::North},
                SideName{"EAST", PortSide::East}, SideName{"SOUTH", PortSide::South},
                SideName{"WEST", PortSide::West})
using PcName = std::pair<std::string_view, PortConstraints>;
LAYR_ENUM_NAMES(PortConstraints, PcName{"FREE", PortConstraints::Free},
                PcName{"FIXED_SIDE", PortConstraints::FixedSide},
                PcName{"FIXED_ORDER", PortConstraints::FixedOrder},
                PcName{"FIXED_POS", PortConstraints::FixedPos})
using CbName = std::pair<std::string_view, CycleBreakingStrategy>;
LAYR_ENUM_NAMES(CycleBreakingStrategy, CbName{"GREEDY", CycleBreakingStrategy::Greedy},
                CbName{"DEPTH_FIRST", CycleBreakingStrategy::DepthFirst},
                CbName{"MODEL_ORDER", CycleBreakingStrategy::ModelOrder})
using LsName = std::pair<std::string_view, LayeringStrategy>;
LAYR_ENUM_NAMES(LayeringStrategy, LsName{"LONGEST_PATH", LayeringStrategy::LongestPath},
                LsName{"NETWORK_SIMPLEX", LayeringStrategy::NetworkSimplex},
                LsName{"COFFMAN_GRAHAM", LayeringStrategy::CoffmanGraham})
using CmName = std::pair<std::string_view, CrossingMinimizationStrategy>;
LAYR_ENUM_NAMES(CrossingMinimizationStrategy, CmName{"LAYER_SWEEP", CrossingMinimizationStrategy::LayerSweep},
                CmName{"NONE", CrossingMinimizationStrategy::None})
using MoName = std::pair<std::string_view, ModelOrderStrategy>;
LAYR_ENUM_NAMES(ModelOrderStrategy, MoName{"NONE", ModelOrderStrategy::None},
                MoName{"NODES_AND_EDGES", ModelOrderStrategy::NodesAndEdges},
                MoName{"PREFER_EDGES", ModelOrderStrategy::PreferEdges})
using NpName = std::pair<std::string_view, NodePlacementStrategy>;
LAYR_ENUM_NAMES(NodePlacementStrategy, NpName{"BRANDES_KOEPF", NodePlacementStrategy::BrandesKoepf},
                NpName{"LINEAR_SEGMENTS", NodePlacementStrategy::LinearSegments},
                NpName{"SIMPLE", NodePlacementStrategy::Simple})
using ErName = std::pair<std::string_view, EdgeRouting>;
LAYR_ENUM_NAMES(EdgeRouting, ErName{"ORTHOGONAL", EdgeRouting::Orthogonal},
                ErName{"POLYLINE", EdgeRouting::Polyline})
#undef LAYR_ENUM_NAMES

constexpr double kNoMin = std::numeric_limits<double>::quiet_NaN();

// Default table. Part of the external contract: changing a value here changes
// layouts of every document that does not set the option.
const std::array<OptionDef, 21> kRegistry = {{
    {opt::kAlgorithm, std::string("layered"), false, kNoMin, false,
     "Layout algorithm for the children of this node (layered, box)."},
    {opt::kDirection, Direction::Right, true, kNoMin, false, "Main flow direction."},
    {opt::kPortConstraints, PortConstraints::Free, true, kNoMin, false,
     "How far the algorithm may move ports."},
    {opt::kPortSide, PortSide::Undefined, false, kNoMin, false, "Side of the node a port lives on."},
    {opt::kCycleBreaking, CycleBreakingStrategy::Greedy, true, kNoMin, false, "Phase 1 strategy."},
    {opt::kLayering, LayeringStrategy::NetworkSimplex, true, kNoMin, false, "Phase 2 strategy."},
    {opt::kCoffmanGrahamWidth, 4, true, 1.0, false, "Maximum number of real nodes per layer."},
    {opt::kNodePromotion, false, true, kNoMin, false, "Run node promotion after layering."},
    {opt::kCrossingMinimization, CrossingMinimizationStrategy::LayerSweep, true, kNoMin, false,
     "Phase 3 strategy."},
    {opt::kForceNodeModelOrder, false, true, kNoMin, false,
     "Keep real nodes in model order; only dummies move."},
    {opt::kConsiderModelOrder, ModelOrderStrategy::None, true, kNoMin, false,
     "Use model order as tie-breaker."},
    {opt::kNodePlacement, NodePlacementStrategy::BrandesKoepf, true, kNoMin, false, "Phase 4 strategy."},
    {opt::kEdgeRouting, EdgeRouting::Orthogonal, true, kNoMin, false, "Phase 5 strategy."},
    {opt::kSpacingNodeNode, 20.0, true, 0.0, false, "Space between nodes, and between layers."},
    {opt::kSpacingEdgeEdge, 10.0, true, 0.0, false, "Space between parallel edge segments."},
    {opt::kSpacingEdgeNode, 10.0, true, 0.0, false, "Space between edges and nodes."},
    {opt::kSpacingPortPort, 10.0, true, 0.0, false, "Space between ports of one side."},
    {opt::kSpacingLabelPort, 1.0, true, 0.0, false, "Space between a port and its label."},
    {opt::kPadding, Padding{}, true, kNoMin, false, "Space between a node border and its content."},
    {opt::kAspectRatio, 1.6, true, 0.0, true, "Target width/height ratio for packing."},
    {opt::kSeparateComponents, true, true, kNoMin, false,
     "Lay out connected components separately and pack them."},
}};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(std::string_view key, std::string_view text) {
    const std::string t = trim(text);
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw OptionError("option '" + std::string(key) + "': expected a number, got '" + t + "'");
    }
    return v;
}

template <class E>
E parse_enum(std::string_view key, std::string_view text) {
    const std::string t = trim(text);
    for (const auto& [name, value] : EnumNames<E>::entries) {
        if (name == t) return value;
    }
    std::string allowed;
    for (const auto& [name, value] : EnumNames<E>::entries) {
        if (!allowed.empty()) allowed += ", ";
        allowed += name;
    }
    throw OptionError("option '" + std::string(key) + "': invalid value '" + t + "' (expected one of " +
                      allowed + ")");
}

template <class E>
std::string_view enum_name(E value) {
    for (const auto& [name, v] : EnumNames<E>::entries) {
        if (v == value) return name;
    }
    return "?";
}

// Accepts "12" (all sides) or "[top=1,left=2,bottom=3,right=4]".
Padding parse_padding(std::string_view key, std::string_view text) {
    std::string t = trim(text);
    if (t.empty() || t.front() != '[') {
        const double v = parse_double(key, t);
        return {v, v, v, v};
    }
    if (t.back() != ']') throw OptionError("option '" + std::string(key) + "': unterminated padding");
    Padding p{0, 0, 0, 0};
    std::stringstream ss(t.substr(1, t.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw OptionError("option '" + std::string(key) + "': malformed padding entry '" + item + "'");
        }
        const std::string side = trim(std::string_view(item).substr(0, eq));
        const double v = parse_double(key, std::string_view(item).substr(eq + 1));
        if (side == "top") p.top = v;
        else if (side == "left") p.left = v;
        else if (side == "bottom") p.bottom = v;
        else if (side == "right") p.right = v;
        else throw OptionError("option '" + std::string(key) + "': unknown padding side '" + side + "'");
    }
    return p;
}

std::string format_double(double v) {
    if (v == 0) v = 0;  // no negative zero
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void check_min(const OptionDef& def, double v) {
    if (std::isnan(def.min_value)) return;
    if (v < def.min_value || (def.min_exclusive && v == def.min_value)) {
        throw OptionError("option '" + std::string(def.key) + "': value " + format_double(v) + " must be " +
                          (def.min_exclusive ? "> " : ">= ") + format_double(def.min_value));
    }
}

void check_value(const OptionDef& def, const OptionValue& value) {
    if (value.index() != def.default_value.index()) {
        throw OptionError("option '" + std::string(def.key) + "': value has the wrong type");
    }
    if (const auto* i = std::get_if<int>(&value)) check_min(def, *i);
    if (const auto* d = std::get_if<double>(&value)) {
        if (!std::isfinite(*d)) throw OptionError("option '" + std::string(def.key) + "': not finite");
        check_min(def, *d);
    }
    if (const auto* p = std::get_if<Padding>(&value)) {
        for (double side : {p->top, p->left, p->bottom, p->right}) {
            if (!(side >= 0) || !std::isfinite(side)) {
                throw OptionError("option '" + std::string(def.key) + "': padding must be non-negative");
            }
        }
    }
}

}  // namespace

std::span<const OptionDef> option_registry() { return kRegistry; }

const OptionDef* find_option(std::string_view key) {
    if (key.starts_with("elk.")) key.remove_prefix(4);
    for (const auto& def : kRegistry) {
        if (def.key == key) return &def;
    }
    return nullptr;
}

const OptionDef& require_option(std::string_view key) {
    const OptionDef* def = find_option(key);
    if (def == nullptr) throw OptionError("unknown option '" + std::string(key) + "'");
    return *def;
}

OptionValue parse_option_value(const OptionDef& def, std::string_view text) {
    const std::string_view key = def.key;
    OptionValue out = std::visit(
        [&](const auto& proto) -> OptionValue {
            using T = std::decay_t<decltype(proto)>;
            if constexpr (std::is_same_v<T, bool>) {
                const std::string t = trim(text);
                if (t == "true") return true;
                if (t == "false") return false;
                throw OptionError("option '" + std::string(key) + "': expected true or false, got '" + t + "'");
            } else if constexpr (std::is_same_v<T, int>) {
                const std::string t = trim(text);
                int v = 0;
                auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
                if (ec != std::errc{} || ptr != t.data() + t.size()) {
                    throw OptionError("option '" + std::string(key) + "': expected an integer, got '" + t + "'");
                }
                return v;
            } else if constexpr (std::is_same_v<T, double>) {
                return parse_double(key, text);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return trim(text);
            } else if constexpr (std::is_same_v<T, Padding>) {
                return parse_padding(key, text);
            } else {
                return parse_enum<T>(key, text);
            }
        },
        def.default_value);
    check_value(def, out);
    return out;
}

std::string format_option_value(const OptionValue& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, int>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, Padding>) {
                return "[top=" + format_double(v.top) + ",left=" + format_double(v.left) +
                       ",bottom=" + format_double(v.bottom) + ",right=" + format_double(v.right) + "]";
            } else {
                return std::string(enum_name(v));
            }
        },
        value);
}

void OptionTable::set(std::string_view key, OptionValue value) {
    const OptionDef& def = require_option(key);
    check_value(def, value);
    values_.insert_or_assign(std::string(def.key), std::move(value));
}

void OptionTable::set_from_string(std::string_view key, std::string_view text) {
    const OptionDef& def = require_option(key);
    values_.insert_or_assign(std::string(def.key), parse_option_value(def, text));
}

bool OptionTable::erase(std::string_view key) {
    const OptionDef* def = find_option(key);
    if (def == nullptr) return false;
    auto it = values_.find(def->key);
    if (it == values_.end()) return false;
    values_.erase(it);
    return true;
}

const OptionValue* OptionTable::find(std::string_view key) const {
    const OptionDef* def = find_option(key);
    if (def == nullptr) return nullptr;
    auto it = values_.find(def->key);
    return it == values_.end() ? nullptr : &it->second;
}

}  // namespace layr
