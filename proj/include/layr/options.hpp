#pragma once

#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "layr/geometry.hpp"

namespace layr {

enum class PortConstraints { Free, FixedSide, FixedOrder, FixedPos };
enum class CycleBreakingStrategy { Greedy, DepthFirst, ModelOrder };
enum class LayeringStrategy { LongestPath, NetworkSimplex, CoffmanGraham };
enum class CrossingMinimizationStrategy { LayerSweep, None };
enum class ModelOrderStrategy { None, NodesAndEdges, PreferEdges };
enum class NodePlacementStrategy { BrandesKoepf, LinearSegments, Simple };
enum class EdgeRouting { Orthogonal, Polyline };

struct Padding {
    double top = 12.0;
    double left = 12.0;
    double bottom = 12.0;
    double right = 12.0;

    friend bool operator==(const Padding&, const Padding&) = default;
};

using OptionValue = std::variant<bool, int, double, std::string, Direction, PortSide, PortConstraints,
                                 CycleBreakingStrategy, LayeringStrategy, CrossingMinimizationStrategy,
                                 ModelOrderStrategy, NodePlacementStrategy, EdgeRouting, Padding>;

class OptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One registered layout option. The alternative held by `default_value`
/// is the option's declared type.
struct OptionDef {
    std::string_view key;
    OptionValue default_value;
    bool inheritable = true;
    // Lower bound for numeric options; NaN disables the check.
    double min_value = std::numeric_limits<double>::quiet_NaN();
    bool min_exclusive = false;
    std::string_view description;
};

namespace opt {
inline constexpr std::string_view kAlgorithm = "algorithm";
inline constexpr std::string_view kDirection = "direction";
inline constexpr std::string_view kPortConstraints = "portConstraints";
inline constexpr std::string_view kPortSide = "port.side";
inline constexpr std::string_view kCycleBreaking = "cycleBreaking.strategy";
inline constexpr std::string_view kLayering = "layering.strategy";
inline constexpr std::string_view kCoffmanGrahamWidth = "layering.coffmanGraham.width";
inline constexpr std::string_view kNodePromotion = "nodePromotion";
inline constexpr std::string_view kCrossingMinimization = "crossingMinimization.strategy";
inline constexpr std::string_view kForceNodeModelOrder = "crossingMinimization.forceNodeModelOrder";
inline constexpr std::string_view kConsiderModelOrder = "considerModelOrder.strategy";
inline constexpr std::string_view kNodePlacement = "nodePlacement.strategy";
inline constexpr std::string_view kEdgeRouting = "edgeRouting";
inline constexpr std::string_view kSpacingNodeNode = "spacing.nodeNode";
inline constexpr std::string_view kSpacingEdgeEdge = "spacing.edgeEdge";
inline constexpr std::string_view kSpacingEdgeNode = "spacing.edgeNode";
inline constexpr std::string_view kSpacingPortPort = "spacing.portPort";
inline constexpr std::string_view kSpacingLabelPort = "spacing.labelPort";
inline constexpr std::string_view kPadding = "padding";
inline constexpr std::string_view kAspectRatio = "aspectRatio";
inline constexpr std::string_view kSeparateComponents = "separateConnectedComponents";
}  // namespace opt

/// The complete option registry, in documentation order.
std::span<const OptionDef> option_registry();

/// Looks up an option. Accepts the canonical key or the same key with an
/// `elk.` prefix. Returns nullptr for unknown keys.
const OptionDef* find_option(std::string_view key);

/// Like find_option but throws OptionError naming the key.
const OptionDef& require_option(std::string_view key);

OptionValue parse_option_value(const OptionDef& def, std::string_view text);
std::string format_option_value(const OptionValue& value);

/// Per-element option assignments keyed by canonical option id.
class OptionTable {
public:
    /// Type-checks `value` against the registered type.
    void set(std::string_view key, OptionValue value);
    void set_from_string(std::string_view key, std::string_view text);
    bool erase(std::string_view key);

    const OptionValue* find(std::string_view key) const;
    bool empty() const { return values_.empty(); }
    std::size_t size() const { return values_.size(); }

    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    friend bool operator==(const OptionTable&, const OptionTable&) = default;

private:
    std::map<std::string, OptionValue, std::less<>> values_;
};

}  // namespace layr
