#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "layr/graph.hpp"
#include "layr/hierarchy.hpp"
#include "layr/pipeline.hpp"

namespace layr {

/// Thrown by layout() for graphs that fail validation.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Called after every pipeline step of every layered level.
using LevelObserver = std::function<void(const Node& level, const TraceEntry& step)>;

struct LayoutStats {
    long long crossings = 0;  // summed over layered levels
    std::size_t bends = 0;
    double width = 0.0;
    double height = 0.0;
};

/// Lays out the whole graph bottom-up: every compound node is laid out by
/// its own `algorithm` ("layered" or "box") after all its children. Writes
/// positions, sizes, port positions, label positions and one section per
/// edge. Throws ValidationError or LayoutError.
LayoutStats layout(LayoutGraph& graph, const LevelObserver& observer = {});

/// A connected part of one level.
struct Component {
    std::vector<const Node*> nodes;  // model order
    std::vector<const Edge*> edges;
    std::size_t model_order = 0;     // lowest member model order
};

/// Connected components of the children of `level` (undirected, edges that
/// run between children or inside them count), by model order.
std::vector<Component> separate_components(const GraphIndex& index, const Node& level);

/// Offsets for components of the given sizes, packed into rows towards
/// `aspect_ratio` with `spacing` between them.
std::vector<Point> pack_components(std::span<const Rect> sizes, double aspect_ratio, double spacing);

/// Sizes of label boxes without an explicit size are estimated from their
/// text: 7 units per character, 16 high.
void estimate_label_size(Label& label);

/// Counts bend points over all edge sections.
std::size_t count_bends(const Node& root);

}  // namespace layr
