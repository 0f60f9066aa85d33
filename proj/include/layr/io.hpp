#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "layr/graph.hpp"

namespace layr {

/// Malformed or schema-violating input. `position()` is the byte offset of
/// the problem for syntax errors, npos for schema errors (those name a JSON
/// pointer in the message instead).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position = npos)
        : std::runtime_error(message), position_(position) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Reads a JSON graph document. Array order becomes model order; option
/// values are parsed against the registered option types.
///
/// Throws ParseError for bad syntax, bad structure or dangling edge ends,
/// and OptionError for unknown option keys or bad option values.
LayoutGraph parse(std::string_view text);

/// Writes a graph, including layout results, as JSON.
///
/// Keys appear in a fixed order (id, x, y, width, height, layoutOptions,
/// labels, ports, children, edges; edges: id, sources, targets,
/// layoutOptions, labels, sections). Integral numbers are written without a
/// fraction, all others in shortest round-trip form; -0 is written as 0.
/// Empty arrays and empty option maps are omitted. Two-space indentation,
/// trailing newline.
std::string serialize(const LayoutGraph& graph);

/// Debug rendering as an SVG 1.1 document: one rect per node (nested groups
/// for compounds), small rects for ports, a polyline per routed edge and a
/// text element per label.
std::string render_svg(const LayoutGraph& graph);

}  // namespace layr
