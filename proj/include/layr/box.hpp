#pragma once

#include <span>
#include <vector>

#include "layr/geometry.hpp"
#include "layr/options.hpp"

namespace layr {

struct BoxItem {
    double width = 0.0;
    double height = 0.0;
};

struct BoxPacking {
    std::vector<Point> positions;  // top-left per item, padding included
    double width = 0.0;            // parent size, padding included
    double height = 0.0;
};

/// Row packing in item order. The target row width is
/// max(widest item, sqrt(aspect_ratio * sum of (w + spacing) * (h + spacing)));
/// an item that would end beyond it starts a new row, unless it is the
/// first of its row. Rows are as tall as their tallest item.
/// Throws std::invalid_argument unless aspect_ratio > 0.
BoxPacking pack_boxes(std::span<const BoxItem> items, double aspect_ratio, double spacing, const Padding& padding);

}  // namespace layr
