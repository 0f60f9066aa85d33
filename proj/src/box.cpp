#include "layr/box.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace layr {

BoxPacking pack_boxes(std::span<const BoxItem> items, double aspect_ratio, double spacing, const Padding& padding) {
    if (!(aspect_ratio > 0.0)) {
        throw std::invalid_argument("aspect ratio must be positive, got " + std::to_string(aspect_ratio));
    }
    double area = 0.0;
    double widest = 0.0;
    for (const BoxItem& item : items) {
        area += (item.width + spacing) * (item.height + spacing);
        widest = std::max(widest, item.width);
    }
    const double max_row = std::max(widest, std::sqrt(area * aspect_ratio));

    BoxPacking out;
    double x = 0.0;
    double row_top = 0.0;
    double row_height = 0.0;
    double content_w = 0.0;
    double content_h = 0.0;
    for (const BoxItem& item : items) {
        if (x > 0.0 && x + item.width > max_row + kGeomEps) {
            row_top += row_height + spacing;
            x = 0.0;
            row_height = 0.0;
        }
        out.positions.push_back({padding.left + x, padding.top + row_top});
        content_w = std::max(content_w, x + item.width);
        content_h = std::max(content_h, row_top + item.height);
        row_height = std::max(row_height, item.height);
        x += item.width + spacing;
    }
    out.width = padding.left + content_w + padding.right;
    out.height = padding.top + content_h + padding.bottom;
    return out;
}

}  // namespace layr
