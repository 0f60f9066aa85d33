#include "layr/geometry.hpp"

namespace layr {

std::string_view to_string(PortSide side) {
    switch (side) {
        case PortSide::North: return "NORTH";
        case PortSide::East: return "EAST";
        case PortSide::South: return "SOUTH";
        case PortSide::West: return "WEST";
        case PortSide::Undefined: break;
    }
    return "UNDEFINED";
}

std::string_view to_string(Direction dir) {
    switch (dir) {
        case Direction::Right: return "RIGHT";
        case Direction::Left: return "LEFT";
        case Direction::Down: return "DOWN";
        case Direction::Up: return "UP";
    }
    return "RIGHT";
}

Point DirectionTransform::to_internal(Point p) const {
    switch (dir_) {
        case Direction::Right: return p;
        case Direction::Left: return {-p.x, p.y};
        case Direction::Down: return {p.y, p.x};
        case Direction::Up: return {-p.y, p.x};
    }
    return p;
}

Point DirectionTransform::to_external(Point p) const {
    switch (dir_) {
        case Direction::Right: return p;
        case Direction::Left: return {-p.x, p.y};
        case Direction::Down: return {p.y, p.x};
        case Direction::Up: return {p.y, -p.x};
    }
    return p;
}

namespace {

template <class F>
Rect map_rect(const Rect& r, F&& f) {
    BoundingBox box;
    box.add(f(Point{r.x, r.y}));
    box.add(f(Point{r.right(), r.bottom()}));
    return box.rect();
}

Point side_vector(PortSide side) {
    switch (side) {
        case PortSide::North: return {0, -1};
        case PortSide::East: return {1, 0};
        case PortSide::South: return {0, 1};
        case PortSide::West: return {-1, 0};
        case PortSide::Undefined: break;
    }
    return {0, 0};
}

PortSide side_of(Point v) {
    if (v.x > 0.5) return PortSide::East;
    if (v.x < -0.5) return PortSide::West;
    if (v.y > 0.5) return PortSide::South;
    if (v.y < -0.5) return PortSide::North;
    return PortSide::Undefined;
}

}  // namespace

Rect DirectionTransform::to_internal(const Rect& r) const {
    return map_rect(r, [this](Point p) { return to_internal(p); });
}

Rect DirectionTransform::to_external(const Rect& r) const {
    return map_rect(r, [this](Point p) { return to_external(p); });
}

PortSide DirectionTransform::to_internal(PortSide side) const {
    return side_of(to_internal(side_vector(side)));
}

PortSide DirectionTransform::to_external(PortSide side) const {
    return side_of(to_external(side_vector(side)));
}

std::vector<Point> simplify_route(const std::vector<Point>& points, double eps) {
    std::vector<Point> dedup;
    dedup.reserve(points.size());
    for (const Point& p : points) {
        if (dedup.empty() || !near(dedup.back(), p, eps)) dedup.push_back(p);
    }
    if (dedup.size() <= 2) {
        if (dedup.size() == 1 && points.size() >= 2) dedup.push_back(points.back());
        return dedup;
    }
    std::vector<Point> out;
    out.push_back(dedup.front());
    for (std::size_t i = 1; i + 1 < dedup.size(); ++i) {
        const Point a = out.back();
        const Point b = dedup[i];
        const Point c = dedup[i + 1];
        const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        const double dot = (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y);
        // collinear and not folding back onto itself
        if (std::abs(cross) <= eps * std::max(1.0, std::hypot(c.x - a.x, c.y - a.y)) && dot >= 0) {
            continue;
        }
        out.push_back(b);
    }
    out.push_back(dedup.back());
    return out;
}

}  // namespace layr
