#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <vector>

namespace layr {

/// Absolute tolerance for every geometric comparison in the engine.
inline constexpr double kGeomEps = 1e-6;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double k) { return {a.x * k, a.y * k}; }

inline bool near(double a, double b, double eps = kGeomEps) { return std::abs(a - b) <= eps; }
inline bool near(Point a, Point b, double eps = kGeomEps) {
    return near(a.x, b.x, eps) && near(a.y, b.y, eps);
}

struct Rect {
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;

    double right() const { return x + width; }
    double bottom() const { return y + height; }
    Point center() const { return {x + width / 2.0, y + height / 2.0}; }

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Accumulates a bounding box. An empty box has no extent at all.
class BoundingBox {
public:
    void add(Point p) {
        if (empty_) {
            min_ = max_ = p;
            empty_ = false;
            return;
        }
        min_.x = std::min(min_.x, p.x);
        min_.y = std::min(min_.y, p.y);
        max_.x = std::max(max_.x, p.x);
        max_.y = std::max(max_.y, p.y);
    }
    void add(const Rect& r) {
        add(Point{r.x, r.y});
        add(Point{r.right(), r.bottom()});
    }
    bool empty() const { return empty_; }
    Rect rect() const {
        if (empty_) return {};
        return {min_.x, min_.y, max_.x - min_.x, max_.y - min_.y};
    }

private:
    bool empty_ = true;
    Point min_{};
    Point max_{};
};

enum class PortSide { Undefined, North, East, South, West };
enum class Direction { Right, Left, Down, Up };

std::string_view to_string(PortSide side);
std::string_view to_string(Direction dir);

/// Maps between the caller's coordinate frame and the left-to-right frame the
/// layered algorithm works in. Only rotations/mirrors about the origin, so
/// rectangles keep their extent.
class DirectionTransform {
public:
    explicit DirectionTransform(Direction dir = Direction::Right) : dir_(dir) {}

    Direction direction() const { return dir_; }
    bool transposes() const { return dir_ == Direction::Down || dir_ == Direction::Up; }

    Point to_internal(Point p) const;
    Point to_external(Point p) const;
    Rect to_internal(const Rect& r) const;
    Rect to_external(const Rect& r) const;
    PortSide to_internal(PortSide side) const;
    PortSide to_external(PortSide side) const;

private:
    Direction dir_;
};

/// Drops consecutive duplicates and interior points collinear with their
/// neighbours. Endpoints are always kept.
std::vector<Point> simplify_route(const std::vector<Point>& points, double eps = kGeomEps);

}  // namespace layr
