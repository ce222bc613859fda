#pragma once

// Exact planar geometry over a number field.

#include "cnp/matrix.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cnp {

struct Point2 {
    FieldElement x, y;

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator-() const { return {-x, -y}; }
    Point2 operator*(const FieldElement& s) const { return {x * s, y * s}; }
    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point2& o) const { return !(*this == o); }
    std::array<double, 2> approx() const { return {x.to_double(), y.to_double()}; }
};

struct Point2Hash {
    size_t operator()(const Point2& p) const { return p.x.hash() * 1000003u ^ p.y.hash(); }
};

// Lexicographic order on coefficient vectors (embedding independent).
bool point_key_less(const Point2& a, const Point2& b);

FieldElement cross(const Point2& a, const Point2& b);
FieldElement dot(const Point2& a, const Point2& b);
// Sign of the turn a -> b -> c.
Sign orient(const Point2& a, const Point2& b, const Point2& c);

using Polygon = std::vector<Point2>;  // counter-clockwise, no repeated vertices

Polygon convex_hull(std::vector<Point2> pts);
FieldElement area(const Polygon& p);  // signed, positive for ccw
Point2 centroid_of_vertices(const Polygon& p);

enum class Location { outside, boundary, inside };
Location locate(const Polygon& p, const Point2& z);

// Intersection with the half plane {z : cross(b - a, z - a) >= 0}.
Polygon clip_left_of(const Polygon& p, const Point2& a, const Point2& b);
Polygon intersect(const Polygon& p, const Polygon& q);
Polygon translate(const Polygon& p, const Point2& t);
// Canonical vertex order: start at the point_key_less-minimal vertex.
Polygon canonical(const Polygon& p);
bool same_polygon(const Polygon& p, const Polygon& q);

// True iff the interiors of two convex polygons intersect.
bool interiors_overlap(const Polygon& p, const Polygon& q);

}  // namespace cnp
