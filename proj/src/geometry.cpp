#include "cnp/geometry.hpp"

#include <algorithm>

namespace cnp {

bool point_key_less(const Point2& a, const Point2& b) {
    if (a.x != b.x) return coeff_less(a.x, b.x);
    return coeff_less(a.y, b.y);
}

FieldElement cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }

FieldElement dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }

Sign orient(const Point2& a, const Point2& b, const Point2& c) { return cross(b - a, c - a).sign(); }

Polygon convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        auto c = a.x.compare(b.x);
        if (c != 0) return c < 0;
        return a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    Polygon h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) != Sign::positive) --k;
        h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orient(h[k - 2], h[k - 1], pts[i]) != Sign::positive) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

FieldElement area(const Polygon& p) {
    if (p.empty()) return FieldElement(NumberField::rationals(), 0L);
    FieldElement s(p[0].x.field(), 0L);
    for (size_t i = 0; i < p.size(); ++i) s += cross(p[i], p[(i + 1) % p.size()]);
    return s * Rational(1, 2);
}

Point2 centroid_of_vertices(const Polygon& p) {
    Point2 s{FieldElement(p[0].x.field(), 0L), FieldElement(p[0].x.field(), 0L)};
    for (const auto& v : p) s = s + v;
    Rational inv(1, static_cast<long>(p.size()));
    return {s.x * inv, s.y * inv};
}

Location locate(const Polygon& p, const Point2& z) {
    if (p.size() < 3) return Location::outside;
    bool on_edge = false;
    for (size_t i = 0; i < p.size(); ++i) {
        Sign s = orient(p[i], p[(i + 1) % p.size()], z);
        if (s == Sign::negative) return Location::outside;
        if (s == Sign::zero) on_edge = true;
    }
    return on_edge ? Location::boundary : Location::inside;
}

namespace {

Polygon cleanup(const Polygon& in) {
    Polygon p;
    for (const auto& v : in)
        if (p.empty() || p.back() != v) p.push_back(v);
    while (p.size() > 1 && p.front() == p.back()) p.pop_back();
    // Drop collinear vertices.
    bool changed = true;
    while (changed && p.size() >= 3) {
        changed = false;
        for (size_t i = 0; i < p.size(); ++i) {
            const auto& a = p[(i + p.size() - 1) % p.size()];
            const auto& c = p[(i + 1) % p.size()];
            if (orient(a, p[i], c) == Sign::zero) {
                p.erase(p.begin() + i);
                changed = true;
                break;
            }
        }
    }
    if (p.size() < 3) return {};
    return p;
}

}  // namespace

Polygon clip_left_of(const Polygon& p, const Point2& a, const Point2& b) {
    if (p.empty()) return p;
    const Point2 dir = b - a;
    std::vector<FieldElement> s;
    std::vector<Sign> sg;
    for (const auto& v : p) {
        s.push_back(cross(dir, v - a));
        sg.push_back(s.back().sign());
    }
    bool all_in = true, all_out = true;
    for (auto x : sg) {
        if (x == Sign::negative) all_in = false;
        if (x == Sign::positive) all_out = false;
    }
    if (all_in) return p;
    if (all_out) return {};
    Polygon out;
    for (size_t i = 0; i < p.size(); ++i) {
        size_t j = (i + 1) % p.size();
        if (sg[i] != Sign::negative) out.push_back(p[i]);
        if ((sg[i] == Sign::positive && sg[j] == Sign::negative) ||
            (sg[i] == Sign::negative && sg[j] == Sign::positive)) {
            FieldElement t = s[i] / (s[i] - s[j]);
            out.push_back(p[i] + (p[j] - p[i]) * t);
        }
    }
    return cleanup(out);
}

Polygon intersect(const Polygon& p, const Polygon& q) {
    if (q.size() < 3) return {};
    Polygon r = p;
    for (size_t i = 0; i < q.size() && !r.empty(); ++i) r = clip_left_of(r, q[i], q[(i + 1) % q.size()]);
    return r;
}

Polygon translate(const Polygon& p, const Point2& t) {
    Polygon r;
    r.reserve(p.size());
    for (const auto& v : p) r.push_back(v + t);
    return r;
}

Polygon canonical(const Polygon& p) {
    if (p.empty()) return p;
    size_t best = 0;
    for (size_t i = 1; i < p.size(); ++i)
        if (point_key_less(p[i], p[best])) best = i;
    Polygon r;
    for (size_t i = 0; i < p.size(); ++i) r.push_back(p[(best + i) % p.size()]);
    return r;
}

bool same_polygon(const Polygon& p, const Polygon& q) {
    if (p.size() != q.size()) return false;
    return canonical(p) == canonical(q);
}

bool interiors_overlap(const Polygon& p, const Polygon& q) {
    if (p.size() < 3 || q.size() < 3) return false;
    auto separated_by = [](const Polygon& a, const Polygon& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            Point2 e = a[(i + 1) % a.size()] - a[i];
            // a lies weakly left of edge i; b separated if weakly right of it.
            bool all_right = true;
            for (const auto& v : b)
                if (cross(e, v - a[i]).sign() == Sign::positive) {
                    all_right = false;
                    break;
                }
            if (all_right) return true;
        }
        return false;
    };
    return !separated_by(p, q) && !separated_by(q, p);
}

}  // namespace cnp
