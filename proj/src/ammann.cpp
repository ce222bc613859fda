#include "cnp/ammann.hpp"

#include "cnp/projection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace cnp {

FieldElement LineFamilies::offset(int f, const IVec& y) const {
    FieldElement s(slope.field, 0L);
    for (size_t l = 0; l < y.size(); ++l)
        if (y[l] != 0) s += normal[f][l] * Rational(y[l]);
    return s;
}

LineFamilies line_families(const Slope& e, const FieldMatrix& a) {
    if (e.n != 4 || e.d != 2) throw SlopeError("line families are built for 4 -> 2 slopes");
    if (a.rows() != 2 || a.cols() != 4) throw SlopeError("projection must be 2 x 4");
    LineFamilies lf;
    lf.slope = e;
    lf.projection = a;
    auto lifted = lifted_subperiods(e);
    lf.lifted.resize(4);
    lf.subperiod.resize(4);
    std::vector<bool> seen(4, false);
    for (const auto& s : lifted)
        if (s.dropped.size() == 1 && s.lifted) {
            lf.lifted[s.dropped[0]] = s;
            lf.subperiod[s.dropped[0]] = *s.lifted;
            seen[s.dropped[0]] = true;
        }
    for (int f = 0; f < 4; ++f)
        if (!seen[f]) throw NotCharacterized("missing subperiod of type " + std::to_string(f));
    for (int f = 0; f < 4; ++f) {
        Vec ap = a * lf.subperiod[f];
        Vec row;
        for (int l = 0; l < 4; ++l) row.push_back(ap[0] * a(1, l) - ap[1] * a(0, l));
        if (!row[f].is_zero())
            throw NoFineProjection("A p_" + std::to_string(f) + " is not collinear with A e_" + std::to_string(f));
        lf.normal.push_back(row);
        lf.direction_norm2.push_back(ap[0] * ap[0] + ap[1] * ap[1]);
    }
    return lf;
}

AmmannSegment segment_in_tile(const LineFamilies& lf, int f, int i, int j, const FieldElement& o) {
    const FieldElement& a = lf.normal[f][i];
    const FieldElement& b = lf.normal[f][j];
    const FieldPtr& fld = lf.slope.field;
    FieldElement zero(fld, 0L), one(fld, 1L);
    std::vector<std::array<FieldElement, 2>> pts;
    auto add = [&](const FieldElement& lam, const FieldElement& mu) {
        if (lam < zero || lam > one || mu < zero || mu > one) return;
        for (const auto& q : pts)
            if (q[0] == lam && q[1] == mu) return;
        pts.push_back({lam, mu});
    };
    if (!b.is_zero()) {
        add(zero, o / b);
        add(one, (o - a) / b);
    }
    if (!a.is_zero()) {
        add(o / a, zero);
        add((o - b) / a, one);
    }
    if (pts.size() != 2) throw SlopeError("line does not cross the tile");
    if (pts[1][0] < pts[0][0] || (pts[1][0] == pts[0][0] && pts[1][1] < pts[0][1])) std::swap(pts[0], pts[1]);
    return {f, pts[0], pts[1]};
}

namespace {

// Corner values of the direction-f functional on tile (i, j) at the origin.
std::pair<FieldElement, FieldElement> tile_range(const LineFamilies& lf, int f, int i, int j) {
    const FieldElement& a = lf.normal[f][i];
    const FieldElement& b = lf.normal[f][j];
    FieldElement lo(lf.slope.field, 0L), hi(lf.slope.field, 0L);
    for (const auto& v : {a, b, a + b}) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    return {lo, hi};
}

void sort_unique(std::vector<FieldElement>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

DecoratedTile decorate_offsets(const LineFamilies& lf, int i, int j, std::vector<std::vector<FieldElement>> offs) {
    DecoratedTile t;
    t.i = i;
    t.j = j;
    for (int f = 0; f < static_cast<int>(offs.size()); ++f) {
        sort_unique(offs[f]);
        for (const auto& o : offs[f]) t.segments.push_back(segment_in_tile(lf, f, i, j, o));
    }
    t.offsets = std::move(offs);
    return t;
}

Rational rational_above(double x) {
    return Rational(static_cast<long>(std::ceil(x * 1e6)) + 1, 1000000L);
}

double norm_d(const FieldMatrix& a, const IVec& u) {
    double x = 0, y = 0;
    for (size_t l = 0; l < u.size(); ++l) {
        x += a(0, static_cast<int>(l)).to_double() * u[l];
        y += a(1, static_cast<int>(l)).to_double() * u[l];
    }
    return std::hypot(x, y);
}

double max_half_diagonal(const LineFamilies& lf) {
    double m = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            IVec s(4, 0), d(4, 0);
            s[i] = s[j] = 1;
            d[i] = 1;
            d[j] = -1;
            m = std::max({m, norm_d(lf.projection, s) / 2, norm_d(lf.projection, d) / 2});
        }
    return m;
}

// Per coordinate bound on |u_l| for lattice points with |A u - c| <= r and
// pi'(u) in W - W, c ranging over tile centres.
std::vector<long> candidate_box(const LineFamilies& lf, const Window& w, double r) {
    const FieldMatrix& a = lf.projection;
    double m[4][4];
    for (int l = 0; l < 4; ++l) {
        m[0][l] = a(0, l).to_double();
        m[1][l] = a(1, l).to_double();
        m[2][l] = w.internal(0, l).to_double();
        m[3][l] = w.internal(1, l).to_double();
    }
    // invert by Gauss-Jordan in double
    double inv[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int q = c + 1; q < 4; ++q)
            if (std::fabs(m[q][c]) > std::fabs(m[piv][c])) piv = q;
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        double d = m[c][c];
        for (int q = 0; q < 4; ++q) {
            m[c][q] /= d;
            inv[c][q] /= d;
        }
        for (int rr = 0; rr < 4; ++rr)
            if (rr != c) {
                double f = m[rr][c];
                for (int q = 0; q < 4; ++q) {
                    m[rr][q] -= f * m[c][q];
                    inv[rr][q] -= f * inv[c][q];
                }
            }
    }
    double half[4] = {r + 2 * max_half_diagonal(lf), r + 2 * max_half_diagonal(lf), 0, 0};
    for (const auto& v : w.polygon) {
        auto [x, y] = v.approx();
        half[2] = std::max(half[2], 2 * std::fabs(x));
        half[3] = std::max(half[3], 2 * std::fabs(y));
    }
    std::vector<long> box(4);
    for (int l = 0; l < 4; ++l) {
        double s = 0;
        for (int q = 0; q < 4; ++q) s += std::fabs(inv[l][q]) * half[q];
        box[l] = static_cast<long>(std::ceil(s)) + 1;
    }
    return box;
}

}  // namespace

DecoratedTile decorate(const LineFamilies& lf, int i, int j, const std::vector<IVec>& vertices) {
    std::vector<std::vector<FieldElement>> offs(4);
    for (int f = 0; f < 4; ++f) {
        auto [lo, hi] = tile_range(lf, f, i, j);
        for (const auto& u : vertices) {
            FieldElement o = lf.offset(f, u);
            if (lo < o && o < hi) offs[f].push_back(o);
        }
    }
    return decorate_offsets(lf, i, j, std::move(offs));
}

std::string DecoratedTile::key() const {
    std::ostringstream s;
    s << i << j;
    for (size_t f = 0; f < offsets.size(); ++f) {
        s << '|';
        for (size_t q = 0; q < offsets[f].size(); ++q) s << (q ? ";" : "") << offsets[f][q].to_string();
    }
    return s.str();
}

DecoratedTile DecoratedTile::only(int f) const {
    DecoratedTile t;
    t.i = i;
    t.j = j;
    t.offsets.assign(offsets.size(), {});
    t.offsets[f] = offsets[f];
    for (const auto& s : segments)
        if (s.direction == f) t.segments.push_back(s);
    return t;
}

std::vector<std::string> Tileset::keys() const {
    std::vector<std::string> k;
    for (const auto& t : tiles) k.push_back(t.key());
    return k;
}

DecorationRadius decoration_radius(const LineFamilies& lf) {
    const FieldMatrix& a = lf.projection;
    auto norm2 = [&](const Vec& v) {
        Vec p = a * v;
        return p[0] * p[0] + p[1] * p[1];
    };
    const FieldPtr& fld = lf.slope.field;
    FieldElement best(fld, 0L);
    for (int f = 0; f < 4; ++f) {
        FieldElement d1(fld, 0L);
        for (int l = 0; l < 4; ++l)
            if (l != f) {
                FieldElement n = norm2(unit_vec(fld, 4, l));
                if (n > d1) d1 = n;
            }
        auto [fl, ce] = floor_ceil(lf.lifted[f]);
        auto to_vec = [&](const std::vector<Integer>& z) {
            Vec v;
            for (const auto& x : z) v.push_back(FieldElement(fld, Rational(x)));
            return v;
        };
        FieldElement d2 = norm2(to_vec(fl));
        FieldElement c2 = norm2(to_vec(ce));
        if (c2 > d2) d2 = c2;
        FieldElement d = d1 + d2 * Rational(1, 4);
        if (d > best) best = d;
    }
    Rational b = rational_above(std::sqrt(best.to_double()));
    while (FieldElement(fld, b * b) < best) b += Rational(1, 1000);
    return {best, b};
}

Tileset decorated_tileset(const Slope& e, const FieldMatrix& a, const Rational& extra) {
    Tileset ts;
    ts.lines = line_families(e, a);
    const LineFamilies& lf = ts.lines;
    Window w = window(e);
    auto dr = decoration_radius(lf);
    ts.search_radius = dr.bound + rational_above(max_half_diagonal(lf)) + extra;
    const double r = ts.search_radius.get_d();
    auto box = candidate_box(lf, w, r);
    std::map<std::string, DecoratedTile> found;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            std::vector<IVec> corners(4, IVec(4, 0));
            corners[1][i] = corners[3][i] = 1;
            corners[2][j] = corners[3][j] = 1;
            Polygon rt = region(w, corners);
            if (rt.empty()) continue;
            std::vector<std::pair<FieldElement, FieldElement>> ranges;
            for (int f = 0; f < 4; ++f) ranges.push_back(tile_range(lf, f, i, j));
            IVec centre2(4, 0);
            centre2[i] = centre2[j] = 1;
            std::vector<IVec> cand;
            std::vector<Polygon> translates;
            IVec u(4);
            for (u[0] = -box[0]; u[0] <= box[0]; ++u[0])
                for (u[1] = -box[1]; u[1] <= box[1]; ++u[1])
                    for (u[2] = -box[2]; u[2] <= box[2]; ++u[2])
                        for (u[3] = -box[3]; u[3] <= box[3]; ++u[3]) {
                            if (std::find(corners.begin(), corners.end(), u) != corners.end()) continue;
                            IVec twice(4);
                            for (int l = 0; l < 4; ++l) twice[l] = 2 * u[l] - centre2[l];
                            if (norm_d(lf.projection, twice) / 2 > r + 1e-9) continue;
                            bool crosses = false;
                            for (int f = 0; f < 4 && !crosses; ++f) {
                                FieldElement o = lf.offset(f, u);
                                crosses = ranges[f].first < o && o < ranges[f].second;
                            }
                            if (!crosses) continue;
                            Polygon t = translate(w.polygon, -w.project(u));
                            if (!interiors_overlap(rt, t)) continue;
                            for (int l = 0; l < 4; ++l) ts.reach = std::max(ts.reach, std::abs(u[l]));
                            cand.push_back(u);
                            translates.push_back(std::move(t));
                        }
            for (const auto& c : partition(rt, translates)) {
                std::vector<IVec> verts = corners;
                for (size_t q = 0; q < cand.size(); ++q)
                    if (c.inside[q]) verts.push_back(cand[q]);
                DecoratedTile d = decorate(lf, i, j, verts);
                found.emplace(d.key(), std::move(d));
            }
        }
    for (auto& [k, t] : found) ts.tiles.push_back(std::move(t));
    return ts;
}

Tileset decorated_tileset(const Slope& e, const Rational& extra) {
    if (!is_characterized_by_subperiods(e)) throw NotCharacterized("slope is not characterized by its subperiods");
    auto fp = fine_projection(e);
    if (!fp) throw NoFineProjection("no valid fine projection");
    return decorated_tileset(e, fp->matrix, extra);
}

int harvest_margin(const LineFamilies& lf, const Rational& search_radius) {
    auto box = candidate_box(lf, window(lf.slope), search_radius.get_d());
    return static_cast<int>(*std::max_element(box.begin(), box.end())) + 1;
}

namespace {

struct GlobalOffsets {
    std::vector<std::vector<FieldElement>> sorted;  // per direction
};

GlobalOffsets global_offsets(const LineFamilies& lf, const std::vector<IVec>& verts) {
    GlobalOffsets g;
    for (int f = 0; f < 4; ++f) {
        std::vector<FieldElement> v;
        v.reserve(verts.size());
        for (const auto& x : verts) v.push_back(lf.offset(f, x));
        sort_unique(v);
        g.sorted.push_back(std::move(v));
    }
    return g;
}

bool deep(const IVec& pos, int k, int margin) {
    for (int x : pos)
        if (x < -k + 1 + margin || x > k - margin - 1) return false;
    return true;
}

}  // namespace

std::vector<DecoratedTile> harvest(const LineFamilies& lf, const Patch& p, int margin) {
    auto g = global_offsets(lf, p.vertices());
    std::map<std::string, DecoratedTile> found;
    for (const auto& t : p.tiles) {
        if (!deep(t.pos, p.k, margin)) continue;
        std::vector<std::vector<FieldElement>> offs(4);
        for (int f = 0; f < 4; ++f) {
            FieldElement base = lf.offset(f, t.pos);
            auto [lo, hi] = tile_range(lf, f, t.i, t.j);
            const auto& s = g.sorted[f];
            auto it = std::upper_bound(s.begin(), s.end(), base + lo);
            for (; it != s.end() && *it < base + hi; ++it) offs[f].push_back(*it - base);
        }
        DecoratedTile d = decorate_offsets(lf, t.i, t.j, std::move(offs));
        found.emplace(d.key(), std::move(d));
    }
    std::vector<DecoratedTile> out;
    for (auto& [k, d] : found) out.push_back(std::move(d));
    return out;
}

IntervalCensus interval_census(const LineFamilies& lf, const Patch& p, int f, int margin) {
    IntervalCensus c;
    c.direction = f;
    auto verts = p.vertices();
    std::vector<FieldElement> s;
    for (const auto& x : verts) s.push_back(lf.offset(f, x));
    sort_unique(s);
    std::optional<FieldElement> lo, hi;
    for (const auto& t : p.tiles) {
        if (!deep(t.pos, p.k, margin)) continue;
        FieldElement base = lf.offset(f, t.pos);
        auto [a, b] = tile_range(lf, f, t.i, t.j);
        if (!lo || base + a < *lo) lo = base + a;
        if (!hi || base + b > *hi) hi = base + b;
    }
    if (!lo) return c;
    std::vector<FieldElement> gaps;
    for (size_t q = 0; q + 1 < s.size(); ++q) {
        if (s[q] < *lo || s[q + 1] > *hi) continue;
        gaps.push_back(s[q + 1] - s[q]);
        ++c.lines;
    }
    sort_unique(gaps);
    double scale = std::sqrt(lf.direction_norm2[f].to_double());
    for (const auto& g : gaps) c.spacings.push_back(g.to_double() / scale);
    c.gaps = std::move(gaps);
    return c;
}

}  // namespace cnp
