#include "cnp/atlas.hpp"

#include "cnp/projection.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace cnp {

FieldMatrix internal_projection(const Slope& e) {
    if (e.n - e.d != 2)
        throw AtlasError("internal space has dimension " + std::to_string(e.n - e.d) + "; only 2 is supported");
    auto k = e.matrix().right_kernel();
    if (k.size() != 2) throw AtlasError("unexpected kernel dimension");
    return FieldMatrix(e.field, k);
}

Point2 Window::project(const IVec& u) const {
    Point2 p{FieldElement(internal.field(), 0L), FieldElement(internal.field(), 0L)};
    for (size_t l = 0; l < u.size(); ++l) {
        if (u[l] == 0) continue;
        Rational c(u[l]);
        p.x += internal(0, static_cast<int>(l)) * c;
        p.y += internal(1, static_cast<int>(l)) * c;
    }
    return p;
}

Point2 Window::project(const Vec& u) const {
    Point2 p{FieldElement(internal.field(), 0L), FieldElement(internal.field(), 0L)};
    for (size_t l = 0; l < u.size(); ++l) {
        p.x += internal(0, static_cast<int>(l)) * u[l];
        p.y += internal(1, static_cast<int>(l)) * u[l];
    }
    return p;
}

Window window(const Slope& e) {
    Window w;
    w.internal = internal_projection(e);
    std::vector<Point2> pts;
    for (int mask = 0; mask < (1 << e.n); ++mask) {
        IVec u(e.n);
        for (int l = 0; l < e.n; ++l) u[l] = (mask >> l) & 1;
        pts.push_back(w.project(u));
    }
    w.polygon = convex_hull(pts);
    if (w.polygon.size() < 3) throw DegenerateWindow("window is a segment or a point");
    return w;
}

Polygon region(const Window& w, const std::vector<IVec>& pattern) {
    if (pattern.empty()) return w.polygon;
    Polygon r = translate(w.polygon, -w.project(pattern[0]));
    for (size_t q = 1; q < pattern.size() && !r.empty(); ++q)
        r = intersect(r, translate(w.polygon, -w.project(pattern[q])));
    return r;
}

Location point_membership(const Polygon& p, const Point2& z) { return locate(p, z); }

Metric parse_metric(const std::string& s) {
    if (s == "graph") return Metric::graph;
    if (s == "euclid") return Metric::euclid;
    throw AtlasError("unknown metric '" + s + "' (graph|euclid)");
}

std::string to_string(Metric m) { return m == Metric::graph ? "graph" : "euclid"; }

bool RMap::has(const IVec& u) const { return std::binary_search(cells.begin(), cells.end(), u); }

namespace {

using Presence = std::function<bool(const IVec&)>;

void fill_tiles(RMap& m) {
    m.tiles.clear();
    if (m.cells.empty()) return;
    const int n = static_cast<int>(m.cells[0].size());
    for (const auto& u : m.cells)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                IVec a = u, b = u, c = u;
                ++a[i];
                ++b[j];
                ++c[i];
                ++c[j];
                if (m.has(a) && m.has(b) && m.has(c)) m.tiles.push_back({i, j, u});
            }
    std::sort(m.tiles.begin(), m.tiles.end());
}

RMap build_rmap(const Presence& present, int n, int r, Metric metric) {
    RMap m;
    m.radius = r;
    m.metric = metric;
    IVec origin(n, 0);
    if (metric == Metric::graph) {
        std::map<IVec, int> dist{{origin, 0}};
        std::deque<IVec> queue{origin};
        while (!queue.empty()) {
            IVec u = queue.front();
            queue.pop_front();
            int du = dist[u];
            if (du == r) continue;
            for (int l = 0; l < n; ++l)
                for (int s : {1, -1}) {
                    IVec v = u;
                    v[l] += s;
                    if (dist.count(v) || !present(v)) continue;
                    dist[v] = du + 1;
                    queue.push_back(v);
                }
        }
        for (const auto& [u, d] : dist) m.cells.push_back(u);
    } else {
        IVec u(n, -r);
        while (true) {
            long sq = 0;
            for (int x : u) sq += static_cast<long>(x) * x;
            if (sq <= static_cast<long>(r) * r && (sq == 0 || present(u))) m.cells.push_back(u);
            int l = 0;
            while (l < n && u[l] == r) u[l++] = -r;
            if (l == n) break;
            ++u[l];
        }
    }
    std::sort(m.cells.begin(), m.cells.end());
    fill_tiles(m);
    return m;
}

Point2 image(const FieldMatrix& a, int l, int s) {
    FieldElement x = a(0, l), y = a(1, l);
    return s > 0 ? Point2{x, y} : Point2{-x, -y};
}

// Counter-clockwise angular order starting from the positive x half plane.
bool angle_less(const Point2& p, const Point2& q) {
    auto half = [](const Point2& v) {
        Sign sy = v.y.sign();
        if (sy == Sign::positive) return 0;
        if (sy == Sign::zero && v.x.sign() == Sign::positive) return 0;
        return 1;
    };
    int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    return cross(p, q).sign() == Sign::positive;
}

}  // namespace

RMap rmap_from(const std::function<bool(const IVec&)>& present, int n, int r, Metric m) {
    return build_rmap(present, n, r, m);
}

RMap rmap_at(const Window& w, const Point2& z, int r, Metric m) {
    const int n = w.internal.cols();
    return build_rmap([&](const IVec& u) { return locate(w.polygon, z + w.project(u)) != Location::outside; }, n, r,
                      m);
}

RMap close_rmap(RMap m, const FieldMatrix& projection) {
    if (m.cells.empty()) {
        m.closed = true;
        return m;
    }
    const int n = static_cast<int>(m.cells[0].size());
    std::vector<std::pair<int, int>> dirs;  // (l, sign)
    for (int l = 0; l < n; ++l) {
        dirs.push_back({l, 1});
        dirs.push_back({l, -1});
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<Tile> tiles(m.tiles.begin(), m.tiles.end());
        // unit edges between cells
        std::map<IVec, std::set<std::pair<int, int>>> incident;
        for (const auto& u : m.cells)
            for (const auto& [l, sg] : dirs) {
                IVec v = u;
                v[l] += sg;
                if (m.has(v)) incident[u].insert({l, sg});
            }
        for (const auto& [v, edges] : incident) {
            if (edges.size() < 2) continue;
            std::vector<std::pair<int, int>> order(edges.begin(), edges.end());
            std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
                return angle_less(image(projection, a.first, a.second), image(projection, b.first, b.second));
            });
            for (size_t q = 0; q < order.size(); ++q) {
                auto d1 = order[q], d2 = order[(q + 1) % order.size()];
                if (d1.first == d2.first) continue;
                Point2 p1 = image(projection, d1.first, d1.second);
                Point2 p2 = image(projection, d2.first, d2.second);
                if (cross(p1, p2).sign() != Sign::positive) continue;
                bool blocked = false;
                for (const auto& [l, s] : dirs) {
                    if (l == d1.first || l == d2.first) continue;
                    Point2 w = image(projection, l, s);
                    if (cross(p1, w).sign() == Sign::positive && cross(w, p2).sign() == Sign::positive) {
                        blocked = true;
                        break;
                    }
                }
                if (blocked) continue;
                IVec pos = v;
                if (d1.second < 0) --pos[d1.first];
                if (d2.second < 0) --pos[d2.first];
                Tile t{std::min(d1.first, d2.first), std::max(d1.first, d2.first), pos};
                if (tiles.count(t)) continue;
                IVec far = v;
                far[d1.first] += d1.second;
                far[d2.first] += d2.second;
                if (!m.has(far)) m.cells.insert(std::upper_bound(m.cells.begin(), m.cells.end(), far), far);
                m.added.push_back(t);
                changed = true;
            }
            if (changed) break;
        }
        if (changed) {
            fill_tiles(m);
            for (const auto& t : m.added)
                if (!std::binary_search(m.tiles.begin(), m.tiles.end(), t)) {
                    m.tiles.insert(std::upper_bound(m.tiles.begin(), m.tiles.end(), t), t);
                }
        }
    }
    std::sort(m.added.begin(), m.added.end());
    m.closed = true;
    return m;
}

namespace {

struct Box {
    double x0, y0, x1, y1;
};

Box box_of(const Polygon& p) {
    Box b{1e300, 1e300, -1e300, -1e300};
    for (const auto& v : p) {
        auto [x, y] = v.approx();
        b.x0 = std::min(b.x0, x);
        b.y0 = std::min(b.y0, y);
        b.x1 = std::max(b.x1, x);
        b.y1 = std::max(b.y1, y);
    }
    return b;
}

bool boxes_apart(const Box& a, const Box& b) {
    const double eps = 1e-9;
    return a.x1 < b.x0 - eps || b.x1 < a.x0 - eps || a.y1 < b.y0 - eps || b.y1 < a.y0 - eps;
}

}  // namespace

std::vector<Cell> partition(const Polygon& domain, const std::vector<Polygon>& translates) {
    std::vector<Cell> cells{{domain, {}}};
    std::vector<Box> boxes{box_of(domain)};
    for (const auto& t : translates) {
        Box tb = box_of(t);
        std::vector<Cell> next;
        std::vector<Box> next_boxes;
        auto emit = [&](Polygon p, std::vector<bool> flags, bool in) {
            flags.push_back(in);
            next_boxes.push_back(box_of(p));
            next.push_back({std::move(p), std::move(flags)});
        };
        for (size_t c = 0; c < cells.size(); ++c) {
            Cell& cell = cells[c];
            if (boxes_apart(boxes[c], tb)) {
                cell.inside.push_back(false);
                next.push_back(std::move(cell));
                next_boxes.push_back(boxes[c]);
                continue;
            }
            Polygon in = intersect(cell.polygon, t);
            if (in.empty()) {
                cell.inside.push_back(false);
                next.push_back(std::move(cell));
                next_boxes.push_back(boxes[c]);
                continue;
            }
            if (area(in) == area(cell.polygon)) {
                cell.inside.push_back(true);
                next.push_back(std::move(cell));
                next_boxes.push_back(boxes[c]);
                continue;
            }
            emit(std::move(in), cell.inside, true);
            Polygon rest = cell.polygon;
            for (size_t k = 0; k < t.size() && !rest.empty(); ++k) {
                const Point2& a = t[k];
                const Point2& b = t[(k + 1) % t.size()];
                Polygon out = clip_left_of(rest, b, a);
                if (!out.empty()) emit(std::move(out), cell.inside, false);
                rest = clip_left_of(rest, a, b);
            }
        }
        cells = std::move(next);
        boxes = std::move(next_boxes);
    }
    return cells;
}

std::vector<IVec> atlas_candidates(const Window& w, int n, int r, Metric m) {
    std::vector<IVec> out;
    IVec u(n, -r);
    while (true) {
        long norm = 0;
        for (int x : u) norm += m == Metric::graph ? std::abs(x) : static_cast<long>(x) * x;
        long bound = m == Metric::graph ? r : static_cast<long>(r) * r;
        bool zero = std::all_of(u.begin(), u.end(), [](int x) { return x == 0; });
        if (!zero && norm <= bound && interiors_overlap(w.polygon, translate(w.polygon, -w.project(u))))
            out.push_back(u);
        int l = 0;
        while (l < n && u[l] == r) u[l++] = -r;
        if (l == n) break;
        ++u[l];
    }
    return out;
}

std::string rmap_key(const RMap& m) {
    std::ostringstream s;
    for (const auto& u : m.cells) {
        s << '(';
        for (size_t l = 0; l < u.size(); ++l) s << (l ? "," : "") << u[l];
        s << ')';
    }
    return s.str();
}

Atlas atlas(const Slope& e, int r, Metric metric) {
    if (r < 0) throw AtlasError("radius must be non-negative");
    Atlas out;
    out.window = window(e);
    const Window& w = out.window;
    out.window_area = area(w.polygon);
    if (e.d != 2) throw AtlasError("r-maps need a two dimensional slope");
    FieldMatrix proj = orthogonal_projection(e).matrix;
    auto cand = atlas_candidates(w, e.n, r, metric);
    std::vector<Polygon> translates;
    for (const auto& u : cand) translates.push_back(translate(w.polygon, -w.project(u)));
    auto cells = partition(w.polygon, translates);
    std::map<IVec, size_t> index;
    for (size_t q = 0; q < cand.size(); ++q) index[cand[q]] = q;
    std::map<std::string, size_t> by_key;
    out.covered_area = FieldElement(e.field, 0L);
    for (const auto& c : cells) {
        auto present = [&](const IVec& u) {
            auto it = index.find(u);
            return it != index.end() && c.inside[it->second];
        };
        RMap m = close_rmap(build_rmap(present, e.n, r, metric), proj);
        std::string key = rmap_key(m);
        FieldElement a = area(c.polygon);
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            by_key[key] = out.entries.size();
            out.entries.push_back({std::move(m), {c.polygon}, a, centroid_of_vertices(c.polygon)});
        } else {
            auto& entry = out.entries[it->second];
            entry.region.push_back(c.polygon);
            entry.area += a;
        }
        out.covered_area += a;
    }
    return out;
}

}  // namespace cnp
