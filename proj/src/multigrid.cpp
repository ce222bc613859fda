#include "cnp/multigrid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>

namespace cnp {

bool Tile::operator<(const Tile& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return pos < o.pos;
}

size_t IVecHash::operator()(const IVec& v) const {
    size_t h = 1469598103934665603ULL;
    for (int x : v) h = (h ^ static_cast<size_t>(x + 0x9e3779b9)) * 1099511628211ULL;
    return h;
}

Point2 Patch::point(const IVec& x) const {
    FieldElement a(slope.field, 0L), b(slope.field, 0L);
    for (size_t l = 0; l < x.size(); ++l) {
        if (x[l] == 0) continue;
        a += projection(0, static_cast<int>(l)) * Rational(x[l]);
        b += projection(1, static_cast<int>(l)) * Rational(x[l]);
    }
    return {a, b};
}

Point2 Patch::edge(int l) const { return {projection(0, l), projection(1, l)}; }

Polygon Patch::polygon(const Tile& t) const {
    Point2 p0 = point(t.pos);
    Point2 ei = edge(t.i), ej = edge(t.j);
    Polygon poly{p0, p0 + ei, p0 + ei + ej, p0 + ej};
    if (cross(ei, ej).sign() == Sign::negative) std::reverse(poly.begin(), poly.end());
    return poly;
}

std::vector<IVec> Patch::vertices() const {
    std::set<IVec> s;
    for (const auto& t : tiles) {
        IVec x = t.pos;
        s.insert(x);
        x[t.i] += 1;
        s.insert(x);
        x[t.j] += 1;
        s.insert(x);
        x[t.i] -= 1;
        s.insert(x);
    }
    return {s.begin(), s.end()};
}

std::vector<Rational> draw_shift(int n, uint64_t seed, bool integer_sum) {
    std::mt19937_64 rng(seed);
    const long den = 10007;
    std::vector<Rational> g;
    Rational sum = 0;
    for (int l = 0; l < n; ++l) {
        long num = static_cast<long>(rng() % den);
        g.emplace_back(num, den);
        g.back().canonicalize();
        sum += g.back();
    }
    if (integer_sum) {
        g[n - 1] -= sum;
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), g[n - 1].get_num_mpz_t(), g[n - 1].get_den_mpz_t());
        g[n - 1] -= Rational(fl);
    }
    return g;
}

Multigrid generators_to_grid(const Slope& e, const std::vector<Rational>& shift) {
    if (static_cast<int>(shift.size()) != e.n) throw SlopeError("shift length must equal n");
    if (e.d != 2) throw SlopeError("multigrid duality is implemented for planes (d = 2)");
    for (int l = 0; l < e.n; ++l)
        if (e.generators[0][l].is_zero() && e.generators[1][l].is_zero())
            throw SlopeError("grid " + std::to_string(l) + " has a zero normal");
    return {e, e.matrix(), shift};
}

namespace {

// Exact ceil of alpha*mi + beta*mj + c with a floating pre-pass.
struct LinearForm {
    FieldElement alpha, beta, c;
    double ad, bd, cd;
};

}  // namespace

Patch dual(const Multigrid& g, const FieldMatrix& projection, int k) {
    const Slope& e = g.slope;
    const int n = e.n;
    const FieldPtr& f = e.field;
    Patch p;
    p.slope = e;
    p.projection = projection;
    p.k = k;
    p.shift = g.shift;
    std::vector<FieldElement> gamma;
    for (const auto& s : g.shift) gamma.emplace_back(f, s);
    auto G = [&](int a, int b) { return g.grid(0, a) * g.grid(1, b) - g.grid(0, b) * g.grid(1, a); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            FieldElement gij = G(i, j);
            if (gij.is_zero()) throw SlopeError("grids " + std::to_string(i) + " and " + std::to_string(j) + " are parallel");
            FieldElement inv = gij.inverse();
            std::vector<LinearForm> forms(n);
            for (int l = 0; l < n; ++l) {
                if (l == i || l == j) continue;
                FieldElement a = G(l, j) * inv, b = G(i, l) * inv;
                FieldElement c = gamma[l] - a * gamma[i] - b * gamma[j];
                forms[l] = {a, b, c, a.to_double(), b.to_double(), c.to_double()};
            }
            for (int mi = -k; mi <= k; ++mi)
                for (int mj = -k; mj <= k; ++mj) {
                    Tile t{i, j, IVec(n, 0)};
                    t.pos[i] = mi;
                    t.pos[j] = mj;
                    for (int l = 0; l < n; ++l) {
                        if (l == i || l == j) continue;
                        const auto& fl = forms[l];
                        double v = fl.ad * mi + fl.bd * mj + fl.cd;
                        double r = std::round(v);
                        if (std::fabs(v - r) > 1e-9) {
                            t.pos[l] = static_cast<int>(std::ceil(v));
                            continue;
                        }
                        FieldElement x = fl.alpha * Rational(mi) + fl.beta * Rational(mj) + fl.c;
                        if (x.is_integer())
                            throw NonGenericShift("shift is not generic: three grid lines meet (grids " +
                                                  std::to_string(i) + "," + std::to_string(j) + "," +
                                                  std::to_string(l) + ")");
                        t.pos[l] = static_cast<int>(x.ceil().get_si());
                    }
                    p.tiles.push_back(std::move(t));
                }
        }
    std::sort(p.tiles.begin(), p.tiles.end());
    return p;
}

Patch generate_patch(const Slope& e, const FieldMatrix& projection, int k, ShiftOptions opt) {
    std::string last;
    for (int attempt = 0; attempt < 32; ++attempt) {
        auto shift = draw_shift(e.n, opt.seed + static_cast<uint64_t>(attempt), opt.integer_sum);
        try {
            return dual(generators_to_grid(e, shift), projection, k);
        } catch (const NonGenericShift& ex) {
            last = ex.what();
        }
    }
    throw NonGenericShift("no generic shift after 32 draws: " + last);
}

std::unordered_map<Point2, IVec, Point2Hash> lift(const Patch& p) {
    std::unordered_map<Point2, IVec, Point2Hash> out;
    if (p.tiles.empty()) return out;
    const int n = p.slope.n;
    std::unordered_map<Point2, std::vector<std::pair<Point2, int>>, Point2Hash> adj;
    auto add_edge = [&](const Point2& a, const Point2& b, int l) {
        adj[a].push_back({b, l + 1});
        adj[b].push_back({a, -(l + 1)});
    };
    for (const auto& t : p.tiles) {
        Point2 p0 = p.point(t.pos), ei = p.edge(t.i), ej = p.edge(t.j);
        Point2 p1 = p0 + ei, p3 = p0 + ej, p2 = p1 + ej;
        add_edge(p0, p1, t.i);
        add_edge(p3, p2, t.i);
        add_edge(p0, p3, t.j);
        add_edge(p1, p2, t.j);
    }
    // BFS per connected component; each component anchored at its first vertex.
    for (const auto& t : p.tiles) {
        Point2 start = p.point(t.pos);
        if (out.count(start)) continue;
        out[start] = IVec(n, 0);
        std::deque<Point2> queue{start};
        while (!queue.empty()) {
            Point2 v = queue.front();
            queue.pop_front();
            const IVec base = out.at(v);
            for (const auto& [w, code] : adj[v]) {
                IVec x = base;
                int l = std::abs(code) - 1;
                x[l] += code > 0 ? 1 : -1;
                auto it = out.find(w);
                if (it == out.end()) {
                    out.emplace(w, x);
                    queue.push_back(w);
                } else if (it->second != x) {
                    throw InconsistentLift("lift is inconsistent: a vertex receives two different lifts");
                }
            }
        }
    }
    return out;
}

Patch shadow_patch(const Patch& p, int i) {
    Patch s;
    std::vector<Vec> gens;
    for (const auto& g : p.slope.generators) gens.push_back(shadow_map(g, i));
    s.slope = Slope::make(p.slope.field, gens, p.slope.name.empty() ? "" : p.slope.name + "-shadow" + std::to_string(i));
    std::vector<int> cols;
    for (int c = 0; c < p.slope.n; ++c)
        if (c != i) cols.push_back(c);
    s.projection = p.projection.select_cols(cols);
    s.k = p.k;
    for (size_t c = 0; c < p.shift.size(); ++c)
        if (static_cast<int>(c) != i) s.shift.push_back(p.shift[c]);
    for (const auto& t : p.tiles) {
        if (t.i == i || t.j == i) continue;
        Tile u{t.i > i ? t.i - 1 : t.i, t.j > i ? t.j - 1 : t.j, {}};
        for (size_t c = 0; c < t.pos.size(); ++c)
            if (static_cast<int>(c) != i) u.pos.push_back(t.pos[c]);
        s.tiles.push_back(std::move(u));
    }
    std::sort(s.tiles.begin(), s.tiles.end());
    return s;
}

bool in_complete_core(const IVec& x, int k) {
    for (int v : x)
        if (v < -k + 1 || v > k) return false;
    return true;
}

std::optional<OverlapWitness> find_overlap(const Patch& p) {
    const size_t m = p.tiles.size();
    std::vector<Polygon> polys(m);
    std::vector<std::array<std::array<double, 2>, 4>> fp(m);
    std::vector<std::array<double, 4>> box(m);
    for (size_t t = 0; t < m; ++t) {
        polys[t] = p.polygon(p.tiles[t]);
        box[t] = {1e300, 1e300, -1e300, -1e300};
        for (int c = 0; c < 4; ++c) {
            fp[t][c] = polys[t][c].approx();
            box[t][0] = std::min(box[t][0], fp[t][c][0]);
            box[t][1] = std::min(box[t][1], fp[t][c][1]);
            box[t][2] = std::max(box[t][2], fp[t][c][0]);
            box[t][3] = std::max(box[t][3], fp[t][c][1]);
        }
    }
    double cell = 0;
    for (int l = 0; l < p.slope.n; ++l) {
        auto e = p.edge(l).approx();
        cell = std::max(cell, std::hypot(e[0], e[1]));
    }
    cell = std::max(cell * 2, 1e-6);
    std::map<std::pair<long, long>, std::vector<size_t>> buckets;
    for (size_t t = 0; t < m; ++t)
        for (long bx = static_cast<long>(std::floor(box[t][0] / cell)); bx <= static_cast<long>(std::floor(box[t][2] / cell)); ++bx)
            for (long by = static_cast<long>(std::floor(box[t][1] / cell)); by <= static_cast<long>(std::floor(box[t][3] / cell)); ++by)
                buckets[{bx, by}].push_back(t);
    // -1 separated, +1 overlapping, 0 undecided in floating point
    auto float_sat = [&](size_t a, size_t b) {
        bool undecided = false;
        for (int pass = 0; pass < 2; ++pass) {
            const auto& P = pass ? fp[b] : fp[a];
            const auto& Q = pass ? fp[a] : fp[b];
            bool ccw = ((P[1][0] - P[0][0]) * (P[2][1] - P[0][1]) - (P[1][1] - P[0][1]) * (P[2][0] - P[0][0])) > 0;
            for (int i = 0; i < 4; ++i) {
                double ex = P[(i + 1) % 4][0] - P[i][0], ey = P[(i + 1) % 4][1] - P[i][1];
                double mx = -1e300;
                for (int c = 0; c < 4; ++c) {
                    double cr = ex * (Q[c][1] - P[i][1]) - ey * (Q[c][0] - P[i][0]);
                    mx = std::max(mx, ccw ? cr : -cr);
                }
                if (mx < -1e-9) return -1;
                if (mx <= 1e-9) undecided = true;
            }
        }
        return undecided ? 0 : 1;
    };
    std::set<std::pair<size_t, size_t>> seen;
    for (const auto& [key, list] : buckets)
        for (size_t x = 0; x < list.size(); ++x)
            for (size_t y = x + 1; y < list.size(); ++y) {
                size_t a = std::min(list[x], list[y]), b = std::max(list[x], list[y]);
                if (box[a][2] < box[b][0] - 1e-9 || box[b][2] < box[a][0] - 1e-9 ||
                    box[a][3] < box[b][1] - 1e-9 || box[b][3] < box[a][1] - 1e-9)
                    continue;
                if (!seen.insert({a, b}).second) continue;
                int v = float_sat(a, b);
                if (v < 0) continue;
                if (v > 0 || interiors_overlap(polys[a], polys[b])) return OverlapWitness{a, b};
            }
    return std::nullopt;
}

bool stars_close(const Patch& p) {
    std::unordered_map<IVec, std::map<int, int>, IVecHash> star;
    auto note = [&](const IVec& v, int code) { star[v][code]++; };
    for (const auto& t : p.tiles) {
        IVec x = t.pos, xi = t.pos, xj = t.pos, xij = t.pos;
        xi[t.i]++;
        xj[t.j]++;
        xij[t.i]++;
        xij[t.j]++;
        const int ci = t.i + 1, cj = t.j + 1;
        note(x, ci), note(x, cj);
        note(xi, -ci), note(xi, cj);
        note(xj, ci), note(xj, -cj);
        note(xij, -ci), note(xij, -cj);
    }
    for (const auto& [v, edges] : star) {
        if (!in_complete_core(v, p.k)) continue;
        for (const auto& [code, count] : edges)
            if (count != 2) return false;
    }
    return true;
}

}  // namespace cnp
