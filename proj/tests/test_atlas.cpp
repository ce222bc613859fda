#include "cnp/atlas.hpp"
#include "cnp/projection.hpp"

#include "doctest.h"

#include <random>
#include <set>

using namespace cnp;

namespace {

IVec unit(int n, int i, int c = 1) {
    IVec u(n, 0);
    u[i] = c;
    return u;
}

bool contains_polygon(const Polygon& outer, const Polygon& inner) {
    for (const auto& v : inner)
        if (locate(outer, v) == Location::outside) return false;
    return true;
}

}  // namespace

TEST_CASE("window shapes") {
    CHECK(window(cyrenaic_slope()).polygon.size() == 8);
    CHECK(window(rauzy_line_slope()).polygon.size() == 6);
    auto sq = window(axis_slope(4));
    CHECK(sq.polygon.size() == 4);
    CHECK(area(sq.polygon).abs() == area(sq.polygon));
    CHECK_THROWS_AS(window(rauzy_slope()), AtlasError);
    CHECK_THROWS_AS(window(penrose_slope()), AtlasError);
}

TEST_CASE("regions of small patterns") {
    auto e = cyrenaic_slope();
    auto w = window(e);
    CHECK(same_polygon(region(w, {IVec(4, 0)}), w.polygon));
    for (int i = 0; i < 4; ++i) {
        CHECK_FALSE(region(w, {IVec(4, 0), unit(4, i)}).empty());
        CHECK(region(w, {IVec(4, 0), unit(4, i, 100)}).empty());
    }
    // translating the pattern translates the region
    std::vector<IVec> p{IVec(4, 0), unit(4, 1), {0, 1, 1, 0}};
    IVec t{1, -2, 0, 3};
    std::vector<IVec> pt;
    for (auto u : p) {
        for (int l = 0; l < 4; ++l) u[l] += t[l];
        pt.push_back(u);
    }
    CHECK(same_polygon(region(w, pt), translate(region(w, p), -w.project(t))));
}

TEST_CASE("point membership") {
    auto w = window(cyrenaic_slope());
    CHECK(point_membership(w.polygon, centroid_of_vertices(w.polygon)) == Location::inside);
    CHECK(point_membership(w.polygon, w.polygon[3]) == Location::boundary);
    auto f = w.polygon[0].x.field();
    CHECK(point_membership(w.polygon, {FieldElement(f, 100L), FieldElement(f, 0L)}) == Location::outside);
}

TEST_CASE("region of a union is the intersection of regions") {
    auto e = cyrenaic_slope();
    auto w = window(e);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> c(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<IVec> p1{IVec(4, 0)}, p2{IVec(4, 0)};
        for (int q = 0; q < 2; ++q) {
            p1.push_back({c(rng), c(rng), c(rng), c(rng)});
            p2.push_back({c(rng), c(rng), c(rng), c(rng)});
        }
        std::vector<IVec> u = p1;
        u.insert(u.end(), p2.begin(), p2.end());
        Polygon lhs = region(w, u), rhs = intersect(region(w, p1), region(w, p2));
        CHECK(lhs.empty() == rhs.empty());
        if (!lhs.empty()) CHECK(same_polygon(lhs, rhs));
    }
}

TEST_CASE("atlas partitions the window") {
    auto e = cyrenaic_slope();
    auto a0 = atlas(e, 0);
    REQUIRE(a0.entries.size() == 1);
    CHECK(a0.entries[0].area == a0.window_area);
    for (int r : {1, 2}) {
        auto a = atlas(e, r);
        CHECK(a.covered_area == a.window_area);
        std::set<std::string> keys;
        for (const auto& entry : a.entries) {
            CHECK(keys.insert(rmap_key(entry.map)).second);
            CHECK(entry.map.closed);
            CHECK(entry.area.sign() == Sign::positive);
            // closure only adds genuine vertices
            Polygon reg = region(a.window, entry.map.cells);
            for (const auto& piece : entry.region) CHECK(contains_polygon(reg, piece));
        }
    }
    CHECK_THROWS_AS(atlas(e, -1), AtlasError);
}

TEST_CASE("r = 1 maps occur exactly when their region is nonempty") {
    auto e = cyrenaic_slope();
    auto a = atlas(e, 1);
    std::set<std::string> atlas_keys;
    for (const auto& entry : a.entries) atlas_keys.insert(rmap_key(entry.map));
    const int k = 8;
    auto p = generate_patch(e, orthogonal_projection(e).matrix, k, {3, false});
    auto verts = p.vertices();
    std::set<IVec> vs(verts.begin(), verts.end());
    FieldMatrix proj = orthogonal_projection(e).matrix;
    std::set<std::string> seen;
    for (const auto& x : verts) {
        if (!in_complete_core(x, k - 2)) continue;
        auto m = rmap_from(
            [&](const IVec& u) {
                IVec y = x;
                for (int l = 0; l < 4; ++l) y[l] += u[l];
                return vs.count(y) > 0;
            },
            4, 1, Metric::graph);
        seen.insert(rmap_key(close_rmap(m, proj)));
    }
    CHECK(seen == atlas_keys);
}

TEST_CASE("closure") {
    auto e = rauzy_slope();
    auto proj = orthogonal_projection(e).matrix;
    auto p = generate_patch(e, proj, 4, {2, false});
    auto verts = p.vertices();
    std::set<IVec> vs(verts.begin(), verts.end());
    int refilled = 0;
    for (const auto& t : p.tiles) {
        if (!in_complete_core(t.pos, 2)) continue;
        for (int q = 0; q < 4; ++q) {
            IVec gone = t.pos;
            if (q & 1) ++gone[t.i];
            if (q & 2) ++gone[t.j];
            auto m = rmap_from(
                [&](const IVec& u) {
                    IVec y = t.pos;
                    for (int l = 0; l < 3; ++l) y[l] += u[l];
                    return vs.count(y) > 0 && y != gone;
                },
                3, 2, Metric::graph);
            auto c = close_rmap(m, proj);
            for (const auto& u : c.cells) {
                IVec y = t.pos;
                for (int l = 0; l < 3; ++l) y[l] += u[l];
                CHECK(vs.count(y));
            }
            IVec rel(3, 0);
            for (int l = 0; l < 3; ++l) rel[l] = gone[l] - t.pos[l];
            if (c.has(rel)) ++refilled;
            // idempotent and monotone
            auto cc = close_rmap(c, proj);
            CHECK(cc.cells == c.cells);
            for (const auto& u : m.cells) CHECK(c.has(u));
        }
    }
    CHECK(refilled > 0);
    // single tile: no notch
    RMap single;
    single.cells = {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}};
    single.tiles = {{0, 1, {0, 0, 0}}};
    auto s = close_rmap(single, proj);
    CHECK(s.cells == single.cells);
    CHECK(s.added.empty());
}
