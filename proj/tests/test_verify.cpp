#include "cnp/verify.hpp"
#include "cnp/projection.hpp"

#include "doctest.h"

using namespace cnp;

namespace {

const FieldMatrix& cyrenaic_fine() {
    static const FieldMatrix a = fine_projection(cyrenaic_slope())->matrix;
    return a;
}

}  // namespace

TEST_CASE("multigrid patches have thickness one") {
    for (const auto& e : {cyrenaic_slope(), ammann_beenker_slope(), penrose_slope(), rauzy_slope()})
        for (int k : {3, 5}) {
            auto p = generate_patch(e, orthogonal_projection(e).matrix, k, {2, false});
            auto th = check_planarity(p);
            CAPTURE(e.name);
            CHECK(th.t_star <= FieldElement(e.field, 1L));
            CHECK(th.thickness == FieldElement(e.field, 1L));
            CHECK(th.vertices == p.vertices().size());
        }
}

TEST_CASE("a flip makes the lift thicker") {
    for (const auto& e : {cyrenaic_slope(), ammann_beenker_slope(), rauzy_slope()}) {
        auto p = generate_patch(e, orthogonal_projection(e).matrix, 5, {1, false});
        auto f = elementary_flip(p);
        REQUIRE(f);
        CHECK(f->tiles.size() == p.tiles.size());
        CHECK_FALSE(find_overlap(*f));
        CHECK(check_planarity(*f).thickness > FieldElement(e.field, 1L));
    }
}

TEST_CASE("thickness of explicit point sets") {
    auto e = axis_slope(4);
    std::vector<IVec> square{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}};
    CHECK(check_planarity(square, e).thickness == FieldElement(e.field, 1L));
    std::vector<IVec> wide{{0, 0, 0, 0}, {0, 0, 3, 0}};
    CHECK(check_planarity(wide, e).t_star == FieldElement(e.field, 3L));
}

TEST_CASE("lines continue across shared edges") {
    auto e = cyrenaic_slope();
    auto lf = line_families(e, cyrenaic_fine());
    auto p = generate_patch(e, cyrenaic_fine(), 6, {1, false});
    auto dp = decorate_patch(lf, p);
    auto rep = check_line_continuity(dp);
    CHECK(rep.pass);
    CHECK(rep.shared_edges > 100);
    // move one segment endpoint along its edge
    auto unit = [&](const FieldElement& x) { return x.is_zero() || x == FieldElement(e.field, 1L); };
    bool moved = false;
    for (size_t q = 0; q < dp.decorations.size() && !moved; ++q) {
        if (!in_complete_core(p.tiles[q].pos, 3)) continue;
        for (auto& s : dp.decorations[q].segments) {
            for (auto* c : {&s.from, &s.to}) {
                auto& pt = *c;
                if (unit(pt[0]) != unit(pt[1])) {
                    int free = unit(pt[0]) ? 1 : 0;
                    pt[free] = pt[free] / FieldElement(e.field, 2L);
                    moved = true;
                    break;
                }
            }
            if (moved) break;
        }
    }
    REQUIRE(moved);
    auto broken = check_line_continuity(dp);
    CHECK_FALSE(broken.pass);
    CHECK(broken.witness);
}

TEST_CASE("shadow periods") {
    auto e = cyrenaic_slope();
    auto lf = line_families(e, cyrenaic_fine());
    auto p = generate_patch(e, cyrenaic_fine(), 8, {1, false});
    auto s3 = check_shadow_period(p, 3, {2, 1, -1}, 1, &lf);
    CHECK(s3.pass);
    CHECK(s3.verified > 50);
    auto s0 = check_shadow_period(p, 0, {0, 1, 1}, 1, &lf);
    CHECK(s0.pass);
    auto wrong = check_shadow_period(p, 0, {1, 1, 1}, 1, &lf);
    CHECK_FALSE(wrong.pass);
    CHECK(wrong.witness);
    // combinatorial part alone
    CHECK(check_shadow_period(p, 3, {2, 1, -1}, 1).pass);
}

TEST_CASE("shadow walks end at the subperiod") {
    auto ts = decorated_tileset(cyrenaic_slope(), cyrenaic_fine());
    for (int i = 0; i < 4; ++i) {
        auto w = shadow_walk(ts, i);
        CAPTURE(i);
        CHECK(w.pass);
        CHECK(w.paths > 0);
        CHECK(w.dead_ends == 0);
        REQUIRE(w.vectors.size() == 1);
        CHECK(*w.vectors.begin() == w.expected);
    }
}

TEST_CASE("penrose identities") {
    auto rep = penrose_identity_suite();
    CHECK(rep.items.size() == 7);
    for (const auto& item : rep.items) {
        CAPTURE(item.name);
        CHECK(item.pass);
    }
    CHECK(rep.pass());
}
