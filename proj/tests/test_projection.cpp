#include "cnp/projection.hpp"

#include "doctest.h"

using namespace cnp;

namespace {
FieldMatrix reference_fine_matrix(const FieldPtr& f) {
    std::vector<Vec> rows(2);
    for (auto s : {"1", "0", "1/2*a + 1/2", "1/2*a - 1/2"}) rows[0].push_back(FieldElement::parse(f, s));
    for (auto s : {"0", "1", "-1/2*a - 1/2", "1/2*a + 1/2"}) rows[1].push_back(FieldElement::parse(f, s));
    return FieldMatrix(f, rows);
}
}  // namespace

TEST_CASE("orthogonal projection of an axis plane") {
    auto e = axis_slope(4);
    auto o = orthogonal_projection(e).matrix;
    CHECK(o == FieldMatrix(e.field, std::vector<Vec>{unit_vec(e.field, 4, 0), unit_vec(e.field, 4, 1)}));
}

TEST_CASE("orthogonal projector is idempotent and fixes E") {
    auto e = cyrenaic_slope();
    auto p = orthogonal_projector(e);
    CHECK(p * p == p);
    CHECK(p * e.generators[0] == e.generators[0]);
}

TEST_CASE("cyrenaic fine projection") {
    auto e = cyrenaic_slope();
    auto search = fine_projection_search(e, lifted_subperiods(e), 5);
    REQUIRE(search.projection);
    const auto& a = search.projection->matrix;
    CHECK(a.rank() == 2);
    CHECK(same_row_space(a, reference_fine_matrix(e.field)));
    auto lifted = lifted_subperiods(e);
    for (const auto& s : lifted) {
        int i = s.dropped[0];
        Vec ap = a * *s.lifted;
        CHECK(det2(a(0, i), ap[0], a(1, i), ap[1]).is_zero());
    }
    for (const auto& l : search.candidates[0].lambda) CHECK(l == FieldElement::parse(e.field, "1/6*a"));
    CHECK(search.candidates[0].kernel.rows() == 2);
}

TEST_CASE("conjugate root fine candidate") {
    // Float oracle (polygon library on the same matrix, k = 6): no overlaps.
    auto e = cyrenaic_slope(true);
    auto search = fine_projection_search(e, lifted_subperiods(e), 5);
    REQUIRE(search.candidates.size() == 1);
    for (const auto& l : search.candidates[0].lambda) CHECK(l == FieldElement::parse(e.field, "1/6*a"));
    const auto& a = search.candidates[0].matrix;
    CHECK(a(0, 2) == FieldElement::parse(e.field, "1/12*a + 1/4"));
    CHECK(a(1, 3) == FieldElement::parse(e.field, "1/12*a + 1/4"));
    auto rep = check_projection(a, e, 6, 2);
    CHECK(rep.orientation_ok);
    CHECK_FALSE(rep.overlap);
}

TEST_CASE("golden octagonal fine candidate is invalid") {
    auto e = golden_octagonal_slope();
    auto search = fine_projection_search(e, lifted_subperiods(e), 5);
    REQUIRE(search.candidates.size() == 1);
    CHECK(search.candidates[0].reason != "collinearity system is singular");
    CHECK_FALSE(search.projection);
}

TEST_CASE("orthogonal projections are valid") {
    for (auto e : {cyrenaic_slope(), ammann_beenker_slope()}) {
        auto o = orthogonal_projection(e).matrix;
        CHECK(is_valid_projection(o, e, 5));
    }
}

TEST_CASE("validity is invariant under reparametrisation of the image") {
    auto e = cyrenaic_slope();
    auto a = reference_fine_matrix(e.field);
    auto t = FieldMatrix::from_integers(e.field, {{2, 1}, {1, 1}});
    CHECK(is_valid_projection(a, e, 4));
    CHECK(is_valid_projection(t * a, e, 4));
}
