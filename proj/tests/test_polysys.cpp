#include "cnp/polysys.hpp"

#include "doctest.h"

using namespace cnp;

namespace {
MPoly x(int i) { return MPoly::var(i); }
MPoly c(long v) { return MPoly::constant(Rational(v)); }
}  // namespace

TEST_CASE("single linear equation") {
    auto r = solve_polynomial_system({x(0) - c(1)}, 1);
    REQUIRE(r.kind == SystemKind::finite);
    REQUIRE(r.real_solutions.size() == 1);
    CHECK(r.real_solutions[0].values[0] == FieldElement(NumberField::rationals(), 1L));
}

TEST_CASE("inconsistent system") {
    auto r = solve_polynomial_system({x(0) - c(1), x(0) - c(2)}, 1);
    CHECK(r.kind == SystemKind::no_solution);
}

TEST_CASE("positive dimensional system") {
    auto r = solve_polynomial_system({x(0) * x(1) - c(2)}, 2);
    CHECK(r.kind == SystemKind::positive_dimensional);
}

TEST_CASE("circle meets line over a quadratic field") {
    // x^2 + y^2 = 4, x = y  -> (±sqrt2, ±sqrt2)
    auto r = solve_polynomial_system({x(0) * x(0) + x(1) * x(1) - c(4), x(0) - x(1)}, 2);
    REQUIRE(r.kind == SystemKind::finite);
    CHECK(r.complex_count == 2);
    REQUIRE(r.real_solutions.size() == 2);
    for (const auto& s : r.real_solutions) {
        CHECK(s.values[0] * s.values[0] == FieldElement(s.field, 2L));
        CHECK(s.values[0] == s.values[1]);
    }
    CHECK(r.real_solutions[0].values[0].sign() != r.real_solutions[1].values[0].sign());
}

TEST_CASE("complex solutions are counted but not returned") {
    auto r = solve_polynomial_system({x(0) * x(0) + c(1)}, 1);
    CHECK(r.kind == SystemKind::finite);
    CHECK(r.complex_count == 2);
    CHECK(r.real_solutions.empty());
}

TEST_CASE("non-radical ideal") {
    auto r = solve_polynomial_system({(x(0) - c(1)) * (x(0) - c(1)), x(1) - x(0)}, 2);
    REQUIRE(r.kind == SystemKind::finite);
    CHECK(r.complex_count == 1);
    CHECK(r.real_solutions.size() == 1);
}

TEST_CASE("groebner basis of a small ideal") {
    // cyclic-3
    auto a = x(0), b = x(1), d = x(2);
    auto g = groebner_basis({a + b + d, a * b + b * d + d * a, a * b * d - c(1)});
    for (const auto& p : {a + b + d, a * b + b * d + d * a, a * b * d - c(1)})
        CHECK(normal_form(p, g).is_zero());
    auto r = solve_polynomial_system({a + b + d, a * b + b * d + d * a, a * b * d - c(1)}, 3);
    CHECK(r.complex_count == 6);
    CHECK(r.real_solutions.empty());
}

TEST_CASE("characteristic polynomial") {
    std::vector<std::vector<Rational>> m{{Rational(2), Rational(1)}, {Rational(1), Rational(2)}};
    CHECK(charpoly(m).to_string() == "x^2 - 4*x + 3");
}
