#include "cnp/matrix.hpp"

#include "doctest.h"

#include <random>

using namespace cnp;

namespace {
FieldPtr q3() { return NumberField::parse("x^2 - 3", "1", "2"); }
}

TEST_CASE("sign of basic elements") {
    auto f = q3();
    CHECK(FieldElement(f, 0L).sign() == Sign::zero);
    CHECK(FieldElement::parse(f, "a - 1").sign() == Sign::positive);
    auto neg = NumberField::parse("x^2 - 3", "-2", "-1");
    CHECK(FieldElement::parse(neg, "-1 + a").sign() == Sign::negative);
}

TEST_CASE("exact sign of nearly cancelling elements") {
    auto f = NumberField::parse("x^2 - 2", "1", "2");
    // 665857/470832 is a convergent of sqrt(2)
    auto x = FieldElement::parse(f, "a - 665857/470832");
    CHECK(x.sign() == Sign::negative);
    auto y = FieldElement::parse(f, "470832*a - 665857");
    CHECK(y.sign() == Sign::negative);
    CHECK((y * y * y).sign() == Sign::negative);
}

TEST_CASE("parse and print round trip") {
    auto f = q3();
    for (const char* s : {"1/2*a + 1", "a", "-a", "0", "-3/7*a - 2/5", "5"}) {
        auto x = FieldElement::parse(f, s);
        CHECK(x.to_string() == s);
        CHECK(FieldElement::parse(f, x.to_string()) == x);
    }
    CHECK(FieldElement::parse(f, "a^2").to_string() == "3");
    CHECK(FieldElement::parse(f, "(a+1)^2/2").to_string() == "a + 2");
}

TEST_CASE("rejects reducible or badly isolated minimal polynomials") {
    CHECK_THROWS_AS(NumberField::parse("x^2 - 4", "1", "3"), AlgebraError);
    CHECK_THROWS_AS(NumberField::parse("x^2 - 3", "-2", "2"), AlgebraError);
    CHECK_THROWS_AS(NumberField::parse("x^4 - 5*x^2 + 6", "1", "3/2"), AlgebraError);
}

TEST_CASE("field axioms on random elements") {
    auto f = NumberField::parse("x^3 - x^2 - x - 1", "1", "2");
    std::mt19937_64 rng(7);
    auto rnd = [&] {
        std::vector<Rational> c;
        for (int i = 0; i < 3; ++i) c.emplace_back(static_cast<long>(rng() % 19) - 9, 1 + rng() % 5);
        return FieldElement(f, c);
    };
    for (int t = 0; t < 40; ++t) {
        auto x = rnd(), y = rnd(), z = rnd();
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
        if (!x.is_zero()) CHECK(x * x.inverse() == FieldElement(f, 1L));
        CHECK(to_int(x.sign()) == -to_int((-x).sign()));
        CHECK(to_int((x * y).sign()) == to_int(x.sign()) * to_int(y.sign()));
        CHECK(x.floor() <= x.ceil());
    }
}

TEST_CASE("floor and ceil") {
    auto f = q3();
    auto a = FieldElement::generator(f);
    CHECK(a.floor() == 1);
    CHECK(a.ceil() == 2);
    CHECK((-a).floor() == -2);
    CHECK(FieldElement(f, 3L).floor() == 3);
    CHECK(FieldElement(f, 3L).ceil() == 3);
}

TEST_CASE("left kernel of the 3x2 integer example") {
    auto f = NumberField::rationals();
    auto m = FieldMatrix::from_integers(f, {{-1, 1}, {1, 1}, {-1, 3}});
    auto k = m.left_kernel();
    REQUIRE(k.rows() == 1);
    auto v = k.row(0);
    // proportional to (2, 1, -1)
    auto s = v[0] / FieldElement(f, 2L);
    CHECK(v[1] == s);
    CHECK(v[2] == -s);
    CHECK((k * m).is_zero());
}

TEST_CASE("rank, kernel and determinant") {
    auto f = q3();
    CHECK(FieldMatrix(f, 3, 4).rank() == 0);
    CHECK(FieldMatrix::identity(f, 4).left_kernel().rows() == 0);
    std::vector<Vec> rows;
    for (const auto& r : std::vector<std::vector<const char*>>{
             {"a", "0", "1", "1"}, {"1", "a - 1", "-1", "1"}, {"1", "-1", "a + 1", "0"}, {"2", "1", "-1", "a"}}) {
        Vec v;
        for (auto s : r) v.push_back(FieldElement::parse(f, s));
        rows.push_back(v);
    }
    FieldMatrix p(f, rows);
    CHECK(p.rank() == 2);
    CHECK(p.transpose().rank() == 2);
    CHECK(p.determinant().is_zero());
    auto k = p.left_kernel();
    CHECK(k.rows() == 2);
    CHECK((k * p).is_zero());
    auto m = FieldMatrix::from_integers(f, {{2, 1}, {1, 1}});
    CHECK(m.determinant() == FieldElement(f, 1L));
    CHECK(m * m.inverse() == FieldMatrix::identity(f, 2));
}
