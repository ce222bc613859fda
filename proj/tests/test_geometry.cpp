#include "cnp/geometry.hpp"

#include "doctest.h"

using namespace cnp;

namespace {
Point2 pt(long x, long y) {
    auto q = NumberField::rationals();
    return {FieldElement(q, x), FieldElement(q, y)};
}
}  // namespace

TEST_CASE("hull, area, location") {
    auto h = convex_hull({pt(0, 0), pt(2, 0), pt(1, 1), pt(2, 2), pt(0, 2), pt(1, 0)});
    CHECK(h.size() == 4);
    CHECK(area(h).rational_value() == 4);
    CHECK(locate(h, pt(1, 1)) == Location::inside);
    CHECK(locate(h, pt(2, 2)) == Location::boundary);
    CHECK(locate(h, pt(5, 5)) == Location::outside);
}

TEST_CASE("intersection and overlap") {
    auto a = convex_hull({pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)});
    auto b = translate(a, pt(1, 1));
    auto c = intersect(a, b);
    CHECK(area(c).rational_value() == 1);
    CHECK(interiors_overlap(a, b));
    CHECK_FALSE(interiors_overlap(a, translate(a, pt(2, 0))));
    CHECK_FALSE(interiors_overlap(a, translate(a, pt(2, 2))));
    CHECK(intersect(a, translate(a, pt(2, 0))).empty());
    CHECK(same_polygon(c, convex_hull({pt(1, 1), pt(2, 1), pt(2, 2), pt(1, 2)})));
}
