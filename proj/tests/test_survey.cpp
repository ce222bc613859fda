#include "cnp/survey.hpp"

#include "doctest.h"

using namespace cnp;

TEST_CASE("replayed cyrenaic draw") {
    QuadraticDraw d;
    d.poly = {-3, 0, 1};
    d.larger_root = true;
    d.x = {0, 1};
    d.y = {-1, 1};  // second coordinate of v is a - 1
    d.u_v = {std::vector<Integer>{0, 0, 1, 1}, std::vector<Integer>{1, -1, -1, 1}};
    Slope e = slope_from_draw(d);
    Slope c = cyrenaic_slope();
    for (int r = 0; r < 2; ++r)
        for (int l = 0; l < 4; ++l) CHECK(e.generators[r][l].to_string() == c.generators[r][l].to_string());
    auto rec = survey_one(e, 6, 1);
    CHECK(rec.subperiods == 4);
    CHECK(rec.characterized);
    CHECK(rec.fine_found);
    CHECK(rec.verdict() == "fine");
}

TEST_CASE("samples are real rank two slopes over quadratic fields") {
    std::mt19937_64 rng(11);
    for (int s = 0; s < 50; ++s) {
        auto d = sample_draw(3, rng);
        CHECK(d.poly[2] != 0);
        Integer disc = d.poly[1] * d.poly[1] - 4 * d.poly[2] * d.poly[0];
        CHECK(disc > 0);
        CHECK(d.x[1] != 0);
        CHECK(d.y[1] != 0);
        for (const auto& w : d.u_v)
            for (const auto& c : w) CHECK(abs(c) <= 3);
        Slope e = slope_from_draw(d);
        CHECK(e.field->degree() == 2);
        CHECK(e.matrix().rank() == 2);
        CHECK_FALSE(e.generators[0][0].is_rational());
        CHECK_FALSE(e.generators[1][1].is_rational());
    }
    CHECK_THROWS_AS(sample_draw(0, rng), SlopeError);
}

TEST_CASE("survey is deterministic and thread independent") {
    SurveyConfig c;
    c.k = 3;
    c.samples = 40;
    c.seed = 5;
    c.threads = 1;
    auto a = run_survey(c);
    c.threads = 3;
    auto b = run_survey(c);
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(survey_csv(a, false) == survey_csv(b, false));
    CHECK(a.total == 40);
    CHECK(a.fine_found <= a.total - a.not_characterized);
    c.seed = 6;
    CHECK(run_survey(c).fingerprint() != a.fingerprint());
}

TEST_CASE("fine records re-verify") {
    SurveyConfig c;
    c.samples = 200;
    c.seed = 1;
    auto r = run_survey(c);
    int checked = 0;
    for (const auto& rec : r.records) {
        if (!rec.fine_found) continue;
        auto lifted = lifted_subperiods(rec.slope);
        auto fs = fine_projection_search(rec.slope, lifted, 6, 1);
        REQUIRE(fs.projection);
        const auto& a = fs.projection->matrix;
        for (const auto& s : lifted) {
            int i = s.dropped[0];
            Vec ap = a * *s.lifted;
            CHECK((a(0, i) * ap[1] - a(1, i) * ap[0]).is_zero());
        }
        CHECK(is_valid_projection(a, rec.slope, 6, 2));
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("survey csv") {
    SurveyConfig c;
    c.samples = 3;
    auto csv = survey_csv(run_survey(c));
    CHECK(csv.rfind("seed_index,minpoly,root,generators,subperiods,verdict,detail,seconds\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
