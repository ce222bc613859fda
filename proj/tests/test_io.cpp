#include "cnp/io.hpp"

#include "doctest.h"

using namespace cnp;

TEST_CASE("slope and matrix round trip") {
    for (const auto& e : {cyrenaic_slope(), penrose_slope(), rauzy_slope()}) {
        json j = slope_to_json(e);
        Slope back = slope_from_json(j);
        CHECK(slope_to_json(back) == j);
        CHECK(back.serialize() == e.serialize());
        CHECK(Slope::parse(e.serialize()).serialize() == e.serialize());
    }
    auto a = fine_projection(cyrenaic_slope())->matrix;
    CHECK(matrix_from_json(a.field(), matrix_to_json(a)) == a);
    CHECK_THROWS_AS(matrix_from_json(a.field(), json::parse(R"([["1","2"],["3"]])")), FormatError);
    CHECK_THROWS_AS(slope_from_json(json::parse(R"({"n":4})")), FormatError);
}

TEST_CASE("patch round trip") {
    auto e = cyrenaic_slope();
    auto p = generate_patch(e, orthogonal_projection(e).matrix, 3, {4, false});
    json j = patch_to_json(p);
    Patch back = patch_from_json(j);
    CHECK(back.tiles == p.tiles);
    CHECK(back.projection == p.projection);
    CHECK(back.shift == p.shift);
    CHECK(patch_to_json(back).dump() == j.dump());
    // float shadows carry exactly twelve decimals
    double x = j["tiles"][0]["shadow"][0].get<double>();
    CHECK(fixed12(x) == fixed12(p.point(p.tiles[0].pos).x.to_double()));
}

TEST_CASE("tileset round trip") {
    auto e = cyrenaic_slope();
    auto a = fine_projection(e)->matrix;
    auto lf = line_families(e, a);
    Tileset ts{lf, {}, Rational(3, 2), 2, {}};
    std::vector<IVec> around;
    for (int x = -2; x <= 2; ++x)
        for (int y = -2; y <= 2; ++y) around.push_back({x, y, x - y, 0});
    ts.tiles.push_back(decorate(lf, 0, 2, around));
    ts.tiles.push_back(decorate(lf, 1, 3, around));
    json j = tileset_to_json(ts);
    Tileset back = tileset_from_json(j);
    CHECK(back.keys() == ts.keys());
    CHECK(tileset_to_json(back).dump() == j.dump());
    for (size_t q = 0; q < ts.tiles.size(); ++q) CHECK(back.tiles[q].segments.size() == ts.tiles[q].segments.size());
}

TEST_CASE("svg rendering") {
    auto e = cyrenaic_slope();
    Patch empty;
    empty.slope = e;
    empty.projection = orthogonal_projection(e).matrix;
    std::string s = render_patch(empty);
    CHECK(s.find("<svg") == 0);
    CHECK(s.find("<polygon") == std::string::npos);
    auto p = generate_patch(e, empty.projection, 2, {1, false});
    std::string full = render_patch(p);
    size_t polys = 0;
    for (size_t at = full.find("<polygon"); at != std::string::npos; at = full.find("<polygon", at + 1)) ++polys;
    CHECK(polys == p.tiles.size());
    CHECK(render_patch(p) == full);
    // tiles of one type share one colour
    auto q = p;
    q.tiles.erase(std::remove_if(q.tiles.begin(), q.tiles.end(), [](const Tile& t) { return t.i != 0 || t.j != 1; }),
                  q.tiles.end());
    std::string one = render_patch(q);
    CHECK(one.find("fill=\"#e8b04a\"") != std::string::npos);
    CHECK(one.find("fill=\"#5b8fd1\"") == std::string::npos);
}

TEST_CASE("fnv1a digests") {
    CHECK(hex64(fnv1a("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
    CHECK(hex64(fnv1a("foobar")) == "85944171f73967e8");
}
