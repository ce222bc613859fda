#include "cnp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cnp {

const char* const kToolVersion = "cnp 1.0.0";

namespace {

json strings(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.to_string());
    return a;
}

Vec elements(const FieldPtr& f, const json& a) {
    Vec v;
    for (const auto& s : a) v.push_back(FieldElement::parse(f, s.get<std::string>()));
    return v;
}

json ivec(const IVec& v) { return json(v); }

json point_json(const Point2& p) { return json::array({p.x.to_string(), p.y.to_string()}); }

json point_shadow(const Point2& p) { return json::array({shadow(p.x), shadow(p.y)}); }

json tile_json(const Tile& t) { return {{"type", {t.i, t.j}}, {"pos", t.pos}}; }

Tile tile_from(const json& j) {
    Tile t;
    t.i = j.at("type").at(0).get<int>();
    t.j = j.at("type").at(1).get<int>();
    t.pos = j.at("pos").get<IVec>();
    return t;
}

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

double shadow(const FieldElement& x) { return std::strtod(fixed12(x.to_double()).c_str(), nullptr); }

std::string fixed12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    std::string s = buf;
    if (s == "-0.000000000000") s = "0.000000000000";
    return s;
}

json slope_to_json(const Slope& e) {
    json g = json::array();
    for (const auto& row : e.generators) g.push_back(strings(row));
    json j = {{"n", e.n},
              {"d", e.d},
              {"minpoly", e.field->minpoly().to_string('x')},
              {"root_in", {e.field->root_lo().get_str(), e.field->root_hi().get_str()}},
              {"generators", g}};
    if (!e.name.empty()) j["name"] = e.name;
    return j;
}

Slope slope_from_json(const json& j) {
    return guarded("slope", [&] {
        auto root = j.at("root_in").get<std::vector<std::string>>();
        if (root.size() != 2) throw FormatError("root_in must have two bounds");
        FieldPtr f = NumberField::parse(j.at("minpoly").get<std::string>(), root[0], root[1]);
        std::vector<Vec> gens;
        for (const auto& row : j.at("generators")) gens.push_back(elements(f, row));
        Slope e = Slope::make(f, gens, j.value("name", std::string()));
        if (e.n != j.at("n").get<int>() || e.d != j.at("d").get<int>()) throw FormatError("slope shape mismatch");
        return e;
    });
}

json matrix_to_json(const FieldMatrix& m) {
    json a = json::array();
    for (int r = 0; r < m.rows(); ++r) a.push_back(strings(m.row(r)));
    return a;
}

FieldMatrix matrix_from_json(const FieldPtr& f, const json& j) {
    return guarded("matrix", [&] {
        std::vector<Vec> rows;
        for (const auto& r : j) rows.push_back(elements(f, r));
        if (rows.empty()) throw FormatError("empty matrix");
        for (const auto& r : rows)
            if (r.size() != rows[0].size()) throw FormatError("ragged matrix");
        return FieldMatrix(f, rows);
    });
}

FieldMatrix load_matrix(const FieldPtr& f, const std::string& path) {
    return matrix_from_json(f, guarded("matrix file", [&] { return json::parse(read_file(path)); }));
}

json patch_to_json(const Patch& p) {
    json tiles = json::array();
    for (const auto& t : p.tiles) {
        json tj = tile_json(t);
        tj["shadow"] = point_shadow(p.point(t.pos));
        tiles.push_back(tj);
    }
    json shift = json::array();
    for (const auto& s : p.shift) shift.push_back(s.get_str());
    return {{"slope", slope_to_json(p.slope)},
            {"projection", matrix_to_json(p.projection)},
            {"k", p.k},
            {"shift", shift},
            {"tiles", tiles}};
}

Patch patch_from_json(const json& j) {
    return guarded("patch", [&] {
        Patch p;
        p.slope = slope_from_json(j.at("slope"));
        p.projection = matrix_from_json(p.slope.field, j.at("projection"));
        if (p.projection.rows() != p.slope.d || p.projection.cols() != p.slope.n)
            throw FormatError("projection shape does not match the slope");
        p.k = j.at("k").get<int>();
        for (const auto& s : j.at("shift")) p.shift.push_back(Rational(s.get<std::string>()));
        for (const auto& t : j.at("tiles")) {
            Tile x = tile_from(t);
            if (static_cast<int>(x.pos.size()) != p.slope.n || x.i < 0 || x.j <= x.i || x.j >= p.slope.n)
                throw FormatError("bad tile");
            p.tiles.push_back(x);
        }
        return p;
    });
}

json atlas_to_json(const Atlas& a) {
    json entries = json::array();
    for (const auto& e : a.entries) {
        json cells = json::array(), added = json::array(), region = json::array();
        for (const auto& c : e.map.cells) cells.push_back(ivec(c));
        for (const auto& t : e.map.added) added.push_back(tile_json(t));
        for (const auto& piece : e.region) {
            json poly = json::array();
            for (const auto& v : piece) poly.push_back(point_json(v));
            region.push_back(poly);
        }
        entries.push_back({{"cells", cells},
                           {"added", added},
                           {"region", region},
                           {"area", e.area.to_string()},
                           {"area_shadow", shadow(e.area)}});
    }
    json win = json::array();
    for (const auto& v : a.window.polygon) win.push_back(point_json(v));
    json r = entries.empty() ? json(0) : json(a.entries[0].map.radius);
    return {{"radius", r},
            {"metric", a.entries.empty() ? "graph" : to_string(a.entries[0].map.metric)},
            {"internal_projection", matrix_to_json(a.window.internal)},
            {"window", win},
            {"window_area", a.window_area.to_string()},
            {"covered_area", a.covered_area.to_string()},
            {"maps", entries.size()},
            {"entries", entries}};
}

json tileset_to_json(const Tileset& ts) {
    json tiles = json::array();
    for (const auto& t : ts.tiles) {
        json offs = json::array(), segs = json::array();
        for (const auto& o : t.offsets) offs.push_back(strings(o));
        for (const auto& s : t.segments) {
            Vec from{s.from[0], s.from[1]}, to{s.to[0], s.to[1]};
            segs.push_back({{"direction", s.direction},
                            {"from", strings(from)},
                            {"to", strings(to)},
                            {"shadow", {shadow(s.from[0]), shadow(s.from[1]), shadow(s.to[0]), shadow(s.to[1])}}});
        }
        tiles.push_back({{"type", {t.i, t.j}}, {"offsets", offs}, {"segments", segs}});
    }
    return {{"slope", slope_to_json(ts.lines.slope)},
            {"projection", matrix_to_json(ts.lines.projection)},
            {"search_radius", ts.search_radius.get_str()},
            {"reach", ts.reach},
            {"count", ts.tiles.size()},
            {"tiles", tiles}};
}

Tileset tileset_from_json(const json& j) {
    return guarded("tileset", [&] {
        Slope e = slope_from_json(j.at("slope"));
        Tileset ts{line_families(e, matrix_from_json(e.field, j.at("projection"))), {}, 0, 0, {}};
        ts.search_radius = Rational(j.at("search_radius").get<std::string>());
        ts.reach = j.at("reach").get<int>();
        for (const auto& tj : j.at("tiles")) {
            DecoratedTile t;
            t.i = tj.at("type").at(0).get<int>();
            t.j = tj.at("type").at(1).get<int>();
            for (const auto& o : tj.at("offsets")) t.offsets.push_back(elements(e.field, o));
            if (t.offsets.size() != 4) throw FormatError("tile needs offsets for four directions");
            for (int f = 0; f < 4; ++f)
                for (const auto& o : t.offsets[f]) t.segments.push_back(segment_in_tile(ts.lines, f, t.i, t.j, o));
            ts.tiles.push_back(std::move(t));
        }
        return ts;
    });
}

json thickness_to_json(const ThicknessEstimate& t) {
    return {{"t_star", t.t_star.to_string()},
            {"t_star_shadow", shadow(t.t_star)},
            {"thickness", t.thickness.to_string()},
            {"strongly_planar", t.thickness == FieldElement(t.thickness.field(), 1L)},
            {"vertices", t.vertices},
            {"centre", strings(t.centre)}};
}

json continuity_to_json(const ContinuityReport& r) {
    json j = {{"pass", r.pass}, {"shared_edges", r.shared_edges}, {"detail", r.detail}};
    if (r.witness) j["witness"] = {r.witness->first, r.witness->second};
    return j;
}

json shadow_to_json(const ShadowReport& r) {
    json j = {{"direction", r.direction}, {"period", r.period},   {"verified", r.verified},
              {"failures", r.failures},   {"margin", r.margin},   {"pass", r.pass}};
    if (r.witness) j["witness"] = tile_json(*r.witness);
    return j;
}

json walk_to_json(const WalkReport& r) {
    json v = json::array();
    for (const auto& x : r.vectors) v.push_back(x);
    return {{"direction", r.direction}, {"expected", r.expected},   {"vectors", v},
            {"paths", r.paths},         {"dead_ends", r.dead_ends}, {"max_branching", r.max_branching},
            {"pass", r.pass}};
}

json suite_to_json(const SuiteReport& r) {
    json items = json::array();
    for (const auto& s : r.items) items.push_back({{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
    return {{"pass", r.pass()}, {"items", items}};
}

// ------------------------------------------------------------------ SVG

namespace {

const char* const kPalette[] = {"#e8b04a", "#5b8fd1", "#d1605b", "#6bb56b", "#a879c9",
                                "#4fb8b0", "#d98cb3", "#9c9c54", "#7a86a8", "#c9845a"};
const char* const kLineColours[] = {"#c0392b", "#1f6fb2", "#1e8449", "#7d3c98", "#b9770e"};

int type_index(int i, int j, int n) {
    int idx = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (a == i && b == j) return idx;
            ++idx;
        }
    return 0;
}

struct Canvas {
    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    bool any = false;
    void add(double x, double y) {
        if (!any) {
            minx = maxx = x;
            miny = maxy = y;
            any = true;
        }
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
    }
};

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string header(const Canvas& c, double scale) {
    double pad = 10;
    double w = c.any ? (c.maxx - c.minx) * scale + 2 * pad : 100;
    double h = c.any ? (c.maxy - c.miny) * scale + 2 * pad : 100;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << coord(w) << "\" height=\"" << coord(h)
      << "\" viewBox=\"0 0 " << coord(w) << " " << coord(h) << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return s.str();
}

}  // namespace

std::string render_patch(const Patch& p, const SvgStyle& style, const std::vector<DecoratedTile>* decorations) {
    const int n = p.slope.n;
    std::vector<std::array<double, 2>> edge(n);
    for (int l = 0; l < n; ++l) edge[l] = p.edge(l).approx();
    std::vector<std::array<double, 2>> base;
    std::vector<bool> shown;
    Canvas c;
    for (const auto& t : p.tiles) {
        shown.push_back(style.core < 0 || in_complete_core(t.pos, style.core));
        if (!shown.back()) {
            base.push_back({0, 0});
            continue;
        }
        auto o = p.point(t.pos).approx();
        base.push_back(o);
        c.add(o[0], o[1]);
        c.add(o[0] + edge[t.i][0], o[1] + edge[t.i][1]);
        c.add(o[0] + edge[t.j][0], o[1] + edge[t.j][1]);
        c.add(o[0] + edge[t.i][0] + edge[t.j][0], o[1] + edge[t.i][1] + edge[t.j][1]);
    }
    const double s = style.scale, pad = 10;
    auto X = [&](double x) { return coord((x - c.minx) * s + pad); };
    auto Y = [&](double y) { return coord((c.maxy - y) * s + pad); };
    std::ostringstream out;
    out << header(c, s);
    out << "<g stroke=\"#333\" stroke-width=\"0.8\" stroke-linejoin=\"round\">\n";
    for (size_t q = 0; q < p.tiles.size(); ++q) {
        if (!shown[q]) continue;
        const Tile& t = p.tiles[q];
        auto o = base[q];
        double xs[4] = {o[0], o[0] + edge[t.i][0], o[0] + edge[t.i][0] + edge[t.j][0], o[0] + edge[t.j][0]};
        double ys[4] = {o[1], o[1] + edge[t.i][1], o[1] + edge[t.i][1] + edge[t.j][1], o[1] + edge[t.j][1]};
        out << "<polygon points=\"";
        for (int v = 0; v < 4; ++v) out << (v ? " " : "") << X(xs[v]) << "," << Y(ys[v]);
        out << "\" fill=\"" << (style.outline_only ? "none" : kPalette[type_index(t.i, t.j, n) % 10]) << "\"/>\n";
    }
    out << "</g>\n";
    if (decorations && style.lines) {
        out << "<g stroke-width=\"1.2\" stroke-dasharray=\"4 3\" fill=\"none\">\n";
        for (size_t q = 0; q < p.tiles.size() && q < decorations->size(); ++q) {
            if (!shown[q]) continue;
            const Tile& t = p.tiles[q];
            auto o = base[q];
            for (const auto& sg : (*decorations)[q].segments) {
                auto at = [&](const std::array<FieldElement, 2>& lm) {
                    double l = lm[0].to_double(), m = lm[1].to_double();
                    return std::array<double, 2>{o[0] + l * edge[t.i][0] + m * edge[t.j][0],
                                                 o[1] + l * edge[t.i][1] + m * edge[t.j][1]};
                };
                auto a = at(sg.from), b = at(sg.to);
                out << "<line x1=\"" << X(a[0]) << "\" y1=\"" << Y(a[1]) << "\" x2=\"" << X(b[0]) << "\" y2=\""
                    << Y(b[1]) << "\" stroke=\"" << kLineColours[sg.direction % 5] << "\"/>\n";
            }
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_tileset(const Tileset& ts, const SvgStyle& style) {
    const auto& lf = ts.lines;
    const int n = lf.slope.n;
    std::vector<std::array<double, 2>> edge(n);
    for (int l = 0; l < n; ++l)
        edge[l] = {lf.projection(0, l).to_double(), lf.projection(1, l).to_double()};
    double cell = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            cell = std::max(cell, std::hypot(edge[a][0] + edge[b][0], edge[a][1] + edge[b][1]));
    cell *= 1.15;
    const int cols = 6;
    const int rows = static_cast<int>((ts.tiles.size() + cols - 1) / cols);
    const double s = style.scale, pad = 10;
    Canvas c;
    c.add(0, 0);
    c.add(cols * cell, std::max(rows, 1) * cell);
    std::ostringstream out;
    out << header(c, s);
    for (size_t q = 0; q < ts.tiles.size(); ++q) {
        const auto& t = ts.tiles[q];
        int r = static_cast<int>(q) / cols, k = static_cast<int>(q) % cols;
        // centre the tile in its cell
        double cx = (k + 0.5) * cell - 0.5 * (edge[t.i][0] + edge[t.j][0]);
        double cy = (rows - r - 0.5) * cell - 0.5 * (edge[t.i][1] + edge[t.j][1]);
        auto at = [&](double l, double m) {
            return std::array<double, 2>{cx + l * edge[t.i][0] + m * edge[t.j][0],
                                         cy + l * edge[t.i][1] + m * edge[t.j][1]};
        };
        auto X = [&](double x) { return coord(x * s + pad); };
        auto Y = [&](double y) { return coord((rows * cell - y) * s + pad); };
        out << "<polygon points=\"";
        const double corners[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        for (int v = 0; v < 4; ++v) {
            auto p = at(corners[v][0], corners[v][1]);
            out << (v ? " " : "") << X(p[0]) << "," << Y(p[1]);
        }
        out << "\" fill=\"" << kPalette[type_index(t.i, t.j, n) % 10] << "\" stroke=\"#333\" stroke-width=\"0.8\"/>\n";
        for (const auto& sg : t.segments) {
            auto a = at(sg.from[0].to_double(), sg.from[1].to_double());
            auto b = at(sg.to[0].to_double(), sg.to[1].to_double());
            out << "<line x1=\"" << X(a[0]) << "\" y1=\"" << Y(a[1]) << "\" x2=\"" << X(b[0]) << "\" y2=\"" << Y(b[1])
                << "\" stroke=\"" << kLineColours[sg.direction % 5] << "\" stroke-width=\"1.2\" stroke-dasharray=\"4 3\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

// -------------------------------------------------------------- files

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << content;
}

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json RunManifest::to_json() const {
    json in = json::array(), out = json::array();
    for (const auto& [p, d] : inputs) in.push_back({{"path", p}, {"fnv1a64", d}});
    for (const auto& [p, d] : outputs) out.push_back({{"path", p}, {"fnv1a64", d}});
    return {{"argv", argv}, {"seeds", seeds}, {"inputs", in}, {"outputs", out}, {"version", version}};
}

}  // namespace cnp
