#include "cnp/io.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace cnp;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Collects inputs and outputs of one run; written next to every output file.
struct Run {
    RunManifest manifest;

    void input(const std::string& path) { manifest.inputs.push_back({path, hex64(fnv1a(read_file(path)))}); }

    void output(const std::string& path, const std::string& content) {
        write_file(path, content);
        manifest.outputs.push_back({path, hex64(fnv1a(content))});
    }

    void finish() {
        if (manifest.outputs.empty()) return;
        write_file(manifest.outputs.front().first + ".manifest.json", manifest.to_json().dump(2) + "\n");
    }
};

Slope load_slope(Run& run, const std::string& path) {
    run.input(path);
    return Slope::load(path);
}

Patch load_patch(Run& run, const std::string& path) {
    run.input(path);
    return patch_from_json(json::parse(read_file(path)));
}

Tileset load_tileset(Run& run, const std::string& path) {
    run.input(path);
    return tileset_from_json(json::parse(read_file(path)));
}

void emit(Run& run, const std::string& out, const std::string& content) {
    if (out.empty()) std::cout << content;
    else run.output(out, content);
}

std::string tile_json_string(const Tile& t) { return json({{"type", {t.i, t.j}}, {"pos", t.pos}}).dump(); }

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string bracket(const std::vector<std::string>& v) {
    std::string s = "(";
    for (size_t q = 0; q < v.size(); ++q) s += (q ? ", " : "") + v[q];
    return s + ")";
}

FieldMatrix choose_projection(Run& run, const Slope& e, const std::string& which) {
    if (which == "orthogonal") return orthogonal_projection(e).matrix;
    if (which == "fine") {
        auto fp = fine_projection(e);
        if (!fp) throw Usage("slope has no fine projection");
        return fp->matrix;
    }
    run.input(which);
    return load_matrix(e.field, which);
}

// Expected shadow periods omega_i(p_i) of a 4 -> 2 slope.
std::vector<IVec> shadow_periods(const Slope& e) {
    if (e.n != 4 || e.d != 2) throw Usage("shadow periods are defined here for 4 -> 2 slopes");
    std::vector<IVec> q(4);
    for (const auto& s : integer_subperiods(e).subperiods) {
        if (s.dropped.size() != 1) continue;
        for (const auto& x : s.integer_entries) q[s.dropped[0]].push_back(static_cast<int>(x.get_si()));
    }
    for (const auto& v : q)
        if (v.empty()) throw Usage("slope lacks a subperiod for every direction");
    return q;
}

bool is_fine(const Slope& e, const FieldMatrix& a) {
    try {
        line_families(e, a);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cut and project tilings, subperiods, fine projections and Ammann lines"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Run run;
    run.manifest.argv.assign(argv, argv + argc);
    run.manifest.version = kToolVersion;
    int status = 0;

    std::string slope_file, matrix_file, patch_file, tiles_file, out, svg, proj = "fine", metric = "graph";
    int k = 6, r = 1, direction = -1, margin = 2, samples = 999, extra = 0, core = -1;
    uint64_t seed = 1;
    bool lines = false;

    // slope
    auto* slope = app.add_subcommand("slope", "Subperiods and characterization");
    slope->require_subcommand(1);
    auto* subs = slope->add_subcommand("subperiods", "Integer and lifted subperiods");
    subs->add_option("slope", slope_file)->required();
    subs->callback([&] {
        Slope e = load_slope(run, slope_file);
        auto rep = integer_subperiods(e);
        auto lifted = lifted_subperiods(e, rep.subperiods);
        for (const auto& s : lifted) {
            std::vector<std::string> l;
            for (const auto& x : *s.lifted) l.push_back(x.to_string());
            std::cout << "p" << s.type_label() << " = " << bracket(s.entry_strings()) << "    lifted " << bracket(l)
                      << "\n";
        }
        for (const auto& d : rep.doubly_periodic) std::cout << "doubly periodic shadow dropping " << bracket({std::to_string(d[0])}) << "\n";
        for (const auto& d : rep.aperiodic) std::cout << "aperiodic shadow dropping " << bracket({std::to_string(d[0])}) << "\n";
    });
    auto* charz = slope->add_subcommand("characterize", "Is the slope determined by its subperiods");
    charz->add_option("slope", slope_file)->required();
    charz->callback([&] {
        Slope e = load_slope(run, slope_file);
        auto subs_ = integer_subperiods(e).subperiods;
        auto c = characterize(e, subs_, e.n == 4);
        const auto& sys = c.minors ? *c.minors : c.chart;
        std::cout << (c.characterized ? "characterized" : "not_characterized");
        if (sys.kind == SystemKind::finite)
            std::cout << "  solutions " << sys.complex_count << " (real " << sys.real_solutions.size() << ")";
        else if (sys.kind == SystemKind::positive_dimensional)
            std::cout << "  positive dimensional";
        std::cout << "\n";
        for (const auto& s : sys.real_solutions) {
            std::vector<std::string> v;
            for (const auto& x : s.values) v.push_back(x.to_string());
            std::cout << "  " << bracket(v) << "  over " << s.field->describe() << "\n";
        }
    });

    // projection
    auto* projection = app.add_subcommand("projection", "Fine projections and validity");
    projection->require_subcommand(1);
    auto* fine = projection->add_subcommand("fine", "Fine projection matrix or none");
    fine->add_option("slope", slope_file)->required();
    fine->add_option("--k", k, "patch size of the validity check");
    fine->add_option("--seed", seed);
    fine->add_option("--out", out);
    fine->callback([&] {
        Slope e = load_slope(run, slope_file);
        run.manifest.seeds.push_back(seed);
        auto fs = fine_projection_search(e, lifted_subperiods(e), k, seed);
        if (!fs.projection) {
            std::cout << "none\n";
            for (const auto& c : fs.candidates) std::cout << "  rejected: " << c.reason << "\n";
            return;
        }
        emit(run, out, matrix_to_json(fs.projection->matrix).dump(2) + "\n");
    });
    auto* check = projection->add_subcommand("check", "Validity of a projection matrix");
    check->add_option("slope", slope_file)->required();
    check->add_option("matrix", matrix_file)->required();
    check->add_option("--k", k);
    check->add_option("--seed", seed);
    check->callback([&] {
        Slope e = load_slope(run, slope_file);
        run.input(matrix_file);
        auto a = load_matrix(e.field, matrix_file);
        auto rep = check_projection(a, e, k, seed);
        std::cout << (rep.valid ? "valid" : "invalid") << "\n";
        if (!rep.valid) {
            std::cout << "  " << rep.detail << "\n";
            if (rep.overlap)
                std::cout << "  witness " << tile_json_string(rep.overlap->first) << " " << tile_json_string(rep.overlap->second) << "\n";
            status = 1;
        }
    });

    // tiling
    auto* tiling = app.add_subcommand("tiling", "Multigrid patches");
    tiling->require_subcommand(1);
    auto* gen = tiling->add_subcommand("generate", "Dual of a multigrid");
    gen->add_option("slope", slope_file)->required();
    gen->add_option("--projection", proj, "fine, orthogonal or a matrix file");
    gen->add_option("--k", k);
    gen->add_option("--seed", seed);
    gen->add_option("--out", out);
    gen->add_option("--svg", svg);
    gen->callback([&] {
        Slope e = load_slope(run, slope_file);
        run.manifest.seeds.push_back(seed);
        Patch p = generate_patch(e, choose_projection(run, e, proj), k, {seed, false});
        if (ends_with(out, ".svg")) std::swap(out, svg);
        emit(run, out, patch_to_json(p).dump(1) + "\n");
        if (!svg.empty()) run.output(svg, render_patch(p));
    });
    auto* shadow_cmd = tiling->add_subcommand("shadow", "Shadow of a patch");
    shadow_cmd->add_option("patch", patch_file)->required();
    shadow_cmd->add_option("--direction", direction)->required();
    shadow_cmd->add_option("--out", out);
    shadow_cmd->add_option("--svg", svg);
    shadow_cmd->callback([&] {
        Patch s = shadow_patch(load_patch(run, patch_file), direction);
        emit(run, out, patch_to_json(s).dump(1) + "\n");
        if (!svg.empty()) run.output(svg, render_patch(s));
    });

    // atlas
    auto* atlas_cmd = app.add_subcommand("atlas", "r-atlas of a 4 -> 2 or 3 -> 1 slope");
    atlas_cmd->require_subcommand(1);
    auto* compute = atlas_cmd->add_subcommand("compute", "Maps and their regions");
    compute->add_option("slope", slope_file)->required();
    compute->add_option("--r", r);
    compute->add_option("--metric", metric)->check(CLI::IsMember({"graph", "euclid"}));
    compute->add_option("--out", out);
    compute->callback([&] {
        Slope e = load_slope(run, slope_file);
        Atlas a = atlas(e, r, parse_metric(metric));
        emit(run, out, atlas_to_json(a).dump(1) + "\n");
        std::cerr << a.entries.size() << " maps, covered area equals window area: "
                  << (a.covered_area == a.window_area ? "yes" : "no") << "\n";
    });

    // ammann
    auto* ammann = app.add_subcommand("ammann", "FP-method");
    ammann->require_subcommand(1);
    auto* tileset = ammann->add_subcommand("tileset", "Decorated tiles");
    tileset->add_option("slope", slope_file)->required();
    tileset->add_option("--extra", extra, "extra search radius");
    tileset->add_option("--out", out);
    tileset->add_option("--svg", svg);
    tileset->callback([&] {
        Slope e = load_slope(run, slope_file);
        Tileset ts = decorated_tileset(e, Rational(extra));
        emit(run, out, tileset_to_json(ts).dump(1) + "\n");
        if (!svg.empty()) run.output(svg, render_tileset(ts));
        std::cerr << ts.tiles.size() << " decorated tiles\n";
    });
    auto* lines_cmd = ammann->add_subcommand("lines", "Lines through the vertices of a patch");
    lines_cmd->add_option("patch", patch_file)->required();
    lines_cmd->add_option("--direction", direction, "only this direction");
    lines_cmd->add_option("--svg", svg)->required();
    lines_cmd->add_option("--core", core, "only tiles in the complete core of this size");
    lines_cmd->callback([&] {
        Patch p = load_patch(run, patch_file);
        auto lf = line_families(p.slope, p.projection);
        auto dp = decorate_patch(lf, p);
        if (direction >= 0)
            for (auto& d : dp.decorations) d = d.only(direction);
        SvgStyle st;
        st.lines = true;
        st.core = core;
        run.output(svg, render_patch(p, st, &dp.decorations));
    });
    auto* census = ammann->add_subcommand("census", "Distinct spacings between consecutive lines");
    census->add_option("patch", patch_file)->required();
    census->add_option("--margin", margin);
    census->callback([&] {
        Patch p = load_patch(run, patch_file);
        auto lf = line_families(p.slope, p.projection);
        json j = json::array();
        for (int f = 0; f < 4; ++f) {
            auto c = interval_census(lf, p, f, margin);
            json gaps = json::array(), sp = json::array();
            for (const auto& g : c.gaps) gaps.push_back(g.to_string());
            for (double s : c.spacings) sp.push_back(std::strtod(fixed12(s).c_str(), nullptr));
            j.push_back({{"direction", f}, {"lines", c.lines}, {"gaps", gaps}, {"spacings_shadow", sp}});
        }
        std::cout << j.dump(2) << "\n";
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Patch scale checks");
    verify->require_subcommand(1);
    auto* shadows = verify->add_subcommand("shadows", "Shadow periods of a 4 -> 2 patch");
    shadows->add_option("patch", patch_file)->required();
    shadows->add_option("--margin", margin);
    shadows->callback([&] {
        Patch p = load_patch(run, patch_file);
        auto q = shadow_periods(p.slope);
        std::optional<LineFamilies> lf;
        if (is_fine(p.slope, p.projection)) lf = line_families(p.slope, p.projection);
        json reps = json::array();
        bool ok = true;
        for (int i = 0; i < 4; ++i) {
            auto rep = check_shadow_period(p, i, q[i], margin, lf ? &*lf : nullptr);
            ok = ok && rep.pass;
            reps.push_back(shadow_to_json(rep));
        }
        std::cout << json({{"pass", ok}, {"with_lines", lf.has_value()}, {"shadows", reps}}).dump(2) << "\n";
        if (!ok) status = 1;
    });
    auto* cont = verify->add_subcommand("continuity", "Lines continue across edges; tiles are in the tileset");
    cont->add_option("patch", patch_file)->required();
    cont->add_option("tiles", tiles_file)->required();
    cont->callback([&] {
        Patch p = load_patch(run, patch_file);
        Tileset ts = load_tileset(run, tiles_file);
        if (!same_row_space(p.projection, ts.lines.projection))
            throw Usage("patch and tileset use different projections");
        auto dp = decorate_patch(ts.lines, p);
        auto rep = check_line_continuity(dp);
        auto keys = ts.keys();
        std::set<std::string> known(keys.begin(), keys.end());
        auto deep = harvest(ts.lines, p, ts.reach + 1);
        size_t unknown = 0;
        for (const auto& t : deep) unknown += known.count(t.key()) ? 0 : 1;
        json j = continuity_to_json(rep);
        j["deep_tiles"] = deep.size();
        j["deep_tiles_outside_tileset"] = unknown;
        j["pass"] = rep.pass && unknown == 0;
        std::cout << j.dump(2) << "\n";
        if (!j["pass"].get<bool>()) status = 1;
    });
    auto* planar = verify->add_subcommand("planarity", "Thickness of the lift");
    planar->add_option("patch", patch_file)->required();
    planar->callback([&] {
        auto t = check_planarity(load_patch(run, patch_file));
        std::cout << thickness_to_json(t).dump(2) << "\n";
        if (t.thickness != FieldElement(t.thickness.field(), 1L)) status = 1;
    });
    auto* walk = verify->add_subcommand("walk", "Follow shadow lines through the tileset");
    walk->add_option("tiles", tiles_file)->required();
    walk->callback([&] {
        Tileset ts = load_tileset(run, tiles_file);
        json reps = json::array();
        bool ok = true;
        for (int i = 0; i < 4; ++i) {
            auto w = shadow_walk(ts, i);
            ok = ok && w.pass;
            reps.push_back(walk_to_json(w));
        }
        std::cout << json({{"pass", ok}, {"walks", reps}}).dump(2) << "\n";
        if (!ok) status = 1;
    });
    auto* pen = verify->add_subcommand("penrose", "Identities of the Penrose subperiods");
    pen->callback([&] {
        auto rep = penrose_identity_suite();
        for (const auto& it : rep.items) std::cout << (it.pass ? "PASS " : "FAIL ") << it.name << ": " << it.detail << "\n";
        if (!rep.pass()) status = 1;
    });

    // survey
    auto* survey = app.add_subcommand("survey", "Random slopes over quadratic fields");
    survey->add_option("--k", k, "coefficient bound")->default_val(3);
    survey->add_option("--samples", samples);
    survey->add_option("--seed", seed);
    survey->add_option("--out", out);
    survey->callback([&] {
        SurveyConfig c;
        c.k = k;
        c.samples = samples;
        c.seed = seed;
        run.manifest.seeds.push_back(seed);
        auto res = run_survey(c);
        emit(run, out, survey_csv(res));
        std::cerr << res.total << " slopes, " << res.not_characterized << " not characterized, " << res.fine_found
                  << " with a fine projection\n";
    });

    // render
    auto* render = app.add_subcommand("render", "SVG of a patch or tileset file");
    render->add_option("input", patch_file)->required();
    render->add_option("--out", out)->required();
    render->add_flag("--lines", lines, "dashed lines (patch with a fine projection)");
    render->add_option("--core", core, "only tiles in the complete core of this size");
    render->callback([&] {
        run.input(patch_file);
        json j = json::parse(read_file(patch_file));
        if (j.contains("segments") || (j.contains("tiles") && !j["tiles"].empty() && j["tiles"][0].contains("segments"))) {
            run.output(out, render_tileset(tileset_from_json(j)));
            return;
        }
        Patch p = patch_from_json(j);
        SvgStyle st;
        st.lines = lines;
        st.core = core;
        if (lines) {
            auto dp = decorate_patch(line_families(p.slope, p.projection), p);
            run.output(out, render_patch(p, st, &dp.decorations));
        } else {
            run.output(out, render_patch(p, st));
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Usage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    run.finish();
    return status;
}
