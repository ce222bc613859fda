#include "cnp/survey.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace cnp {

namespace {

bool is_square(const Integer& d) {
    if (d < 0) return false;
    Integer r = sqrt(d);
    return r * r == d;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (size_t q = 0; q < v.size(); ++q) s += (q ? sep : "") + v[q];
    return s;
}

}  // namespace

QuadraticDraw draw_quadratic(int k, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-k, k);
    QuadraticDraw d;
    for (;;) {
        d.poly = {coef(rng), coef(rng), coef(rng)};
        if (d.poly[2] == 0) continue;
        Integer disc = d.poly[1] * d.poly[1] - 4 * d.poly[2] * d.poly[0];
        // irreducible over Q and with real roots
        if (disc > 0 && !is_square(disc)) break;
    }
    d.larger_root = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    for (auto* z : {&d.x, &d.y}) {
        (*z)[0] = coef(rng);
        do (*z)[1] = coef(rng);
        while ((*z)[1] == 0);
    }
    for (auto& w : d.u_v) {
        w.clear();
        for (int l = 0; l < 4; ++l) w.push_back(coef(rng));
    }
    return d;
}

Slope slope_from_draw(const QuadraticDraw& d) {
    QPoly p({Rational(d.poly[0]), Rational(d.poly[1]), Rational(d.poly[2])});
    const double c0 = d.poly[0].get_d(), c1 = d.poly[1].get_d(), c2 = d.poly[2].get_d();
    const double s = std::sqrt(c1 * c1 - 4 * c2 * c0);
    const double r1 = (-c1 - s) / (2 * c2), r2 = (-c1 + s) / (2 * c2);
    const double root = d.larger_root ? std::max(r1, r2) : std::min(r1, r2);
    // roots are at least 1/|c2| apart
    const Rational gap(1, 4 * std::abs(d.poly[2].get_si()));
    FieldPtr f = NumberField::make(p, Rational(root) - gap, Rational(root) + gap);
    const FieldElement a = FieldElement::generator(f);
    auto elt = [&](const std::array<Integer, 2>& z) { return FieldElement(f, Rational(z[0])) + a * Rational(z[1]); };
    std::vector<Vec> gens(2);
    for (int r = 0; r < 2; ++r)
        for (int l = 0; l < 4; ++l) gens[r].push_back(FieldElement(f, Rational(d.u_v[r][l])));
    gens[0][0] = elt(d.x);
    gens[1][1] = elt(d.y);
    return Slope::make(f, gens, "sample");
}

QuadraticDraw sample_draw(int k, std::mt19937_64& rng) {
    if (k < 1) throw SlopeError("survey needs k >= 1");
    for (;;) {
        QuadraticDraw d = draw_quadratic(k, rng);
        try {
            slope_from_draw(d);
            return d;
        } catch (const SlopeError&) {
            // rank below two: draw again
        }
    }
}

Slope sample_slope(int k, std::mt19937_64& rng) { return slope_from_draw(sample_draw(k, rng)); }

std::string SurveyRecord::verdict() const {
    if (!characterized) return "not_characterized";
    return fine_found ? "fine" : "characterized";
}

SurveyRecord survey_one(const Slope& e, int validity_k, uint64_t seed) {
    SurveyRecord rec;
    rec.slope = e;
    try {
        auto subs = integer_subperiods(e).subperiods;
        rec.subperiods = static_cast<int>(subs.size());
        rec.characterized = characterize(e, subs, false).characterized;
        if (!rec.characterized) {
            rec.detail = "subperiod system not zero-dimensional";
            return rec;
        }
        auto lifted = lifted_subperiods(e, subs);
        auto search = fine_projection_search(e, lifted, validity_k, seed);
        rec.fine_found = search.projection.has_value();
        if (!rec.fine_found) {
            std::vector<std::string> why;
            for (const auto& c : search.candidates) why.push_back(c.reason);
            rec.detail = join(why, "; ");
        }
    } catch (const std::exception& ex) {
        rec.detail = ex.what();
    }
    return rec;
}

SurveyResult run_survey(const SurveyConfig& cfg) {
    if (cfg.k < 1 || cfg.samples < 1) throw SlopeError("survey needs k >= 1 and samples >= 1");
    SurveyResult res;
    res.config = cfg;
    std::mt19937_64 rng(cfg.seed);
    std::vector<QuadraticDraw> draws;
    for (int s = 0; s < cfg.samples; ++s) draws.push_back(sample_draw(cfg.k, rng));
    res.records.resize(draws.size());

    int threads = cfg.threads;
    if (threads <= 0) {
        if (const char* env = std::getenv("CNP_THREADS")) threads = std::atoi(env);
        if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t q; (q = next++) < draws.size();) {
            auto t0 = std::chrono::steady_clock::now();
            SurveyRecord rec = survey_one(slope_from_draw(draws[q]), cfg.validity_k, cfg.seed);
            rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            rec.index = static_cast<int>(q);
            rec.draw = draws[q];
            res.records[q] = std::move(rec);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (const auto& r : res.records) {
        ++res.total;
        if (!r.characterized) ++res.not_characterized;
        if (r.fine_found) ++res.fine_found;
    }
    return res;
}

double SurveyResult::not_characterized_fraction() const { return total ? double(not_characterized) / total : 0; }
double SurveyResult::fine_fraction() const { return total ? double(fine_found) / total : 0; }

namespace {

std::string minpoly_text(const QuadraticDraw& d) {
    return QPoly({Rational(d.poly[0]), Rational(d.poly[1]), Rational(d.poly[2])}).to_string();
}

std::string generators_text(const Slope& e) {
    std::vector<std::string> rows;
    for (const auto& g : e.generators) {
        std::vector<std::string> c;
        for (const auto& x : g) c.push_back(x.to_string());
        rows.push_back("(" + join(c, ", ") + ")");
    }
    return join(rows, " ");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

}  // namespace

std::string SurveyResult::fingerprint() const {
    std::ostringstream s;
    s << "k=" << config.k << " samples=" << config.samples << " seed=" << config.seed << "\n";
    for (const auto& r : records)
        s << r.index << " " << minpoly_text(r.draw) << " " << (r.draw.larger_root ? "+" : "-") << " "
          << generators_text(r.slope) << " " << r.subperiods << " " << r.verdict() << " " << r.detail << "\n";
    s << total << " " << not_characterized << " " << fine_found << "\n";
    return s.str();
}

std::string survey_csv(const SurveyResult& r, bool with_timing) {
    std::ostringstream s;
    s << "seed_index,minpoly,root,generators,subperiods,verdict,detail";
    if (with_timing) s << ",seconds";
    s << "\n";
    for (const auto& rec : r.records) {
        s << rec.index << "," << csv_field(minpoly_text(rec.draw)) << "," << (rec.draw.larger_root ? "larger" : "smaller")
          << "," << csv_field(generators_text(rec.slope)) << "," << rec.subperiods << "," << rec.verdict() << ","
          << csv_field(rec.detail);
        if (with_timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", rec.seconds);
            s << "," << buf;
        }
        s << "\n";
    }
    return s.str();
}

}  // namespace cnp
