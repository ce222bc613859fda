#include "cnp/slope.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace cnp {

using json = nlohmann::json;

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// ------------------------------------------------------------------ Slope

Slope Slope::make(FieldPtr field, std::vector<Vec> generators, std::string name) {
    Slope s;
    s.field = std::move(field);
    s.d = static_cast<int>(generators.size());
    if (s.d == 0) throw SlopeError("slope needs at least one generator");
    s.n = static_cast<int>(generators[0].size());
    for (const auto& g : generators)
        if (static_cast<int>(g.size()) != s.n) throw SlopeError("generators have different lengths");
    if (s.d >= s.n) throw SlopeError("slope dimension must be smaller than ambient dimension");
    s.generators = std::move(generators);
    s.name = std::move(name);
    if (s.matrix().rank() != s.d) throw SlopeError("degenerate slope: generator matrix has rank < d");
    return s;
}

bool Slope::contains(const Vec& v) const {
    return matrix().stack(FieldMatrix(field, std::vector<Vec>{v})).rank() == d;
}

Slope Slope::parse(const std::string& text) {
    json j = json::object();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        auto blank = line.find_first_not_of(" \t\r");
        if (blank == std::string::npos) continue;
        if (eq == std::string::npos) throw SlopeError("slope file line " + std::to_string(lineno) + ": expected key = value");
        std::string key = line.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        try {
            j[key] = json::parse(line.substr(eq + 1));
        } catch (const json::exception& e) {
            throw SlopeError("slope file line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    for (const char* k : {"n", "d", "minpoly", "root_in", "generators"})
        if (!j.contains(k)) throw SlopeError(std::string("slope file is missing '") + k + "'");
    auto root = j["root_in"].get<std::vector<std::string>>();
    if (root.size() != 2) throw SlopeError("root_in must have two bounds");
    FieldPtr f = NumberField::parse(j["minpoly"].get<std::string>(), root[0], root[1]);
    std::vector<Vec> gens;
    for (const auto& row : j["generators"]) {
        Vec v;
        for (const auto& s : row) v.push_back(FieldElement::parse(f, s.get<std::string>()));
        gens.push_back(std::move(v));
    }
    Slope s = make(f, std::move(gens), j.value("name", ""));
    if (s.n != j["n"].get<int>() || s.d != j["d"].get<int>())
        throw SlopeError("declared n/d do not match the generators");
    return s;
}

Slope Slope::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SlopeError("cannot open slope file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Slope::serialize() const {
    std::ostringstream os;
    if (!name.empty()) os << "name = " << json(name).dump() << "\n";
    os << "n = " << n << "\nd = " << d << "\n";
    os << "minpoly = " << json(field->minpoly().to_string('x')).dump() << "\n";
    os << "root_in = " << json({field->root_lo().get_str(), field->root_hi().get_str()}).dump() << "\n";
    json g = json::array();
    for (const auto& row : generators) {
        json r = json::array();
        for (const auto& x : row) r.push_back(x.to_string());
        g.push_back(r);
    }
    os << "generators = " << g.dump() << "\n";
    return os.str();
}

namespace {

Slope from_strings(const char* minpoly, const char* lo, const char* hi,
                   const std::vector<std::vector<const char*>>& rows, const char* name) {
    FieldPtr f = NumberField::parse(minpoly, lo, hi);
    std::vector<Vec> gens;
    for (const auto& r : rows) {
        Vec v;
        for (auto s : r) v.push_back(FieldElement::parse(f, s));
        gens.push_back(v);
    }
    return Slope::make(f, gens, name);
}

}  // namespace

Slope cyrenaic_slope(bool negative_root) {
    return from_strings("x^2 - 3", negative_root ? "-2" : "1", negative_root ? "-1" : "2",
                        {{"a", "0", "1", "1"}, {"1", "a - 1", "-1", "1"}},
                        negative_root ? "cyrenaic-negative" : "cyrenaic");
}

Slope ammann_beenker_slope() {
    return from_strings("x^2 - 2", "1", "2", {{"a", "1", "0", "-1"}, {"0", "1", "a", "1"}}, "ammann-beenker");
}

Slope penrose_slope() {
    return from_strings("x^2 - x - 1", "1", "2",
                        {{"a", "0", "-a", "-1", "1"}, {"-1", "1", "a", "0", "-a"}}, "penrose");
}

Slope rauzy_slope() {
    return from_strings("x^3 - x^2 - x - 1", "1", "2", {{"a - 1", "-1", "0"}, {"a^2 - a - 1", "0", "-1"}},
                        "rauzy");
}

Slope rauzy_line_slope() {
    return from_strings("x^3 - x^2 - x - 1", "1", "2", {{"1", "a - 1", "a^2 - a - 1"}}, "rauzy-line");
}

Slope golden_octagonal_slope() {
    return from_strings("x^2 - x - 1", "1", "2", {{"-1", "0", "a", "a"}, {"0", "1", "a", "1"}},
                        "golden-octagonal");
}

Slope axis_slope(int n) {
    auto q = NumberField::rationals();
    return Slope::make(q, {unit_vec(q, n, 0), unit_vec(q, n, 1)}, "axis");
}

// ------------------------------------------------------------- Grassmann

FieldElement GrassmannCoordinates::pair(int i, int j) const {
    if (i == j) return FieldElement(g.begin()->second.field(), 0L);
    if (i < j) return g.at({i, j});
    return -g.at({j, i});
}

GrassmannCoordinates grassmann(const Slope& e) {
    GrassmannCoordinates gc;
    gc.n = e.n;
    gc.d = e.d;
    FieldMatrix m = e.matrix();
    bool any = false;
    for (const auto& s : combinations(e.n, e.d)) {
        FieldElement v = m.select_cols(s).determinant();
        any = any || !v.is_zero();
        gc.g.emplace(s, v);
    }
    if (!any) throw SlopeError("degenerate slope: all Grassmann coordinates vanish");
    return gc;
}

// ------------------------------------------------------------- subperiods

std::string Subperiod::type_label() const {
    std::string s;
    for (int i : dropped) s += std::to_string(i);
    return s;
}

std::vector<std::string> Subperiod::entry_strings() const {
    int n = static_cast<int>(dropped.size() + kept.size());
    std::vector<std::string> out(n, "*");
    for (size_t k = 0; k < kept.size(); ++k) out[kept[k]] = integer_entries[k].get_str();
    return out;
}

Vec Subperiod::integer_vector(const FieldPtr& f, int n) const {
    Vec v = zero_vec(f, n);
    for (size_t k = 0; k < kept.size(); ++k) v[kept[k]] = FieldElement(f, Rational(integer_entries[k]));
    return v;
}

SubperiodReport integer_subperiods(const Slope& e) {
    if (e.d != 2) throw SlopeError("subperiods are implemented for planes (d = 2)");
    SubperiodReport rep;
    GrassmannCoordinates gc = grassmann(e);
    const int deg = e.field->degree();
    auto q = NumberField::rationals();
    for (const auto& dropped : combinations(e.n, e.n - 3)) {
        std::vector<int> kept;
        for (int i = 0; i < e.n; ++i)
            if (std::find(dropped.begin(), dropped.end(), i) == dropped.end()) kept.push_back(i);
        // Row k: coefficients of c_k = (-1)^k G_{K \ k} in the power basis.
        FieldMatrix m(q, 3, deg);
        for (int k = 0; k < 3; ++k) {
            std::vector<int> rest;
            for (int j = 0; j < 3; ++j)
                if (j != k) rest.push_back(kept[j]);
            FieldElement c = gc.at(rest);
            if (k % 2) c = -c;
            for (int j = 0; j < deg; ++j) m(k, j) = FieldElement(q, c.coeffs()[j]);
        }
        FieldMatrix ker = m.left_kernel();
        if (ker.rows() == 0) {
            rep.aperiodic.push_back(dropped);
            continue;
        }
        if (ker.rows() >= 2) {
            rep.doubly_periodic.push_back(dropped);
            continue;
        }
        std::vector<Rational> v;
        for (int k = 0; k < 3; ++k) v.push_back(ker(0, k).rational_value());
        Integer l = 1;
        for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
        std::vector<Integer> iv;
        Integer g = 0;
        for (const auto& x : v) {
            iv.push_back(Integer(Rational(x * l).get_num()));
            g = gcd(g, iv.back());
        }
        for (auto& x : iv) x /= g;
        for (const auto& x : iv) {
            if (sgn(x) == 0) continue;
            if (sgn(x) < 0)
                for (auto& y : iv) y = -y;
            break;
        }
        rep.subperiods.push_back({dropped, kept, iv, std::nullopt});
    }
    return rep;
}

std::vector<Subperiod> lifted_subperiods(const Slope& e, const std::vector<Subperiod>& subs) {
    std::vector<Subperiod> out;
    const FieldPtr& f = e.field;
    const Vec& u = e.generators[0];
    const Vec& v = e.generators[1];
    for (Subperiod p : subs) {
        // alpha*u_K + beta*v_K = q: pick two rows with a nonzero 2x2 minor.
        bool solved = false;
        for (int r1 = 0; r1 < 3 && !solved; ++r1)
            for (int r2 = r1 + 1; r2 < 3 && !solved; ++r2) {
                int k1 = p.kept[r1], k2 = p.kept[r2];
                FieldElement det = det2(u[k1], v[k1], u[k2], v[k2]);
                if (det.is_zero()) continue;
                FieldElement q1(f, Rational(p.integer_entries[r1])), q2(f, Rational(p.integer_entries[r2]));
                FieldElement alpha = det2(q1, v[k1], q2, v[k2]) / det;
                FieldElement beta = det2(u[k1], q1, u[k2], q2) / det;
                Vec lift = scale(alpha, u) + scale(beta, v);
                for (int r = 0; r < 3; ++r)
                    if (lift[p.kept[r]] != FieldElement(f, Rational(p.integer_entries[r])))
                        throw SlopeError("no lift in E for subperiod of type " + p.type_label());
                p.lifted = lift;
                solved = true;
            }
        if (!solved) throw SlopeError("no lift in E for subperiod of type " + p.type_label());
        if (!e.contains(*p.lifted)) throw SlopeError("lifted subperiod is not in E");
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Subperiod> lifted_subperiods(const Slope& e) {
    return lifted_subperiods(e, integer_subperiods(e).subperiods);
}

// -------------------------------------------------------- characterization

std::vector<MPoly> chart_system(int n, const std::vector<Subperiod>& subs, std::pair<int, int> pivots) {
    // Column c of the chart: (1,0), (0,1) at pivots, else (x_j, x_{m+j}).
    std::vector<int> others;
    for (int c = 0; c < n; ++c)
        if (c != pivots.first && c != pivots.second) others.push_back(c);
    const int m = static_cast<int>(others.size());
    std::vector<std::array<MPoly, 2>> col(n);
    col[pivots.first] = {MPoly::constant(1), MPoly{}};
    col[pivots.second] = {MPoly{}, MPoly::constant(1)};
    for (int j = 0; j < m; ++j) col[others[j]] = {MPoly::var(j), MPoly::var(m + j)};
    std::vector<MPoly> eqs;
    for (const auto& p : subs) {
        const auto& K = p.kept;
        MPoly det;
        for (int k = 0; k < 3; ++k) {
            // cofactor along the q row: (-1)^(2+k) q_k * minor of the rows above
            int a = K[(k + 1) % 3], b = K[(k + 2) % 3];
            if ((k + 1) % 3 > (k + 2) % 3) std::swap(a, b);
            MPoly minor = col[a][0] * col[b][1] - col[b][0] * col[a][1];
            Rational coef(p.integer_entries[k]);
            if (k == 1) coef = -coef;
            det = det + minor * coef;
        }
        if (!det.is_zero()) eqs.push_back(det);
    }
    return eqs;
}

std::vector<MPoly> subperiod_minor_system(int n, const std::vector<Subperiod>& subs) {
    const int m = static_cast<int>(subs.size());
    std::vector<std::vector<MPoly>> mat(n, std::vector<MPoly>(m));
    int nv = 0;
    for (int c = 0; c < m; ++c) {
        for (int r : subs[c].dropped) mat[r][c] = MPoly::var(nv++);
        for (size_t k = 0; k < subs[c].kept.size(); ++k)
            mat[subs[c].kept[k]][c] = MPoly::constant(Rational(subs[c].integer_entries[k]));
    }
    std::vector<MPoly> eqs;
    for (const auto& rows : combinations(n, 3))
        for (const auto& cols : combinations(m, 3)) {
            auto e = [&](int i, int j) -> const MPoly& { return mat[rows[i]][cols[j]]; };
            MPoly det = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
                        e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
                        e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
            if (!det.is_zero()) eqs.push_back(det);
        }
    return eqs;
}

Characterization characterize(const Slope& e, const std::vector<Subperiod>& subs, bool with_minor_system) {
    Characterization c;
    GrassmannCoordinates gc = grassmann(e);
    std::pair<int, int> piv{-1, -1};
    for (const auto& [s, v] : gc.g)
        if (!v.is_zero()) {
            piv = {s[0], s[1]};
            break;
        }
    c.chart_pivots = {piv.first, piv.second};
    c.chart = solve_polynomial_system(chart_system(e.n, subs, piv), 2 * (e.n - 2));
    c.characterized = c.chart.kind == SystemKind::finite;
    int unknowns = 0;
    for (const auto& p : subs) unknowns += static_cast<int>(p.dropped.size());
    if (with_minor_system && e.n == 4 && unknowns > 0 && unknowns <= 8)
        c.minors = solve_polynomial_system(subperiod_minor_system(e.n, subs), unknowns);
    return c;
}

bool is_characterized_by_subperiods(const Slope& e) {
    return characterize(e, integer_subperiods(e).subperiods, false).characterized;
}

bool totally_irrational_flag(const std::vector<Subperiod>& lifted, const Characterization& c) {
    for (const auto& p : lifted) {
        if (!p.lifted) return false;
        bool irrational = false;
        for (const auto& x : *p.lifted) irrational = irrational || !x.is_rational();
        if (!irrational) return false;
    }
    if (c.chart.kind != SystemKind::finite) return true;
    for (const auto& s : c.chart.real_solutions)
        if (s.field->degree() == 1) return false;
    return true;
}

std::pair<std::vector<Integer>, std::vector<Integer>> floor_ceil(const Subperiod& p) {
    if (!p.lifted) throw SlopeError("floor_ceil needs a lifted subperiod");
    const Vec& v = *p.lifted;
    std::vector<int> slots;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_integer()) slots.push_back(static_cast<int>(i));
    if (slots.empty()) throw SlopeError("subperiod is already integral");
    std::vector<Integer> lo(v.size()), hi(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i].is_integer()) lo[i] = hi[i] = Integer(v[i].rational_value().get_num());
    for (size_t s = 0; s < slots.size(); ++s) {
        int i = slots[s];
        Integer f = v[i].floor(), c = v[i].ceil();
        bool swap = s % 2 == 1;
        lo[i] = swap ? c : f;
        hi[i] = swap ? f : c;
    }
    return {lo, hi};
}

Vec shadow_map(const Vec& v, int i) {
    Vec out;
    for (size_t k = 0; k < v.size(); ++k)
        if (static_cast<int>(k) != i) out.push_back(v[k]);
    return out;
}

std::vector<Integer> shadow_map(const std::vector<Integer>& v, int i) {
    std::vector<Integer> out;
    for (size_t k = 0; k < v.size(); ++k)
        if (static_cast<int>(k) != i) out.push_back(v[k]);
    return out;
}

}  // namespace cnp
