#include "cnp/polysys.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace cnp {

// ------------------------------------------------------------- monomials

Monomial Monomial::var(int i, int power) {
    Monomial m;
    m.e[i] = static_cast<uint8_t>(power);
    m.deg = power;
    return m;
}

bool Monomial::divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
        int s = e[i] + o.e[i];
        if (s > 255) throw SystemError("monomial exponent overflow");
        r.e[i] = static_cast<uint8_t>(s);
    }
    r.deg = deg + o.deg;
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint8_t>(e[i] - o.e[i]);
    r.deg = deg - o.deg;
    return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.deg = 0;
    for (int i = 0; i < kMaxVars; ++i) {
        r.e[i] = std::max(a.e[i], b.e[i]);
        r.deg += r.e[i];
    }
    return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    for (int i = kMaxVars - 1; i >= 0; --i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    return 0;
}

// ------------------------------------------------------------ polynomials

MPoly MPoly::constant(const Rational& c) { return term(Monomial{}, c); }

MPoly MPoly::var(int i) { return term(Monomial::var(i), Rational(1)); }

MPoly MPoly::term(const Monomial& m, const Rational& c) {
    MPoly p;
    if (sgn(c) != 0) p.t_.push_back({m, c});
    return p;
}

int MPoly::total_degree() const {
    int d = 0;
    for (const auto& t : t_) d = std::max(d, t.m.deg);
    return d;
}

void MPoly::normalize() {
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return grevlex_cmp(a.m, b.m) > 0; });
    std::vector<Term> out;
    for (auto& t : t_) {
        if (!out.empty() && out.back().m == t.m)
            out.back().c += t.c;
        else
            out.push_back(std::move(t));
        if (sgn(out.back().c) == 0) out.pop_back();
    }
    t_ = std::move(out);
}

MPoly MPoly::sub_mul(const Rational& c, const Monomial& m, const MPoly& o) const {
    MPoly r;
    r.t_.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size()) {
            r.t_.push_back(t_[i++]);
            continue;
        }
        Monomial mj = o.t_[j].m * m;
        int cmpv = i == t_.size() ? -1 : grevlex_cmp(t_[i].m, mj);
        if (cmpv > 0) {
            r.t_.push_back(t_[i++]);
        } else if (cmpv < 0) {
            r.t_.push_back({mj, -c * o.t_[j].c});
            ++j;
        } else {
            Rational s = t_[i].c - c * o.t_[j].c;
            if (sgn(s) != 0) r.t_.push_back({mj, s});
            ++i;
            ++j;
        }
    }
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const { return sub_mul(Rational(-1), Monomial{}, o); }
MPoly MPoly::operator-(const MPoly& o) const { return sub_mul(Rational(1), Monomial{}, o); }

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r;
    for (const auto& t : t_) r = r.sub_mul(-t.c, t.m, o);
    return r;
}

MPoly MPoly::operator*(const Rational& s) const {
    if (sgn(s) == 0) return {};
    MPoly r = *this;
    for (auto& t : r.t_) t.c *= s;
    return r;
}

MPoly MPoly::operator-() const { return *this * Rational(-1); }

bool MPoly::operator==(const MPoly& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (size_t i = 0; i < t_.size(); ++i)
        if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
    return true;
}

MPoly MPoly::monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / lead().c);
}

FieldElement MPoly::eval(const Vec& x) const {
    if (x.empty()) throw SystemError("MPoly::eval needs at least one coordinate");
    const FieldPtr& f = x[0].field();
    FieldElement acc(f, 0L);
    for (const auto& t : t_) {
        FieldElement v(f, t.c);
        for (size_t i = 0; i < x.size(); ++i)
            for (int k = 0; k < t.m.e[i]; ++k) v *= x[i];
        acc += v;
    }
    return acc;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
        Rational mag = abs(t.c);
        os << (first ? (sgn(t.c) < 0 ? "-" : "") : (sgn(t.c) < 0 ? " - " : " + "));
        first = false;
        bool any = false;
        if (mag != 1 || t.m.deg == 0) {
            os << mag.get_str();
            any = true;
        }
        for (int i = 0; i < kMaxVars; ++i) {
            if (!t.m.e[i]) continue;
            if (any) os << '*';
            os << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i));
            if (t.m.e[i] > 1) os << '^' << int(t.m.e[i]);
            any = true;
        }
    }
    return os.str();
}

// --------------------------------------------------------------- Groebner

MPoly normal_form(const MPoly& p, const std::vector<MPoly>& basis) {
    MPoly rest = p;
    std::vector<MPoly::Term> out;
    while (!rest.is_zero()) {
        const auto lt = rest.lead();
        const MPoly* red = nullptr;
        for (const auto& g : basis)
            if (!g.is_zero() && g.lead().m.divides(lt.m)) {
                red = &g;
                break;
            }
        if (red) {
            rest = rest.sub_mul(lt.c / red->lead().c, lt.m / red->lead().m, *red);
        } else {
            out.push_back(lt);
            rest = rest.sub_mul(Rational(1), Monomial{}, MPoly::term(lt.m, lt.c));
        }
    }
    MPoly r;
    for (const auto& t : out) r = r + MPoly::term(t.m, t.c);
    return r;
}

namespace {

struct Pair {
    size_t i, j;
    Monomial l;
};

}  // namespace

std::vector<MPoly> groebner_basis(std::vector<MPoly> input) {
    std::vector<MPoly> polys;
    std::vector<Pair> pairs;
    std::set<std::pair<size_t, size_t>> pending;

    auto add = [&](MPoly h) {
        size_t k = polys.size();
        polys.push_back(std::move(h));
        for (size_t g = 0; g < k; ++g) {
            pairs.push_back({g, k, lcm(polys[g].lead().m, polys[k].lead().m)});
            pending.insert({g, k});
        }
    };
    // Buchberger's chain criterion: some k with LM_k | lcm(i,j) whose pairs
    // with i and j are already treated.
    auto chain = [&](const Pair& p) {
        for (size_t k = 0; k < polys.size(); ++k) {
            if (k == p.i || k == p.j) continue;
            if (!polys[k].lead().m.divides(p.l)) continue;
            auto key = [](size_t a, size_t b) { return std::pair{std::min(a, b), std::max(a, b)}; };
            if (!pending.count(key(p.i, k)) && !pending.count(key(p.j, k))) return true;
        }
        return false;
    };
    auto reducers = [&] {
        std::vector<MPoly> r;
        for (size_t g = 0; g < polys.size(); ++g) {
            bool redundant = false;
            for (size_t h = 0; h < polys.size() && !redundant; ++h)
                if (h != g && polys[h].lead().m.divides(polys[g].lead().m) &&
                    (!(polys[h].lead().m == polys[g].lead().m) || h < g))
                    redundant = true;
            if (!redundant) r.push_back(polys[g]);
        }
        return r;
    };

    for (auto& f : input) {
        MPoly h = normal_form(f, polys).monic();
        if (!h.is_zero()) add(std::move(h));
    }
    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(),
                                   [](const Pair& a, const Pair& b) { return grevlex_cmp(a.l, b.l) < 0; });
        Pair p = *it;
        pairs.erase(it);
        pending.erase({p.i, p.j});
        const Monomial li = polys[p.i].lead().m, lj = polys[p.j].lead().m;
        if (coprime(li, lj) || chain(p)) continue;
        MPoly s = MPoly::term(p.l / li, Rational(1)) * polys[p.i];
        s = s.sub_mul(Rational(1) / polys[p.j].lead().c, p.l / lj, polys[p.j]);
        MPoly h = normal_form(s, polys).monic();
        if (h.is_zero()) continue;
        if (h.lead().m.deg == 0) return {MPoly::constant(Rational(1))};
        add(std::move(h));
    }
    std::vector<MPoly> g = reducers();
    // Interreduce.
    std::vector<MPoly> out;
    for (size_t i = 0; i < g.size(); ++i) {
        std::vector<MPoly> others;
        for (size_t j = 0; j < g.size(); ++j)
            if (j != i) others.push_back(g[j]);
        MPoly lead_part = MPoly::term(g[i].lead().m, g[i].lead().c);
        MPoly tail = normal_form(g[i] - lead_part, others);
        out.push_back((lead_part + tail).monic());
    }
    std::sort(out.begin(), out.end(),
              [](const MPoly& a, const MPoly& b) { return grevlex_cmp(a.lead().m, b.lead().m) < 0; });
    return out;
}

// ----------------------------------------------------------- linear algebra

QPoly charpoly(const std::vector<std::vector<Rational>>& a) {
    const int n = static_cast<int>(a.size());
    using RM = std::vector<std::vector<Rational>>;
    auto mul = [&](const RM& x, const RM& y) {
        RM z(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (sgn(x[i][k]) == 0) continue;
                for (int j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
            }
        return z;
    };
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    RM m(n, std::vector<Rational>(n, Rational(0)));
    for (int k = 1; k <= n; ++k) {
        RM am = mul(a, m);
        for (int i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
        m = std::move(am);
        RM t = mul(a, m);
        Rational tr = 0;
        for (int i = 0; i < n; ++i) tr += t[i][i];
        c[n - k] = -tr / k;
    }
    return QPoly(c);
}

namespace {

struct ZeroDim {
    std::vector<Monomial> basis;  // standard monomials
    std::map<std::array<uint8_t, kMaxVars>, int> index;
};

bool is_zero_dimensional(const std::vector<MPoly>& g, int nvars) {
    for (int v = 0; v < nvars; ++v) {
        bool found = false;
        for (const auto& p : g) {
            const Monomial& m = p.lead().m;
            if (m.deg > 0 && m.e[v] == m.deg) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

ZeroDim standard_monomials(const std::vector<MPoly>& g, int nvars) {
    ZeroDim z;
    std::vector<Monomial> frontier{Monomial{}};
    auto reducible = [&](const Monomial& m) {
        for (const auto& p : g)
            if (p.lead().m.divides(m)) return true;
        return false;
    };
    while (!frontier.empty()) {
        Monomial m = frontier.back();
        frontier.pop_back();
        if (z.index.count(m.e) || reducible(m)) continue;
        z.index[m.e] = static_cast<int>(z.basis.size());
        z.basis.push_back(m);
        for (int v = 0; v < nvars; ++v) frontier.push_back(m * Monomial::var(v));
    }
    return z;
}

using RMat = std::vector<std::vector<Rational>>;

// Matrix of multiplication by f on the quotient, column j = NF(f * b_j).
RMat mult_matrix(const MPoly& f, const std::vector<MPoly>& g, const ZeroDim& z) {
    const int n = static_cast<int>(z.basis.size());
    RMat m(n, std::vector<Rational>(n, Rational(0)));
    for (int j = 0; j < n; ++j) {
        MPoly r = normal_form(f * MPoly::term(z.basis[j], Rational(1)), g);
        for (const auto& t : r.terms()) m[z.index.at(t.m.e)][j] = t.c;
    }
    return m;
}

QPoly poly_in_var(const QPoly& p, int v, MPoly* out) {
    MPoly r;
    for (int k = 0; k <= p.degree(); ++k)
        if (sgn(p.coeff(k)) != 0) r = r + MPoly::term(Monomial::var(v, k), p.coeff(k));
    *out = r;
    return p;
}

QPoly integer_primitive(const QPoly& p) {
    Integer l = 1;
    for (const auto& c : p.coeffs()) l = lcm(l, Integer(c.get_den()));
    QPoly q = p * Rational(l);
    Integer g = 0;
    for (const auto& c : q.coeffs()) g = gcd(g, Integer(c.get_num()));
    if (g != 0) q = q * Rational(Integer(1), g);
    if (sgn(q.leading()) < 0) q = -q;
    return q;
}

}  // namespace

SystemResult solve_polynomial_system(const std::vector<MPoly>& polys, int nvars) {
    if (nvars > kMaxVars) throw SystemError("too many variables");
    SystemResult res;
    res.nvars = nvars;
    std::vector<MPoly> g = groebner_basis(polys);
    res.basis = g;
    if (g.size() == 1 && g[0].lead().m.deg == 0) {
        res.kind = SystemKind::no_solution;
        return res;
    }
    if (!is_zero_dimensional(g, nvars)) {
        res.kind = SystemKind::positive_dimensional;
        return res;
    }
    res.kind = SystemKind::finite;

    // Radical: add the squarefree part of each variable's characteristic polynomial.
    {
        ZeroDim z = standard_monomials(g, nvars);
        std::vector<MPoly> extra = g;
        bool changed = false;
        for (int v = 0; v < nvars; ++v) {
            QPoly cp = charpoly(mult_matrix(MPoly::var(v), g, z));
            QPoly sf = squarefree_part(cp);
            if (sf.degree() < cp.degree()) {
                MPoly p;
                poly_in_var(sf, v, &p);
                extra.push_back(p);
                changed = true;
            }
        }
        if (changed) g = groebner_basis(extra);
    }
    ZeroDim z = standard_monomials(g, nvars);
    const int dim = static_cast<int>(z.basis.size());
    res.complex_count = dim;
    if (dim == 0) {
        res.kind = SystemKind::no_solution;
        return res;
    }

    std::vector<RMat> mx;
    for (int v = 0; v < nvars; ++v) mx.push_back(mult_matrix(MPoly::var(v), g, z));

    // Separating linear form.
    RMat ml;
    QPoly cl;
    bool separated = false;
    for (long c = 1; c < 200 && !separated; ++c) {
        ml.assign(dim, std::vector<Rational>(dim, Rational(0)));
        Rational w = 1;
        for (int v = 0; v < nvars; ++v) {
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    if (sgn(mx[v][i][j]) != 0) ml[i][j] += w * mx[v][i][j];
            w *= c;
        }
        cl = charpoly(ml);
        separated = squarefree_part(cl).degree() == dim;
    }
    if (!separated) throw SystemError("no separating linear form found");

    const int idx1 = z.index.at(Monomial{}.e);
    for (const QPoly& factor : split_low_degree(cl)) {
        if (factor.degree() > 2) {
            res.unresolved_count += factor.degree();
            continue;
        }
        std::vector<std::pair<FieldPtr, FieldElement>> roots;
        if (factor.degree() == 1) {
            auto q = NumberField::rationals();
            roots.emplace_back(q, FieldElement(q, Rational(-factor.coeff(0) / factor.coeff(1))));
        } else {
            const Rational b = factor.coeff(1) / factor.coeff(2), c = factor.coeff(0) / factor.coeff(2);
            if (sgn(b * b - 4 * c) < 0) continue;
            QPoly ip = integer_primitive(factor);
            Rational bound = 1;
            const QPoly mon = factor.monic();
            for (const auto& x : mon.coeffs()) bound += abs(x);
            Rational mid = -b / 2;
            for (auto [lo, hi] : {std::pair<Rational, Rational>{-bound, mid}, std::pair<Rational, Rational>{mid, bound}}) {
                auto f = NumberField::make(ip, lo, hi);
                roots.emplace_back(f, FieldElement::generator(f));
            }
        }
        for (auto& [f, theta] : roots) {
            FieldMatrix a(f, dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) a(i, j) = FieldElement(f, ml[j][i]);
            for (int i = 0; i < dim; ++i) a(i, i) -= theta;
            auto ker = a.right_kernel();
            if (ker.size() != 1) throw SystemError("eigenspace of separating form is not one-dimensional");
            const Vec& ev = ker[0];
            if (ev[idx1].is_zero()) throw SystemError("eigenvector vanishes at the constant monomial");
            Vec vals;
            for (int v = 0; v < nvars; ++v) {
                FieldElement s(f, 0L);
                for (int k = 0; k < dim; ++k)
                    if (sgn(mx[v][k][idx1]) != 0) s += FieldElement(f, mx[v][k][idx1]) * ev[k];
                vals.push_back(s / ev[idx1]);
            }
            for (const auto& p : polys)
                if (!p.eval(vals).is_zero()) throw SystemError("solution failed exact substitution");
            res.real_solutions.push_back({f, vals});
        }
    }
    return res;
}

}  // namespace cnp
