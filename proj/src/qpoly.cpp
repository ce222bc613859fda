#include "cnp/qpoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace cnp {

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::monomial(const Rational& c, int degree) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational QPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[k];
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return QPoly(std::move(r));
}

QPoly QPoly::operator*(const Rational& s) const {
    QPoly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
    if (d.is_zero()) throw std::domain_error("QPoly::divmod: division by zero polynomial");
    std::vector<Rational> rem = c_;
    const int dd = d.degree();
    if (degree() < dd) return {QPoly{}, *this};
    std::vector<Rational> quo(degree() - dd + 1, Rational(0));
    for (int k = degree(); k >= dd; --k) {
        if (sgn(rem[k]) == 0) continue;
        Rational f = rem[k] / d.leading();
        quo[k - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * d.c_[j];
    }
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return QPoly(std::move(r));
}

QPoly QPoly::monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / leading());
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double QPoly::eval(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

std::string QPoly::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = c_[k];
        if (sgn(c) == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << '-';
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << '*';
        os << var;
        if (k > 1) os << '^' << k;
    }
    return os.str();
}

QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

QPoly squarefree_part(const QPoly& p) {
    if (p.degree() <= 0) return p.monic();
    QPoly g = gcd(p, p.derivative());
    return p.divmod(g).first.monic();
}

namespace {

int sign_changes(const std::vector<QPoly>& seq, const Rational& x) {
    int changes = 0;
    int last = 0;
    for (const auto& p : seq) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// Scales p to a primitive integer polynomial (lowest degree first).
std::vector<Integer> integer_coeffs(const QPoly& p) {
    Integer l = 1;
    for (const auto& c : p.coeffs()) l = lcm(l, Integer(c.get_den()));
    std::vector<Integer> out;
    out.reserve(p.coeffs().size());
    Integer g = 0;
    for (const auto& c : p.coeffs()) {
        Rational s = c * l;
        out.push_back(Integer(s.get_num()));
        g = gcd(g, out.back());
    }
    if (g != 0 && g != 1)
        for (auto& c : out) c /= g;
    return out;
}

std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> out;
    if (n == 0) return out;
    if (n > Integer("1000000000000")) {
        out.push_back(1);
        out.push_back(n);
        return out;
    }
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

std::vector<std::complex<long double>> numeric_roots(const QPoly& p) {
    using C = std::complex<long double>;
    const int n = p.degree();
    std::vector<C> roots;
    if (n <= 0) return roots;
    std::vector<long double> c(n + 1);
    QPoly m = p.monic();
    for (int k = 0; k <= n; ++k) c[k] = m.coeff(k).get_d();
    long double bound = 1;
    for (int k = 0; k < n; ++k) bound = std::max(bound, 1 + std::fabs(c[k]));
    roots.resize(n);
    C seed(0.4L, 0.9L);
    for (int k = 0; k < n; ++k) roots[k] = std::pow(seed, k) * (bound * 0.5L);
    auto eval = [&](C x) {
        C acc = 0;
        for (int k = n; k >= 0; --k) acc = acc * x + c[k];
        return acc;
    };
    for (int it = 0; it < 2000; ++it) {
        long double delta = 0;
        for (int i = 0; i < n; ++i) {
            C den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= roots[i] - roots[j];
            if (std::abs(den) == 0) den = 1e-30L;
            C step = eval(roots[i]) / den;
            roots[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-17L) break;
    }
    return roots;
}

}  // namespace

int sturm_count(const QPoly& p, const Rational& lo, const Rational& hi) {
    std::vector<QPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        QPoly r = seq[seq.size() - 2].divmod(seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return sign_changes(seq, lo) - sign_changes(seq, hi);
}

std::vector<Rational> rational_roots(const QPoly& p) {
    std::vector<Rational> out;
    if (p.degree() <= 0) return out;
    QPoly q = p;
    if (sgn(q.coeff(0)) == 0) {
        out.push_back(0);
        while (sgn(q.coeff(0)) == 0) q = q.divmod(QPoly::monomial(1, 1)).first;
    }
    if (q.degree() <= 0) return out;
    auto ic = integer_coeffs(q);
    auto dens = divisors(ic.back());
    for (const auto& r : numeric_roots(q)) {
        if (std::fabs(r.imag()) > 1e-6L * (1 + std::abs(r))) continue;
        for (const auto& d : dens) {
            long double num = std::round(r.real() * d.get_d());
            Rational cand(Integer(static_cast<double>(num)), d);
            cand.canonicalize();
            if (sgn(q.eval(cand)) == 0 &&
                std::find(out.begin(), out.end(), cand) == out.end()) {
                out.push_back(cand);
                break;
            }
        }
    }
    return out;
}

std::vector<QPoly> split_low_degree(const QPoly& p) {
    std::vector<QPoly> factors;
    QPoly rest = p.monic();
    for (const auto& r : rational_roots(rest)) {
        QPoly lin(std::vector<Rational>{-r, 1});
        factors.push_back(lin);
        rest = rest.divmod(lin).first;
    }
    while (rest.degree() > 2) {
        auto roots = numeric_roots(rest);
        auto ic = integer_coeffs(rest);
        auto dens = divisors(ic.back());
        bool found = false;
        for (size_t i = 0; i < roots.size() && !found; ++i) {
            for (size_t j = i + 1; j < roots.size() && !found; ++j) {
                auto s = roots[i] + roots[j];
                auto pr = roots[i] * roots[j];
                if (std::fabs(s.imag()) > 1e-6L || std::fabs(pr.imag()) > 1e-6L) continue;
                for (const auto& c : dens) {
                    long double cb = std::round(-s.real() * c.get_d());
                    long double cd = std::round(pr.real() * c.get_d());
                    Rational b(Integer(static_cast<double>(cb)), c);
                    Rational d0(Integer(static_cast<double>(cd)), c);
                    b.canonicalize();
                    d0.canonicalize();
                    QPoly quad(std::vector<Rational>{d0, b, 1});
                    auto [q, r] = rest.divmod(quad);
                    if (r.is_zero()) {
                        factors.push_back(quad);
                        rest = q;
                        found = true;
                        break;
                    }
                }
            }
        }
        if (!found) break;
    }
    if (rest.degree() >= 1) factors.push_back(rest.monic());
    return factors;
}

}  // namespace cnp
