#include "cnp/field.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <sstream>

namespace cnp {

// ---------------------------------------------------------------- parsing

namespace {

template <class T, class Ops>
class ExprParser {
public:
    ExprParser(std::string_view s, char var, Ops ops) : s_(s), var_(var), ops_(std::move(ops)) {}

    T parse() {
        T v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw AlgebraError("cannot parse '" + std::string(s_) + "': " + why + " at offset " +
                           std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    T expr() {
        T acc = term();
        for (;;) {
            if (eat('+'))
                acc = ops_.add(acc, term());
            else if (eat('-'))
                acc = ops_.sub(acc, term());
            else
                return acc;
        }
    }
    T term() {
        T acc = unary();
        for (;;) {
            if (eat('*'))
                acc = ops_.mul(acc, unary());
            else if (eat('/'))
                acc = ops_.div(acc, unary());
            else
                return acc;
        }
    }
    T unary() {
        if (eat('-')) return ops_.neg(unary());
        if (eat('+')) return unary();
        return power();
    }
    T power() {
        T base = atom();
        if (eat('^')) {
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
            T acc = ops_.constant(Rational(1));
            for (int i = 0; i < e; ++i) acc = ops_.mul(acc, base);
            return acc;
        }
        return base;
    }
    T atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            T v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == var_) {
            ++pos_;
            return ops_.variable();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return ops_.constant(Rational(std::string(s_.substr(start, pos_ - start))));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    size_t pos_ = 0;
    char var_;
    Ops ops_;
};

struct QPolyOps {
    QPoly add(const QPoly& a, const QPoly& b) const { return a + b; }
    QPoly sub(const QPoly& a, const QPoly& b) const { return a - b; }
    QPoly mul(const QPoly& a, const QPoly& b) const { return a * b; }
    QPoly div(const QPoly& a, const QPoly& b) const {
        if (b.degree() != 0) throw AlgebraError("polynomial division by non-constant");
        return a * (Rational(1) / b.leading());
    }
    QPoly neg(const QPoly& a) const { return -a; }
    QPoly constant(const Rational& r) const { return QPoly::constant(r); }
    QPoly variable() const { return QPoly::monomial(1, 1); }
};

struct ElementOps {
    FieldPtr f;
    FieldElement add(const FieldElement& a, const FieldElement& b) const { return a + b; }
    FieldElement sub(const FieldElement& a, const FieldElement& b) const { return a - b; }
    FieldElement mul(const FieldElement& a, const FieldElement& b) const { return a * b; }
    FieldElement div(const FieldElement& a, const FieldElement& b) const { return a / b; }
    FieldElement neg(const FieldElement& a) const { return -a; }
    FieldElement constant(const Rational& r) const { return FieldElement(f, r); }
    FieldElement variable() const { return FieldElement::generator(f); }
};

int sgn_at(const QPoly& p, const Rational& x) { return sgn(p.eval(x)); }

}  // namespace

Rational parse_rational(std::string_view text) {
    QPoly p = ExprParser<QPoly, QPolyOps>(text, '\0', QPolyOps{}).parse();
    if (p.degree() > 0) throw AlgebraError("not a rational literal: " + std::string(text));
    return p.coeff(0);
}

QPoly parse_qpoly(std::string_view text, char var) {
    return ExprParser<QPoly, QPolyOps>(text, var, QPolyOps{}).parse();
}

// ----------------------------------------------------------- NumberField

FieldPtr NumberField::make(const QPoly& minpoly, const Rational& lo, const Rational& hi) {
    if (minpoly.degree() < 1) throw AlgebraError("minimal polynomial must have degree >= 1");
    for (const auto& c : minpoly.coeffs())
        if (c.get_den() != 1) throw AlgebraError("minimal polynomial must have integer coefficients");
    if (!(lo < hi)) throw AlgebraError("isolating interval must satisfy lo < hi");
    if (minpoly.degree() > 1) {
        auto factors = split_low_degree(minpoly);
        if (factors.size() != 1 || factors[0].degree() != minpoly.degree())
            throw AlgebraError("minimal polynomial " + minpoly.to_string() + " is reducible");
    }
    if (sturm_count(minpoly, lo, hi) != 1 || sgn_at(minpoly, lo) == 0)
        throw AlgebraError("interval [" + lo.get_str() + ", " + hi.get_str() +
                           "] does not isolate exactly one root of " + minpoly.to_string());

    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->minpoly_ = minpoly;
    f->monic_ = minpoly.monic();
    f->degree_ = minpoly.degree();
    f->input_lo_ = lo;
    f->input_hi_ = hi;
    Rational a = lo, b = hi;
    int sa = sgn_at(minpoly, a);
    const Rational eps("1/1267650600228229401496703205376");  // 2^-100
    while (b - a > eps) {
        Rational m = (a + b) / 2;
        int sm = sgn_at(minpoly, m);
        if (sm == 0) {
            a = m - eps / 4;
            b = m + eps / 4;
            sa = sgn_at(minpoly, a);
            break;
        }
        if (sm == sa)
            a = m;
        else
            b = m;
    }
    f->lo_ = a;
    f->hi_ = b;
    f->sign_lo_ = sa;
    f->root_d_ = Rational((a + b) / 2).get_d();

    const int d = f->degree_;
    f->powers_.assign(2 * d, std::vector<Rational>(d, Rational(0)));
    for (int k = 0; k < d; ++k) f->powers_[k][k] = 1;
    for (int k = d; k < 2 * d; ++k) {
        // a^k = a * a^{k-1}; shift then reduce the a^d term.
        const auto& prev = f->powers_[k - 1];
        std::vector<Rational> cur(d, Rational(0));
        Rational top = prev[d - 1];
        for (int j = d - 1; j >= 1; --j) cur[j] = prev[j - 1];
        for (int j = 0; j < d; ++j) cur[j] -= top * f->monic_.coeff(j);
        f->powers_[k] = std::move(cur);
    }
    return f;
}

FieldPtr NumberField::parse(std::string_view minpoly, std::string_view lo, std::string_view hi) {
    return make(parse_qpoly(minpoly, 'x'), parse_rational(lo), parse_rational(hi));
}

FieldPtr NumberField::rationals() {
    static const FieldPtr q = make(QPoly::monomial(1, 1), Rational(-1), Rational(1));
    return q;
}

bool NumberField::same_as(const NumberField& o) const {
    if (this == &o) return true;
    return minpoly_ == o.minpoly_ && lo_ <= o.hi_ && o.lo_ <= hi_;
}

std::string NumberField::describe() const {
    return "Q[x]/(" + minpoly_.to_string() + "), root in [" + input_lo_.get_str() + ", " +
           input_hi_.get_str() + "]";
}

// ---------------------------------------------------------- FieldElement

FieldElement::FieldElement(FieldPtr field, long value) : FieldElement(std::move(field), Rational(value)) {}

FieldElement::FieldElement(FieldPtr field, const Rational& value) : field_(std::move(field)) {
    c_.assign(field_->degree(), Rational(0));
    c_[0] = value;
    c_[0].canonicalize();
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)) {
    const int d = field_->degree();
    for (auto& c : coeffs) c.canonicalize();
    if (static_cast<int>(coeffs.size()) <= d) {
        coeffs.resize(d, Rational(0));
        c_ = std::move(coeffs);
        return;
    }
    c_.assign(d, Rational(0));
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (sgn(coeffs[k]) == 0) continue;
        if (static_cast<int>(k) < 2 * d) {
            const auto& p = field_->power(static_cast<int>(k));
            for (int j = 0; j < d; ++j)
                if (sgn(p[j]) != 0) c_[j] += coeffs[k] * p[j];
        } else {
            // Rare: fold through repeated multiplication.
            FieldElement t(field_, Rational(1));
            FieldElement g = generator(field_);
            for (size_t e = 0; e < k; ++e) t = t * g;
            for (int j = 0; j < d; ++j) c_[j] += coeffs[k] * t.c_[j];
        }
    }
}

FieldElement FieldElement::generator(FieldPtr field) {
    if (field->degree() == 1) {
        // a is the rational root of a linear minimal polynomial.
        const auto& m = field->minpoly();
        return FieldElement(field, Rational(-m.coeff(0) / m.coeff(1)));
    }
    std::vector<Rational> c(field->degree(), Rational(0));
    c[1] = 1;
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::parse(FieldPtr field, std::string_view text) {
    return ExprParser<FieldElement, ElementOps>(text, 'a', ElementOps{field}).parse();
}

void FieldElement::check_same(const FieldElement& o) const {
    if (!field_ || !o.field_) throw AlgebraError("operation on an uninitialised field element");
    if (field_ != o.field_ && !field_->same_as(*o.field_))
        throw AlgebraError("mixing elements of different number fields");
}

bool FieldElement::is_zero() const {
    for (const auto& c : c_)
        if (sgn(c) != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t k = 1; k < c_.size(); ++k)
        if (sgn(c_[k]) != 0) return false;
    return true;
}

Rational FieldElement::rational_value() const {
    if (!is_rational()) throw AlgebraError("element " + to_string() + " is not rational");
    return c_.empty() ? Rational(0) : c_[0];
}

bool FieldElement::is_integer() const { return is_rational() && c_[0].get_den() == 1; }

double FieldElement::to_double() const {
    double x = field_->root_approx();
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

Sign FieldElement::sign() const {
    if (c_.empty()) return Sign::zero;
    if (c_.size() == 1) return static_cast<Sign>(sgn(c_[0]));
    if (is_zero()) return Sign::zero;
    const double x = field_->root_approx();
    const double ax = std::fabs(x);
    double acc = 0, mag = 0, xp = 1, axp = 1;
    for (const auto& c : c_) {
        double cd = c.get_d();
        acc += cd * xp;
        mag += std::fabs(cd) * axp;
        xp *= x;
        axp *= ax;
    }
    if (std::isfinite(acc) && std::isfinite(mag) && std::fabs(acc) > 1e-11 * mag + 1e-300)
        return acc > 0 ? Sign::positive : Sign::negative;
    return exact_sign();
}

Sign FieldElement::exact_sign() const {
    // Interval evaluation over a shrinking rational bracket of the root.
    Rational lo = field_->refined_lo(), hi = field_->refined_hi();
    int slo = field_->sign_of_minpoly_at_lo();
    const QPoly& mp = field_->minpoly();
    for (int iter = 0; iter < 4000; ++iter) {
        Rational rlo = c_.back(), rhi = c_.back();
        for (int k = static_cast<int>(c_.size()) - 2; k >= 0; --k) {
            Rational p1 = rlo * lo, p2 = rlo * hi, p3 = rhi * lo, p4 = rhi * hi;
            Rational mn = p1, mx = p1;
            for (const Rational* p : {&p2, &p3, &p4}) {
                if (*p < mn) mn = *p;
                if (*p > mx) mx = *p;
            }
            rlo = mn + c_[k];
            rhi = mx + c_[k];
        }
        if (sgn(rlo) > 0) return Sign::positive;
        if (sgn(rhi) < 0) return Sign::negative;
        Rational m = (lo + hi) / 2;
        int sm = sgn(mp.eval(m));
        if (sm == 0) return static_cast<Sign>(sgn(QPoly(c_).eval(m)));
        if (sm == slo)
            lo = m;
        else
            hi = m;
    }
    throw AlgebraError("sign determination did not converge for " + to_string());
}

Integer FieldElement::floor() const {
    if (is_rational()) {
        Integer r;
        mpz_fdiv_q(r.get_mpz_t(), c_[0].get_num_mpz_t(), c_[0].get_den_mpz_t());
        return r;
    }
    Integer f(std::floor(to_double()));
    FieldElement diff = *this - FieldElement(field_, Rational(f));
    while (diff.sign() == Sign::negative) {
        f -= 1;
        diff = *this - FieldElement(field_, Rational(f));
    }
    while ((diff - FieldElement(field_, 1L)).sign() != Sign::negative) {
        f += 1;
        diff = *this - FieldElement(field_, Rational(f));
    }
    return f;
}

Integer FieldElement::ceil() const {
    Integer r = -((-*this).floor());
    return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    FieldElement r = *this;
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    FieldElement r = *this;
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
    return r;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

FieldElement FieldElement::operator*(const Rational& s) const {
    FieldElement r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    const int d = static_cast<int>(c_.size());
    if (d == 1) return FieldElement(field_, Rational(c_[0] * o.c_[0]));
    std::vector<Rational> prod(2 * d - 1, Rational(0));
    for (int i = 0; i < d; ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (sgn(o.c_[j]) == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    FieldElement r;
    r.field_ = field_;
    r.c_.assign(prod.begin(), prod.begin() + d);
    for (int k = d; k < 2 * d - 1; ++k) {
        if (sgn(prod[k]) == 0) continue;
        const auto& p = field_->power(k);
        for (int j = 0; j < d; ++j)
            if (sgn(p[j]) != 0) r.c_[j] += prod[k] * p[j];
    }
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) { return *this = *this + o; }
FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this = *this - o; }
FieldElement& FieldElement::operator*=(const FieldElement& o) { return *this = *this * o; }

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw AlgebraError("division by zero in number field");
    if (c_.size() == 1) return FieldElement(field_, Rational(1 / c_[0]));
    // Extended Euclid: s*x + t*m = 1.
    QPoly r0 = field_->minpoly(), r1(c_);
    QPoly s0, s1 = QPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        QPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant since the minimal polynomial is irreducible.
    QPoly inv = s0 * (Rational(1) / r0.coeff(0));
    return FieldElement(field_, inv.coeffs());
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

bool FieldElement::operator==(const FieldElement& o) const {
    check_same(o);
    return c_ == o.c_;
}

std::strong_ordering FieldElement::compare(const FieldElement& o) const {
    Sign s = (*this - o).sign();
    if (s == Sign::negative) return std::strong_ordering::less;
    if (s == Sign::positive) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string FieldElement::to_string() const {
    if (!field_) return "<null>";
    if (field_->degree() == 1) return c_[0].get_str();
    return QPoly(c_).to_string('a');
}

size_t FieldElement::hash() const {
    size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& c : c_) {
        size_t a = mpz_get_ui(c.get_num_mpz_t()) ^ (static_cast<size_t>(mpz_sgn(c.get_num_mpz_t())) << 63);
        size_t b = mpz_get_ui(c.get_den_mpz_t());
        h ^= a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

bool coeff_less(const FieldElement& a, const FieldElement& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    for (size_t k = 0; k < x.size() && k < y.size(); ++k) {
        int c = cmp(x[k], y[k]);
        if (c != 0) return c < 0;
    }
    return x.size() < y.size();
}

}  // namespace cnp
