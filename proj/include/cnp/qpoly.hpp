#pragma once

// Dense univariate polynomials over the rationals. Coefficients are stored
// lowest degree first and kept trimmed (no trailing zeros; the zero
// polynomial is the empty vector).

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace cnp {

using Rational = mpq_class;
using Integer = mpz_class;

class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);
    static QPoly constant(const Rational& c);
    static QPoly monomial(const Rational& c, int degree);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int k) const;
    const Rational& leading() const { return c_.back(); }

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rational& s) const;
    QPoly operator-() const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    // Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
    QPoly derivative() const;
    QPoly monic() const;
    Rational eval(const Rational& x) const;
    double eval(double x) const;

    std::string to_string(char var = 'x') const;

private:
    void trim();
    std::vector<Rational> c_;
};

QPoly gcd(QPoly a, QPoly b);
QPoly squarefree_part(const QPoly& p);
// Number of distinct real roots in the half-open interval (lo, hi].
int sturm_count(const QPoly& p, const Rational& lo, const Rational& hi);
// Rational roots of p (distinct).
std::vector<Rational> rational_roots(const QPoly& p);
// Factors p (squarefree) into irreducible factors of degree <= 2 where
// possible; any residual factor that could not be split is returned too.
std::vector<QPoly> split_low_degree(const QPoly& p);

}  // namespace cnp
