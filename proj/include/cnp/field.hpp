#pragma once

// Exact arithmetic in a real algebraic number field Q(a).
//
// A NumberField is fixed by the minimal polynomial of a together with an
// isolating interval that selects which real root a denotes. Elements are
// coefficient vectors c0 + c1*a + ... + c_{deg-1}*a^{deg-1} with rational
// entries; equality is coefficient equality.

#include "cnp/qpoly.hpp"

#include <compare>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cnp {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }

class NumberField {
public:
    // minpoly: integer polynomial in x; [lo, hi] must contain exactly one
    // real root, which becomes the embedding of a.
    static FieldPtr make(const QPoly& minpoly, const Rational& lo, const Rational& hi);
    // Parses minpoly text such as "x^2 - 3" and root bounds such as "1", "2".
    static FieldPtr parse(std::string_view minpoly, std::string_view lo, std::string_view hi);
    // Q itself, presented as Q(a) with a = 0.
    static FieldPtr rationals();

    int degree() const { return degree_; }
    const QPoly& minpoly() const { return minpoly_; }
    const Rational& root_lo() const { return input_lo_; }
    const Rational& root_hi() const { return input_hi_; }
    double root_approx() const { return root_d_; }
    bool is_rational_field() const { return degree_ == 1; }

    // Tight rational bracket of the root, refined at construction.
    const Rational& refined_lo() const { return lo_; }
    const Rational& refined_hi() const { return hi_; }
    int sign_of_minpoly_at_lo() const { return sign_lo_; }

    // a^k reduced into the power basis, for k < 2*degree.
    const std::vector<Rational>& power(int k) const { return powers_[k]; }

    bool same_as(const NumberField& o) const;
    std::string describe() const;

private:
    NumberField() = default;
    QPoly minpoly_;
    QPoly monic_;
    int degree_ = 1;
    Rational input_lo_, input_hi_;
    Rational lo_, hi_;
    int sign_lo_ = 0;
    double root_d_ = 0;
    std::vector<std::vector<Rational>> powers_;
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldPtr field, long value);
    FieldElement(FieldPtr field, const Rational& value);
    FieldElement(FieldPtr field, std::vector<Rational> coeffs);

    static FieldElement generator(FieldPtr field);
    // Parses a polynomial expression in `a` (e.g. "1/2*a + 1").
    static FieldElement parse(FieldPtr field, std::string_view text);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool valid() const { return static_cast<bool>(field_); }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // throws unless is_rational()
    bool is_integer() const;

    Sign sign() const;
    double to_double() const;
    Integer floor() const;
    Integer ceil() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const Rational& s) const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement inverse() const;
    FieldElement abs() const { return sign() == Sign::negative ? -*this : *this; }

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // Ordering of the real embedding.
    std::strong_ordering compare(const FieldElement& o) const;
    bool operator<(const FieldElement& o) const { return compare(o) < 0; }
    bool operator>(const FieldElement& o) const { return compare(o) > 0; }
    bool operator<=(const FieldElement& o) const { return compare(o) <= 0; }
    bool operator>=(const FieldElement& o) const { return compare(o) >= 0; }

    std::string to_string() const;
    size_t hash() const;

private:
    void check_same(const FieldElement& o) const;
    Sign exact_sign() const;
    FieldPtr field_;
    std::vector<Rational> c_;
};

// Free-function spelling used throughout the geometry code.
inline Sign field_sign(const FieldElement& x) { return x.sign(); }

struct FieldElementHash {
    size_t operator()(const FieldElement& x) const { return x.hash(); }
};

// Lexicographic order on coefficient vectors; a total order independent of
// the embedding, used for canonical keys.
bool coeff_less(const FieldElement& a, const FieldElement& b);

// Parses a rational literal such as "-3/4".
Rational parse_rational(std::string_view text);
// Parses a polynomial in `var` with rational coefficients.
QPoly parse_qpoly(std::string_view text, char var = 'x');

}  // namespace cnp
