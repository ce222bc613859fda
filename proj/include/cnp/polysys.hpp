#pragma once

// Sparse multivariate polynomials over Q, Groebner bases in grevlex order,
// and exact solving of zero-dimensional systems whose solutions lie in
// extensions of degree at most two.

#include "cnp/matrix.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cnp {

constexpr int kMaxVars = 32;

struct Monomial {
    std::array<uint8_t, kMaxVars> e{};
    int deg = 0;

    static Monomial var(int i, int power = 1);
    bool divides(const Monomial& o) const;
    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;  // requires divides
    bool operator==(const Monomial& o) const { return e == o.e; }
};

Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);
// Graded reverse lexicographic comparison: negative, zero or positive.
int grevlex_cmp(const Monomial& a, const Monomial& b);

class MPoly {
public:
    struct Term {
        Monomial m;
        Rational c;
    };

    MPoly() = default;
    static MPoly constant(const Rational& c);
    static MPoly var(int i);
    static MPoly term(const Monomial& m, const Rational& c);

    bool is_zero() const { return t_.empty(); }
    const std::vector<Term>& terms() const { return t_; }
    const Term& lead() const { return t_.front(); }
    int total_degree() const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const Rational& s) const;
    MPoly operator-() const;
    bool operator==(const MPoly& o) const;
    MPoly monic() const;
    // *this - c * m * o
    MPoly sub_mul(const Rational& c, const Monomial& m, const MPoly& o) const;

    FieldElement eval(const Vec& x) const;
    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    void normalize();
    std::vector<Term> t_;
};

MPoly normal_form(const MPoly& p, const std::vector<MPoly>& basis);
// Reduced Groebner basis (monic, grevlex).
std::vector<MPoly> groebner_basis(std::vector<MPoly> polys);

enum class SystemKind { finite, positive_dimensional, no_solution };

struct SystemSolution {
    FieldPtr field;  // Q or a real quadratic field
    Vec values;
};

struct SystemResult {
    SystemKind kind = SystemKind::no_solution;
    int nvars = 0;
    std::vector<MPoly> basis;
    int complex_count = 0;    // distinct complex solutions when finite
    int unresolved_count = 0; // roots of irreducible factors of degree > 2
    std::vector<SystemSolution> real_solutions;
};

class SystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solves polys = 0 over C and returns every real solution exactly. Throws
// SystemError if a reported solution fails exact substitution.
SystemResult solve_polynomial_system(const std::vector<MPoly>& polys, int nvars);

// Characteristic polynomial of a square rational matrix.
QPoly charpoly(const std::vector<std::vector<Rational>>& m);

}  // namespace cnp
