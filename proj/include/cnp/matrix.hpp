#pragma once

// Dense immutable-by-convention matrices over a number field.

#include "cnp/field.hpp"

#include <string>
#include <vector>

namespace cnp {

using Vec = std::vector<FieldElement>;

class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(FieldPtr field, int rows, int cols);
    FieldMatrix(FieldPtr field, const std::vector<Vec>& rows);
    static FieldMatrix identity(FieldPtr field, int n);
    static FieldMatrix from_integers(FieldPtr field, const std::vector<std::vector<long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    const FieldElement& operator()(int r, int c) const { return a_[r * cols_ + c]; }
    FieldElement& operator()(int r, int c) { return a_[r * cols_ + c]; }

    Vec row(int r) const;
    Vec col(int c) const;
    FieldMatrix transpose() const;
    FieldMatrix operator*(const FieldMatrix& o) const;
    FieldMatrix operator+(const FieldMatrix& o) const;
    FieldMatrix operator-(const FieldMatrix& o) const;
    Vec operator*(const Vec& v) const;
    bool operator==(const FieldMatrix& o) const;
    bool is_zero() const;

    FieldMatrix select_cols(const std::vector<int>& cols) const;
    FieldMatrix select_rows(const std::vector<int>& rows) const;
    // Rows of *this followed by rows of o.
    FieldMatrix stack(const FieldMatrix& o) const;

    int rank() const;
    FieldElement determinant() const;
    // Basis of {x : Mx = 0}, one vector per free column.
    std::vector<Vec> right_kernel() const;
    // Basis of {v : vM = 0}, returned as rows.
    FieldMatrix left_kernel() const;
    // Solves Mx = b for square invertible M; throws AlgebraError otherwise.
    Vec solve(const Vec& b) const;
    FieldMatrix inverse() const;

    std::string to_string() const;

private:
    FieldPtr field_;
    int rows_ = 0, cols_ = 0;
    std::vector<FieldElement> a_;
};

FieldElement dot(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec scale(const FieldElement& s, const Vec& v);
Vec zero_vec(const FieldPtr& f, int n);
Vec unit_vec(const FieldPtr& f, int n, int i);
bool is_zero(const Vec& v);
FieldElement det2(const FieldElement& a, const FieldElement& b, const FieldElement& c,
                  const FieldElement& d);
std::string to_string(const Vec& v);

}  // namespace cnp
