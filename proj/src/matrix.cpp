#include "cnp/matrix.hpp"

#include <sstream>
#include <utility>

namespace cnp {

FieldMatrix::FieldMatrix(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
    a_.assign(static_cast<size_t>(rows) * cols, FieldElement(field_, 0L));
}

FieldMatrix::FieldMatrix(FieldPtr field, const std::vector<Vec>& rows) : field_(std::move(field)) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows[0].size()) : 0;
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) throw AlgebraError("ragged matrix rows");
        for (const auto& x : r) a_.push_back(x);
    }
}

FieldMatrix FieldMatrix::identity(FieldPtr field, int n) {
    FieldMatrix m(field, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = FieldElement(field, 1L);
    return m;
}

FieldMatrix FieldMatrix::from_integers(FieldPtr field, const std::vector<std::vector<long>>& rows) {
    std::vector<Vec> r;
    for (const auto& row : rows) {
        Vec v;
        for (long x : row) v.emplace_back(field, x);
        r.push_back(std::move(v));
    }
    return FieldMatrix(field, r);
}

Vec FieldMatrix::row(int r) const { return Vec(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_); }

Vec FieldMatrix::col(int c) const {
    Vec v;
    v.reserve(rows_);
    for (int r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix t(field_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
    if (cols_ != o.rows_) throw AlgebraError("matrix product shape mismatch");
    FieldMatrix p(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const auto& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) p(i, j) += x * o(k, j);
        }
    return p;
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& o) const {
    FieldMatrix p = *this;
    for (size_t i = 0; i < a_.size(); ++i) p.a_[i] += o.a_[i];
    return p;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& o) const {
    FieldMatrix p = *this;
    for (size_t i = 0; i < a_.size(); ++i) p.a_[i] -= o.a_[i];
    return p;
}

Vec FieldMatrix::operator*(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw AlgebraError("matrix-vector shape mismatch");
    Vec out = zero_vec(field_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k)
            if (!v[k].is_zero()) out[i] += (*this)(i, k) * v[k];
    return out;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool FieldMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

FieldMatrix FieldMatrix::select_cols(const std::vector<int>& cols) const {
    FieldMatrix m(field_, rows_, static_cast<int>(cols.size()));
    for (int r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols.size(); ++c) m(r, static_cast<int>(c)) = (*this)(r, cols[c]);
    return m;
}

FieldMatrix FieldMatrix::select_rows(const std::vector<int>& rows) const {
    FieldMatrix m(field_, static_cast<int>(rows.size()), cols_);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < cols_; ++c) m(static_cast<int>(r), c) = (*this)(rows[r], c);
    return m;
}

FieldMatrix FieldMatrix::stack(const FieldMatrix& o) const {
    if (rows_ == 0) return o;
    if (o.rows_ == 0) return *this;
    if (cols_ != o.cols_) throw AlgebraError("stack: column mismatch");
    FieldMatrix m = *this;
    m.rows_ += o.rows_;
    m.a_.insert(m.a_.end(), o.a_.begin(), o.a_.end());
    return m;
}

namespace {

// Fraction-free (Bareiss) forward elimination in place; returns pivot
// columns and tracks row swaps for the determinant sign.
struct Echelon {
    std::vector<FieldElement> a;
    int rows, cols;
    std::vector<int> pivots;
    int swaps = 0;
    FieldElement last_pivot;
};

Echelon bareiss(const FieldPtr& f, const std::vector<FieldElement>& data, int rows, int cols) {
    Echelon e{data, rows, cols, {}, 0, FieldElement(f, 1L)};
    auto at = [&](int r, int c) -> FieldElement& { return e.a[r * cols + c]; };
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!at(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r) {
            for (int j = 0; j < cols; ++j) std::swap(at(p, j), at(r, j));
            ++e.swaps;
        }
        const FieldElement piv = at(r, c);
        const FieldElement inv_prev = e.last_pivot.inverse();
        for (int i = r + 1; i < rows; ++i) {
            const FieldElement m = at(i, c);
            for (int j = c + 1; j < cols; ++j) at(i, j) = (piv * at(i, j) - m * at(r, j)) * inv_prev;
            at(i, c) = FieldElement(f, 0L);
        }
        e.last_pivot = piv;
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

}  // namespace

int FieldMatrix::rank() const {
    if (rows_ == 0 || cols_ == 0) return 0;
    return static_cast<int>(bareiss(field_, a_, rows_, cols_).pivots.size());
}

FieldElement FieldMatrix::determinant() const {
    if (rows_ != cols_) throw AlgebraError("determinant of non-square matrix");
    if (rows_ == 0) return FieldElement(field_, 1L);
    if (rows_ == 1) return a_[0];
    if (rows_ == 2) return det2(a_[0], a_[1], a_[2], a_[3]);
    auto e = bareiss(field_, a_, rows_, cols_);
    if (static_cast<int>(e.pivots.size()) < rows_) return FieldElement(field_, 0L);
    FieldElement d = e.a[rows_ * cols_ - 1];
    return e.swaps % 2 ? -d : d;
}

std::vector<Vec> FieldMatrix::right_kernel() const {
    std::vector<Vec> basis;
    if (cols_ == 0) return basis;
    if (rows_ == 0) {
        for (int c = 0; c < cols_; ++c) basis.push_back(unit_vec(field_, cols_, c));
        return basis;
    }
    auto e = bareiss(field_, a_, rows_, cols_);
    auto at = [&](int r, int c) -> const FieldElement& { return e.a[r * cols_ + c]; };
    std::vector<bool> is_pivot(cols_, false);
    for (int c : e.pivots) is_pivot[c] = true;
    const int rk = static_cast<int>(e.pivots.size());
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        Vec x = zero_vec(field_, cols_);
        x[free] = FieldElement(field_, 1L);
        for (int r = rk - 1; r >= 0; --r) {
            int pc = e.pivots[r];
            FieldElement s(field_, 0L);
            for (int j = pc + 1; j < cols_; ++j)
                if (!x[j].is_zero() && !at(r, j).is_zero()) s += at(r, j) * x[j];
            x[pc] = -s / at(r, pc);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

FieldMatrix FieldMatrix::left_kernel() const {
    auto basis = transpose().right_kernel();
    if (basis.empty()) return FieldMatrix(field_, 0, rows_);
    return FieldMatrix(field_, basis);
}

Vec FieldMatrix::solve(const Vec& b) const {
    if (rows_ != cols_) throw AlgebraError("solve: matrix not square");
    const int n = rows_;
    FieldMatrix aug(field_, n, n + 1);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
        aug(r, n) = b[r];
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (!aug(r, c).is_zero()) {
                p = r;
                break;
            }
        if (p < 0) throw AlgebraError("solve: singular matrix");
        if (p != c)
            for (int j = 0; j <= n; ++j) std::swap(aug(p, j), aug(c, j));
        FieldElement inv = aug(c, c).inverse();
        for (int j = c; j <= n; ++j) aug(c, j) = aug(c, j) * inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || aug(r, c).is_zero()) continue;
            FieldElement m = aug(r, c);
            for (int j = c; j <= n; ++j) aug(r, j) -= m * aug(c, j);
        }
    }
    return aug.col(n);
}

FieldMatrix FieldMatrix::inverse() const {
    const int n = rows_;
    std::vector<Vec> cols;
    for (int c = 0; c < n; ++c) cols.push_back(solve(unit_vec(field_, n, c)));
    return FieldMatrix(field_, cols).transpose();
}

std::string FieldMatrix::to_string() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) os << cnp::to_string(row(r)) << (r + 1 < rows_ ? "\n" : "");
    return os.str();
}

FieldElement dot(const Vec& a, const Vec& b) {
    FieldElement s(a.at(0).field(), 0L);
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

Vec operator+(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const FieldElement& s, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x = s * x;
    return r;
}

Vec zero_vec(const FieldPtr& f, int n) { return Vec(n, FieldElement(f, 0L)); }

Vec unit_vec(const FieldPtr& f, int n, int i) {
    Vec v = zero_vec(f, n);
    v[i] = FieldElement(f, 1L);
    return v;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

FieldElement det2(const FieldElement& a, const FieldElement& b, const FieldElement& c,
                  const FieldElement& d) {
    return a * d - b * c;
}

std::string to_string(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
    return s + ")";
}

}  // namespace cnp
