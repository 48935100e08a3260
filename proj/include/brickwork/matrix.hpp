#ifndef BRICKWORK_MATRIX_HPP
#define BRICKWORK_MATRIX_HPP

// Dense matrices over an exact scalar ring S (ground field, k(x), or
// polynomial rings), plus the exact linear algebra the rest of the library
// leans on: reduced row echelon form, kernels, Bareiss fraction-free rank
// and determinant, and verified left inverses.

#include <functional>
#include <optional>
#include <vector>

#include "brickwork/poly.hpp"
#include "brickwork/ratfun.hpp"

namespace brickwork {

template <class S>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, S(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    Matrix operator+(const Matrix& o) const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const S& v = (*this)(i, k);
                if (v.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }
    Matrix operator*(const S& c) const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    template <class T>
    Matrix<T> map(const std::function<T(const S&)>& f) const {
        Matrix<T> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

  private:
    std::size_t rows_, cols_;
    std::vector<S> a_;
};

// In-place reduced row echelon form over a field.  Returns the pivot
// columns; rank is their count.  Pivot choice is the first nonzero entry in
// the column (deterministic).
template <class S>
std::vector<std::size_t> rref(Matrix<S>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row) m.swap_rows(sel, row);
        S inv = m(row, col).inv();
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            S f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class S>
std::size_t rank_field(Matrix<S> m) {
    return rref(m).size();
}

// Kernel basis (column vectors x with A x = 0) over a field.
template <class S>
std::vector<std::vector<S>> kernel_basis(Matrix<S> a) {
    std::vector<std::size_t> pivots = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<S>> basis;
    for (std::size_t freecol = 0; freecol < a.cols(); ++freecol) {
        if (is_pivot[freecol]) continue;
        std::vector<S> v(a.cols(), S(0));
        v[freecol] = S(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, freecol);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve A x = b over a field; empty when inconsistent.
template <class S>
std::optional<std::vector<S>> solve_linear(const Matrix<S>& a, const std::vector<S>& b) {
    Matrix<S> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<S> x(a.cols(), S(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

namespace detail {

// Bareiss elimination over an integral domain with exact division.  div must
// be exact division (checked by the Poly overload).
template <class D>
std::size_t bareiss_rank(Matrix<D> m, const std::function<D(const D&, const D&)>& div) {
    std::size_t rank = 0;
    D prev = D(1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row) m.swap_rows(sel, row);
        const D pivot = m(row, col);
        for (std::size_t i = row + 1; i < m.rows(); ++i) {
            for (std::size_t j = col + 1; j < m.cols(); ++j)
                m(i, j) = div(m(i, j) * pivot - m(i, col) * m(row, j), prev);
            m(i, col) = D(0);
        }
        prev = pivot;
        ++rank;
        ++row;
    }
    return rank;
}

template <class K>
Poly<K> exact_poly_div(const Poly<K>& a, const Poly<K>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw error("inexact division in fraction-free elimination");
    return q;
}

}  // namespace detail

// Exact rank by fraction-free (Bareiss) elimination over the ground field.
template <class K>
std::size_t mat_rank(const Matrix<K>& m) {
    return detail::bareiss_rank<K>(m, [](const K& a, const K& b) { return a / b; });
}

// Exact rank over k(x): clear row denominators, then run Bareiss on the
// resulting polynomial matrix.
template <class K>
std::size_t mat_rank(const Matrix<RatFun<K>>& m) {
    Matrix<Poly<K>> cleared(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Poly<K> l = Poly<K>::one();
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).den());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            RatFun<K> scaled = m(i, j) * RatFun<K>(l);
            cleared(i, j) = scaled.num();  // denominator is 1 by construction
        }
    }
    return detail::bareiss_rank<Poly<K>>(cleared, detail::exact_poly_div<K>);
}

// Fraction-free determinant of a square matrix over a field.
template <class S>
S determinant(Matrix<S> m) {
    if (m.rows() != m.cols()) throw error("determinant of a non-square matrix");
    S det = S(1);
    S prev = S(1);
    bool neg = false;
    std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m(sel, col).is_zero()) ++sel;
        if (sel == n) return S(0);
        if (sel != col) {
            m.swap_rows(sel, col);
            neg = !neg;
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            for (std::size_t j = col + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(col, col) - m(i, col) * m(col, j)) / prev;
            m(i, col) = S(0);
        }
        prev = m(col, col);
    }
    det = m(n - 1, n - 1);
    return neg ? -det : det;
}

// D with D*C = I_{cols(C)}, present iff C has full column rank.  The output
// is verified by multiplication before it is returned.
template <class S>
std::optional<Matrix<S>> solve_left_inverse(const Matrix<S>& c) {
    const std::size_t n = c.rows(), k = c.cols();
    if (k > n) return std::nullopt;
    // Solve C^T Z = I_k; then D = Z^T.
    Matrix<S> aug(k, n + k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = c(j, i);
        aug(i, n + i) = S(1);
    }
    std::vector<std::size_t> pivots = rref(aug);
    // consistency: no pivot may fall in the augmented block
    std::size_t rank = 0;
    for (auto p : pivots)
        if (p < n) ++rank;
    if (rank != k || pivots.size() != rank) return std::nullopt;
    Matrix<S> d(k, n);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t i = 0; i < k; ++i) d(i, pivots[r]) = aug(r, n + i);
    if (d * c != Matrix<S>::identity(k)) return std::nullopt;
    return d;
}

// Two-sided inverse of a square matrix over a field, if any.
template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto left = solve_left_inverse(m);
    if (!left) return std::nullopt;
    if (m * *left != Matrix<S>::identity(m.rows())) return std::nullopt;
    return left;
}

// Brute-force largest nonvanishing minor; test oracle for small matrices.
template <class S>
std::size_t rank_by_minors(const Matrix<S>& m) {
    std::size_t n = std::min(m.rows(), m.cols());
    auto choose_next = [](std::vector<std::size_t>& idx, std::size_t limit) {
        std::size_t k = idx.size();
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] + (k - i) <= limit) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    for (std::size_t size = n; size >= 1; --size) {
        std::vector<std::size_t> ri(size), ci(size);
        for (std::size_t i = 0; i < size; ++i) ri[i] = i;
        do {
            for (std::size_t i = 0; i < size; ++i) ci[i] = i;
            do {
                Matrix<S> sub(size, size);
                for (std::size_t i = 0; i < size; ++i)
                    for (std::size_t j = 0; j < size; ++j) sub(i, j) = m(ri[i], ci[j]);
                if (!determinant(sub).is_zero()) return size;
            } while (choose_next(ci, m.cols() - 1));
        } while (choose_next(ri, m.rows() - 1));
    }
    return 0;
}

}  // namespace brickwork

#endif
