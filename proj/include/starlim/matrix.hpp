#pragma once

// Dense exact matrices over a field object. Sizes in this project stay at
// or below 64, so plain O(n^3) algorithms over exact arithmetic are both
// fast enough and free of rounding questions.

#include <cstddef>
#include <optional>
#include <vector>

#include "field.hpp"

namespace starlim {

template <class F>
class Matrix {
  public:
    using Elem = typename F::Elem;

    Matrix() = default;
    Matrix(const F& field, std::size_t rows, std::size_t cols)
        : f_(field), rows_(rows), cols_(cols), d_(rows * cols, field.zero()) {}

    static Matrix identity(const F& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }

    static Matrix unit(const F& field, std::size_t n, std::size_t i, std::size_t j) {
        Matrix m(field, n, n);
        m.at(i, j) = field.one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const F& field() const { return f_; }

    Elem& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    const Elem& at(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t k = 0; k < d_.size(); ++k)
            if (!f_.eq(d_[k], o.d_[k])) return false;
        return true;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix m(f_, rows_, cols_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = f_.add(d_[k], o.d_[k]);
        return m;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix m(f_, rows_, cols_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = f_.sub(d_[k], o.d_[k]);
        return m;
    }

    Matrix operator-() const {
        Matrix m(f_, rows_, cols_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = f_.neg(d_[k]);
        return m;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix m(f_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Elem& a = at(i, k);
                if (f_.is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    m.at(i, j) = f_.add(m.at(i, j), f_.mul(a, o.at(k, j)));
            }
        return m;
    }

    Matrix scaled(const Elem& c) const {
        Matrix m(f_, rows_, cols_);
        for (std::size_t k = 0; k < d_.size(); ++k) m.d_[k] = f_.mul(c, d_[k]);
        return m;
    }

    Matrix transpose() const {
        Matrix m(f_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    bool is_zero() const {
        for (const auto& v : d_)
            if (!f_.is_zero(v)) return false;
        return true;
    }

    bool is_symmetric() const { return rows_ == cols_ && *this == transpose(); }
    bool is_skew() const { return rows_ == cols_ && *this == -transpose(); }

    bool zero_diagonal() const {
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
            if (!f_.is_zero(at(i, i))) return false;
        return true;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
            throw std::invalid_argument("block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
        if (r0 + h > rows_ || c0 + w > cols_) throw std::invalid_argument("block out of range");
        Matrix m(f_, h, w);
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < w; ++j) m.at(i, j) = at(r0 + i, c0 + j);
        return m;
    }

    std::size_t rank() const {
        Matrix m = *this;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
            std::size_t piv = rank;
            while (piv < rows_ && f_.is_zero(m.at(piv, col))) ++piv;
            if (piv == rows_) continue;
            m.swap_rows(piv, rank);
            Elem inv = f_.inv(m.at(rank, col));
            for (std::size_t j = col; j < cols_; ++j) m.at(rank, j) = f_.mul(inv, m.at(rank, j));
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == rank || f_.is_zero(m.at(i, col))) continue;
                Elem c = m.at(i, col);
                for (std::size_t j = col; j < cols_; ++j)
                    m.at(i, j) = f_.sub(m.at(i, j), f_.mul(c, m.at(rank, j)));
            }
            ++rank;
        }
        return rank;
    }

    std::optional<Matrix> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        Matrix m = *this;
        Matrix inv = identity(f_, rows_);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t piv = col;
            while (piv < rows_ && f_.is_zero(m.at(piv, col))) ++piv;
            if (piv == rows_) return std::nullopt;
            m.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            Elem ic = f_.inv(m.at(col, col));
            for (std::size_t j = 0; j < cols_; ++j) {
                m.at(col, j) = f_.mul(ic, m.at(col, j));
                inv.at(col, j) = f_.mul(ic, inv.at(col, j));
            }
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == col || f_.is_zero(m.at(i, col))) continue;
                Elem c = m.at(i, col);
                for (std::size_t j = 0; j < cols_; ++j) {
                    m.at(i, j) = f_.sub(m.at(i, j), f_.mul(c, m.at(col, j)));
                    inv.at(i, j) = f_.sub(inv.at(i, j), f_.mul(c, inv.at(col, j)));
                }
            }
        }
        return inv;
    }

    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

    // Basis of the right kernel {v : Av = 0} as columns.
    std::vector<std::vector<Elem>> kernel_basis() const {
        Matrix m = *this;
        std::vector<std::size_t> pivot_col;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
            std::size_t piv = rank;
            while (piv < rows_ && f_.is_zero(m.at(piv, col))) ++piv;
            if (piv == rows_) continue;
            m.swap_rows(piv, rank);
            Elem inv = f_.inv(m.at(rank, col));
            for (std::size_t j = col; j < cols_; ++j) m.at(rank, j) = f_.mul(inv, m.at(rank, j));
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == rank || f_.is_zero(m.at(i, col))) continue;
                Elem c = m.at(i, col);
                for (std::size_t j = col; j < cols_; ++j)
                    m.at(i, j) = f_.sub(m.at(i, j), f_.mul(c, m.at(rank, j)));
            }
            pivot_col.push_back(col);
            ++rank;
        }
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivot_col) is_pivot[c] = true;
        std::vector<std::vector<Elem>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<Elem> v(cols_, f_.zero());
            v[free] = f_.one();
            for (std::size_t r = 0; r < pivot_col.size(); ++r)
                v[pivot_col[r]] = f_.neg(m.at(r, free));
            basis.push_back(std::move(v));
        }
        return basis;
    }

  private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    F f_{};
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elem> d_;
};

}  // namespace starlim
