/**
 * Dense row-major matrix and vector helpers over a single scalar type.
 */
#ifndef MFRAME_MATRIX_HPP
#define MFRAME_MATRIX_HPP

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "mframe/scalar.hpp"

namespace mframe {

template <Scalar T>
using Vector = std::vector<T>;

template <Scalar T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows)
    {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        Matrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows)
        {
            if (row.size() != c)
                throw std::invalid_argument("ragged matrix literal");
            std::size_t j = 0;
            for (const auto& x : row)
                m(i, j++) = x;
            ++i;
        }
        return m;
    }

    /// Stack the given vectors side by side; `rows` fixes the height when the list is empty.
    static Matrix from_columns(const std::vector<Vector<T>>& columns, std::size_t rows)
    {
        Matrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j)
        {
            if (columns[j].size() != rows)
                throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j)
    {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const T& operator()(std::size_t i, std::size_t j) const
    {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    Vector<T> column(std::size_t j) const
    {
        Vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    std::vector<Vector<T>> columns() const
    {
        std::vector<Vector<T>> out;
        out.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            out.push_back(column(j));
        return out;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& block, const T& sign = T(1))
    {
        if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_)
            throw std::out_of_range("block does not fit");
        for (std::size_t i = 0; i < block.rows(); ++i)
            for (std::size_t j = 0; j < block.cols(); ++j)
                (*this)(r0 + i, c0 + j) = sign * block(i, j);
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw std::out_of_range("block out of range");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    Matrix hstack(const Matrix& right) const
    {
        if (right.rows_ != rows_)
            throw std::invalid_argument("hstack: row count mismatch");
        Matrix m(rows_, cols_ + right.cols_);
        m.set_block(0, 0, *this);
        m.set_block(0, cols_, right);
        return m;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (x != T(0))
                return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product: inner dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
            {
                const T& aik = a(i, k);
                if (aik == T(0))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vector<T> operator*(const Matrix& a, const Vector<T>& x)
    {
        if (a.cols_ != x.size())
            throw std::invalid_argument("matrix-vector product: dimension mismatch");
        Vector<T> y(a.rows_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (x[k] != T(0))
                    y[i] += a(i, k) * x[k];
        return y;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix difference: shape mismatch");
        Matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            c.data_[i] = a.data_[i] - b.data_[i];
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix sum: shape mismatch");
        Matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            c.data_[i] = a.data_[i] + b.data_[i];
        return c;
    }

    /// Frobenius norm, evaluated in double precision.
    double norm() const
    {
        double s = 0.0;
        for (const auto& x : data_)
        {
            const double d = to_double(x);
            s += d * d;
        }
        return std::sqrt(s);
    }

    template <Scalar U>
    Matrix<U> cast() const
    {
        Matrix<U> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
            {
                if constexpr (std::is_same_v<T, U>)
                    m(i, j) = (*this)(i, j);
                else if constexpr (is_exact_v<T>)
                    m(i, j) = to_double((*this)(i, j));
                else
                    m(i, j) = Rational((*this)(i, j));
            }
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <Scalar T>
T dot(const Vector<T>& a, const Vector<T>& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

template <Scalar T>
double norm(const Vector<T>& v)
{
    double s = 0.0;
    for (const auto& x : v)
    {
        const double d = to_double(x);
        s += d * d;
    }
    return std::sqrt(s);
}

template <Scalar T>
Vector<T> subtract(const Vector<T>& a, const Vector<T>& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("subtract: dimension mismatch");
    Vector<T> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] - b[i];
    return c;
}

template <Scalar T>
bool is_zero(const Vector<T>& v)
{
    for (const auto& x : v)
        if (x != T(0))
            return false;
    return true;
}

} // namespace mframe

#endif
