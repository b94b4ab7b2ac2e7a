// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace so3dc {

using Complex = std::complex<double>;

//! Dense square matrix, row-major.
template<class T>
class SquareMatrix
{
  public:
    SquareMatrix() = default;
    explicit SquareMatrix(int dim, T fill = T{})
        : dim_(dim), data_(static_cast<std::size_t>(dim) * dim, fill)
    {}

    static SquareMatrix identity(int dim)
    {
        SquareMatrix m(dim);
        for (int i = 0; i < dim; ++i)
            m(i, i) = T{1};
        return m;
    }

    int dim() const { return dim_; }
    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * dim_ + j]; }
    T const& operator()(int i, int j) const
    {
        return data_[static_cast<std::size_t>(i) * dim_ + j];
    }
    std::vector<T> const& data() const { return data_; }

    SquareMatrix& operator+=(SquareMatrix const& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }
    SquareMatrix& operator-=(SquareMatrix const& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }
    SquareMatrix& operator*=(T s)
    {
        for (auto& v : data_)
            v *= s;
        return *this;
    }

    friend SquareMatrix operator+(SquareMatrix a, SquareMatrix const& b) { return a += b; }
    friend SquareMatrix operator-(SquareMatrix a, SquareMatrix const& b) { return a -= b; }
    friend SquareMatrix operator*(T s, SquareMatrix a) { return a *= s; }

    friend SquareMatrix operator*(SquareMatrix const& a, SquareMatrix const& b)
    {
        a.check_same(b);
        int const n = a.dim_;
        SquareMatrix c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
            {
                T const aik = a(i, k);
                for (int j = 0; j < n; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

  private:
    void check_same(SquareMatrix const& o) const
    {
        if (o.dim_ != dim_)
            throw std::invalid_argument("SquareMatrix: dimension mismatch");
    }

    int dim_ = 0;
    std::vector<T> data_;
};

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<Complex>;

inline ComplexMatrix adjoint(ComplexMatrix const& m)
{
    ComplexMatrix r(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            r(i, j) = std::conj(m(j, i));
    return r;
}

inline RealMatrix transpose(RealMatrix const& m)
{
    RealMatrix r(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            r(i, j) = m(j, i);
    return r;
}

template<class T>
double frobenius_norm(SquareMatrix<T> const& m)
{
    double s = 0;
    for (auto const& v : m.data())
        s += std::norm(v);
    return std::sqrt(s);
}

template<class T>
T trace(SquareMatrix<T> const& m)
{
    T t{};
    for (int i = 0; i < m.dim(); ++i)
        t += m(i, i);
    return t;
}

inline ComplexMatrix to_complex(RealMatrix const& m)
{
    ComplexMatrix r(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            r(i, j) = m(i, j);
    return r;
}

//! Hermitian part (m + m^dagger) / 2.
inline ComplexMatrix hermitian_part(ComplexMatrix const& m)
{
    ComplexMatrix r(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return r;
}

}  // namespace so3dc
