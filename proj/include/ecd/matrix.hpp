#pragma once

// Eigen glue for the exact scalar types.

#include <Eigen/Core>

#include "ecd/scalar.hpp"

namespace Eigen {

// Complex<T> is declared non-complex to Eigen: conjugation is done
// explicitly through ecd::dagger so that Eigen never needs std::conj.
template <class T>
struct NumTraits<ecd::Complex<T>> : GenericNumTraits<ecd::Complex<T>> {
    using Real = ecd::Complex<T>;
    using NonInteger = ecd::Complex<T>;
    using Literal = ecd::Complex<T>;
    using Nested = ecd::Complex<T>;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 8,
        MulCost = 16
    };
    static Real epsilon() { return Real(0); }
    static Real dummy_precision() { return Real(0); }
    static int digits10() { return 0; }
};

template <>
struct NumTraits<ecd::Rational> : GenericNumTraits<ecd::Rational> {
    using Real = ecd::Rational;
    using NonInteger = ecd::Rational;
    using Literal = ecd::Rational;
    using Nested = ecd::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 8,
        MulCost = 16
    };
    static Real epsilon() { return Real(0); }
    static Real dummy_precision() { return Real(0); }
    static int digits10() { return 0; }
};

}  // namespace Eigen

namespace ecd {

template <class T> using CMat = Eigen::Matrix<Complex<T>, Eigen::Dynamic, Eigen::Dynamic>;
template <class T> using CVec = Eigen::Matrix<Complex<T>, Eigen::Dynamic, 1>;
template <class T> using CMat4 = Eigen::Matrix<Complex<T>, 4, 4>;
template <class T> using CVec4 = Eigen::Matrix<Complex<T>, 4, 1>;
using QMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

template <class Derived>
auto dagger(const Eigen::MatrixBase<Derived>& m) {
    using S = typename Derived::Scalar;
    Eigen::Matrix<S, Derived::ColsAtCompileTime, Derived::RowsAtCompileTime> r(m.cols(), m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(j, i) = conj(m(i, j));
    return r;
}

/// Plain triple-loop product; avoids Eigen's blocked kernels for exact types.
template <class A, class B>
auto matmul(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    using S = typename A::Scalar;
    Eigen::Matrix<S, A::RowsAtCompileTime, B::ColsAtCompileTime> r(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            S acc(0);
            for (Eigen::Index k = 0; k < a.cols(); ++k)
                if (!is_zero(a(i, k)) && !is_zero(b(k, j))) acc += a(i, k) * b(k, j);
            r(i, j) = acc;
        }
    return r;
}

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j))) return false;
    return true;
}

template <class T, class Derived>
auto embed_matrix(const Eigen::MatrixBase<Derived>& m) {
    using S = typename Derived::Scalar;
    using Y = std::conditional_t<is_complex<S>::value, Complex<T>, T>;
    Eigen::Matrix<Y, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = embed<Y>(m(i, j));
    return r;
}

}  // namespace ecd
