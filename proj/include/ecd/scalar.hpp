#pragma once

// Scalar types shared by every module.
//
//   Rational    exact arbitrary-precision rational (GMP backed)
//   Complex<T>  Gaussian numbers over a real field T (Rational or double)
//   Jet<S>      first-order jet: a value plus its derivatives along the ten
//               coframe-dual directions, combined with the product rule
//
// Everything downstream is templated on the real scalar T, so the same code
// path runs exactly (T = Rational) or in floating point (T = double).

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace ecd {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Number of coframe generators on the total space.
inline constexpr int kCoframeDim = 10;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "7", "-3/4", "0.125", "1.5e-2" exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

template <class T>
T from_rational(const Rational& r) {
    if constexpr (std::is_same_v<T, Rational>)
        return r;
    else
        return r.template convert_to<T>();
}

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }
inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }
inline Rational conj(const Rational& r) { return r; }
inline double abs_value(const Rational& r) { return std::fabs(to_double(r)); }
inline double abs_value(double x) { return std::fabs(x); }

// ---------------------------------------------------------------------------

template <class T>
struct Complex {
    T re{};
    T im{};

    Complex() = default;
    Complex(T r) : re(std::move(r)) {}  // NOLINT: implicit real embedding
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r) {}  // NOLINT

    static Complex i() { return {T(0), T(1)}; }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }
    Complex& operator/=(const Complex& o) { return *this = *this / o; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        if (is_zero(a.im) && is_zero(b.im)) return {a.re * b.re, T(0)};
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        T den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

template <class T> Complex<T> conj(const Complex<T>& z) { return {z.re, -z.im}; }
template <class T> T real(const Complex<T>& z) { return z.re; }
template <class T> T imag(const Complex<T>& z) { return z.im; }
template <class T> T abs2(const Complex<T>& z) { return z.re * z.re + z.im * z.im; }
template <class T> bool is_zero(const Complex<T>& z) { return is_zero(z.re) && is_zero(z.im); }
template <class T> double abs_value(const Complex<T>& z) {
    return std::hypot(to_double(z.re), to_double(z.im));
}

template <class T>
std::string to_string(const Complex<T>& z) {
    auto part = [](const T& x) {
        if constexpr (std::is_same_v<T, Rational>) return to_string(x);
        else return std::to_string(x);
    };
    if (is_zero(z.im)) return part(z.re);
    if (is_zero(z.re)) return part(z.im) + "i";
    return "(" + part(z.re) + (z.im < 0 ? "" : "+") + part(z.im) + "i)";
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Complex<T>& z) { return os << to_string(z); }

template <class T> struct is_complex : std::false_type {};
template <class T> struct is_complex<Complex<T>> : std::true_type {};

// ---------------------------------------------------------------------------

/// Value plus partial derivatives along the coframe-dual vector fields, so
/// that d f = (∂_A f) ϖ^A.  An empty gradient means "all partials vanish".
template <class S>
struct Jet {
    S value{};
    std::vector<S> grad;  // empty or kCoframeDim entries

    Jet() = default;
    Jet(S v) : value(std::move(v)) {}  // NOLINT: constants embed as jets
    Jet(int v) : value(v) {}           // NOLINT
    Jet(S v, std::vector<S> g) : value(std::move(v)), grad(std::move(g)) {}

    bool constant() const { return grad.empty(); }
    S partial(int a) const { return grad.empty() ? S(0) : grad[static_cast<std::size_t>(a)]; }

    Jet& operator+=(const Jet& o) {
        value += o.value;
        if (!o.grad.empty()) {
            if (grad.empty()) grad.assign(kCoframeDim, S(0));
            for (int k = 0; k < kCoframeDim; ++k) grad[k] += o.grad[k];
        }
        return *this;
    }
    Jet& operator-=(const Jet& o) { return *this += -o; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(const Jet& a) {
        Jet r(-a.value);
        if (!a.grad.empty()) {
            r.grad.reserve(kCoframeDim);
            for (const auto& g : a.grad) r.grad.push_back(-g);
        }
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.value * b.value);
        if (a.grad.empty() && b.grad.empty()) return r;
        r.grad.assign(kCoframeDim, S(0));
        for (int k = 0; k < kCoframeDim; ++k) {
            if (!a.grad.empty()) r.grad[k] += a.grad[k] * b.value;
            if (!b.grad.empty()) r.grad[k] += a.value * b.grad[k];
        }
        return r;
    }
    friend bool operator==(const Jet& a, const Jet& b) {
        if (a.value != b.value) return false;
        for (int k = 0; k < kCoframeDim; ++k)
            if (a.partial(k) != b.partial(k)) return false;
        return true;
    }
};

template <class S> Jet<S> conj(const Jet<S>& j) {
    Jet<S> r(conj(j.value));
    for (const auto& g : j.grad) r.grad.push_back(conj(g));
    return r;
}
template <class S> bool is_zero(const Jet<S>& j) {
    if (!is_zero(j.value)) return false;
    for (const auto& g : j.grad)
        if (!is_zero(g)) return false;
    return true;
}

template <class S> struct is_jet : std::false_type {};
template <class S> struct is_jet<Jet<S>> : std::true_type {};

/// Real scalar underlying a coefficient type.
template <class X> struct real_of { using type = X; };
template <class T> struct real_of<Complex<T>> { using type = T; };
template <class S> struct real_of<Jet<S>> { using type = typename real_of<S>::type; };
template <class X> using real_of_t = typename real_of<X>::type;

}  // namespace ecd

namespace ecd {

/// Converts between coefficient types along the chain
/// real -> Complex<real> -> Jet<...>.  Also real Rational -> double.
template <class Y, class X>
Y embed(const X& x) {
    if constexpr (std::is_same_v<Y, X>) {
        return x;
    } else if constexpr (is_jet<Y>::value) {
        using S = decltype(Y{}.value);
        if constexpr (is_jet<X>::value) {
            Y r(embed<S>(x.value));
            for (const auto& g : x.grad) r.grad.push_back(embed<S>(g));
            return r;
        } else {
            return Y(embed<S>(x));
        }
    } else if constexpr (is_complex<Y>::value) {
        using R = decltype(Y{}.re);
        if constexpr (is_complex<X>::value)
            return Y(embed<R>(x.re), embed<R>(x.im));
        else
            return Y(embed<R>(x));
    } else if constexpr (std::is_same_v<X, Rational>) {
        return from_rational<Y>(x);
    } else {
        return Y(x);
    }
}

template <class X> struct coef_rank : std::integral_constant<int, 0> {};
template <class T> struct coef_rank<Complex<T>> : std::integral_constant<int, 1> {};
template <class S> struct coef_rank<Jet<S>> : std::integral_constant<int, 2 + coef_rank<S>::value> {};

/// The richer of two coefficient types; both must share the real field.
template <class X, class Y>
using common_coef_t = std::conditional_t<(coef_rank<X>::value >= coef_rank<Y>::value), X, Y>;

}  // namespace ecd
