#pragma once

// Exterior algebra over an n-dimensional coframe (n <= 16), sparse storage
// keyed by bitmask multi-indices.  A key with bits {i1 < ... < ip} stands for
// e^{i1} ∧ ... ∧ e^{ip}.  Coefficients live in any ring-like type X.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecd/scalar.hpp"

namespace ecd {

using Mask = std::uint16_t;

class RepeatedIndex : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class DegreeUnderflow : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class NotDivisible : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline int popcount(Mask m) { return std::popcount(static_cast<unsigned>(m)); }
inline Mask bit(int i) { return static_cast<Mask>(1u << i); }
inline Mask full_mask(int n) { return static_cast<Mask>((1u << n) - 1u); }

inline std::vector<int> indices_of(Mask m) {
    std::vector<int> out;
    for (int i = 0; i < 16; ++i)
        if (m & bit(i)) out.push_back(i);
    return out;
}

inline Mask mask_of(const std::vector<int>& idx) {
    Mask m = 0;
    for (int i : idx) {
        if (m & bit(i)) throw RepeatedIndex("repeated index " + std::to_string(i));
        m |= bit(i);
    }
    return m;
}

/// Sign of e^I ∧ e^J relative to e^{I∪J}; 0 when I and J overlap.
inline int wedge_sign(Mask I, Mask J) {
    if (I & J) return 0;
    int swaps = 0;
    for (int j = 0; j < 16; ++j)
        if (J & bit(j)) swaps += popcount(static_cast<Mask>(I & ~full_mask(j + 1)));
    return (swaps & 1) ? -1 : 1;
}

/// ε(I) for an ordered index list: e^{I} ∧ e^{I^c} = ε(I) vol.
inline int shuffle_sign(const std::vector<int>& ordered, int n) {
    Mask m = mask_of(ordered);
    int inv = 0;
    for (std::size_t a = 0; a < ordered.size(); ++a)
        for (std::size_t b = a + 1; b < ordered.size(); ++b)
            if (ordered[a] > ordered[b]) ++inv;
    int s = (inv & 1) ? -1 : 1;
    return s * wedge_sign(m, static_cast<Mask>(full_mask(n) & ~m));
}

template <class X>
class Form {
public:
    using Coef = X;
    using Map = std::map<Mask, X>;

    Form() = default;
    Form(int dim, int degree) : dim_(dim), degree_(degree) {}

    static Form basis(int dim, Mask m, X c = X(1)) {
        Form f(dim, popcount(m));
        f.add(m, std::move(c));
        return f;
    }
    static Form generator(int dim, int i) { return basis(dim, bit(i)); }
    static Form scalar(int dim, X c) { return basis(dim, 0, std::move(c)); }
    static Form volume(int dim) { return basis(dim, full_mask(dim)); }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const Map& terms() const { return c_; }
    bool zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }

    X coef(Mask m) const {
        auto it = c_.find(m);
        return it == c_.end() ? X(0) : it->second;
    }

    void add(Mask m, const X& v) {
        if (popcount(m) != degree_)
            throw std::invalid_argument("multi-index degree does not match form degree");
        if (is_zero(v)) return;
        auto [it, fresh] = c_.try_emplace(m, v);
        if (!fresh) {
            it->second += v;
            if (is_zero(it->second)) c_.erase(it);
        }
    }

    Form& operator+=(const Form& o) {
        if (o.zero()) return *this;
        if (zero()) {
            degree_ = o.degree_;
            dim_ = o.dim_;
        }
        check_compatible(o);
        for (const auto& [m, v] : o.c_) add(m, v);
        return *this;
    }
    Form& operator-=(const Form& o) {
        if (o.zero()) return *this;
        if (zero()) {
            degree_ = o.degree_;
            dim_ = o.dim_;
        }
        check_compatible(o);
        for (const auto& [m, v] : o.c_) add(m, -v);
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator-(const Form& a) {
        Form r(a.dim_, a.degree_);
        for (const auto& [m, v] : a.c_) r.c_.emplace(m, -v);
        return r;
    }

    template <class F>
    auto map(F&& fn) const {
        using Y = std::decay_t<decltype(fn(std::declval<const X&>()))>;
        Form<Y> r(dim_, degree_);
        for (const auto& [m, v] : c_) r.add(m, fn(v));
        return r;
    }

    Form scaled(const X& s) const {
        Form r(dim_, degree_);
        if (is_zero(s)) return r;
        for (const auto& [m, v] : c_) r.add(m, v * s);
        return r;
    }

    friend bool operator==(const Form& a, const Form& b) {
        if (a.zero() && b.zero()) return true;
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

private:
    void check_compatible(const Form& o) const {
        if (o.dim_ != dim_ || o.degree_ != degree_)
            throw std::invalid_argument("adding forms of different degree or dimension");
    }

    int dim_ = kCoframeDim;
    int degree_ = 0;
    Map c_;
};

template <class Y, class X>
Form<Y> cast(const Form<X>& f) {
    return f.map([](const X& v) { return embed<Y>(v); });
}

template <class X, class S>
Form<common_coef_t<X, S>> operator*(const S& s, const Form<X>& f) {
    using Z = common_coef_t<X, S>;
    return cast<Z>(f).scaled(embed<Z>(s));
}

template <class X, class Y>
auto wedge(const Form<X>& a, const Form<Y>& b) {
    using Z = common_coef_t<X, Y>;
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge of forms on different spaces");
    Form<Z> r(a.dim(), a.degree() + b.degree());
    if (a.degree() + b.degree() > a.dim()) return r;
    for (const auto& [ma, va] : a.terms()) {
        for (const auto& [mb, vb] : b.terms()) {
            int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            Z prod = embed<Z>(va) * embed<Z>(vb);
            r.add(static_cast<Mask>(ma | mb), s > 0 ? prod : -prod);
        }
    }
    return r;
}

template <class X, class... Rest>
auto wedge(const Form<X>& a, const Rest&... rest) {
    if constexpr (sizeof...(rest) == 0)
        return a;
    else
        return wedge(a, wedge(rest...));
}

/// Contraction with the dual basis vector u_k.
template <class X>
Form<X> interior(int k, const Form<X>& a) {
    if (a.degree() < 1) throw DegreeUnderflow("contracting a 0-form");
    Form<X> r(a.dim(), a.degree() - 1);
    for (const auto& [m, v] : a.terms()) {
        if (!(m & bit(k))) continue;
        int below = popcount(static_cast<Mask>(m & full_mask(k)));
        r.add(static_cast<Mask>(m & ~bit(k)), (below & 1) ? -v : v);
    }
    return r;
}

/// Contraction with a vector field X = X^k u_k given by components.
template <class X, class V>
Form<common_coef_t<X, V>> interior(const std::vector<V>& vec, const Form<X>& a) {
    using Z = common_coef_t<X, V>;
    Form<Z> r(a.dim(), a.degree() - 1);
    if (a.degree() < 1) throw DegreeUnderflow("contracting a 0-form");
    for (int k = 0; k < static_cast<int>(vec.size()); ++k) {
        if (is_zero(vec[k])) continue;
        r += cast<Z>(interior(k, a)).scaled(embed<Z>(vec[k]));
    }
    return r;
}

/// Simple multivector u_{I1} ∧ ... ∧ u_{Ip} contracted as
/// i_{u_{Ip}} ⋯ i_{u_{I1}} α, i.e. the first factor acts first.
template <class X>
Form<X> interior(const std::vector<int>& ordered, const Form<X>& a) {
    if (static_cast<int>(ordered.size()) > a.degree())
        throw DegreeUnderflow("multivector degree exceeds form degree");
    mask_of(ordered);
    Form<X> r = a;
    for (int k : ordered) r = interior(k, r);
    return r;
}

/// Sparse multivector Σ X^I u_I over increasing multi-indices.
template <class X>
struct MultiVector {
    int dim = kCoframeDim;
    int degree = 0;
    std::map<Mask, X> c;

    void add(const std::vector<int>& ordered, const X& v) {
        Mask m = mask_of(ordered);
        int inv = 0;
        for (std::size_t a = 0; a < ordered.size(); ++a)
            for (std::size_t b = a + 1; b < ordered.size(); ++b)
                if (ordered[a] > ordered[b]) ++inv;
        c[m] += (inv & 1) ? -v : v;
        if (is_zero(c[m])) c.erase(m);
    }
};

template <class X>
Form<X> interior(const MultiVector<X>& mv, const Form<X>& a) {
    if (mv.degree > a.degree()) throw DegreeUnderflow("multivector degree exceeds form degree");
    Form<X> r(a.dim(), a.degree() - mv.degree);
    for (const auto& [m, v] : mv.c) r += interior(indices_of(m), a).scaled(v);
    return r;
}

/// e^(n-p)_I := u_I ⌟ vol for an ordered index list I.
template <class X>
Form<X> dual_form(const std::vector<int>& ordered, int n) {
    for (int i : ordered)
        if (i < 0 || i >= n) throw std::out_of_range("dual index out of range");
    mask_of(ordered);
    return interior(ordered, Form<X>::volume(n));
}

/// Exterior derivative data: de^k for each generator, as 2-forms.
template <class X>
using GeneratorDifferentials = std::vector<Form<X>>;

/// d of a constant-coefficient form from generator differentials via the
/// graded Leibniz rule.
template <class X, class Y>
auto d_constant(const Form<X>& f, const GeneratorDifferentials<Y>& dgen) {
    using Z = common_coef_t<X, Y>;
    Form<Z> r(f.dim(), f.degree() + 1);
    for (const auto& [m, v] : f.terms()) {
        int pos = 0;
        for (int k : indices_of(m)) {
            Mask before = static_cast<Mask>(m & full_mask(k));
            Mask after = static_cast<Mask>(m & ~full_mask(k + 1));
            Form<Z> piece = cast<Z>(Form<Y>::basis(f.dim(), before, Y(1)));
            piece = wedge(piece, dgen[k]);
            piece = wedge(piece, Form<Y>::basis(f.dim(), after, Y(1)));
            Z cv = embed<Z>(v);
            r += (pos & 1) ? piece.scaled(-cv) : piece.scaled(cv);
            ++pos;
        }
    }
    return r;
}

/// Keeps only the multi-indices disjoint from `drop` (projection mod the
/// ideal generated by the e^k, k ∈ drop).
template <class X>
Form<X> project_out(const Form<X>& f, Mask drop) {
    Form<X> r(f.dim(), f.degree());
    for (const auto& [m, v] : f.terms())
        if (!(m & drop)) r.add(m, v);
    return r;
}

/// β with β ∧ e^F = f; throws NotDivisible if some term lacks e^F.
template <class X>
Form<X> strip(const Form<X>& f, Mask factor) {
    Form<X> r(f.dim(), f.degree() - popcount(factor));
    for (const auto& [m, v] : f.terms()) {
        if ((m & factor) != factor) throw NotDivisible("term does not contain the factor");
        Mask rest = static_cast<Mask>(m & ~factor);
        int s = wedge_sign(rest, factor);
        r.add(rest, s > 0 ? v : -v);
    }
    return r;
}

/// Re-embeds a form whose indices all lie below n into dimension n.
template <class X>
Form<X> restrict_dim(const Form<X>& f, int n) {
    Form<X> r(n, f.degree());
    for (const auto& [m, v] : f.terms()) {
        if (m & ~full_mask(n)) throw std::invalid_argument("form has legs outside the target range");
        r.add(m, v);
    }
    return r;
}

template <class X>
Form<X> extend_dim(const Form<X>& f, int n) {
    Form<X> r(n, f.degree());
    for (const auto& [m, v] : f.terms()) r.add(m, v);
    return r;
}

template <class X>
double max_abs(const Form<X>& f) {
    double best = 0;
    for (const auto& [m, v] : f.terms()) {
        (void)m;
        if constexpr (is_jet<X>::value)
            best = std::max(best, abs_value(v.value));
        else
            best = std::max(best, abs_value(v));
    }
    return best;
}

// Rendering "c · ϖ^i ∧ ϖ^j + ..." and parsing it back.
std::string render(const Form<Rational>& f, const std::string& symbol = "ϖ");
Form<Rational> parse_form(const std::string& text, int dim, int degree, const std::string& symbol = "ϖ");

}  // namespace ecd
