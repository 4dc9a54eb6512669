#pragma once

// Scenes: a coframed 10-manifold at one point, with structure functions
// dϖ^A = ½ F^A_BC ϖ^B ∧ ϖ^C and the physical fields as first-order jets.

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "ecd/clifford.hpp"
#include "ecd/exterior.hpp"
#include "ecd/kappa.hpp"
#include "ecd/liealg.hpp"
#include "ecd/matrix.hpp"

namespace ecd {

enum class Mode { Constant, Jet1 };

class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class MissingJet : public LoadError {
public:
    using LoadError::LoadError;
};
class ModeUnsupported : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

template <class T> using CJet = Jet<Complex<T>>;
template <class T> using Cube = std::array<std::array<std::array<T, kCoframeDim>, kCoframeDim>, kCoframeDim>;

template <class T>
struct SceneT {
    std::string name;
    Signature sig;
    Mode mode = Mode::Constant;
    Cube<T> F{};                                   // F[A][B][C] = F^A_BC
    std::array<CJet<T>, 4> psi{};                  // Ψ^α
    Cube<CJet<T>> P{};                             // P[A][B][C] = P^{BC}_A
    std::array<std::array<CJet<T>, 4>, kRot> K{};  // K[i][α] = K^{α i}
    T mass{};
};

using Scene = SceneT<Rational>;

/// Loads the text scene format (see scenes/README in the repository).
Scene parse_scene(const std::string& text, const std::string& name);
Scene load_scene(const std::string& path);

/// F = −c (the flat group model).
Cube<Rational> maurer_cartan_structure(const LieAlgebraSpec& spec);
/// F = −c' with c' the brackets of so(5) (η5 = diag(η, s)) split as
/// so(4) ⊕ R^4, P_a = M_(a4).  c' agrees with c except on [P, P].
Cube<Rational> so5_structure(const LieAlgebraSpec& spec, int s);

/// Programmatic scene with F = −c and all fields zero.
Scene flat_scene(int p, int q, const std::string& name = "flat");

template <class T>
SceneT<T> convert_scene(const Scene& s) {
    SceneT<T> r;
    r.name = s.name;
    r.sig = s.sig;
    r.mode = s.mode;
    for (int A = 0; A < kCoframeDim; ++A)
        for (int B = 0; B < kCoframeDim; ++B)
            for (int C = 0; C < kCoframeDim; ++C) {
                r.F[A][B][C] = embed<T>(s.F[A][B][C]);
                r.P[A][B][C] = embed<CJet<T>>(s.P[A][B][C]);
            }
    for (int a = 0; a < 4; ++a) r.psi[a] = embed<CJet<T>>(s.psi[a]);
    for (int i = 0; i < kRot; ++i)
        for (int a = 0; a < 4; ++a) r.K[i][a] = embed<CJet<T>>(s.K[i][a]);
    r.mass = embed<T>(s.mass);
    return r;
}

// ---------------------------------------------------------------------------
// Spinor-valued forms: four component forms.  The same container holds a
// column spinor (Ψ) or a row spinor (Ψ̄); which one is meant is fixed by the
// operations applied to it.

template <class X> using SpinorForm = std::array<Form<X>, 4>;

template <class X>
SpinorForm<X> spinor_zero(int dim, int degree) {
    return {Form<X>(dim, degree), Form<X>(dim, degree), Form<X>(dim, degree), Form<X>(dim, degree)};
}

template <class X>
SpinorForm<X> operator+(SpinorForm<X> a, const SpinorForm<X>& b) {
    for (int k = 0; k < 4; ++k) a[k] += b[k];
    return a;
}
template <class X>
SpinorForm<X> operator-(SpinorForm<X> a, const SpinorForm<X>& b) {
    for (int k = 0; k < 4; ++k) a[k] -= b[k];
    return a;
}
template <class X, class S>
SpinorForm<common_coef_t<X, S>> scale(const SpinorForm<X>& a, const S& s) {
    using Z = common_coef_t<X, S>;
    SpinorForm<Z> r;
    for (int k = 0; k < 4; ++k) r[k] = cast<Z>(a[k]).scaled(embed<Z>(s));
    return r;
}

/// M ψ for a column spinor form.
template <class X, class T>
SpinorForm<common_coef_t<X, Complex<T>>> mat_apply(const CMat4<T>& m, const SpinorForm<X>& s) {
    using Z = common_coef_t<X, Complex<T>>;
    SpinorForm<Z> r = spinor_zero<Z>(s[0].dim(), s[0].degree());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!is_zero(m(i, j))) r[i] += cast<Z>(s[j]).scaled(embed<Z>(m(i, j)));
    return r;
}

/// ψ̄ M for a row spinor form.
template <class X, class T>
SpinorForm<common_coef_t<X, Complex<T>>> mat_apply_right(const SpinorForm<X>& s, const CMat4<T>& m) {
    using Z = common_coef_t<X, Complex<T>>;
    SpinorForm<Z> r = spinor_zero<Z>(s[0].dim(), s[0].degree());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!is_zero(m(i, j))) r[j] += cast<Z>(s[i]).scaled(embed<Z>(m(i, j)));
    return r;
}

/// Σ_α row_α ∧ col_α.
template <class X, class Y>
auto contract(const SpinorForm<X>& row, const SpinorForm<Y>& col) {
    auto r = wedge(row[0], col[0]);
    for (int k = 1; k < 4; ++k) r += wedge(row[k], col[k]);
    return r;
}

template <class X, class Y>
auto wedge_left(const Form<Y>& f, const SpinorForm<X>& s) {
    using Z = common_coef_t<X, Y>;
    SpinorForm<Z> r;
    for (int k = 0; k < 4; ++k) r[k] = wedge(f, s[k]);
    return r;
}
template <class X, class Y>
auto wedge_right(const SpinorForm<X>& s, const Form<Y>& f) {
    using Z = common_coef_t<X, Y>;
    SpinorForm<Z> r;
    for (int k = 0; k < 4; ++k) r[k] = wedge(s[k], f);
    return r;
}

/// Dirac adjoint of a column spinor form: (ψ̄)_k = Σ_j conj(ψ_j) B_jk.
template <class X, class T>
SpinorForm<common_coef_t<X, Complex<T>>> bar(const SpinorForm<X>& s, const CMat4<T>& B) {
    SpinorForm<X> c;
    for (int k = 0; k < 4; ++k) c[k] = s[k].map([](const X& v) { return conj(v); });
    return mat_apply_right(c, B);
}

template <class S>
Form<S> values(const Form<Jet<S>>& f) {
    return f.map([](const Jet<S>& j) { return j.value; });
}
template <class S>
SpinorForm<S> values(const SpinorForm<Jet<S>>& f) {
    return {values(f[0]), values(f[1]), values(f[2]), values(f[3])};
}
template <class X>
Form<X> values(const Form<X>& f) requires(!is_jet<X>::value) {
    return f;
}
template <class X>
SpinorForm<X> values(const SpinorForm<X>& f) requires(!is_jet<X>::value) {
    return f;
}

template <class X>
bool is_horizontal(const Form<X>& f) {
    for (const auto& [m, v] : f.terms())
        if (m & kRotMask) return false;
    return true;
}
template <class X>
bool is_zero(const SpinorForm<X>& s) {
    for (const auto& f : s)
        if (!f.zero()) return false;
    return true;
}

template <class X> struct strip_jet { using type = X; };
template <class S> struct strip_jet<Jet<S>> { using type = S; };
template <class X> using strip_jet_t = typename strip_jet<X>::type;

// ---------------------------------------------------------------------------

/// Per-evaluation differential context.  Holds the structure functions in
/// the working scalar T and caches d(e^I).  Not shared between threads.
template <class T>
class Geometry {
public:
    using C = Complex<T>;

    Geometry(const LieAlgebraSpec& spec, const Cube<T>& F) : spec_(spec), F_(F) {
        for (int A = 0; A < kCoframeDim; ++A)
            for (int B = 0; B < kCoframeDim; ++B)
                for (int Cc = 0; Cc < kCoframeDim; ++Cc) c_[A][B][Cc] = embed<T>(spec.c[A][B][Cc]);
        for (int A = 0; A < kCoframeDim; ++A) {
            Form<T> f(kCoframeDim, 2);
            for (int B = 0; B < kCoframeDim; ++B)
                for (int Cc = B + 1; Cc < kCoframeDim; ++Cc) f.add(static_cast<Mask>(bit(B) | bit(Cc)), F_[A][B][Cc]);
            dgen_.push_back(f);
        }
    }

    const LieAlgebraSpec& spec() const { return spec_; }
    const T& F(int A, int B, int Cc) const { return F_[A][B][Cc]; }
    const T& c(int A, int B, int Cc) const { return c_[A][B][Cc]; }

    Form<T> gen(int A) const { return Form<T>::generator(kCoframeDim, A); }
    const Form<T>& dgen(int A) const { return dgen_[A]; }

    /// d(e^I) for the basis form with multi-index mask m.
    const Form<T>& d_basis(Mask m) const {
        auto it = dcache_.find(m);
        if (it != dcache_.end()) return it->second;
        Form<T> r = d_constant(Form<T>::basis(kCoframeDim, m, T(1)), dgen_);
        return dcache_.emplace(m, std::move(r)).first->second;
    }

    /// ϖ^(10−k)_I for an ordered index list.
    const Form<T>& dual(const std::vector<int>& I) const {
        auto it = duals_.find(I);
        if (it != duals_.end()) return it->second;
        return duals_.emplace(I, dual_form<T>(I, kCoframeDim)).first->second;
    }
    const Form<T>& vol() const { return dual({}); }

    /// Exterior derivative.  Jet coefficients contribute ∂_A f ϖ^A ∧ e^I.
    template <class X>
    Form<strip_jet_t<X>> d(const Form<X>& f) const {
        using Y = strip_jet_t<X>;
        Form<Y> r(f.dim(), f.degree() + 1);
        for (const auto& [m, v] : f.terms()) {
            Y val;
            if constexpr (is_jet<X>::value) {
                val = v.value;
                if (!v.grad.empty())
                    for (int A = 0; A < kCoframeDim; ++A) {
                        if (is_zero(v.grad[A]) || (m & bit(A))) continue;
                        int s = wedge_sign(bit(A), m);
                        r.add(static_cast<Mask>(m | bit(A)), s > 0 ? v.grad[A] : -v.grad[A]);
                    }
            } else {
                val = v;
            }
            if (is_zero(val)) continue;
            for (const auto& [dm, dv] : d_basis(m).terms()) r.add(dm, embed<Y>(dv) * val);
        }
        return r;
    }

    /// Ω^A = dϖ^A + ½ c^A_BC ϖ^B ∧ ϖ^C.
    Form<T> curvature(int A) const {
        Form<T> f(kCoframeDim, 2);
        for (int B = 0; B < kCoframeDim; ++B)
            for (int Cc = B + 1; Cc < kCoframeDim; ++Cc)
                f.add(static_cast<Mask>(bit(B) | bit(Cc)), F_[A][B][Cc] + c_[A][B][Cc]);
        return f;
    }

    // Real-valued forms only meet real modules; anything else is a misuse.
    template <class Y>
    static Y module_coef(const Complex<Rational>& z) {
        if constexpr (is_complex<Y>::value || is_jet<Y>::value) {
            return embed<Y>(z);
        } else {
            if (!is_zero(z.im)) throw DimensionMismatch("complex module acting on real forms");
            return embed<Y>(z.re);
        }
    }

    /// Covariant differential on a module-valued form.  With full = false
    /// only the rotation block ω acts (d^ω); with full = true every ϖ^A acts
    /// through its generator (d^ϖ, for 𝔤-modules).
    template <class X>
    auto covariant_d(const Representation& rep, const std::vector<Form<X>>& comps, bool full = false) const {
        using Y = strip_jet_t<X>;
        if (static_cast<int>(comps.size()) != rep.dim) throw DimensionMismatch("component count does not match module");
        std::vector<Form<Y>> out;
        for (const auto& f : comps) out.push_back(d(f));
        for (int A = full ? 0 : kTrans; A < kCoframeDim; ++A) {
            const auto& g = rep.gen[A];
            for (int i = 0; i < rep.dim; ++i)
                for (int j = 0; j < rep.dim; ++j) {
                    if (is_zero(g(i, j))) continue;
                    Form<Y> v = cast<Y>(values(comps[j]));
                    out[i] += cast<Y>(wedge(gen(A), v)).scaled(module_coef<Y>(g(i, j)));
                }
        }
        return out;
    }

    /// d^ω on a column spinor form: dβ + ω^i ∧ σ_i β.
    template <class X>
    SpinorForm<strip_jet_t<X>> dw_spinor(const SpinorForm<X>& s, const std::array<CMat4<T>, kRot>& sigma) const {
        using Y = strip_jet_t<X>;
        SpinorForm<Y> r{d(s[0]), d(s[1]), d(s[2]), d(s[3])};
        SpinorForm<Y> v = values(s);
        for (int i = 0; i < kRot; ++i) r = r + wedge_left(gen(kTrans + i), mat_apply(sigma[i], v));
        return r;
    }

    /// d^ω on a row spinor form: dβ̄ − ω^i ∧ β̄ σ_i.
    template <class X>
    SpinorForm<strip_jet_t<X>> dw_cospinor(const SpinorForm<X>& s, const std::array<CMat4<T>, kRot>& sigma) const {
        using Y = strip_jet_t<X>;
        SpinorForm<Y> r{d(s[0]), d(s[1]), d(s[2]), d(s[3])};
        SpinorForm<Y> v = values(s);
        for (int i = 0; i < kRot; ++i) r = r - wedge_left(gen(kTrans + i), mat_apply_right(v, sigma[i]));
        return r;
    }

    /// Lie derivative along the constant vector field u_k on a form with
    /// constant coefficients: L = i d + d i.
    template <class X>
    Form<X> lie(int k, const Form<X>& f) const {
        Form<X> r = interior(k, d(f));
        if (f.degree() > 0) r += d(interior(k, f));
        return r;
    }

private:
    const LieAlgebraSpec& spec_;
    Cube<T> F_;
    Cube<T> c_{};
    std::vector<Form<T>> dgen_;
    mutable std::map<Mask, Form<T>> dcache_;
    mutable std::map<std::vector<int>, Form<T>> duals_;
};

/// Gamma system in the working scalar.
template <class T>
struct GammaT {
    std::array<CMat4<T>, 4> gamma;
    std::array<CMat4<T>, 4> gamma_lower;
    CMat4<T> B;
    std::array<CMat4<T>, kRot> sigma;

    explicit GammaT(const GammaSystem& g) {
        for (int a = 0; a < 4; ++a) {
            gamma[a] = embed_matrix<T>(g.gamma[a]);
            gamma_lower[a] = embed_matrix<T>(g.gamma_lower[a]);
        }
        B = embed_matrix<T>(g.B);
        for (int i = 0; i < kRot; ++i) sigma[i] = embed_matrix<T>(g.sigma[i]);
    }
};

// ---------------------------------------------------------------------------
// Verdicts

struct CurvatureResult {
    std::array<Form<Rational>, kCoframeDim> Omega;
    bool gfb = false;
    // Omega_bc[A][b][c] with Ω^A = ½ Ω^A_bc α^b ∧ α^c (filled when gfb)
    std::array<std::array<std::array<Rational, 4>, 4>, kCoframeDim> Omega_bc{};
};

CurvatureResult curvature_torsion(const LieAlgebraSpec& spec, const Scene& scene);

/// Compares [ξ̄, ζ̄] computed from the structure functions with the lift of
/// [ξ, ζ] for every rotation ξ and basis ζ.  CONSTANT scenes only.
bool induced_action_check(const LieAlgebraSpec& spec, const Scene& scene);

struct EquivarianceResult {
    bool equivariant = false;
    // S[α][a] with d^ω Ψ^α = S^α_a α^a (filled when equivariant)
    std::array<std::array<Complex<Rational>, 4>, 4> S{};
    SpinorForm<Complex<Rational>> dw;
};

EquivarianceResult check_equivariance(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene,
                                      const std::array<CJet<Rational>, 4>& field);

/// Spinor-valued 0-form from jet components.
template <class T>
SpinorForm<CJet<T>> spinor_field(const std::array<CJet<T>, 4>& f) {
    SpinorForm<CJet<T>> s;
    for (int k = 0; k < 4; ++k) s[k] = Form<CJet<T>>::scalar(kCoframeDim, f[k]);
    return s;
}

/// Jet whose rotation derivatives make d^ω of the field horizontal:
/// ∂_i ψ = −σ_i ψ.  Translation derivatives are kept from `trans`.
std::array<CJet<Rational>, 4> equivariant_spinor(const GammaSystem& g, const Spinor& value,
                                                  const std::array<Spinor, 4>& trans);

}  // namespace ecd
