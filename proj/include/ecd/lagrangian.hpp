#pragma once

// The total Lagrangian 10-form, its Euler–Lagrange residuals and first
// variations, evaluated at the scene point.

#include <array>
#include <vector>

#include "ecd/kappa.hpp"
#include "ecd/scene.hpp"

namespace ecd {

template <class T>
class Evaluator {
public:
    using C = Complex<T>;
    using J = CJet<T>;

    Evaluator(const LieAlgebraSpec& spec, const GammaSystem& g, const SceneT<T>& scene)
        : scene_(scene), geo_(spec, scene.F), gam_(g) {
        psi_ = spinor_field(scene.psi);
        psibar_ = bar(psi_, gam_.B);
        dw_psi_ = geo_.dw_spinor(psi_, gam_.sigma);
        dw_psibar_ = bar(dw_psi_, gam_.B);
        for (int i = 0; i < kRot; ++i) {
            k_[i] = spinor_field(scene.K[i]);
            kbar_[i] = bar(k_[i], gam_.B);
        }
        for (int A = 0; A < kCoframeDim; ++A) omega_[A] = geo_.curvature(A);
    }

    const Geometry<T>& geo() const { return geo_; }
    const GammaT<T>& gam() const { return gam_; }
    const SceneT<T>& scene() const { return scene_; }
    const SpinorForm<J>& psi() const { return psi_; }
    const SpinorForm<J>& psibar() const { return psibar_; }
    const SpinorForm<C>& dw_psi() const { return dw_psi_; }
    const SpinorForm<C>& dw_psibar() const { return dw_psibar_; }
    const Form<T>& Omega(int A) const { return omega_[A]; }

    const Form<T>& d9(int A) const { return geo_.dual({A}); }
    const Form<T>& d8(int A, int B) const { return geo_.dual({A, B}); }
    const Form<T>& d7(int A, int B, int D) const { return geo_.dual({A, B, D}); }

    /// γ^(9) ∧ s for a column spinor form.
    template <class X>
    auto gamma9_wedge(const SpinorForm<X>& s) const {
        auto r = mat_apply(gam_.gamma[0], wedge_left(d9(0), s));
        for (int a = 1; a < 4; ++a) r = r + mat_apply(gam_.gamma[a], wedge_left(d9(a), s));
        return r;
    }
    /// s ∧ γ^(9) for a row spinor form.
    template <class X>
    auto wedge_gamma9(const SpinorForm<X>& s) const {
        auto r = wedge_right(mat_apply_right(s, gam_.gamma[0]), d9(0));
        for (int a = 1; a < 4; ++a) r = r + wedge_right(mat_apply_right(s, gam_.gamma[a]), d9(a));
        return r;
    }

    /// Σ_i K^i ϖ^(9)_i (column) and Σ_i K̄^i ϖ^(9)_i (row), jet coefficients.
    SpinorForm<J> k9() const {
        SpinorForm<J> r = spinor_zero<J>(kCoframeDim, 9);
        for (int i = 0; i < kRot; ++i) r = r + wedge_right(k_[i], d9(kTrans + i));
        return r;
    }
    SpinorForm<J> kbar9() const {
        SpinorForm<J> r = spinor_zero<J>(kCoframeDim, 9);
        for (int i = 0; i < kRot; ++i) r = r + wedge_right(kbar_[i], d9(kTrans + i));
        return r;
    }

    /// Lagrangian pieces as top forms.
    Form<C> lagrangian_P() const {
        Form<C> r(kCoframeDim, kCoframeDim);
        for (int A = 0; A < kCoframeDim; ++A)
            for (int B = 0; B < kCoframeDim; ++B)
                for (int Cc = B + 1; Cc < kCoframeDim; ++Cc) {
                    const C& p = scene_.P[A][B][Cc].value;
                    if (is_zero(p)) continue;
                    r += cast<C>(wedge(omega_[A], d8(B, Cc))).scaled(p);
                }
        return r;
    }
    Form<C> lagrangian_mass() const {
        return cast<C>(geo_.vol()).scaled(-embed<C>(scene_.mass) * contract(values(psibar_), values(psi_)).coef(0));
    }
    Form<C> lagrangian_kinetic() const {
        Form<C> a = contract(values(psibar_), gamma9_wedge(dw_psi_));
        Form<C> b = contract(dw_psibar_, gamma9_wedge(values(psi_)));
        return (a + b).scaled(C(T(-1) / T(2)));
    }
    Form<C> lagrangian_K() const {
        Form<C> r(kCoframeDim, kCoframeDim);
        for (int i = 0; i < kRot; ++i) {
            Form<C> one = contract(values(kbar_[i]), dw_psi_) - contract(dw_psibar_, values(k_[i]));
            r += wedge(one, d9(kTrans + i));
        }
        return r.scaled(C(T(1) / T(2)));
    }
    Form<C> lagrangian() const { return lagrangian_P() + lagrangian_mass() + lagrangian_kinetic() + lagrangian_K(); }

    /// X_D = ½ P^BC_D ϖ^(8)_BC, jet coefficients.
    Form<J> X(int D) const {
        Form<J> r(kCoframeDim, 8);
        for (int B = 0; B < kCoframeDim; ++B)
            for (int Cc = B + 1; Cc < kCoframeDim; ++Cc) {
                const J& p = scene_.P[D][B][Cc];
                if (is_zero(p)) continue;
                r += cast<J>(d8(B, Cc)).scaled(p);
            }
        return r;
    }

    /// Euler–Lagrange residual for the coframe, one 9-form per index D.
    std::array<Form<C>, kCoframeDim> E_coframe() const {
        std::array<Form<J>, kCoframeDim> Xs;
        for (int D = 0; D < kCoframeDim; ++D) Xs[D] = X(D);
        SpinorForm<C> psi = values(psi_), psibar = values(psibar_);
        const C half(T(1) / T(2));
        std::array<Form<C>, kCoframeDim> E;
        for (int D = 0; D < kCoframeDim; ++D) {
            // d^ϖ X_D with the coadjoint action of every ϖ^F
            Form<C> e = geo_.d(Xs[D]);
            for (int F = 0; F < kCoframeDim; ++F)
                for (int A = 0; A < kCoframeDim; ++A) {
                    const T& cc = geo_.c(A, D, F);
                    if (is_zero(cc) || Xs[A].zero()) continue;
                    e += cast<C>(wedge(geo_.gen(F), values(Xs[A]))).scaled(C(cc));
                }
            // ½ P^BC_A Ω^A ∧ ϖ^(7)_BCD
            for (int A = 0; A < kCoframeDim; ++A) {
                if (omega_[A].zero()) continue;
                for (int B = 0; B < kCoframeDim; ++B)
                    for (int Cc = B + 1; Cc < kCoframeDim; ++Cc) {
                        const C& p = scene_.P[A][B][Cc].value;
                        if (is_zero(p) || B == D || Cc == D) continue;
                        e += cast<C>(wedge(omega_[A], d7(B, Cc, D))).scaled(p);
                    }
            }
            if (is_rotation(D)) {
                const auto& s = gam_.sigma[D - kTrans];
                for (int a = 0; a < 4; ++a) {
                    CMat4<T> anti = matmul(s, gam_.gamma[a]) + matmul(gam_.gamma[a], s);
                    C v = contract(psibar, mat_apply(anti, psi)).coef(0);
                    e += cast<C>(d9(a)).scaled(v * half);
                }
                for (int i = 0; i < kRot; ++i) {
                    C v = contract(values(kbar_[i]), mat_apply(s, psi)).coef(0) +
                          contract(psibar, mat_apply(s, values(k_[i]))).coef(0);
                    e += cast<C>(d9(kTrans + i)).scaled(v * half);
                }
            }
            C mass = embed<C>(scene_.mass) * contract(psibar, psi).coef(0);
            e -= cast<C>(d9(D)).scaled(mass);
            for (int a = 0; a < 4; ++a) {
                if (a == D) continue;
                Form<C> cur = contract(psibar, mat_apply(gam_.gamma[a], dw_psi_)) -
                              contract(dw_psibar_, mat_apply(gam_.gamma[a], psi));
                e -= wedge(cur, d8(a, D)).scaled(half);
            }
            for (int i = 0; i < kRot; ++i) {
                if (kTrans + i == D) continue;
                Form<C> cur = contract(values(kbar_[i]), dw_psi_) - contract(dw_psibar_, values(k_[i]));
                e -= wedge(cur, d8(kTrans + i, D)).scaled(half);
            }
            E[D] = e;
        }
        return E;
    }

    /// Residual for Ψ̄ (column spinor 10-form).
    SpinorForm<C> E_psibar() const {
        const C half(T(1) / T(2));
        SpinorForm<C> r = scale(gamma9_wedge(dw_psi_), -half);
        r = r + scale(geo_.dw_spinor(gamma9_wedge(psi_), gam_.sigma), half);
        r = r - wedge_left(cast<C>(geo_.vol()), scale(values(psi_), embed<C>(scene_.mass)));
        r = r + scale(geo_.dw_spinor(k9(), gam_.sigma), half);
        return r;
    }

    /// Residual for Ψ (row spinor 10-form).
    SpinorForm<C> E_psi() const {
        const C half(T(1) / T(2));
        SpinorForm<C> r = scale(geo_.dw_cospinor(wedge_gamma9(psibar_), gam_.sigma), -half);
        r = r - scale(wedge_gamma9(dw_psibar_), half);
        r = r - scale(geo_.dw_cospinor(kbar9(), gam_.sigma), half);
        r = r - wedge_left(cast<C>(geo_.vol()), scale(values(psibar_), embed<C>(scene_.mass)));
        return r;
    }

    struct Variation {
        C bulk;
        C boundary;
        C total;
    };

    /// First variation in the direction (ε, Φ): bulk pairing with the
    /// residuals plus the exact term d(B).
    Variation directional_variation(const std::array<Form<J>, kCoframeDim>& eps, const std::array<J, 4>& phi_jets,
                                    const std::array<Form<C>, kCoframeDim>* E = nullptr) const {
        std::array<Form<C>, kCoframeDim> Eown;
        if (!E) {
            Eown = E_coframe();
            E = &Eown;
        }
        const C half(T(1) / T(2));
        SpinorForm<J> phi = spinor_field(phi_jets);
        SpinorForm<J> phibar = bar(phi, gam_.B);

        Form<C> bulk(kCoframeDim, kCoframeDim);
        for (int D = 0; D < kCoframeDim; ++D) bulk += wedge(values(eps[D]), (*E)[D]);
        bulk += contract(values(phibar), E_psibar());
        bulk += contract(E_psi(), values(phi));

        Form<J> B(kCoframeDim, 9);
        for (int A = 0; A < kCoframeDim; ++A) B += wedge(eps[A], X(A));
        auto g9psi = gamma9_wedge(psi_);
        auto g9phi = gamma9_wedge(phi);
        B -= contract(phibar, g9psi).scaled(J(half));
        B -= contract(phibar, k9()).scaled(J(half));
        B += contract(psibar_, g9phi).scaled(J(half));
        B += contract(kbar9(), phi).scaled(J(half));
        Form<C> dB = geo_.d(B);

        Variation v;
        v.bulk = bulk.coef(full_mask(kCoframeDim));
        v.boundary = dB.coef(full_mask(kCoframeDim));
        v.total = v.bulk + v.boundary;
        return v;
    }

private:
    const SceneT<T>& scene_;
    Geometry<T> geo_;
    GammaT<T> gam_;
    SpinorForm<J> psi_, psibar_;
    SpinorForm<C> dw_psi_, dw_psibar_;
    std::array<SpinorForm<J>, kRot> k_, kbar_;
    std::array<Form<T>, kCoframeDim> omega_;
};

// ---------------------------------------------------------------------------

struct DualVariations {
    Form<Complex<Rational>> vol;
    std::array<Form<Complex<Rational>>, kCoframeDim> nine;
    std::array<std::array<Form<Complex<Rational>>, kCoframeDim>, kCoframeDim> eight;
};

/// Dϖ^(10)·ε = ε^A ∧ ϖ^(9)_A, Dϖ^(9)_A·ε = ε^C ∧ ϖ^(8)_AC,
/// Dϖ^(8)_AB·ε = ε^C ∧ ϖ^(7)_ABC.
template <class X>
auto variation_dual_forms(const std::array<Form<X>, kCoframeDim>& eps) {
    using Y = common_coef_t<X, Rational>;
    struct Out {
        Form<Y> vol;
        std::array<Form<Y>, kCoframeDim> nine;
        std::array<std::array<Form<Y>, kCoframeDim>, kCoframeDim> eight;
    } out;
    using R = real_of_t<X>;
    out.vol = Form<Y>(kCoframeDim, kCoframeDim);
    for (int A = 0; A < kCoframeDim; ++A) {
        out.vol += wedge(eps[A], dual_form<R>({A}, kCoframeDim));
        out.nine[A] = Form<Y>(kCoframeDim, 9);
        for (int C = 0; C < kCoframeDim; ++C)
            if (C != A) out.nine[A] += wedge(eps[C], dual_form<R>({A, C}, kCoframeDim));
        for (int B = 0; B < kCoframeDim; ++B) {
            out.eight[A][B] = Form<Y>(kCoframeDim, 8);
            if (A == B) continue;
            for (int C = 0; C < kCoframeDim; ++C)
                if (C != A && C != B) out.eight[A][B] += wedge(eps[C], dual_form<R>({A, B, C}, kCoframeDim));
        }
    }
    return out;
}

struct ResidualReport {
    std::string scene;
    bool gfb = false;
    bool equivariant = false;
    Complex<Rational> lagrangian;
    std::array<Form<Complex<Rational>>, kCoframeDim> E_coframe;
    // e[D][B]: ϖ^B ∧ E_D = e[D][B] vol
    std::array<std::array<Complex<Rational>, kCoframeDim>, kCoframeDim> e_table{};
    SpinorForm<Complex<Rational>> E_psibar;
    SpinorForm<Complex<Rational>> E_psi;
    std::array<std::array<std::array<Rational, 4>, 4>, kCoframeDim> Omega_bc{};
    std::array<std::array<Complex<Rational>, 4>, 4> S{};

    double norm_coframe(int D) const;
    double norm_psibar() const;
    bool coframe_exact_zero(int D) const { return E_coframe[D].zero(); }
    bool psibar_exact_zero() const { return is_zero(E_psibar); }
};

Complex<Rational> eval_lagrangian(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene);
ResidualReport el_residuals(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene);

}  // namespace ecd
