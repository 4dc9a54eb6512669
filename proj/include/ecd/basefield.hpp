#pragma once

// Restriction of the lifted field equations to horizontal, equivariant
// variations; reduction modulo the α ideal; the orbit cancellation check;
// and the Einstein–Cartan–Dirac residuals on the base coframe.

#include <array>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecd/lagrangian.hpp"

namespace ecd {

class NotGFB : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NotEquivariant : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NotInvariant : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using CForm = Form<Complex<Rational>>;

/// Quotient by the ideal generated by the α^a: keeps rotation-only terms.
template <class X>
Form<X> mod_alpha_reduce(const Form<X>& f) {
    return project_out(f, kTransMask);
}

enum class VolumeFactor { Omega6, Alpha4 };

/// β with β ∧ ω^(6) = f (or β ∧ α^(4) = f).  Throws NotDivisible.
template <class X>
Form<X> strip_volume_factors(const Form<X>& f, VolumeFactor which) {
    return strip(f, which == VolumeFactor::Omega6 ? kRotMask : kTransMask);
}

/// Residuals on the base coframe α^0..α^3 (forms of dimension 4).
struct BaseResiduals {
    std::string scene;
    // torsion[b][c] = Θ^d ∧ α^(1)_bcd + (1/16) Ψ̄{[γ_b, γ_c], γ^(3)}Ψ, 3-forms
    std::array<std::array<CForm, 4>, 4> torsion;
    // einstein[b], 3-forms
    std::array<CForm, 4> einstein;
    // γ^(3) ∧ d^ωΨ − ½ γ^a Θ^b ∧ α^(2)_ab Ψ + m Ψ α^(4), 4-forms
    SpinorForm<Complex<Rational>> dirac;

    /// G[b][e] with R^E_b = G[b][e] α^(3)_e, read off as α^e ∧ R^E_b.
    std::array<std::array<Complex<Rational>, 4>, 4> einstein_table() const;

    double norm_torsion() const;
    double norm_einstein() const;
    double norm_dirac() const;
    bool torsion_zero() const;
    bool einstein_zero() const;
    bool dirac_zero() const;
};

/// Throws NotGFB / NotEquivariant when the preconditions fail.
BaseResiduals base_ecd_residuals(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene);

using EpsCoef = std::array<std::array<Rational, 4>, kCoframeDim>;  // ε^A_b

/// Horizontal variation ε^A = ε^A_b α^b and a spinor variation Φ.
struct HorizontalVariation {
    EpsCoef eps{};
    Spinor phi = Spinor::Zero();
};

struct LiftVerdict {
    // stripped lifted pairing equals the base pairing
    bool coframe_base = false;
    bool dirac_base = false;
    // the lifted pairing equals ε^D ∧ E_D plus the exact multiplier term
    // (and the Φ̄ E_Ψ̄ analogue) for equivariant jets of (ε, Φ)
    bool coframe_residual = false;
    bool dirac_residual = false;
    bool pass() const { return coframe_base && dirac_base && coframe_residual && dirac_residual; }
};

LiftVerdict lift_compare(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene,
                         const HorizontalVariation& var);

/// The 40 unit ε^A_b and 4 unit Φ.
std::vector<HorizontalVariation> lift_basis();

/// ε^A = ε^A_b α^b with jets whose rotation derivatives make d^ω ε
/// horizontal; trans[t] holds the translation derivatives ∂_t ε^A_b.
std::array<Form<CJet<Rational>>, kCoframeDim> equivariant_variation(const LieAlgebraSpec& spec, const EpsCoef& eps,
                                                                    const std::array<EpsCoef, 4>* trans = nullptr);

struct CancellationVerdict {
    bool hypothesis = false;   // E ≡ dP5 mod α
    bool conclusion = false;   // E ≡ 0 mod α
    Rational reduced;          // ω^(6) coefficient of E
    bool pass() const { return hypothesis && conclusion; }
};

/// CONSTANT scenes only; E must be invariant under every rotation.
CancellationVerdict cancellation_check(const LieAlgebraSpec& spec, const Scene& scene, const Form<Rational>& E,
                                       const Form<Rational>& P5);

struct CancellationPair {
    Form<Rational> E;   // invariant 6-form in the α ideal
    Form<Rational> P5;  // constant 5-form with pure-rotation legs
};

/// Pairs with E ≡ dP5 mod α: E is a random combination of the invariant
/// 6-forms in the α ideal and dP5 reduces to zero by unimodularity.
std::vector<CancellationPair> cancellation_pairs(const LieAlgebraSpec& spec, const Scene& scene, int count,
                                                 std::mt19937_64& rng);

/// Basis of the constant p-forms annihilated by every rotation Lie
/// derivative; with in_ideal, only those lying in the α ideal.
std::vector<Form<Rational>> invariant_forms(const LieAlgebraSpec& spec, const Scene& scene, int degree,
                                            bool in_ideal = false);

}  // namespace ecd
