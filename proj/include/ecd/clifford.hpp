#pragma once

// Cl(1,3) and Cl(4,0) on a 4-dimensional complex spinor module, in the
// convention γ^a γ^b + γ^b γ^a = −2 η^{ab}.

#include <array>

#include "ecd/exterior.hpp"
#include "ecd/liealg.hpp"
#include "ecd/matrix.hpp"

namespace ecd {

class BadAmbient : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using CQ = Complex<Rational>;
using Spinor = CVec4<Rational>;
using Gamma = CMat4<Rational>;

struct GammaSystem {
    Signature sig;
    std::array<Gamma, 4> gamma;        // γ^a, upper index
    std::array<Gamma, 4> gamma_lower;  // γ_a = η_ab γ^b
    Gamma B;                           // ψ̄ = ψ† B
    std::array<std::array<Gamma, 4>, 4> sigma_ab;  // σ^a_b
    std::array<Gamma, kRot> sigma;                 // σ_i, i = 0..5

    /// σ for a global basis index A (zero matrix for translations).
    Gamma sigma_of(int A) const;
};

GammaSystem build_gamma(const LieAlgebraSpec& spec);

Gamma commutator(const Gamma& a, const Gamma& b);
Gamma anticommutator(const Gamma& a, const Gamma& b);

/// Row vector ψ̄ = ψ† B.
Eigen::Matrix<CQ, 1, 4> dirac_adjoint(const GammaSystem& sys, const Spinor& psi);
CQ pair(const GammaSystem& sys, const Spinor& a, const Spinor& b);

/// Spinor module for the registry: generator A acts by σ_A.
Representation spinor_module(const GammaSystem& sys);

/// End(Σ)-valued form Σ_k M_k ⊗ f_k.
struct MatrixForm {
    std::vector<std::pair<Gamma, Form<Rational>>> terms;
};

/// γ^(3) = γ^a α^(3)_a (ambient 4) or γ^(9) = γ^a ϖ^(9)_a (ambient 10).
MatrixForm gamma_dual(const GammaSystem& sys, int ambient);

}  // namespace ecd
