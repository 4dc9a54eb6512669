#pragma once

// Exact identities of the dual forms and covariant differentials, checked
// on a given structure or on random generalised frame bundle structures.

#include <random>
#include <string>
#include <vector>

#include "ecd/scene.hpp"

namespace ecd {

enum class Identity {
    DualEight,       // dϖ^(8)_AB = Ω^C ∧ ϖ^(7)_ABC − c^C_AB ϖ^(9)_C
    CovariantEight,  // d^ω ϖ^(8)_bc = Ω^D ∧ ϖ^(7)_bcD
    OmegaEight,      // ω · ϖ^(8)_bc = 0
    AlphaThree,      // d^ω α^(3)_a = Ω^b ∧ α^(2)_ab
    Leibniz,         // d^ω(Ψ ∧ μ) = d^ωΨ ∧ μ + (−1)^k Ψ ∧ dμ
    AlphaFour,       // dα^(4) = 0
    GammaThree,      // d^ω(γ^a α^(3)_a) = γ^a Ω^b ∧ α^(2)_ab, horizontal
};

const std::vector<Identity>& all_identities();
std::string identity_id(Identity id);
std::string identity_formula(Identity id);

struct IdentityResult {
    bool exact = true;
    double norm = 0;
    int instances = 0;
};

/// Checks one identity on the structure F.  With exhaustive every index
/// choice is tested; otherwise one random choice (and random Ψ, μ for the
/// Leibniz rule) is drawn from rng.
IdentityResult check_identity(Identity id, const LieAlgebraSpec& spec, const GammaSystem& g, const Cube<Rational>& F,
                              std::mt19937_64& rng, bool exhaustive);

/// Random structure of a generalised frame bundle: F = −c + ½Ω^A_bc α^b∧α^c
/// with small random rational Ω.
Cube<Rational> random_gfb_structure(const LieAlgebraSpec& spec, std::mt19937_64& rng);

Rational random_rational(std::mt19937_64& rng, int span = 5, int den = 4);

}  // namespace ecd
