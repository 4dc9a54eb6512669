#pragma once

// so(p,q) ⋉ R^(p,q) for p+q = 4.
//
// Basis: A = 0..3 translations P_a, A = 4..9 rotations M_(ab), a < b in
// lexicographic order.  (M_(ab))^c_d = η_ad δ^c_b − η_bd δ^c_a.

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecd/exterior.hpp"
#include "ecd/matrix.hpp"
#include "ecd/scalar.hpp"

namespace ecd {

inline constexpr int kTrans = 4;
inline constexpr int kRot = 6;
inline constexpr Mask kTransMask = 0x00F;
inline constexpr Mask kRotMask = 0x3F0;

inline bool is_translation(int A) { return A < kTrans; }
inline bool is_rotation(int A) { return A >= kTrans && A < kCoframeDim; }

class UnsupportedSignature : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class UnknownModule : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Signature {
    int p = 1;
    int q = 3;
    friend bool operator==(const Signature&, const Signature&) = default;
};

using Mat4Q = std::array<std::array<Rational, 4>, 4>;
using Elem = std::vector<Rational>;

struct LieAlgebraSpec {
    Signature sig;
    int dim = kCoframeDim;
    std::vector<std::string> labels;
    std::array<std::pair<int, int>, kRot> pairs;  // rotation i (0..5) -> (a,b)
    std::array<int, 4> eta_diag{};                // η = diag(eta_diag)
    std::array<Mat4Q, kRot> rho;                  // rho[i][b][a] = ρ_i^b_a
    // c[C][A][B] = c^C_AB
    std::array<std::array<std::array<Rational, kCoframeDim>, kCoframeDim>, kCoframeDim> c;

    const Rational& structure(int C, int A, int B) const { return c[C][A][B]; }
    Rational eta(int a, int b) const { return a == b ? Rational(eta_diag[a]) : Rational(0); }
    Rational eta_inv(int a, int b) const { return eta(a, b); }

    /// Global basis index of the rotation generator M_(ab), a < b.
    int rotation_index(int a, int b) const;

    /// Sparse view: (A,B) -> [(C, c^C_AB)] for A < B with nonzero entries.
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> structure_map() const;
};

LieAlgebraSpec build_euclidean_or_poincare(int p, int q);

Elem basis_element(int A);
Elem bracket(const LieAlgebraSpec& spec, const Elem& X, const Elem& Y);

/// 5×5 affine matrix of a basis element: rotations in the upper-left 4×4,
/// translations in the last column.
QMat affine_matrix(const LieAlgebraSpec& spec, const Elem& X);
/// Inverse of affine_matrix on its image.
Elem from_affine_matrix(const LieAlgebraSpec& spec, const QMat& m);

// ---------------------------------------------------------------------------
// Representations.  A module is a dimension plus ten generator matrices
// (zero for generators that act trivially).

struct Representation {
    std::string name;
    int dim = 1;
    std::vector<CMat<Rational>> gen;  // kCoframeDim entries, dim × dim
};

Representation scalar_module();
Representation vector_module(const LieAlgebraSpec& spec);
Representation covector_module(const LieAlgebraSpec& spec);
Representation adjoint_module(const LieAlgebraSpec& spec);
Representation coadjoint_module(const LieAlgebraSpec& spec);
Representation dual_module(const Representation& r);
Representation tensor_module(const Representation& a, const Representation& b);

class ModuleRegistry {
public:
    explicit ModuleRegistry(const LieAlgebraSpec& spec);
    void add(Representation r);
    const Representation& get(const std::string& name) const;
    bool has(const std::string& name) const { return reps_.count(name) != 0; }
    /// Registers a⊗b under the name "a⊗b" (if absent) and returns it.
    const Representation& tensor(const std::string& a, const std::string& b);

private:
    std::map<std::string, Representation> reps_;
};

/// ξ·v for ξ ∈ 𝔤 acting on v in the named module.
CVec<Rational> coadjoint_action(const ModuleRegistry& reg, const std::string& module, const Elem& xi,
                                const CVec<Rational>& v);

}  // namespace ecd
