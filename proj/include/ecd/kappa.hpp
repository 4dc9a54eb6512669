#pragma once

#include <array>

#include "ecd/liealg.hpp"

namespace ecd {

/// κ_A^{bc} = 2 δ_A^i η^{bd} ρ_i^c_d, stored dense as k[A][b][c].
struct KappaTable {
    std::array<std::array<std::array<Rational, 4>, 4>, kCoframeDim> k;
    const Rational& operator()(int A, int b, int c) const { return k[A][b][c]; }
};

KappaTable build_kappa(const LieAlgebraSpec& spec);

}  // namespace ecd
