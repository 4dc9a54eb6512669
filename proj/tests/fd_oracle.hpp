#pragma once

// Finite-difference reference for the first variation.  The coframe is
// moved to ϖ' = (I + tE)ϖ, Ψ to Ψ + tΦ; new structure functions and
// derivatives are rebuilt from scratch in the primed basis and the
// Lagrangian is re-evaluated in floating point.  d/dt of λ'(t)·det G at
// t = 0 is the first variation of the top-form coefficient.

#include <Eigen/Dense>

#include "ecd/lagrangian.hpp"
#include "oracles.hpp"

namespace oracle {

using ecd::Cube;
using ecd::kCoframeDim;

struct Direction {
    // ε^A = E[A][B] ϖ^B with ∂_C E^A_B = dE[A][B][C]
    std::array<std::array<ecd::Rational, kCoframeDim>, kCoframeDim> E{};
    Cube<ecd::Rational> dE{};
    std::array<ecd::CJet<ecd::Rational>, 4> phi{};

    std::array<ecd::Form<ecd::CJet<ecd::Rational>>, kCoframeDim> eps() const {
        std::array<ecd::Form<ecd::CJet<ecd::Rational>>, kCoframeDim> r;
        for (int A = 0; A < kCoframeDim; ++A) {
            r[A] = ecd::Form<ecd::CJet<ecd::Rational>>(kCoframeDim, 1);
            for (int B = 0; B < kCoframeDim; ++B) {
                ecd::CJet<ecd::Rational> j(E[A][B]);
                bool any = false;
                for (int C = 0; C < kCoframeDim; ++C) any |= !dE[A][B][C].is_zero();
                if (any)
                    for (int C = 0; C < kCoframeDim; ++C) j.grad.emplace_back(dE[A][B][C]);
                if (!ecd::is_zero(j)) r[A].add(ecd::bit(B), j);
            }
        }
        return r;
    }
};

/// Random direction; entries are scaled by `scale`.
inline Direction rand_direction(std::mt19937_64& rng, bool coframe, bool spinor, bool jets,
                                const ecd::Rational& scale = 1) {
    using Q = ecd::Rational;
    using CQj = ecd::CJet<Q>;
    Direction dir;
    std::uniform_real_distribution<double> u(0, 1);
    if (coframe)
        for (int A = 0; A < 10; ++A)
            for (int B = 0; B < 10; ++B) {
                if (u(rng) < 0.3) dir.E[A][B] = scale * rand_q(rng);
                if (jets)
                    for (int C = 0; C < 10; ++C)
                        if (u(rng) < 0.05) dir.dE[A][B][C] = scale * rand_q(rng);
            }
    if (spinor)
        for (int k = 0; k < 4; ++k) {
            dir.phi[k] = CQj(ecd::Complex<Q>(scale * rand_q(rng), scale * rand_q(rng)));
            if (jets) {
                dir.phi[k].grad.resize(10);
                for (auto& g : dir.phi[k].grad)
                    if (u(rng) < 0.4) g = ecd::Complex<Q>(scale * rand_q(rng), scale * rand_q(rng));
            }
        }
    return dir;
}

inline std::complex<double> lagrangian_at(const ecd::LieAlgebraSpec& spec, const ecd::GammaSystem& g,
                                          const ecd::Scene& base, const Direction& dir, double t) {
    using Mat = Eigen::Matrix<double, kCoframeDim, kCoframeDim>;
    auto dd = [](const ecd::Rational& r) { return r.convert_to<double>(); };
    Mat G = Mat::Identity();
    for (int A = 0; A < kCoframeDim; ++A)
        for (int B = 0; B < kCoframeDim; ++B) G(A, B) += t * dd(dir.E[A][B]);
    Mat Gi = G.inverse();

    ecd::SceneT<double> s = ecd::convert_scene<double>(base);
    // dϖ'^A = ½ H^A_CD ϖ^C ∧ ϖ^D
    for (int A = 0; A < kCoframeDim; ++A) {
        Mat H = Mat::Zero();
        for (int C = 0; C < kCoframeDim; ++C)
            for (int D = 0; D < kCoframeDim; ++D) {
                double h = t * (dd(dir.dE[A][D][C]) - dd(dir.dE[A][C][D]));
                for (int B = 0; B < kCoframeDim; ++B) h += G(A, B) * dd(base.F[B][C][D]);
                H(C, D) = h;
            }
        Mat Fp = Gi.transpose() * H * Gi;
        for (int C = 0; C < kCoframeDim; ++C)
            for (int D = 0; D < kCoframeDim; ++D) s.F[A][C][D] = Fp(C, D);
    }
    for (int k = 0; k < 4; ++k) {
        ecd::CJet<double> psi = s.psi[k];
        auto phi = ecd::embed<ecd::CJet<double>>(dir.phi[k]);
        ecd::CJet<double> moved(psi.value + ecd::Complex<double>(t) * phi.value);
        moved.grad.assign(kCoframeDim, ecd::Complex<double>(0.0));
        for (int A = 0; A < kCoframeDim; ++A)
            for (int B = 0; B < kCoframeDim; ++B)
                moved.grad[A] += (psi.partial(B) + ecd::Complex<double>(t) * phi.partial(B)) * ecd::Complex<double>(Gi(B, A));
        s.psi[k] = moved;
    }
    ecd::Evaluator<double> ev(spec, g, s);
    auto z = ev.lagrangian().coef(ecd::full_mask(kCoframeDim)) * ecd::Complex<double>(G.determinant());
    return {z.re, z.im};
}

inline std::complex<double> fd_variation(const ecd::LieAlgebraSpec& spec, const ecd::GammaSystem& g,
                                         const ecd::Scene& base, const Direction& dir, double h = 1e-5) {
    return (lagrangian_at(spec, g, base, dir, h) - lagrangian_at(spec, g, base, dir, -h)) / (2 * h);
}

}  // namespace oracle
