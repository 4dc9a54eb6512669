#include "ecd/lagrangian.hpp"

namespace ecd {

KappaTable build_kappa(const LieAlgebraSpec& spec) {
    KappaTable t;
    for (int A = 0; A < kCoframeDim; ++A)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                Rational v = 0;
                if (is_rotation(A))
                    for (int d = 0; d < 4; ++d) v += 2 * spec.eta_inv(b, d) * spec.rho[A - kTrans][c][d];
                t.k[A][b][c] = v;
            }
    return t;
}

Complex<Rational> eval_lagrangian(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene) {
    Evaluator<Rational> ev(spec, g, scene);
    return ev.lagrangian().coef(full_mask(kCoframeDim));
}

double ResidualReport::norm_coframe(int D) const { return max_abs(E_coframe[D]); }

double ResidualReport::norm_psibar() const {
    double n = 0;
    for (const auto& f : E_psibar) n = std::max(n, max_abs(f));
    return n;
}

ResidualReport el_residuals(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene) {
    ResidualReport r;
    r.scene = scene.name;
    auto curv = curvature_torsion(spec, scene);
    r.gfb = curv.gfb;
    r.Omega_bc = curv.Omega_bc;
    auto eq = check_equivariance(spec, g, scene, scene.psi);
    r.equivariant = eq.equivariant;
    r.S = eq.S;

    Evaluator<Rational> ev(spec, g, scene);
    r.lagrangian = ev.lagrangian().coef(full_mask(kCoframeDim));
    r.E_coframe = ev.E_coframe();
    for (int D = 0; D < kCoframeDim; ++D)
        for (int B = 0; B < kCoframeDim; ++B)
            r.e_table[D][B] = wedge(ev.geo().gen(B), r.E_coframe[D]).coef(full_mask(kCoframeDim));
    r.E_psibar = ev.E_psibar();
    r.E_psi = ev.E_psi();
    return r;
}

}  // namespace ecd
