#include "ecd/identities.hpp"

namespace ecd {

namespace {

using CQ = Complex<Rational>;
using QF = Form<Rational>;

void record(IdentityResult& r, const QF& residual) {
    r.exact = r.exact && residual.zero();
    r.norm = std::max(r.norm, max_abs(residual));
    ++r.instances;
}
void record(IdentityResult& r, const Form<CQ>& residual) {
    r.exact = r.exact && residual.zero();
    r.norm = std::max(r.norm, max_abs(residual));
    ++r.instances;
}

QF ext(const std::vector<int>& I) { return extend_dim(dual_form<Rational>(I, 4), kCoframeDim); }

/// Index tuples to test: all of them, or one drawn at random.
std::vector<std::pair<int, int>> choose_pairs(int lo, int hi, bool distinct, bool exhaustive, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> all;
    for (int a = lo; a < hi; ++a)
        for (int b = lo; b < hi; ++b)
            if (!distinct || a < b) all.emplace_back(a, b);
    if (exhaustive) return all;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return {all[pick(rng)]};
}

QF dual_eight(const Geometry<Rational>& geo, int A, int B) {
    QF r = geo.d(geo.dual({A, B}));
    for (int C = 0; C < kCoframeDim; ++C) {
        if (C != A && C != B) r -= wedge(geo.curvature(C), geo.dual({A, B, C}));
        if (!geo.c(C, A, B).is_zero()) r += geo.dual({C}).scaled(geo.c(C, A, B));
    }
    return r;
}

}  // namespace

const std::vector<Identity>& all_identities() {
    static const std::vector<Identity> v = {Identity::DualEight,  Identity::CovariantEight, Identity::OmegaEight,
                                            Identity::AlphaThree, Identity::Leibniz,        Identity::AlphaFour,
                                            Identity::GammaThree};
    return v;
}

std::string identity_id(Identity id) {
    switch (id) {
        case Identity::DualEight: return "identity.d_dual8";
        case Identity::CovariantEight: return "identity.dw_dual8";
        case Identity::OmegaEight: return "identity.omega_dual8";
        case Identity::AlphaThree: return "identity.dw_alpha3";
        case Identity::Leibniz: return "identity.leibniz";
        case Identity::AlphaFour: return "identity.d_alpha4";
        case Identity::GammaThree: return "identity.dw_gamma3";
    }
    return "";
}

std::string identity_formula(Identity id) {
    switch (id) {
        case Identity::DualEight: return "dϖ^(8)_AB = Ω^C∧ϖ^(7)_ABC − c^C_AB ϖ^(9)_C";
        case Identity::CovariantEight: return "d^ω ϖ^(8)_bc = Ω^D∧ϖ^(7)_bcD";
        case Identity::OmegaEight: return "ω·ϖ^(8)_bc = 0";
        case Identity::AlphaThree: return "d^ω α^(3)_a = Ω^b∧α^(2)_ab";
        case Identity::Leibniz: return "d^ω(Ψ∧μ) = d^ωΨ∧μ + (−1)^k Ψ∧dμ";
        case Identity::AlphaFour: return "dα^(4) = 0";
        case Identity::GammaThree: return "d^ω(γ^a α^(3)_a) = γ^a Ω^b∧α^(2)_ab";
    }
    return "";
}

Rational random_rational(std::mt19937_64& rng, int span, int den) {
    std::uniform_int_distribution<int> num(-span, span), d(1, den);
    return Rational(num(rng), d(rng));
}

Cube<Rational> random_gfb_structure(const LieAlgebraSpec& spec, std::mt19937_64& rng) {
    Cube<Rational> F{};
    std::uniform_int_distribution<int> coin(0, 2);
    for (int A = 0; A < kCoframeDim; ++A)
        for (int B = 0; B < kCoframeDim; ++B)
            for (int C = 0; C < kCoframeDim; ++C) F[A][B][C] = -spec.c[A][B][C];
    for (int A = 0; A < kCoframeDim; ++A)
        for (int b = 0; b < 4; ++b)
            for (int c = b + 1; c < 4; ++c)
                if (coin(rng) == 0) {
                    Rational v = random_rational(rng);
                    F[A][b][c] += v;
                    F[A][c][b] -= v;
                }
    return F;
}

IdentityResult check_identity(Identity id, const LieAlgebraSpec& spec, const GammaSystem& g, const Cube<Rational>& F,
                              std::mt19937_64& rng, bool exhaustive) {
    Geometry<Rational> geo(spec, F);
    ModuleRegistry reg(spec);
    IdentityResult r;
    switch (id) {
        case Identity::DualEight:
            for (auto [A, B] : choose_pairs(0, kCoframeDim, true, exhaustive, rng)) record(r, dual_eight(geo, A, B));
            break;
        case Identity::CovariantEight:
        case Identity::OmegaEight: {
            // ϖ^(8)_bc as a section of the covector ⊗ covector module
            std::vector<QF> comps;
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c) comps.push_back(b == c ? QF(kCoframeDim, 8) : geo.dual({b, c}));
            auto dw = geo.covariant_d(reg.tensor("covector", "covector"), comps);
            for (auto [b, c] : choose_pairs(0, 4, true, exhaustive, rng)) {
                QF res = dw[static_cast<std::size_t>(4 * b + c)];
                if (id == Identity::OmegaEight) {
                    res -= geo.d(comps[static_cast<std::size_t>(4 * b + c)]);
                } else {
                    for (int D = 0; D < kCoframeDim; ++D)
                        if (D != b && D != c) res -= wedge(geo.curvature(D), geo.dual({b, c, D}));
                }
                record(r, res);
            }
            break;
        }
        case Identity::AlphaThree: {
            std::vector<QF> comps;
            for (int a = 0; a < 4; ++a) comps.push_back(ext({a}));
            auto dw = geo.covariant_d(reg.get("covector"), comps);
            for (int a = 0; a < 4; ++a) {
                if (!exhaustive && a != std::uniform_int_distribution<int>(0, 3)(rng)) continue;
                QF res = dw[static_cast<std::size_t>(a)];
                for (int b = 0; b < 4; ++b)
                    if (b != a) res -= wedge(geo.curvature(b), ext({a, b}));
                record(r, res);
            }
            break;
        }
        case Identity::Leibniz: {
            GammaT<Rational> gt(g);
            std::uniform_int_distribution<int> deg(0, 4);
            std::uniform_real_distribution<double> u(0, 1);
            const int rounds = exhaustive ? 5 : 1;
            for (int t = 0; t < rounds; ++t) {
                int k = deg(rng), l = deg(rng);
                auto rand_form = [&](int p) {
                    Form<CQ> f(kCoframeDim, p);
                    for (unsigned m = 0; m < (1u << kCoframeDim); ++m)
                        if (popcount(static_cast<Mask>(m)) == p && u(rng) < 6.0 / (1 + p * p * p))
                            f.add(static_cast<Mask>(m), CQ(random_rational(rng), random_rational(rng)));
                    return f;
                };
                SpinorForm<CQ> psi{rand_form(k), rand_form(k), rand_form(k), rand_form(k)};
                Form<CQ> mu = rand_form(l);
                auto lhs = geo.dw_spinor(wedge_right(psi, mu), gt.sigma);
                auto rhs = wedge_right(geo.dw_spinor(psi, gt.sigma), mu);
                auto tail = wedge_right(psi, geo.d(mu));
                for (int s = 0; s < 4; ++s) record(r, lhs[s] - rhs[s] - (k % 2 ? -tail[s] : tail[s]));
            }
            break;
        }
        case Identity::AlphaFour:
            record(r, geo.d(QF::basis(kCoframeDim, kTransMask)));
            break;
        case Identity::GammaThree: {
            // entrywise matrix of forms G = γ^a α^(3)_a
            for (int row = 0; row < 4; ++row)
                for (int col = 0; col < 4; ++col) {
                    if (!exhaustive && (row != col)) continue;
                    Form<CQ> lhs(kCoframeDim, 4), rhs(kCoframeDim, 4);
                    for (int a = 0; a < 4; ++a) {
                        lhs += cast<CQ>(geo.d(ext({a}))).scaled(g.gamma[a](row, col));
                        for (int i = 0; i < kRot; ++i) {
                            Gamma com = matmul(g.sigma[i], g.gamma[a]) - matmul(g.gamma[a], g.sigma[i]);
                            if (!is_zero(com(row, col)))
                                lhs += cast<CQ>(wedge(geo.gen(kTrans + i), ext({a}))).scaled(com(row, col));
                        }
                        for (int b = 0; b < 4; ++b)
                            if (b != a)
                                rhs += cast<CQ>(wedge(geo.curvature(b), ext({a, b}))).scaled(g.gamma[a](row, col));
                    }
                    record(r, lhs - rhs);
                    if (!is_horizontal(lhs)) r.exact = false;
                }
            break;
        }
    }
    return r;
}

}  // namespace ecd
