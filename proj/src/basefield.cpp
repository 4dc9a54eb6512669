#include "ecd/basefield.hpp"

#include <numeric>
#include <tuple>

#include <Eigen/LU>

#include "ecd/identities.hpp"

namespace ecd {

namespace {

using CQ = Complex<Rational>;
using SF = SpinorForm<CQ>;

const CQ kHalf(Rational(1, 2));

CForm cq(const Form<Rational>& f) { return cast<CQ>(f); }

CForm base_dual(std::vector<int> I) { return cq(dual_form<Rational>(I, 4)); }

bool distinct(const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] == v[j]) return false;
    return true;
}

/// ½ X_bc α^b ∧ α^c on the base coframe.
CForm base_two_form(const std::array<std::array<Rational, 4>, 4>& x) {
    CForm r(4, 2);
    for (int b = 0; b < 4; ++b)
        for (int c = b + 1; c < 4; ++c)
            if (!x[b][c].is_zero()) r.add(static_cast<Mask>(bit(b) | bit(c)), CQ(x[b][c]));
    return r;
}

CForm base_one_form(const std::array<Rational, 4>& x) {
    CForm r(4, 1);
    for (int b = 0; b < 4; ++b)
        if (!x[b].is_zero()) r.add(bit(b), CQ(x[b]));
    return r;
}

/// l̄ M r = l† B M r.
CQ sandwich(const GammaSystem& g, const Spinor& l, const Gamma& M, const Spinor& r) {
    Spinor mr = matmul(M, r);
    return pair(g, l, mr);
}

SF spinor_times(const Spinor& v, const CForm& f) {
    SF r;
    for (int k = 0; k < 4; ++k) r[k] = f.scaled(v(k));
    return r;
}

CForm row_pair(const Eigen::Matrix<CQ, 1, 4>& row, const SF& s) {
    CForm r(s[0].dim(), s[0].degree());
    for (int k = 0; k < 4; ++k) r += s[k].scaled(row(k));
    return r;
}

void require_gfb_equivariant(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene,
                             CurvatureResult& curv, EquivarianceResult& eq) {
    curv = curvature_torsion(spec, scene);
    if (!curv.gfb) throw NotGFB("scene '" + scene.name + "' is not a generalised frame bundle");
    eq = check_equivariance(spec, g, scene, scene.psi);
    if (!eq.equivariant) throw NotEquivariant("Ψ is not equivariant on scene '" + scene.name + "'");
}

template <class F>
bool all_of_forms(const BaseResiduals& r, F&& pred, bool torsion, bool einstein, bool dirac) {
    if (torsion)
        for (const auto& row : r.torsion)
            for (const auto& f : row)
                if (!pred(f)) return false;
    if (einstein)
        for (const auto& f : r.einstein)
            if (!pred(f)) return false;
    if (dirac)
        for (const auto& f : r.dirac)
            if (!pred(f)) return false;
    return true;
}

double norm_over(const BaseResiduals& r, bool torsion, bool einstein, bool dirac) {
    double n = 0;
    all_of_forms(r, [&](const CForm& f) { n = std::max(n, max_abs(f)); return true; }, torsion, einstein, dirac);
    return n;
}

/// The restricted coframe pairing written with the lifted dual forms:
/// ½κ_i^bc (ε^i∧Ω^D∧ϖ^(7)_bcD + ε^d∧Ω^i∧ϖ^(7)_bcd)
///  − ½ ε^b ∧ (Ψ̄γ^a d^ωΨ − d^ωΨ̄ γ^a Ψ) ∧ ϖ^(8)_ab
///  + ½ ε^i ∧ Ψ̄{σ_i, γ^(9)}Ψ − m Ψ̄Ψ ε^b ∧ ϖ^(9)_b.
CForm lifted_coframe_pairing(const LieAlgebraSpec& spec, const Evaluator<Rational>& ev,
                             const std::array<CForm, kCoframeDim>& eps) {
    const auto kappa = build_kappa(spec);
    const auto& gam = ev.gam();
    SF psi = values(ev.psi()), psibar = values(ev.psibar());
    CForm r(kCoframeDim, kCoframeDim);
    for (int i = 0; i < kRot; ++i) {
        const int I = kTrans + i;
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                const Rational& k = kappa(I, b, c);
                if (k.is_zero()) continue;
                CForm acc(kCoframeDim, kCoframeDim);
                for (int D = 0; D < kCoframeDim; ++D)
                    if (distinct({b, c, D})) acc += wedge(eps[I], cq(wedge(ev.Omega(D), ev.d7(b, c, D))));
                for (int d = 0; d < 4; ++d)
                    if (distinct({b, c, d})) acc += wedge(eps[d], cq(wedge(ev.Omega(I), ev.d7(b, c, d))));
                r += acc.scaled(CQ(k / 2));
            }
    }
    for (int a = 0; a < 4; ++a) {
        CForm cur = contract(psibar, mat_apply(gam.gamma[a], ev.dw_psi())) -
                    contract(ev.dw_psibar(), mat_apply(gam.gamma[a], psi));
        for (int b = 0; b < 4; ++b)
            if (a != b) r -= wedge(eps[b], cur, cq(ev.d8(a, b))).scaled(kHalf);
    }
    for (int i = 0; i < kRot; ++i)
        for (int a = 0; a < 4; ++a) {
            CMat4<Rational> anti = matmul(gam.sigma[i], gam.gamma[a]) + matmul(gam.gamma[a], gam.sigma[i]);
            CQ v = contract(psibar, mat_apply(anti, psi)).coef(0);
            r += wedge(eps[kTrans + i], cq(ev.d9(a))).scaled(v * kHalf);
        }
    CQ mass = CQ(ev.scene().mass) * contract(psibar, psi).coef(0);
    for (int b = 0; b < 4; ++b) r -= wedge(eps[b], cq(ev.d9(b))).scaled(mass);
    return r;
}

/// γ^(9) ∧ d^ωΨ − ½ (d^ω γ^(9)) Ψ + m Ψ ϖ^(10), with d^ω γ^(9) expanded
/// as d(γ^a ϖ^(9)_a) + ω^i ∧ [σ_i, γ^a] ϖ^(9)_a.
SF lifted_dirac(const Evaluator<Rational>& ev) {
    const auto& gam = ev.gam();
    const auto& geo = ev.geo();
    SF psi = values(ev.psi());
    SF r = ev.gamma9_wedge(ev.dw_psi());
    for (int a = 0; a < 4; ++a) {
        SF g_psi = mat_apply(gam.gamma[a], psi);
        r = r - scale(wedge_left(cq(geo.d(ev.d9(a))), g_psi), kHalf);
        for (int i = 0; i < kRot; ++i) {
            CMat4<Rational> com = matmul(gam.sigma[i], gam.gamma[a]) - matmul(gam.gamma[a], gam.sigma[i]);
            r = r - scale(wedge_left(cq(wedge(geo.gen(kTrans + i), ev.d9(a))), mat_apply(com, psi)), kHalf);
        }
    }
    r = r + wedge_left(cq(geo.vol()), scale(psi, CQ(ev.scene().mass)));
    return r;
}

SF restrict_spinor(const SF& s) {
    SF r;
    for (int k = 0; k < 4; ++k) r[k] = restrict_dim(strip_volume_factors(s[k], VolumeFactor::Omega6), 4);
    return r;
}

}  // namespace

std::array<std::array<CQ, 4>, 4> BaseResiduals::einstein_table() const {
    std::array<std::array<CQ, 4>, 4> t{};
    for (int b = 0; b < 4; ++b)
        for (int e = 0; e < 4; ++e) t[b][e] = wedge(CForm::generator(4, e), einstein[b]).coef(full_mask(4));
    return t;
}

double BaseResiduals::norm_torsion() const { return norm_over(*this, true, false, false); }
double BaseResiduals::norm_einstein() const { return norm_over(*this, false, true, false); }
double BaseResiduals::norm_dirac() const { return norm_over(*this, false, false, true); }
bool BaseResiduals::torsion_zero() const {
    return all_of_forms(*this, [](const CForm& f) { return f.zero(); }, true, false, false);
}
bool BaseResiduals::einstein_zero() const {
    return all_of_forms(*this, [](const CForm& f) { return f.zero(); }, false, true, false);
}
bool BaseResiduals::dirac_zero() const {
    return all_of_forms(*this, [](const CForm& f) { return f.zero(); }, false, false, true);
}

BaseResiduals base_ecd_residuals(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene) {
    CurvatureResult curv;
    EquivarianceResult eq;
    require_gfb_equivariant(spec, g, scene, curv, eq);
    const auto kappa = build_kappa(spec);

    Spinor psi;
    for (int k = 0; k < 4; ++k) psi(k) = scene.psi[k].value;
    std::array<Spinor, 4> S;
    for (int a = 0; a < 4; ++a)
        for (int k = 0; k < 4; ++k) S[a](k) = eq.S[k][a];
    std::array<CForm, kCoframeDim> Om;
    for (int A = 0; A < kCoframeDim; ++A) Om[A] = base_two_form(curv.Omega_bc[A]);
    const CQ m(scene.mass);

    BaseResiduals r;
    r.scene = scene.name;
    for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
            CForm t(4, 3);
            if (b != c) {
                for (int d = 0; d < 4; ++d)
                    if (d != b && d != c) t += wedge(Om[d], base_dual({b, c, d}));
                Gamma com = matmul(g.gamma_lower[b], g.gamma_lower[c]) - matmul(g.gamma_lower[c], g.gamma_lower[b]);
                for (int a = 0; a < 4; ++a) {
                    Gamma anti = matmul(com, g.gamma[a]) + matmul(g.gamma[a], com);
                    t += base_dual({a}).scaled(sandwich(g, psi, anti, psi) * CQ(Rational(1, 16)));
                }
            }
            r.torsion[b][c] = t;
        }
    for (int b = 0; b < 4; ++b) {
        CForm e(4, 3);
        for (int i = 0; i < kRot; ++i)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    if (distinct({b, c, d}) && !kappa(kTrans + i, c, d).is_zero())
                        e += wedge(Om[kTrans + i], base_dual({b, c, d})).scaled(CQ(kappa(kTrans + i, c, d) / 2));
        for (int a = 0; a < 4; ++a) {
            if (a == b) continue;
            CForm cur(4, 1);
            for (int c = 0; c < 4; ++c) {
                CQ v = sandwich(g, psi, g.gamma[a], S[c]) - sandwich(g, S[c], g.gamma[a], psi);
                if (!is_zero(v)) cur.add(bit(c), v);
            }
            e -= wedge(cur, base_dual({a, b})).scaled(kHalf);
        }
        e -= base_dual({b}).scaled(m * pair(g, psi, psi));
        r.einstein[b] = e;
    }
    SF dirac = spinor_zero<CQ>(4, 4);
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            dirac = dirac + spinor_times(matmul(g.gamma[a], S[c]), wedge(base_dual({a}), CForm::generator(4, c)));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b) dirac = dirac - scale(spinor_times(matmul(g.gamma[a], psi), wedge(Om[b], base_dual({a, b}))), kHalf);
    dirac = dirac + spinor_times(psi, base_dual({}).scaled(m));
    r.dirac = dirac;
    return r;
}

std::array<Form<CJet<Rational>>, kCoframeDim> equivariant_variation(const LieAlgebraSpec& spec, const EpsCoef& eps,
                                                                    const std::array<EpsCoef, 4>* trans) {
    std::array<Form<CJet<Rational>>, kCoframeDim> r;
    for (int A = 0; A < kCoframeDim; ++A) {
        r[A] = Form<CJet<Rational>>(kCoframeDim, 1);
        for (int c = 0; c < 4; ++c) {
            CJet<Rational> j{CQ(eps[A][c])};
            j.grad.assign(kCoframeDim, CQ(0));
            if (trans)
                for (int t = 0; t < 4; ++t) j.grad[t] = CQ((*trans)[t][A][c]);
            // ∂_j ε^A_c = ε^A_b c^b_jc − c^A_jB ε^B_c
            for (int J = kTrans; J < kCoframeDim; ++J) {
                Rational v = 0;
                for (int b = 0; b < 4; ++b) v += eps[A][b] * spec.c[b][J][c];
                for (int B = 0; B < kCoframeDim; ++B) v -= spec.c[A][J][B] * eps[B][c];
                j.grad[J] = CQ(v);
            }
            if (!is_zero(j)) r[A].add(bit(c), j);
        }
    }
    return r;
}

std::vector<HorizontalVariation> lift_basis() {
    std::vector<HorizontalVariation> out;
    for (int A = 0; A < kCoframeDim; ++A)
        for (int b = 0; b < 4; ++b) {
            HorizontalVariation v;
            v.eps[A][b] = 1;
            v.phi(b % 4) = CQ(1);
            out.push_back(v);
        }
    return out;
}

LiftVerdict lift_compare(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene,
                         const HorizontalVariation& var) {
    BaseResiduals base = base_ecd_residuals(spec, g, scene);
    const auto kappa = build_kappa(spec);
    Evaluator<Rational> ev(spec, g, scene);
    const auto& geo = ev.geo();

    auto eps_jets = equivariant_variation(spec, var.eps);
    std::array<CForm, kCoframeDim> eps;
    for (int A = 0; A < kCoframeDim; ++A) eps[A] = values(eps_jets[A]);
    CForm lifted = lifted_coframe_pairing(spec, ev, eps);

    LiftVerdict v;
    // base side: Σ_i ε^i ∧ ½κ_i^bc R^T_bc + Σ_b ε^b ∧ R^E_b
    {
        CForm pairing(4, 4);
        for (int i = 0; i < kRot; ++i) {
            CForm e = base_one_form(var.eps[kTrans + i]);
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    if (!kappa(kTrans + i, b, c).is_zero())
                        pairing += wedge(e, base.torsion[b][c]).scaled(CQ(kappa(kTrans + i, b, c) / 2));
        }
        for (int b = 0; b < 4; ++b) pairing += wedge(base_one_form(var.eps[b]), base.einstein[b]);
        v.coframe_base = restrict_dim(strip_volume_factors(lifted, VolumeFactor::Omega6), 4) == pairing;
    }
    SF dirac = lifted_dirac(ev);
    Eigen::Matrix<CQ, 1, 4> phibar = dirac_adjoint(g, var.phi);
    v.dirac_base = row_pair(phibar, restrict_spinor(dirac)) == row_pair(phibar, base.dirac);

    // residual side, with equivariant jets
    {
        auto E = ev.E_coframe();
        CForm total(kCoframeDim, kCoframeDim);
        for (int D = 0; D < kCoframeDim; ++D) total += wedge(eps[D], E[D]);
        Form<CJet<Rational>> exact(kCoframeDim, 9);
        for (int A = 0; A < kCoframeDim; ++A) {
            Form<CJet<Rational>> x(kCoframeDim, 8);
            for (int B = 0; B < kCoframeDim; ++B)
                for (int C = B + 1; C < kCoframeDim; ++C) {
                    if (C < kTrans) continue;  // constrained Λ²R⁴ slots
                    const auto& p = scene.P[A][B][C];
                    if (!is_zero(p)) x += cast<CJet<Rational>>(ev.d8(B, C)).scaled(p);
                }
            exact += wedge(eps_jets[A], x);
        }
        total += geo.d(exact);
        v.coframe_residual = total == lifted;
    }
    {
        std::array<Spinor, 4> trans{};
        auto phi_jets = equivariant_spinor(g, var.phi, trans);
        SpinorForm<CJet<Rational>> phi = spinor_field(phi_jets);
        GammaT<Rational> gt(g);
        SpinorForm<CJet<Rational>> phib = bar(phi, gt.B);
        CForm lhs = contract(values(phib), ev.E_psibar());
        lhs -= geo.d(contract(phib, ev.k9())).scaled(kHalf);
        CForm rhs = -contract(values(phib), dirac);
        v.dirac_residual = lhs == rhs;
    }
    return v;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Mask> masks_of_degree(int p) {
    std::vector<Mask> out;
    for (unsigned m = 0; m < (1u << kCoframeDim); ++m)
        if (popcount(static_cast<Mask>(m)) == p) out.push_back(static_cast<Mask>(m));
    return out;
}

}  // namespace

namespace {

/// Common kernel of the linear maps f ↦ op(f)[i] on constant p-forms.
/// Basis forms only mix within connected components of the operator, so
/// the kernel is found block by block.  With rot_row, the pure-rotation
/// coefficient is also required to vanish.
template <class Op>
std::vector<Form<Rational>> common_kernel(int degree, int image_degree, Op&& op, bool rot_row) {
    const auto cols = masks_of_degree(degree);
    const auto rows = masks_of_degree(image_degree);
    std::map<Mask, int> row_index;
    for (std::size_t k = 0; k < rows.size(); ++k) row_index[rows[k]] = static_cast<int>(k);
    const int n = static_cast<int>(cols.size());

    // union-find over columns joined through shared image rows
    std::vector<std::vector<std::tuple<int, int, Rational>>> image(static_cast<std::size_t>(n));
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<int, int> owner;  // image row -> some column hitting it
    for (int col = 0; col < n; ++col) {
        auto imgs = op(Form<Rational>::basis(kCoframeDim, cols[col]));
        for (std::size_t i = 0; i < imgs.size(); ++i)
            for (const auto& [m, val] : imgs[i].terms()) {
                int row = row_index.at(m);
                image[col].emplace_back(static_cast<int>(i), row, val);
                auto [it, fresh] = owner.emplace(row, col);
                if (!fresh) parent[find(it->second)] = find(col);
            }
    }
    std::map<int, std::vector<int>> blocks;
    for (int k = 0; k < n; ++k) blocks[find(k)].push_back(k);

    std::vector<Form<Rational>> out;
    for (const auto& [root, members] : blocks) {
        (void)root;
        std::map<int, int> local_row;
        for (int k : members)
            for (const auto& [i, row, val] : image[k]) local_row.emplace(row, 0);
        int nr = 0;
        for (auto& [row, slot] : local_row) slot = nr++;
        int nops = 0;
        for (int k : members)
            for (const auto& [i, row, val] : image[k]) nops = std::max(nops, i + 1);
        const int bn = static_cast<int>(members.size());
        bool has_rot = false;
        for (int k : members) has_rot |= !(cols[k] & kTransMask);
        const bool extra = rot_row && has_rot;
        QMat M = QMat::Zero(nops * nr + (extra ? 1 : 0), bn);
        for (int k = 0; k < bn; ++k) {
            for (const auto& [i, row, val] : image[members[k]]) M(i * nr + local_row.at(row), k) = val;
            if (extra && !(cols[members[k]] & kTransMask)) M(nops * nr, k) = 1;
        }
        QMat K;
        if (M.rows() == 0) {
            K = QMat::Identity(bn, bn);
        } else {
            Eigen::FullPivLU<QMat> lu(M);
            if (lu.rank() == bn) continue;
            K = lu.kernel();
        }
        for (Eigen::Index j = 0; j < K.cols(); ++j) {
            Form<Rational> f(kCoframeDim, degree);
            for (int k = 0; k < bn; ++k)
                if (!K(k, j).is_zero()) f.add(cols[members[k]], K(k, j));
            if (!f.zero()) out.push_back(f);
        }
    }
    return out;
}

}  // namespace

std::vector<Form<Rational>> invariant_forms(const LieAlgebraSpec& spec, const Scene& scene, int degree,
                                            bool in_ideal) {
    if (scene.mode != Mode::Constant) throw ModeUnsupported("invariant forms need a CONSTANT scene");
    Geometry<Rational> geo(spec, scene.F);
    auto op = [&](const Form<Rational>& f) {
        std::vector<Form<Rational>> r;
        for (int i = 0; i < kRot; ++i) r.push_back(geo.lie(kTrans + i, f));
        return r;
    };
    return common_kernel(degree, degree, op, in_ideal);
}

CancellationVerdict cancellation_check(const LieAlgebraSpec& spec, const Scene& scene, const Form<Rational>& E,
                                       const Form<Rational>& P5) {
    if (scene.mode != Mode::Constant) throw ModeUnsupported("the orbit cancellation check needs a CONSTANT scene");
    if (E.degree() != kRot || P5.degree() != kRot - 1)
        throw DegreeUnderflow("cancellation check expects a 6-form and a 5-form");
    Geometry<Rational> geo(spec, scene.F);
    for (int i = 0; i < kRot; ++i)
        if (!geo.lie(kTrans + i, E).zero()) throw NotInvariant("E is not invariant under " + spec.labels[kTrans + i]);
    CancellationVerdict v;
    v.hypothesis = mod_alpha_reduce(E - geo.d(P5)).zero();
    v.reduced = E.coef(kRotMask);
    v.conclusion = mod_alpha_reduce(E).zero();
    return v;
}

}  // namespace ecd

namespace ecd {

std::vector<CancellationPair> cancellation_pairs(const LieAlgebraSpec& spec, const Scene& scene, int count,
                                                 std::mt19937_64& rng) {
    auto ideal6 = invariant_forms(spec, scene, kRot, true);
    std::bernoulli_distribution coin(0.3);
    std::vector<CancellationPair> out;
    for (int t = 0; t < count; ++t) {
        CancellationPair p{Form<Rational>(kCoframeDim, kRot), Form<Rational>(kCoframeDim, kRot - 1)};
        for (Mask m = 0; m <= full_mask(kCoframeDim); ++m)
            if (popcount(m) == kRot - 1 && coin(rng)) p.P5.add(m, random_rational(rng));
        // pure-rotation legs keep P5 away from the α ideal
        for (int i = 0; i < kRot; ++i)
            p.P5.add(static_cast<Mask>(kRotMask & ~bit(kTrans + i)), Rational(6) + random_rational(rng));
        for (const auto& f : ideal6) p.E += f.scaled(Rational(6) + random_rational(rng));
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace ecd
