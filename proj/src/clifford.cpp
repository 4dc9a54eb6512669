#include "ecd/clifford.hpp"

namespace ecd {

namespace {

Gamma zero4() { return Gamma::Constant(CQ(0)); }

Gamma block(const Eigen::Matrix<CQ, 2, 2>& tl, const Eigen::Matrix<CQ, 2, 2>& tr,
            const Eigen::Matrix<CQ, 2, 2>& bl, const Eigen::Matrix<CQ, 2, 2>& br) {
    Gamma g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            g(i, j) = tl(i, j);
            g(i, j + 2) = tr(i, j);
            g(i + 2, j) = bl(i, j);
            g(i + 2, j + 2) = br(i, j);
        }
    return g;
}

using M2 = Eigen::Matrix<CQ, 2, 2>;

M2 pauli(int k) {
    const CQ i = CQ::i(), o(0), l(1);
    M2 m;
    if (k == 0) m << l, o, o, l;
    if (k == 1) m << o, l, l, o;
    if (k == 2) m << o, -i, i, o;
    if (k == 3) m << l, o, o, -l;
    return m;
}

M2 scale(const M2& m, const CQ& s) {
    M2 r;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) r(a, b) = m(a, b) * s;
    return r;
}

Gamma scale(const Gamma& m, const CQ& s) {
    Gamma r;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) r(a, b) = m(a, b) * s;
    return r;
}

}  // namespace

Gamma commutator(const Gamma& a, const Gamma& b) { return matmul(a, b) - matmul(b, a); }
Gamma anticommutator(const Gamma& a, const Gamma& b) { return matmul(a, b) + matmul(b, a); }

Gamma GammaSystem::sigma_of(int A) const { return is_rotation(A) ? sigma[A - kTrans] : zero4(); }

GammaSystem build_gamma(const LieAlgebraSpec& spec) {
    GammaSystem s;
    s.sig = spec.sig;
    const CQ i = CQ::i();
    M2 z = scale(pauli(0), CQ(0)), id = pauli(0);
    if (spec.sig == Signature{1, 3}) {
        // i times the Dirac-basis matrices
        s.gamma[0] = scale(block(id, z, z, scale(id, CQ(-1))), i);
        for (int k = 1; k < 4; ++k) s.gamma[k] = scale(block(z, pauli(k), scale(pauli(k), CQ(-1)), z), i);
        s.B = block(id, z, z, scale(id, CQ(-1)));
    } else if (spec.sig == Signature{4, 0}) {
        s.gamma[0] = scale(block(z, id, id, z), i);
        for (int k = 1; k < 4; ++k)
            s.gamma[k] = scale(block(z, scale(pauli(k), -i), scale(pauli(k), i), z), i);
        s.B = Gamma::Identity();
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) s.B(a, b) = CQ(a == b ? 1 : 0);
    } else {
        throw UnsupportedSignature("no spinor module for this signature");
    }
    for (int a = 0; a < 4; ++a) s.gamma_lower[a] = scale(s.gamma[a], CQ(spec.eta(a, a)));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            s.sigma_ab[a][b] = scale(commutator(s.gamma[a], s.gamma_lower[b]), CQ(Rational(1, 4)));
    for (int k = 0; k < kRot; ++k) {
        Gamma acc = zero4();
        for (int b = 0; b < 4; ++b)
            for (int a = 0; a < 4; ++a)
                if (!spec.rho[k][b][a].is_zero()) acc += scale(s.sigma_ab[a][b], CQ(spec.rho[k][b][a] / 2));
        s.sigma[k] = acc;
    }
    return s;
}

Eigen::Matrix<CQ, 1, 4> dirac_adjoint(const GammaSystem& sys, const Spinor& psi) {
    return matmul(dagger(psi), sys.B);
}

CQ pair(const GammaSystem& sys, const Spinor& a, const Spinor& b) {
    return matmul(dirac_adjoint(sys, a), b)(0, 0);
}

Representation spinor_module(const GammaSystem& sys) {
    Representation r{"spinor", 4, {}};
    for (int A = 0; A < kCoframeDim; ++A) {
        Gamma g = sys.sigma_of(A);
        CMat<Rational> m(4, 4);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) m(a, b) = g(a, b);
        r.gen.push_back(m);
    }
    return r;
}

MatrixForm gamma_dual(const GammaSystem& sys, int ambient) {
    if (ambient != 4 && ambient != kCoframeDim) throw BadAmbient("ambient dimension must be 4 or 10");
    MatrixForm out;
    for (int a = 0; a < 4; ++a) out.terms.emplace_back(sys.gamma[a], dual_form<Rational>({a}, ambient));
    return out;
}

}  // namespace ecd
