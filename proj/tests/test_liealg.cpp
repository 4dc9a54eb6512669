#include "doctest.h"
#include "oracles.hpp"

#include "ecd/liealg.hpp"

using namespace ecd;

namespace {

const std::vector<std::pair<int, int>> kSigs = {{1, 3}, {4, 0}, {0, 4}};

Elem rand_elem(std::mt19937_64& rng) {
    Elem e(kCoframeDim);
    for (auto& x : e) x = oracle::rand_q(rng);
    return e;
}

}  // namespace

TEST_CASE("signatures") {
    auto s = build_euclidean_or_poincare(1, 3);
    CHECK(s.dim == 10);
    CHECK(s.eta_diag == std::array<int, 4>{1, -1, -1, -1});
    CHECK(build_euclidean_or_poincare(4, 0).eta_diag == std::array<int, 4>{1, 1, 1, 1});
    CHECK_THROWS_AS(build_euclidean_or_poincare(2, 2), UnsupportedSignature);
    CHECK_THROWS_AS(build_euclidean_or_poincare(1, 2), UnsupportedSignature);
    CHECK(s.labels[4] == "M01");
    CHECK(s.rotation_index(2, 3) == 9);
}

TEST_CASE("structure constant laws") {
    for (auto [p, q] : kSigs) {
        auto s = build_euclidean_or_poincare(p, q);
        for (int A = 0; A < 10; ++A) {
            Rational trace = 0;
            for (int B = 0; B < 10; ++B) {
                trace += s.c[B][A][B];
                for (int C = 0; C < 10; ++C) CHECK(s.c[C][A][B] == -s.c[C][B][A]);
            }
            CHECK(trace == 0);  // unimodular
        }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int C = 0; C < 10; ++C) CHECK(s.c[C][a][b] == 0);
        for (int A = 0; A < 10; ++A)
            for (int B = 0; B < 10; ++B)
                for (int C = 0; C < 10; ++C)
                    for (int E = 0; E < 10; ++E) {
                        Rational j = 0;
                        for (int D = 0; D < 10; ++D)
                            j += s.c[D][A][B] * s.c[E][D][C] + s.c[D][B][C] * s.c[E][D][A] + s.c[D][C][A] * s.c[E][D][B];
                        REQUIRE(j == 0);
                    }
        for (int i = 0; i < kRot; ++i)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    Rational v = 0;
                    for (int c = 0; c < 4; ++c) v += s.eta(c, b) * s.rho[i][c][a] + s.eta(a, c) * s.rho[i][c][b];
                    CHECK(v == 0);
                }
    }
}

TEST_CASE("bracket matches the 5x5 affine commutator on all basis pairs") {
    for (auto [p, q] : kSigs) {
        auto s = build_euclidean_or_poincare(p, q);
        for (int A = 0; A < 10; ++A)
            for (int B = 0; B < 10; ++B) {
                QMat x = affine_matrix(s, basis_element(A)), y = affine_matrix(s, basis_element(B));
                QMat com = QMat(x * y) - QMat(y * x);
                Elem expect = from_affine_matrix(s, com);
                CHECK(affine_matrix(s, expect) == com);
                CHECK(bracket(s, basis_element(A), basis_element(B)) == expect);
            }
    }
}

TEST_CASE("bracket examples") {
    auto s = build_euclidean_or_poincare(1, 3);
    std::mt19937_64 rng(21);
    Elem X = rand_elem(rng), Y = rand_elem(rng), Z = rand_elem(rng);
    CHECK(bracket(s, X, X) == Elem(10, Rational(0)));
    Elem j(10, Rational(0));
    Elem t1 = bracket(s, X, bracket(s, Y, Z)), t2 = bracket(s, Y, bracket(s, Z, X)), t3 = bracket(s, Z, bracket(s, X, Y));
    for (int k = 0; k < 10; ++k) CHECK(t1[k] + t2[k] + t3[k] == 0);
    // (M_01)^b_1 = η_01 δ^b_1 − η_11 δ^b_0 = +δ^b_0 in (+−−−), so [M_01, P_1] = P_0
    Elem r = bracket(s, basis_element(4), basis_element(1));
    CHECK(r == [] { Elem e(10, Rational(0)); e[0] = 1; return e; }());
    CHECK_THROWS_AS(bracket(s, Elem(3), Y), DimensionMismatch);
}

TEST_CASE("module actions") {
    auto s = build_euclidean_or_poincare(1, 3);
    ModuleRegistry reg(s);
    std::mt19937_64 rng(22);
    Elem xi = rand_elem(rng);

    CVec<Rational> one = CVec<Rational>::Constant(1, Complex<Rational>(3));
    CHECK(is_zero_matrix(coadjoint_action(reg, "scalar", xi, one)));

    for (int i = 0; i < kRot; ++i)
        for (int a = 0; a < 4; ++a) {
            CVec<Rational> e = CVec<Rational>::Constant(4, Complex<Rational>(0));
            e(a) = 1;
            CVec<Rational> r = coadjoint_action(reg, "vector", basis_element(kTrans + i), e);
            for (int b = 0; b < 4; ++b) CHECK(r(b) == Complex<Rational>(s.rho[i][b][a]));
        }

    const auto& cc = reg.tensor("covector", "covector");
    CVec<Rational> eta = CVec<Rational>::Constant(16, Complex<Rational>(0));
    for (int a = 0; a < 4; ++a) eta(a * 4 + a) = s.eta_diag[a];
    for (int A = 0; A < 10; ++A) CHECK(is_zero_matrix(coadjoint_action(reg, cc.name, basis_element(A), eta)));

    // dual module generators are minus transposes, on every basis pair
    for (std::string m : {"vector", "adjoint"}) {
        const auto& r = reg.get(m);
        const auto& d = reg.get(m == "vector" ? "covector" : "coadjoint");
        for (int A = 0; A < 10; ++A)
            for (int i = 0; i < r.dim; ++i)
                for (int j = 0; j < r.dim; ++j) CHECK(d.gen[A](i, j) == -r.gen[A](j, i));
    }

    // Leibniz on tensor products
    const auto& va = reg.tensor("vector", "adjoint");
    CVec<Rational> v(4), w(10);
    for (int k = 0; k < 4; ++k) v(k) = oracle::rand_q(rng);
    for (int k = 0; k < 10; ++k) w(k) = oracle::rand_q(rng);
    CVec<Rational> vw(40);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 10; ++j) vw(i * 10 + j) = v(i) * w(j);
    CVec<Rational> lhs = coadjoint_action(reg, va.name, xi, vw);
    CVec<Rational> xv = coadjoint_action(reg, "vector", xi, v), xw = coadjoint_action(reg, "adjoint", xi, w);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 10; ++j) CHECK(lhs(i * 10 + j) == xv(i) * w(j) + v(i) * xw(j));

    // the adjoint action is the bracket
    CVec<Rational> ev(10);
    Elem Y = rand_elem(rng);
    for (int k = 0; k < 10; ++k) ev(k) = Y[k];
    CVec<Rational> ad = coadjoint_action(reg, "adjoint", xi, ev);
    Elem br = bracket(s, xi, Y);
    for (int k = 0; k < 10; ++k) CHECK(ad(k) == Complex<Rational>(br[k]));

    CHECK_THROWS_AS(coadjoint_action(reg, "nonsense", xi, v), UnknownModule);
}
