#include "ecd/liealg.hpp"

namespace ecd {

namespace {

const char* kAxis = "0123";

}  // namespace

int LieAlgebraSpec::rotation_index(int a, int b) const {
    for (int i = 0; i < kRot; ++i)
        if (pairs[i] == std::make_pair(a, b)) return kTrans + i;
    throw std::out_of_range("no rotation generator for this index pair");
}

std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> LieAlgebraSpec::structure_map() const {
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> out;
    for (int A = 0; A < dim; ++A)
        for (int B = A + 1; B < dim; ++B)
            for (int C = 0; C < dim; ++C)
                if (!c[C][A][B].is_zero()) out[{A, B}].emplace_back(C, c[C][A][B]);
    return out;
}

LieAlgebraSpec build_euclidean_or_poincare(int p, int q) {
    LieAlgebraSpec s;
    if (p == 1 && q == 3)
        s.eta_diag = {1, -1, -1, -1};
    else if (p == 4 && q == 0)
        s.eta_diag = {1, 1, 1, 1};
    else if (p == 0 && q == 4)
        s.eta_diag = {-1, -1, -1, -1};
    else
        throw UnsupportedSignature("signature (" + std::to_string(p) + "," + std::to_string(q) +
                                   ") is not supported");
    s.sig = {p, q};

    int i = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) s.pairs[i++] = {a, b};

    for (int a = 0; a < 4; ++a) s.labels.push_back(std::string("P") + kAxis[a]);
    for (auto [a, b] : s.pairs) s.labels.push_back(std::string("M") + kAxis[a] + kAxis[b]);

    for (int k = 0; k < kRot; ++k) {
        auto [a, b] = s.pairs[k];
        for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) {
                Rational v = s.eta(a, d) * (c == b ? 1 : 0) - s.eta(b, d) * (c == a ? 1 : 0);
                s.rho[k][c][d] = v;
            }
    }

    for (auto& plane : s.c)
        for (auto& row : plane)
            for (auto& v : row) v = 0;

    // [M_i, M_j]: decompose the matrix commutator; the coefficient of ρ_k
    // with pair (a,b) is read off entry [b][a] divided by η_aa.
    for (int x = 0; x < kRot; ++x)
        for (int y = 0; y < kRot; ++y) {
            Mat4Q com{};
            for (int r = 0; r < 4; ++r)
                for (int col = 0; col < 4; ++col) {
                    Rational acc = 0;
                    for (int t = 0; t < 4; ++t)
                        acc += s.rho[x][r][t] * s.rho[y][t][col] - s.rho[y][r][t] * s.rho[x][t][col];
                    com[r][col] = acc;
                }
            for (int k = 0; k < kRot; ++k) {
                auto [a, b] = s.pairs[k];
                s.c[kTrans + k][kTrans + x][kTrans + y] = com[b][a] / s.eta(a, a);
            }
        }
    // [M_i, P_a] = ρ_i^b_a P_b
    for (int k = 0; k < kRot; ++k)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                s.c[b][kTrans + k][a] = s.rho[k][b][a];
                s.c[b][a][kTrans + k] = -s.rho[k][b][a];
            }
    return s;
}

Elem basis_element(int A) {
    Elem e(kCoframeDim, Rational(0));
    e[A] = 1;
    return e;
}

Elem bracket(const LieAlgebraSpec& spec, const Elem& X, const Elem& Y) {
    if (static_cast<int>(X.size()) != spec.dim || static_cast<int>(Y.size()) != spec.dim)
        throw DimensionMismatch("algebra elements must have length " + std::to_string(spec.dim));
    Elem out(spec.dim, Rational(0));
    for (int A = 0; A < spec.dim; ++A) {
        if (X[A].is_zero()) continue;
        for (int B = 0; B < spec.dim; ++B) {
            if (Y[B].is_zero()) continue;
            Rational xy = X[A] * Y[B];
            for (int C = 0; C < spec.dim; ++C)
                if (!spec.c[C][A][B].is_zero()) out[C] += spec.c[C][A][B] * xy;
        }
    }
    return out;
}

QMat affine_matrix(const LieAlgebraSpec& spec, const Elem& X) {
    QMat m = QMat::Constant(5, 5, Rational(0));
    for (int k = 0; k < kRot; ++k) {
        if (X[kTrans + k].is_zero()) continue;
        for (int r = 0; r < 4; ++r)
            for (int col = 0; col < 4; ++col) m(r, col) += X[kTrans + k] * spec.rho[k][r][col];
    }
    for (int a = 0; a < 4; ++a) m(a, 4) = X[a];
    return m;
}

Elem from_affine_matrix(const LieAlgebraSpec& spec, const QMat& m) {
    Elem X(kCoframeDim, Rational(0));
    for (int a = 0; a < 4; ++a) X[a] = m(a, 4);
    for (int k = 0; k < kRot; ++k) {
        auto [a, b] = spec.pairs[k];
        X[kTrans + k] = m(b, a) / spec.eta(a, a);
    }
    return X;
}

// ---------------------------------------------------------------------------

namespace {

CMat<Rational> zeros(int n) { return CMat<Rational>::Constant(n, n, Complex<Rational>(0)); }

}  // namespace

Representation scalar_module() {
    Representation r{"scalar", 1, {}};
    for (int A = 0; A < kCoframeDim; ++A) r.gen.push_back(zeros(1));
    return r;
}

Representation vector_module(const LieAlgebraSpec& spec) {
    Representation r{"vector", 4, {}};
    for (int A = 0; A < kCoframeDim; ++A) {
        CMat<Rational> g = zeros(4);
        if (is_rotation(A))
            for (int b = 0; b < 4; ++b)
                for (int a = 0; a < 4; ++a) g(b, a) = spec.rho[A - kTrans][b][a];
        r.gen.push_back(g);
    }
    return r;
}

Representation covector_module(const LieAlgebraSpec& spec) {
    Representation r = dual_module(vector_module(spec));
    r.name = "covector";
    return r;
}

Representation adjoint_module(const LieAlgebraSpec& spec) {
    Representation r{"adjoint", kCoframeDim, {}};
    for (int A = 0; A < kCoframeDim; ++A) {
        CMat<Rational> g = zeros(kCoframeDim);
        for (int C = 0; C < kCoframeDim; ++C)
            for (int B = 0; B < kCoframeDim; ++B) g(C, B) = spec.c[C][A][B];
        r.gen.push_back(g);
    }
    return r;
}

Representation coadjoint_module(const LieAlgebraSpec& spec) {
    Representation r = dual_module(adjoint_module(spec));
    r.name = "coadjoint";
    return r;
}

Representation dual_module(const Representation& r) {
    Representation d{r.name + "*", r.dim, {}};
    for (const auto& g : r.gen) {
        CMat<Rational> t = zeros(r.dim);
        for (int i = 0; i < r.dim; ++i)
            for (int j = 0; j < r.dim; ++j) t(i, j) = -g(j, i);
        d.gen.push_back(t);
    }
    return d;
}

Representation tensor_module(const Representation& a, const Representation& b) {
    Representation t{a.name + "⊗" + b.name, a.dim * b.dim, {}};
    for (std::size_t A = 0; A < a.gen.size(); ++A) {
        CMat<Rational> g = zeros(t.dim);
        for (int i = 0; i < a.dim; ++i)
            for (int j = 0; j < b.dim; ++j) {
                int row = i * b.dim + j;
                for (int k = 0; k < a.dim; ++k)
                    if (!is_zero(a.gen[A](i, k))) g(row, k * b.dim + j) += a.gen[A](i, k);
                for (int l = 0; l < b.dim; ++l)
                    if (!is_zero(b.gen[A](j, l))) g(row, i * b.dim + l) += b.gen[A](j, l);
            }
        t.gen.push_back(g);
    }
    return t;
}

ModuleRegistry::ModuleRegistry(const LieAlgebraSpec& spec) {
    add(scalar_module());
    add(vector_module(spec));
    add(covector_module(spec));
    add(adjoint_module(spec));
    add(coadjoint_module(spec));
}

void ModuleRegistry::add(Representation r) {
    std::string name = r.name;
    reps_[name] = std::move(r);
}

const Representation& ModuleRegistry::get(const std::string& name) const {
    auto it = reps_.find(name);
    if (it == reps_.end()) throw UnknownModule("unknown module '" + name + "'");
    return it->second;
}

const Representation& ModuleRegistry::tensor(const std::string& a, const std::string& b) {
    std::string name = a + "⊗" + b;
    if (!has(name)) add(tensor_module(get(a), get(b)));
    return get(name);
}

CVec<Rational> coadjoint_action(const ModuleRegistry& reg, const std::string& module, const Elem& xi,
                                const CVec<Rational>& v) {
    const Representation& r = reg.get(module);
    if (v.size() != r.dim || static_cast<int>(xi.size()) != kCoframeDim)
        throw DimensionMismatch("module element has the wrong length");
    CVec<Rational> out = CVec<Rational>::Constant(r.dim, Complex<Rational>(0));
    for (int A = 0; A < kCoframeDim; ++A) {
        if (xi[A].is_zero()) continue;
        Complex<Rational> x(xi[A]);
        for (int i = 0; i < r.dim; ++i)
            for (int j = 0; j < r.dim; ++j)
                if (!is_zero(r.gen[A](i, j)) && !is_zero(v(j))) out(i) += x * r.gen[A](i, j) * v(j);
    }
    return out;
}

}  // namespace ecd
