#include "ecd/scene.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ecd {

Cube<Rational> maurer_cartan_structure(const LieAlgebraSpec& spec) {
    Cube<Rational> F;
    for (int A = 0; A < kCoframeDim; ++A)
        for (int B = 0; B < kCoframeDim; ++B)
            for (int C = 0; C < kCoframeDim; ++C) F[A][B][C] = -spec.c[A][B][C];
    return F;
}

Cube<Rational> so5_structure(const LieAlgebraSpec& spec, int s) {
    // 5×5 generators: M5_(ab) = η5_ad δ^c_b − η5_bd δ^c_a, translations P_a = M5_(a4)
    std::array<Rational, 5> eta5{spec.eta(0, 0), spec.eta(1, 1), spec.eta(2, 2), spec.eta(3, 3), Rational(s)};
    auto gen5 = [&](int a, int b) {
        QMat m = QMat::Constant(5, 5, Rational(0));
        for (int c = 0; c < 5; ++c)
            for (int d = 0; d < 5; ++d) {
                Rational v = 0;
                if (a == d) v += eta5[a] * (c == b ? 1 : 0);
                if (b == d) v -= eta5[b] * (c == a ? 1 : 0);
                m(c, d) = v;
            }
        return m;
    };
    std::vector<std::pair<int, int>> pairs;  // global basis order
    for (int a = 0; a < 4; ++a) pairs.emplace_back(a, 4);
    for (auto p : spec.pairs) pairs.push_back(p);
    std::vector<QMat> basis;
    for (auto [a, b] : pairs) basis.push_back(gen5(a, b));

    Cube<Rational> F;
    for (int A = 0; A < kCoframeDim; ++A)
        for (int B = 0; B < kCoframeDim; ++B) {
            QMat com = QMat(basis[A] * basis[B]) - QMat(basis[B] * basis[A]);
            for (int C = 0; C < kCoframeDim; ++C) {
                auto [a, b] = pairs[C];
                F[C][A][B] = -(com(b, a) / eta5[a]);
            }
        }
    return F;
}

Scene flat_scene(int p, int q, const std::string& name) {
    auto spec = build_euclidean_or_poincare(p, q);
    Scene s;
    s.name = name;
    s.sig = spec.sig;
    s.F = maurer_cartan_structure(spec);
    auto kappa = build_kappa(spec);
    for (int A = 0; A < kCoframeDim; ++A)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) s.P[A][b][c] = CJet<Rational>(Complex<Rational>(kappa(A, b, c)));
    return s;
}

std::array<CJet<Rational>, 4> equivariant_spinor(const GammaSystem& g, const Spinor& value,
                                                  const std::array<Spinor, 4>& trans) {
    std::array<CJet<Rational>, 4> out;
    for (int k = 0; k < 4; ++k) {
        out[k].value = value(k);
        out[k].grad.assign(kCoframeDim, Complex<Rational>(0));
        for (int a = 0; a < 4; ++a) out[k].grad[a] = trans[a](k);
    }
    for (int i = 0; i < kRot; ++i) {
        Spinor sv = matmul(g.sigma[i], value);
        for (int k = 0; k < 4; ++k) out[k].grad[kTrans + i] = -sv(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Loader

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

[[noreturn]] void fail(const Line& l, const std::string& msg) {
    throw LoadError("line " + std::to_string(l.number) + ": " + msg);
}

int index_token(const Line& l, std::size_t k, int lo, int hi) {
    if (k >= l.tokens.size()) fail(l, "missing index");
    const std::string& t = l.tokens[k];
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) fail(l, "bad index '" + t + "'");
    int v = std::stoi(t);
    if (v < lo || v > hi) fail(l, "index " + t + " out of range");
    return v;
}

Rational number_token(const Line& l, std::size_t k) {
    if (k >= l.tokens.size()) fail(l, "missing value");
    try {
        return parse_rational(l.tokens[k]);
    } catch (const ParseError& e) {
        fail(l, e.what());
    }
}

void expect_count(const Line& l, std::size_t n) {
    if (l.tokens.size() != n) fail(l, "expected " + std::to_string(n) + " fields, got " + std::to_string(l.tokens.size()));
}

Complex<Rational> complex_at(const Line& l, std::size_t k) { return {number_token(l, k), number_token(l, k + 1)}; }

void ensure_grad(CJet<Rational>& j) {
    if (j.grad.empty()) j.grad.assign(kCoframeDim, Complex<Rational>(0));
}

}  // namespace

Scene parse_scene(const std::string& text, const std::string& name) {
    std::map<std::string, std::vector<Line>> sections;
    std::vector<std::string> order;
    std::string current;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        if (toks.size() == 1 && toks[0].size() > 2 && toks[0].front() == '[' && toks[0].back() == ']') {
            current = toks[0].substr(1, toks[0].size() - 2);
            static const std::set<std::string> known = {"signature", "mode", "F", "Psi", "Psi.grad", "P",
                                                        "P.grad", "K", "K.grad", "mass"};
            if (!known.count(current)) throw LoadError("line " + std::to_string(number) + ": unknown section [" + current + "]");
            if (sections.count(current)) throw LoadError("line " + std::to_string(number) + ": duplicate section [" + current + "]");
            sections[current];
            order.push_back(current);
            continue;
        }
        if (current.empty()) throw LoadError("line " + std::to_string(number) + ": data outside any section");
        sections[current].push_back({number, toks});
    }

    if (!sections.count("signature")) throw LoadError("missing [signature] section");
    Scene s;
    s.name = name;

    {
        const auto& lines = sections["signature"];
        if (lines.size() != 1) throw LoadError("[signature] needs exactly one line");
        std::string joined;
        for (const auto& t : lines[0].tokens) joined += t + " ";
        for (char& ch : joined)
            if (ch == '[' || ch == ']' || ch == ',' || ch == '=') ch = ' ';
        std::istringstream ss(joined);
        std::vector<int> nums;
        for (std::string t; ss >> t;) {
            if (t == "signature") continue;
            if (t.find_first_not_of("0123456789") != std::string::npos) fail(lines[0], "bad signature");
            nums.push_back(std::stoi(t));
        }
        if (nums.size() != 2) fail(lines[0], "signature needs two integers p q");
        s.sig = {nums[0], nums[1]};
    }
    LieAlgebraSpec spec;
    try {
        spec = build_euclidean_or_poincare(s.sig.p, s.sig.q);
        build_gamma(spec);
    } catch (const std::invalid_argument& e) {
        throw LoadError(std::string("unsupported signature: ") + e.what());
    }
    GammaSystem gam = build_gamma(spec);

    if (sections.count("mode")) {
        const auto& lines = sections["mode"];
        if (lines.size() != 1 || lines[0].tokens.size() != 1) throw LoadError("[mode] needs one word");
        const std::string& m = lines[0].tokens[0];
        if (m == "CONSTANT")
            s.mode = Mode::Constant;
        else if (m == "JET1")
            s.mode = Mode::Jet1;
        else
            fail(lines[0], "mode must be CONSTANT or JET1");
    }
    if (s.mode == Mode::Constant)
        for (const char* g : {"Psi.grad", "P.grad", "K.grad"})
            if (sections.count(g)) throw LoadError(std::string("[") + g + "] is not allowed in CONSTANT mode");

    // structure functions
    for (auto& plane : s.F)
        for (auto& row : plane)
            for (auto& v : row) v = 0;
    for (const auto& l : sections["F"]) {
        if (l.tokens[0] == "preset") {
            if (l.tokens.size() < 2) fail(l, "preset needs a name");
            if (l.tokens[1] == "maurer-cartan") {
                expect_count(l, 2);
                s.F = maurer_cartan_structure(spec);
            } else if (l.tokens[1] == "so5") {
                int sign = 1;
                if (l.tokens.size() == 3) {
                    if (l.tokens[2] == "-1") sign = -1;
                    else if (l.tokens[2] != "1" && l.tokens[2] != "+1") fail(l, "so5 sign must be +1 or -1");
                } else {
                    expect_count(l, 2);
                }
                s.F = so5_structure(spec, sign);
            } else {
                fail(l, "unknown preset '" + l.tokens[1] + "'");
            }
            continue;
        }
        expect_count(l, 4);
        int A = index_token(l, 0, 0, 9), B = index_token(l, 1, 0, 9), C = index_token(l, 2, 0, 9);
        if (B == C) fail(l, "F^A_BC needs B != C");
        Rational v = number_token(l, 3);
        s.F[A][B][C] = v;
        s.F[A][C][B] = -v;
    }

    // Ψ
    bool psi_set = false;
    for (const auto& l : sections["Psi"]) {
        if (psi_set) fail(l, "[Psi] takes one line");
        expect_count(l, 8);
        for (int k = 0; k < 4; ++k) s.psi[k] = CJet<Rational>(complex_at(l, 2 * k));
        psi_set = true;
    }
    if (sections.count("Psi.grad")) {
        for (auto& j : s.psi) ensure_grad(j);
        for (const auto& l : sections["Psi.grad"]) {
            if (l.tokens[0] == "equivariant") {
                expect_count(l, 1);
                Spinor v;
                for (int k = 0; k < 4; ++k) v(k) = s.psi[k].value;
                for (int i = 0; i < kRot; ++i) {
                    Spinor sv = matmul(gam.sigma[i], v);
                    for (int k = 0; k < 4; ++k) s.psi[k].grad[kTrans + i] = -sv(k);
                }
                continue;
            }
            expect_count(l, 9);
            int A = index_token(l, 0, 0, 9);
            for (int k = 0; k < 4; ++k) s.psi[k].grad[A] = complex_at(l, 1 + 2 * k);
        }
    }

    // P: constrained slots from κ, free slots from the file
    auto kappa = build_kappa(spec);
    for (int A = 0; A < kCoframeDim; ++A)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) s.P[A][b][c] = CJet<Rational>(Complex<Rational>(kappa(A, b, c)));
    for (const auto& l : sections["P"]) {
        expect_count(l, 4);
        int A = index_token(l, 0, 0, 9), B = index_token(l, 1, 0, 9), C = index_token(l, 2, 0, 9);
        if (B == C) fail(l, "P^BC_A needs B != C");
        if (is_translation(B) && is_translation(C)) fail(l, "P^bc_A is fixed by the constraint and cannot be set");
        Rational v = number_token(l, 3);
        s.P[A][B][C] = CJet<Rational>(Complex<Rational>(v));
        s.P[A][C][B] = CJet<Rational>(Complex<Rational>(-v));
    }
    for (const auto& l : sections["P.grad"]) {
        expect_count(l, 5);
        int A = index_token(l, 0, 0, 9), B = index_token(l, 1, 0, 9), C = index_token(l, 2, 0, 9);
        int D = index_token(l, 3, 0, 9);
        if (B == C) fail(l, "P^BC_A needs B != C");
        if (is_translation(B) && is_translation(C)) fail(l, "P^bc_A is constant by the constraint");
        Rational v = number_token(l, 4);
        ensure_grad(s.P[A][B][C]);
        ensure_grad(s.P[A][C][B]);
        s.P[A][B][C].grad[D] = Complex<Rational>(v);
        s.P[A][C][B].grad[D] = Complex<Rational>(-v);
    }

    // K
    for (const auto& l : sections["K"]) {
        expect_count(l, 9);
        int A = index_token(l, 0, kTrans, 9);
        for (int k = 0; k < 4; ++k) s.K[A - kTrans][k] = CJet<Rational>(complex_at(l, 1 + 2 * k));
    }
    for (const auto& l : sections["K.grad"]) {
        expect_count(l, 10);
        int A = index_token(l, 0, kTrans, 9), D = index_token(l, 1, 0, 9);
        for (int k = 0; k < 4; ++k) {
            ensure_grad(s.K[A - kTrans][k]);
            s.K[A - kTrans][k].grad[D] = complex_at(l, 2 + 2 * k);
        }
    }

    if (sections.count("mass")) {
        const auto& lines = sections["mass"];
        if (lines.size() != 1) throw LoadError("[mass] takes one line");
        expect_count(lines[0], 1);
        s.mass = number_token(lines[0], 0);
    }

    if (s.mode == Mode::Jet1) {
        // every nonzero field needs first-order data
        bool psi_nonzero = false;
        for (const auto& j : s.psi) psi_nonzero |= !is_zero(j.value);
        if (psi_nonzero && !sections.count("Psi.grad")) throw MissingJet("JET1 scene: Psi has no [Psi.grad] data");
        bool k_nonzero = false;
        for (const auto& row : s.K)
            for (const auto& j : row) k_nonzero |= !is_zero(j.value);
        if (k_nonzero && !sections.count("K.grad")) throw MissingJet("JET1 scene: K has no [K.grad] data");
        if (!sections["P"].empty() && !sections.count("P.grad")) throw MissingJet("JET1 scene: P has no [P.grad] data");
    }
    return s;
}

Scene load_scene(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw LoadError("cannot open scene file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
    if (auto dot = name.find_last_of('.'); dot != std::string::npos) name = name.substr(0, dot);
    return parse_scene(ss.str(), name);
}

// ---------------------------------------------------------------------------

CurvatureResult curvature_torsion(const LieAlgebraSpec& spec, const Scene& scene) {
    Geometry<Rational> geo(spec, scene.F);
    CurvatureResult r;
    r.gfb = true;
    for (int A = 0; A < kCoframeDim; ++A) {
        r.Omega[A] = geo.curvature(A);
        if (!is_horizontal(r.Omega[A])) r.gfb = false;
    }
    if (r.gfb)
        for (int A = 0; A < kCoframeDim; ++A)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    r.Omega_bc[A][b][c] = b == c ? Rational(0)
                                                 : (b < c ? r.Omega[A].coef(static_cast<Mask>(bit(b) | bit(c)))
                                                          : Rational(-r.Omega[A].coef(static_cast<Mask>(bit(b) | bit(c)))));
    return r;
}

bool induced_action_check(const LieAlgebraSpec& spec, const Scene& scene) {
    if (scene.mode != Mode::Constant) throw ModeUnsupported("induced action check needs a CONSTANT scene");
    // For the coframe-dual fields, dϖ^A(ē_B, ē_C) = −ϖ^A([ē_B, ē_C]), hence
    // [ē_B, ē_C] = −F^A_BC ē_A.  Compare with the lift of [ξ, ζ].
    for (int i = kTrans; i < kCoframeDim; ++i)
        for (int C = 0; C < kCoframeDim; ++C) {
            Elem lifted = bracket(spec, basis_element(i), basis_element(C));
            for (int A = 0; A < kCoframeDim; ++A)
                if (-scene.F[A][i][C] != lifted[A]) return false;
        }
    return true;
}

EquivarianceResult check_equivariance(const LieAlgebraSpec& spec, const GammaSystem& g, const Scene& scene,
                                      const std::array<CJet<Rational>, 4>& field) {
    Geometry<Rational> geo(spec, scene.F);
    GammaT<Rational> gt(g);
    EquivarianceResult r;
    r.dw = geo.dw_spinor(spinor_field(field), gt.sigma);
    r.equivariant = true;
    for (const auto& f : r.dw)
        if (!is_horizontal(f)) r.equivariant = false;
    if (r.equivariant)
        for (int k = 0; k < 4; ++k)
            for (int a = 0; a < 4; ++a) r.S[k][a] = r.dw[k].coef(bit(a));
    return r;
}

}  // namespace ecd
