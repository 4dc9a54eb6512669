#include "ecd/report.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "ecd/basefield.hpp"
#include "ecd/identities.hpp"
#include "ecd/lagrangian.hpp"

namespace ecd {

namespace {

using json = nlohmann::ordered_json;

bool wants(Suite chosen, Suite s) { return chosen == Suite::All || chosen == s; }

CheckRecord record(const std::string& scene, const std::string& id, const std::string& anchor, bool pass,
                   double norm, bool exact_zero, std::string note = {}) {
    return {scene, id, anchor, pass ? Status::Pass : Status::Fail, norm, exact_zero, std::move(note)};
}

CheckRecord skipped(const std::string& scene, const std::string& id, const std::string& anchor, std::string why) {
    return {scene, id, anchor, Status::Skip, 0, false, std::move(why)};
}

/// A residual check: passes exactly when the residual vanishes.
CheckRecord residual(const std::string& scene, const std::string& id, const std::string& anchor, bool zero,
                     double norm) {
    return record(scene, id, anchor, zero, norm, zero);
}

bool k_zero(const Scene& s) {
    for (const auto& Ki : s.K)
        for (const auto& k : Ki)
            if (!is_zero(k.value)) return false;
    return true;
}

void identity_suite(std::vector<CheckRecord>& out, const Scene& scene, const LieAlgebraSpec& spec,
                    const GammaSystem& g, bool gfb, int trials, std::mt19937_64& rng) {
    for (Identity id : all_identities()) {
        const std::string name = identity_id(id), anchor = identity_formula(id);
        if (!gfb) {
            out.push_back(skipped(scene.name, name, anchor, "not a generalised frame bundle"));
        } else {
            auto r = check_identity(id, spec, g, scene.F, rng, true);
            out.push_back(record(scene.name, name, anchor, r.exact, r.norm, r.exact,
                                 std::to_string(r.instances) + " index choices"));
        }
        bool exact = true;
        double norm = 0;
        for (int t = 0; t < trials; ++t) {
            auto r = check_identity(id, spec, g, random_gfb_structure(spec, rng), rng, false);
            exact = exact && r.exact;
            norm = std::max(norm, r.norm);
        }
        out.push_back(record(scene.name, name + ".random", anchor, exact, norm, exact,
                             std::to_string(trials) + " random structures"));
    }
}

void gfb_suite(std::vector<CheckRecord>& out, const Scene& scene, const LieAlgebraSpec& spec, const GammaSystem& g,
               bool gfb) {
    const std::string anchor = "curvature horizontal ⇔ induced action of the rotations";
    std::string note = gfb ? "gfb" : "not gfb";
    if (scene.mode != Mode::Constant) {
        out.push_back(skipped(scene.name, "gfb.induced_action", anchor, note + "; induced action needs CONSTANT mode"));
    } else {
        bool induced = induced_action_check(spec, scene);
        out.push_back(record(scene.name, "gfb.induced_action", anchor, induced == gfb, 0, true, note));
    }
    bool eq = check_equivariance(spec, g, scene, scene.psi).equivariant;
    out.push_back(record(scene.name, "gfb.equivariance", "(i_ξ̄ d + ξ·)ψ = 0", true, 0, true,
                         eq ? "psi equivariant" : "psi not equivariant"));
}

void residual_suite(std::vector<CheckRecord>& out, const Scene& scene, const LieAlgebraSpec& spec,
                    const GammaSystem& g) {
    auto r = el_residuals(spec, g, scene);
    const std::string& n = scene.name;
    double lnorm = abs_value(r.lagrangian);
    out.push_back(record(n, "lagrangian.value", "ℒ = ½P^BC_A Ω^A∧ϖ^(8)_BC + Dirac + K terms", true, lnorm,
                         is_zero(r.lagrangian), "L = " + to_string(r.lagrangian)));
    if (k_zero(scene) || r.equivariant) {
        bool real = is_zero(r.lagrangian.im);
        out.push_back(record(n, "lagrangian.real", "conjugate-pair structure of ℒ", real, abs_value(r.lagrangian.im),
                             real));
    } else {
        out.push_back(skipped(n, "lagrangian.real", "conjugate-pair structure of ℒ",
                              "K term is imaginary for non-equivariant psi"));
    }
    for (int D = 0; D < kCoframeDim; ++D)
        out.push_back(residual(n, "el.coframe." + spec.labels[D], "E_D = d^ϖ X_D + ½P Ω∧ϖ^(7) + matter currents",
                               r.coframe_exact_zero(D), r.norm_coframe(D)));
    out.push_back(residual(n, "el.psibar", "E_Ψ̄ = −½γ^(9)∧d^ωΨ + ½d^ω(γ^(9)Ψ) − mΨϖ^(10) + ½d^ω(K^iϖ^(9)_i)",
                           r.psibar_exact_zero(), r.norm_psibar()));
    double npsi = 0;
    for (const auto& f : r.E_psi) npsi = std::max(npsi, max_abs(f));
    out.push_back(residual(n, "el.psi", "E_Ψ, the conjugate of E_Ψ̄", is_zero(r.E_psi), npsi));
}

const std::string kTorsionAnchor = "Θ^d∧α^(1)_bcd = −(1/16)Ψ̄{[γ_b,γ_c],γ^(3)}Ψ";
const std::string kEinsteinAnchor = "½κ^cd_i Ω^i∧α^(1)_bcd = spinor stress + mΨ̄Ψα^(3)_b";
const std::string kDiracAnchor = "γ^(3)∧d^ωΨ − ½γ^aΨΘ^b∧α^(2)_ab + mΨα^(4) = 0";

void golden_checks(std::vector<CheckRecord>& out, const Scene& scene, const BaseResiduals& b,
                   const nlohmann::json& entry) {
    const std::string& n = scene.name;
    std::string oracle = entry.value("oracle", "");
    if (entry.contains("torsion_zero")) {
        bool want = entry["torsion_zero"].get<bool>();
        out.push_back(record(n, "golden.torsion_zero", kTorsionAnchor, want == b.torsion_zero(), b.norm_torsion(),
                             b.torsion_zero(), oracle));
    }
    if (entry.contains("einstein_alpha3")) {
        auto table = b.einstein_table();
        bool same = true;
        double diff = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Rational want = parse_rational(entry["einstein_alpha3"][i][j].get<std::string>());
                Complex<Rational> d = table[i][j] - Complex<Rational>(want);
                same = same && is_zero(d);
                diff = std::max(diff, abs_value(d));
            }
        out.push_back(record(n, "golden.einstein", kEinsteinAnchor, same, diff, same, oracle));
    }
}

void base_residual_checks(std::vector<CheckRecord>& out, const Scene& scene, const LieAlgebraSpec& spec,
                          const GammaSystem& g, const nlohmann::json* golden) {
    const std::string& n = scene.name;
    BaseResiduals b;
    try {
        b = base_ecd_residuals(spec, g, scene);
    } catch (const NotGFB&) {
        for (auto [id, a] : {std::pair{"base.torsion", kTorsionAnchor}, {"base.einstein", kEinsteinAnchor},
                             {"base.dirac", kDiracAnchor}})
            out.push_back(skipped(n, id, a, "not a generalised frame bundle"));
        return;
    } catch (const NotEquivariant&) {
        for (auto [id, a] : {std::pair{"base.torsion", kTorsionAnchor}, {"base.einstein", kEinsteinAnchor},
                             {"base.dirac", kDiracAnchor}})
            out.push_back(skipped(n, id, a, "psi not equivariant"));
        return;
    }
    const nlohmann::json* entry = golden && golden->contains(n) ? &(*golden)[n] : nullptr;
    std::string gnote = entry && entry->contains("einstein_alpha3") ? "nonzero; compare golden.einstein" : "";
    out.push_back(residual(n, "base.torsion", kTorsionAnchor, b.torsion_zero(), b.norm_torsion()));
    auto e = residual(n, "base.einstein", kEinsteinAnchor, b.einstein_zero(), b.norm_einstein());
    if (!b.einstein_zero()) e.note = gnote;
    out.push_back(e);
    out.push_back(residual(n, "base.dirac", kDiracAnchor, b.dirac_zero(), b.norm_dirac()));
    if (entry) golden_checks(out, scene, b, *entry);
}

void base_suite(std::vector<CheckRecord>& out, const Scene& scene, const LieAlgebraSpec& spec, const GammaSystem& g,
                bool gfb, bool equivariant, int trials, std::mt19937_64& rng) {
    const std::string& n = scene.name;
    const std::string lift_anchor = "restricted lifted equations coincide with the base equations";
    if (!gfb || !equivariant) {
        out.push_back(skipped(n, "base.lift_compare", lift_anchor,
                              gfb ? "psi not equivariant" : "not a generalised frame bundle"));
    } else {
        int failed = 0, total = 0;
        for (const auto& var : lift_basis()) {
            ++total;
            if (!lift_compare(spec, g, scene, var).pass()) ++failed;
        }
        out.push_back(record(n, "base.lift_compare", lift_anchor, failed == 0, failed, failed == 0,
                             std::to_string(total) + " basis variations, " + std::to_string(failed) + " failed"));
    }

    const std::string canc_anchor = "E ≡ dP ≡ 0 mod A";
    if (!gfb || scene.mode != Mode::Constant) {
        const char* why = gfb ? "orbit check needs CONSTANT mode" : "not a generalised frame bundle";
        out.push_back(skipped(n, "base.cancellation", canc_anchor, why));
        out.push_back(skipped(n, "base.cancellation.counterexample", canc_anchor, why));
        return;
    }
    bool all = true;
    for (const auto& p : cancellation_pairs(spec, scene, trials, rng)) all = all && cancellation_check(spec, scene, p.E, p.P5).pass();
    out.push_back(record(n, "base.cancellation", canc_anchor, all, 0, all,
                         std::to_string(trials) + " constructed pairs E ≡ dP5 mod α"));
    auto bad = cancellation_check(spec, scene, Form<Rational>::basis(kCoframeDim, kRotMask),
                                  Form<Rational>(kCoframeDim, kRot - 1));
    out.push_back(record(n, "base.cancellation.counterexample", canc_anchor, !bad.pass(), abs_value(bad.reduced),
                         is_zero(bad.reduced), "E = ω^(6), P5 = 0 must be flagged"));
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open golden file " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw LoadError("golden file " + path + ": " + e.what());
    }
}

}  // namespace

Suite parse_suite(const std::string& s) {
    if (s == "identities") return Suite::Identities;
    if (s == "gfb") return Suite::Gfb;
    if (s == "residuals") return Suite::Residuals;
    if (s == "base") return Suite::Base;
    if (s == "all") return Suite::All;
    throw std::invalid_argument("unknown suite " + s);
}

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "structured") return Format::Structured;
    throw std::invalid_argument("unknown format " + s);
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skip: return "skip";
    }
    return "";
}

std::vector<CheckRecord> check_scene(const Scene& scene, Suite suite, int trials, std::uint64_t seed,
                                     const nlohmann::json* golden) {
    auto spec = build_euclidean_or_poincare(scene.sig.p, scene.sig.q);
    auto g = build_gamma(spec);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::mt19937_64 rng(seq);
    bool gfb = curvature_torsion(spec, scene).gfb;
    bool eq = check_equivariance(spec, g, scene, scene.psi).equivariant;

    std::vector<CheckRecord> out;
    if (wants(suite, Suite::Gfb)) gfb_suite(out, scene, spec, g, gfb);
    if (wants(suite, Suite::Identities)) identity_suite(out, scene, spec, g, gfb, trials, rng);
    if (wants(suite, Suite::Residuals)) residual_suite(out, scene, spec, g);
    if (wants(suite, Suite::Residuals) || wants(suite, Suite::Base)) base_residual_checks(out, scene, spec, g, golden);
    if (wants(suite, Suite::Base)) base_suite(out, scene, spec, g, gfb, eq, trials, rng);
    return out;
}

RunResult run(const RunConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("trial count must be at least 1");
    RunResult result;

    struct Loaded {
        Scene scene;
        nlohmann::json golden;
        bool has_golden = false;
    };
    std::vector<Loaded> scenes;
    for (const auto& path : config.scenes) {
        try {
            Loaded l;
            l.scene = load_scene(path);
            std::string gpath = config.golden;
            if (gpath.empty()) {
                auto near = std::filesystem::path(path).parent_path() / "golden.json";
                if (std::filesystem::exists(near)) gpath = near.string();
            }
            if (!gpath.empty()) {
                l.golden = read_json(gpath);
                l.has_golden = true;
            }
            build_gamma(build_euclidean_or_poincare(l.scene.sig.p, l.scene.sig.q));
            scenes.push_back(std::move(l));
        } catch (const std::exception& e) {
            result.records.push_back({path, "scene.load", "scene file", Status::Fail, 0, false, e.what()});
            result.exit_code = 2;
        }
    }
    if (result.exit_code == 2) return result;

    // scenes are independent; the report keeps input order
    std::vector<std::future<std::vector<CheckRecord>>> jobs;
    for (const auto& l : scenes)
        jobs.push_back(std::async(std::launch::async, [&l, &config] {
            return check_scene(l.scene, config.suite, config.trials, config.seed,
                               l.has_golden ? &l.golden : nullptr);
        }));
    for (auto& j : jobs)
        for (auto& r : j.get()) result.records.push_back(std::move(r));
    for (const auto& r : result.records)
        if (r.status == Status::Fail) result.exit_code = 1;
    return result;
}

std::string render(const RunResult& result, const RunConfig& config) {
    int counts[3] = {0, 0, 0};
    for (const auto& r : result.records) ++counts[static_cast<int>(r.status)];

    if (config.format == Format::Structured) {
        json doc;
        doc["seed"] = config.seed;
        doc["trials"] = config.trials;
        doc["exit_code"] = result.exit_code;
        doc["summary"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"skip", counts[2]}};
        json recs = json::array();
        for (const auto& r : result.records) {
            json j;
            j["scene"] = r.scene;
            j["id"] = r.id;
            j["paper_anchor"] = r.paper_anchor;
            j["status"] = status_name(r.status);
            j["norm"] = r.norm;
            j["exact_zero"] = r.exact_zero;
            if (!r.note.empty()) j["note"] = r.note;
            recs.push_back(std::move(j));
        }
        doc["records"] = std::move(recs);
        return doc.dump(2) + "\n";
    }

    std::ostringstream os;
    for (const auto& r : result.records) {
        os << status_name(r.status) << "  " << r.scene << "  " << r.id;
        if (r.status != Status::Skip) os << "  norm=" << r.norm << (r.exact_zero ? " exact-zero" : "");
        if (!r.note.empty()) os << "  (" << r.note << ")";
        os << "\n";
    }
    os << counts[0] << " passed, " << counts[1] << " failed, " << counts[2] << " skipped; exit " << result.exit_code
       << "\n";
    return os.str();
}

}  // namespace ecd
