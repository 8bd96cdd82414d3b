#include "crnbal/verdict.hpp"

#include "crnbal/errors.hpp"

#include <algorithm>

namespace crnbal {

namespace {

const char* const kFeinberg = "Feinberg ACB Theorem (deficiency zero)";
const char* const kHornJackson = "Horn-Jackson ACB Theorem (mass action)";
const char* const kBiLp = "bi-LP criterion for CLP systems";
const char* const kDecomposition = "ACB of bi-independent decompositions into ACB subnetworks";
const char* const kStarMsc = "ACB of STAR-MSC transforms of PL-complex balanced deficiency zero systems";
const char* const kCic = "coset intersection count with the unique-equilibrium theorem for PL-NIK kinetics on "
                         "weakly reversible, conservative, concordant networks";
const char* const kPartialConverse = "partial converse to the Feinberg ACB Theorem (ACB and KSE force deficiency zero)";
const char* const kPlTik = "complex balancing of weakly reversible PL-TIK systems";

std::string count_text(std::size_t v) { return std::to_string(v); }

std::optional<MixedMatrix> pick_flux(const ReactionNetwork& net, const AcbAnalysis& a, const AcbConfig& cfg, std::string& label) {
    FluxSpaceChoice choice = cfg.flux;
    if (choice == FluxSpaceChoice::Auto) {
        if (a.classification.mass_action)
            choice = FluxSpaceChoice::S;
        else if (a.t_matrices)
            choice = FluxSpaceChoice::Stilde;
        else
            return std::nullopt;
    }
    switch (choice) {
        case FluxSpaceChoice::S: label = "S"; return MixedMatrix(net.N());
        case FluxSpaceChoice::Stilde:
            if (!a.t_matrices) return std::nullopt;
            label = "Stilde";
            return a.t_matrices->s_tilde_basis;
        case FluxSpaceChoice::Custom:
            if (!cfg.custom_flux) return std::nullopt;
            label = "custom";
            return cfg.custom_flux;
        case FluxSpaceChoice::Auto: break;
    }
    return std::nullopt;
}

// Part certified ACB on its own: deficiency zero, or mass action. Complex balancing of the
// parts follows from that of the whole for bi-independent decompositions.
bool part_certified(const ReactionNetwork& net, const Kinetics& kin, const std::vector<std::size_t>& part,
                    const PartInvariants& inv) {
    if (inv.delta == 0) return true;
    const auto* pl = std::get_if<PowerLawKinetics>(&kin);
    if (!pl) return false;
    const Subnetwork sub = subnetwork(net, part, SpeciesScope::All);
    const Kinetics restricted = restrict_kinetics(kin, part);
    return is_mass_action(std::get<PowerLawKinetics>(restricted), sub.network);
}

std::optional<EquilibriumPoint> pick_witness(const std::vector<EquilibriumPoint>& points) {
    std::optional<EquilibriumPoint> best;
    double best_norm = 0.0;
    for (const auto& p : points) {
        if (!(p.cfrf_residual > kWitnessCfrf && p.sfrf_residual <= kWitnessSfrf)) continue;
        const double d = p.x.array().log().matrix().norm();
        if (!best || d < best_norm) {
            best = p;
            best_norm = d;
        }
    }
    return best;
}

}  // namespace

AcbAnalysis analyze_acb(const ReactionNetwork& net, const Kinetics& kin, const AcbConfig& cfg,
                        const StarMscProvenance* provenance) {
    validate(kin, net);
    AcbAnalysis a;
    a.structure = structural_invariants(net);
    const auto* pl = std::get_if<PowerLawKinetics>(&kin);
    if (pl && is_pl_rdk(*pl, net)) a.t_matrices = build_t_matrices(net, *pl);
    a.classification = classify(kin, net, a.t_matrices ? &*a.t_matrices : nullptr);

    a.positive = solve_equilibria(net, kin, EquilibriumMode::Positive, std::nullopt, cfg.solver).points;
    a.complex_balanced_points = solve_equilibria(net, kin, EquilibriumMode::ComplexBalanced, std::nullopt, cfg.solver).points;

    AcbVerdict& v = a.verdict;
    const std::size_t delta = a.structure.delta;
    const bool theorem_cb = a.t_matrices && is_pl_tik(*a.t_matrices) && a.structure.weakly_reversible;
    if (theorem_cb) {
        a.complex_balanced = true;
        a.complex_balance_basis = "theorem";
        v.justification.push_back({"complex_balancing", kPlTik, "weakly reversible, delta_hat = 0"});
    } else if (!a.complex_balanced_points.empty()) {
        a.complex_balanced = true;
        a.complex_balance_basis = "found";
    } else {
        throw CrnError(ErrorCode::NotComplexBalanced, "no complex balanced equilibrium found or certified");
    }

    std::optional<AcbStatus> decided;
    auto fire = [&](AcbStatus status, Justification j) {
        v.justification.push_back(std::move(j));
        if (!decided) decided = status;
    };

    // (1) Feinberg
    if (delta == 0) fire(AcbStatus::ACB_certified, {"feinberg", kFeinberg, "delta = 0, complex balanced"});

    // (2) Horn-Jackson
    if (a.classification.mass_action)
        fire(AcbStatus::ACB_certified, {"horn_jackson", kHornJackson, "mass action, complex balanced"});

    // (3) bi-LP
    if (auto flux = pick_flux(net, a, cfg, a.flux_space); flux && !a.complex_balanced_points.empty()) {
        const LPSetSpec spec{*flux, a.complex_balanced_points.front().x};
        a.clp = check_lp_property(net, kin, EquilibriumMode::ComplexBalanced, spec, cfg.lp_samples, cfg.solver);
        a.plp = check_lp_property(net, kin, EquilibriumMode::Positive, spec, cfg.lp_samples, cfg.solver);
        a.bilp = a.clp->holds && a.plp->holds && check_bilp(*flux, *flux);
        if (*a.bilp)
            fire(AcbStatus::ACB_certified, {"bi_lp", kBiLp, "CLP and PLP with flux space " + a.flux_space + " (sampled LP checks)"});
    }

    // (4) bi-independent decomposition into ACB parts
    if (net.r() <= kMaxSearchReactions && net.r() > 1) {
        const auto found = search_decompositions(net, DecompositionPredicate::BiIndependent, cfg.max_parts);
        for (const auto& d : found) {
            if (d.parts.size() < 2) continue;
            bool all = true;
            for (std::size_t i = 0; i < d.parts.size() && all; ++i) all = part_certified(net, kin, d.parts[i], d.invariants[i]);
            if (!all) continue;
            a.decomposition = check_decomposition(net, d.parts);
            fire(AcbStatus::ACB_certified,
                 {"bi_independent_decomposition", kDecomposition, count_text(d.parts.size()) + " parts, each deficiency zero or mass action"});
            break;
        }
    }

    // (4b) STAR-MSC image of a PL-complex balanced deficiency zero poly-PL system
    if (provenance) {
        const StructuralInvariants orig = structural_invariants(provenance->network);
        a.replica_decomposition = check_decomposition(net, provenance->replica_parts);
        a.pl_report = poly_pl_equilibrated_check(provenance->network, provenance->kinetics, cfg.solver);
        const bool orig_cb = a.pl_report->z_points > 0;
        if (orig.weakly_reversible && orig.delta == 0 && orig_cb && a.pl_report->pl_complex_balanced.value_or(false) &&
            a.replica_decomposition->incidence_independent)
            fire(AcbStatus::ACB_certified,
                 {"star_msc_replicas", kStarMsc,
                  "replica decomposition incidence independent; source weakly reversible, delta = 0, PL-complex balanced (sampled)"});
    }

    // (5) coset intersection count under asserted concordance
    if (cfg.assume_concordant && a.structure.conservative && a.structure.weakly_reversible && a.classification.pl_nik.value_or(false) &&
        !a.complex_balanced_points.empty()) {
        a.scb = scb_check(net, kin, a.complex_balanced_points.front().x, cfg.scb_classes, cfg.solver);
        if (a.scb->holds_sampled)
            fire(AcbStatus::ACB_certified,
                 {"coset_intersection_count", kCic,
                  "concordance asserted; SCB sampled on " + count_text(a.scb->classes_sampled) + " classes"});
    }

    // (6) KSE with positive deficiency
    if (!a.positive.empty()) {
        a.kse = kse_check(net, kin, a.positive, cfg.solver);
        if (a.kse->kse && delta > 0)
            fire(AcbStatus::NotACB_certified,
                 {"kse_partial_converse", kPartialConverse,
                  "KSE (span dimension " + count_text(a.kse->sampled_span_dim) + " = r - s), delta = " + count_text(delta) +
                      ", complex balanced"});
    }

    // (7) numeric witness, (8) none found
    const bool certified_acb = decided && *decided == AcbStatus::ACB_certified;
    v.witness = pick_witness(a.positive);
    if (v.witness && !certified_acb) {
        fire(AcbStatus::NotACB_numeric,
             {"numeric_witness", "definition of absolute complex balancing",
              "positive equilibrium with |I_a K(x)| = " + format_sig(v.witness->cfrf_residual) + " > 1e-4"});
    }
    if (!decided && !a.positive.empty())
        fire(AcbStatus::ACB_numeric,
             {"no_witness", "definition of absolute complex balancing",
              "multi-start search over " + count_text(cfg.solver.seeds) + " seeds found no non-complex-balanced equilibrium"});
    v.status = decided.value_or(AcbStatus::Inconclusive);
    if (v.status == AcbStatus::ACB_certified || v.status == AcbStatus::ACB_numeric) v.witness.reset();
    return a;
}

const char* to_string(AcbStatus status) {
    switch (status) {
        case AcbStatus::ACB_certified: return "ACB_certified";
        case AcbStatus::NotACB_certified: return "NotACB_certified";
        case AcbStatus::ACB_numeric: return "ACB_numeric";
        case AcbStatus::NotACB_numeric: return "NotACB_numeric";
        case AcbStatus::Inconclusive: return "Inconclusive";
    }
    return "";
}

}  // namespace crnbal
