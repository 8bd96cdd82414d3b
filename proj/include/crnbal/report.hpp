#ifndef CRNBAL_REPORT_HPP
#define CRNBAL_REPORT_HPP

#include "crnbal/decomposition.hpp"
#include "crnbal/equilibria.hpp"
#include "crnbal/kinetic_matrices.hpp"
#include "crnbal/kinetics.hpp"
#include "crnbal/network.hpp"
#include "crnbal/transform.hpp"
#include "crnbal/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crnbal {

inline constexpr const char* kSchema = "crn-balance/1";
inline constexpr const char* kToolVersion = "0.1.0";

using StringMatrix = std::vector<std::vector<std::string>>;

struct ConfigEcho {
    std::string tol;
    std::size_t seeds = 0;
    std::uint64_t rng_seed = 0;
    std::size_t max_parts = 0;
    bool assume_concordant = false;
    std::string flux_space;
    friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct StructuralSummary {
    std::size_t m = 0, n = 0, n_r = 0, r = 0, l = 0, sl = 0, t = 0, s = 0, deficiency = 0;
    bool weakly_reversible = false, t_minimal = false, cycle_terminal = false, conservative = false;
    std::vector<std::string> species;
    std::vector<std::string> complexes;
    std::vector<std::string> reactions;
    StringMatrix Y, Ia, N;
    std::vector<std::vector<std::string>> linkage_classes;  // reaction labels
    friend bool operator==(const StructuralSummary&, const StructuralSummary&) = default;
};

struct KineticsSummary {
    std::string family;
    std::optional<bool> pl_rdk, factor_span_surjective, pl_nik, por, cf;
    bool mass_action = false;
    std::size_t length = 1;  // poly-PL term count h
    friend bool operator==(const KineticsSummary&, const KineticsSummary&) = default;
};

struct TMatrixSummary {
    std::size_t q_tilde = 0, q_hat = 0, delta_hat = 0, s_tilde_dim = 0;
    bool pl_tik = false;
    bool ranks_exact = true;
    StringMatrix T_hat;
    friend bool operator==(const TMatrixSummary&, const TMatrixSummary&) = default;
};

struct DecompositionSummary {
    std::string source;  // "linkage", "search", "replicas"
    std::vector<std::vector<std::string>> parts;
    bool independent = false, incidence_independent = false, bi_independent = false;
    std::size_t deficiency = 0, deficiency_sum = 0;
    std::string relation;
    friend bool operator==(const DecompositionSummary&, const DecompositionSummary&) = default;
};

struct PointSummary {
    std::vector<std::string> x;
    std::string sfrf_residual, cfrf_residual, kind;
    friend bool operator==(const PointSummary&, const PointSummary&) = default;
};

struct EquilibriaSummary {
    std::vector<PointSummary> positive, complex_balanced;
    std::size_t attempted = 0;
    friend bool operator==(const EquilibriaSummary&, const EquilibriaSummary&) = default;
};

struct StarMscSummary {
    long long M = 0;
    std::size_t h = 0, n = 0, r = 0, deficiency = 0, predicted_deficiency = 0;
    bool weakly_reversible = false;
    std::optional<bool> factor_span_surjective;
    std::string sfrf_max_relative_deviation;
    std::vector<std::string> complex_labels;
    friend bool operator==(const StarMscSummary&, const StarMscSummary&) = default;
};

struct PffSummary {
    bool equivalent = false;
    std::string factor_kind, sampled_max_spread;
    friend bool operator==(const PffSummary&, const PffSummary&) = default;
};

struct JustificationSummary {
    std::string rule, citation, detail;
    friend bool operator==(const JustificationSummary&, const JustificationSummary&) = default;
};

struct LpSummary {
    bool holds = false, found_points_in_set = false, set_in_equilibria = false;
    std::string max_distance, max_member_residual;
    friend bool operator==(const LpSummary&, const LpSummary&) = default;
};

struct KseSummary {
    std::size_t r_minus_s = 0, sampled_span_dim = 0;
    bool kse = false, por = false;
    friend bool operator==(const KseSummary&, const KseSummary&) = default;
};

struct VerdictSummary {
    std::string status;
    std::string complex_balance_basis;
    std::vector<JustificationSummary> justification;
    std::optional<PointSummary> witness;
    std::string flux_space;
    std::optional<LpSummary> clp, plp;
    std::optional<bool> bilp;
    std::optional<KseSummary> kse;
    std::optional<std::string> scb;  // "k/n classes (sampled)"
    friend bool operator==(const VerdictSummary&, const VerdictSummary&) = default;
};

struct AnalysisReport {
    std::string schema = kSchema;
    std::string tool_version = kToolVersion;
    std::string command;
    ConfigEcho config;
    std::optional<StructuralSummary> structural;
    std::optional<KineticsSummary> kinetics;
    std::optional<TMatrixSummary> t_matrices;
    std::vector<DecompositionSummary> decompositions;
    std::optional<StarMscSummary> star_msc;
    std::optional<EquilibriaSummary> equilibria;
    std::optional<PffSummary> pff;
    std::optional<VerdictSummary> verdicts;
    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

std::string to_json(const AnalysisReport& report);
/// Throws ParseError on malformed or foreign-schema JSON.
AnalysisReport report_from_json(const std::string& text);

StructuralSummary summarize(const ReactionNetwork& net, const StructuralInvariants& inv);
KineticsSummary summarize(const Kinetics& kin, const KineticsClassification& c);
TMatrixSummary summarize(const TMatrices& t);
DecompositionSummary summarize(const ReactionNetwork& net, const IndependenceVerdict& v, const std::string& source);
PointSummary summarize(const EquilibriumPoint& p);
VerdictSummary summarize(const AcbAnalysis& a);

std::string decimal(double v);  // 12 significant digits

}  // namespace crnbal

#endif  // CRNBAL_REPORT_HPP
