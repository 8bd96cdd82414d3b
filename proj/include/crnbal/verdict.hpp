#ifndef CRNBAL_VERDICT_HPP
#define CRNBAL_VERDICT_HPP

#include "crnbal/decomposition.hpp"
#include "crnbal/equilibria.hpp"
#include "crnbal/kinetic_matrices.hpp"
#include "crnbal/kinetics.hpp"
#include "crnbal/network.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crnbal {

enum class AcbStatus { ACB_certified, NotACB_certified, ACB_numeric, NotACB_numeric, Inconclusive };

struct Justification {
    std::string rule;      // stable identifier, e.g. "feinberg"
    std::string citation;  // theorem the rule rests on
    std::string detail;    // facts that made it fire
};

struct AcbVerdict {
    AcbStatus status = AcbStatus::Inconclusive;
    std::vector<Justification> justification;
    std::optional<EquilibriumPoint> witness;
};

enum class FluxSpaceChoice { Auto, S, Stilde, Custom };

struct AcbConfig {
    SolverConfig solver;
    bool assume_concordant = false;
    FluxSpaceChoice flux = FluxSpaceChoice::Auto;
    std::optional<MixedMatrix> custom_flux;  // m x d, used with Custom
    std::size_t max_parts = 3;               // decomposition search depth
    std::size_t lp_samples = 8;
    std::size_t scb_classes = 8;
};

/// The poly-PL system a STAR-MSC image came from.
struct StarMscProvenance {
    ReactionNetwork network;
    PolyPLKinetics kinetics;
    std::vector<std::vector<std::size_t>> replica_parts;
};

inline constexpr double kWitnessCfrf = 1e-4;
inline constexpr double kWitnessSfrf = 1e-9;

struct AcbAnalysis {
    StructuralInvariants structure;
    KineticsClassification classification;
    std::optional<TMatrices> t_matrices;
    bool complex_balanced = false;
    std::string complex_balance_basis;  // "found" or "theorem"
    std::vector<EquilibriumPoint> positive;
    std::vector<EquilibriumPoint> complex_balanced_points;
    std::string flux_space;  // "S", "Stilde", "custom" or empty
    std::optional<LpReport> clp;
    std::optional<LpReport> plp;
    std::optional<bool> bilp;
    std::optional<IndependenceVerdict> decomposition;          // used by the decomposition rule
    std::optional<IndependenceVerdict> replica_decomposition;  // STAR-MSC provenance only
    std::optional<PolyPlEquilibratedReport> pl_report;         // STAR-MSC provenance only
    std::optional<ScbReport> scb;
    std::optional<KseReport> kse;
    AcbVerdict verdict;
};

/// Runs every analysis the verdict rules need and applies them in order.
/// Throws NotComplexBalanced when no complex balanced equilibrium is found or certified.
AcbAnalysis analyze_acb(const ReactionNetwork& net, const Kinetics& kin, const AcbConfig& cfg,
                        const StarMscProvenance* provenance = nullptr);

const char* to_string(AcbStatus status);

}  // namespace crnbal

#endif  // CRNBAL_VERDICT_HPP
