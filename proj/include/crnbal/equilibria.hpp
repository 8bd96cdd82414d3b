#ifndef CRNBAL_EQUILIBRIA_HPP
#define CRNBAL_EQUILIBRIA_HPP

#include "crnbal/kinetics.hpp"
#include "crnbal/linalg.hpp"
#include "crnbal/network.hpp"
#include "crnbal/solver.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace crnbal {

enum class EquilibriumMode { Positive, ComplexBalanced };

struct EquilibriumPoint {
    Eigen::VectorXd x;
    double sfrf_residual = 0.0;  // |N K(x)|_inf
    double cfrf_residual = 0.0;  // |I_a K(x)|_inf
    EquilibriumMode kind = EquilibriumMode::Positive;
};

/// Residual norms evaluated directly from the network matrices.
EquilibriumPoint make_point(const ReactionNetwork& net, const Kinetics& kin, const Eigen::VectorXd& x, EquilibriumMode kind);

/// Residual A K(x) with A = N or I_a, each row divided by the flux through it.
ResidualModel residual_model(const ReactionNetwork& net, const Kinetics& kin, EquilibriumMode mode);

struct SolveReport {
    std::vector<EquilibriumPoint> points;
    SolveStats stats;
};

/// Multi-start search for E+ or Z+, optionally restricted to a positive coset. An empty
/// point list means no convergence; it is not an error.
SolveReport solve_equilibria(const ReactionNetwork& net, const Kinetics& kin, EquilibriumMode mode,
                             const std::optional<Coset>& coset, const SolverConfig& cfg);

struct CosetCount {
    std::size_t positive = 0;          // |E+ ∩ Q| found (lower bound)
    std::size_t complex_balanced = 0;  // |Z+ ∩ Q| found (lower bound)
};

CosetCount coset_intersection_count(const ReactionNetwork& net, const Kinetics& kin, const Eigen::MatrixXd& w,
                                    const Eigen::VectorXd& x0, const SolverConfig& cfg);

/// Flux subspace P and a reference equilibrium x*.
struct LPSetSpec {
    MixedMatrix flux_basis;  // m x d, columns span P
    Eigen::VectorXd reference;
};

struct LpReport {
    bool holds = false;
    bool found_points_in_set = false;  // every solver point lies in x* exp(P perp)
    bool set_in_equilibria = false;    // sampled members of x* exp(P perp) are equilibria
    double max_distance = 0.0;         // largest |proj_P(log x - log x*)|
    double max_member_residual = 0.0;  // scaled, as in residual_model
    std::size_t points_checked = 0;
    std::size_t members_checked = 0;
};

inline constexpr double kLpTol = 1e-7;

/// Sampled two-sided LP-set test. Throws ReferenceNotEquilibrium.
LpReport check_lp_property(const ReactionNetwork& net, const Kinetics& kin, EquilibriumMode which, const LPSetSpec& spec,
                           std::size_t n_samples, const SolverConfig& cfg);

/// span(P_Z) == span(P_E), exact when both bases are exact.
bool check_bilp(const MixedMatrix& pz, const MixedMatrix& pe);

struct KseReport {
    std::size_t r_minus_s = 0;
    std::size_t sampled_span_dim = 0;
    bool kse = false;
    bool por = false;
    /// POR power law only: every sampled image v satisfies log(v / k) in Im F.
    std::optional<bool> exact_route_consistent;
    std::size_t images = 0;
};

/// Throws NoEquilibria when `found` is empty.
KseReport kse_check(const ReactionNetwork& net, const Kinetics& kin, const std::vector<EquilibriumPoint>& found,
                    const SolverConfig& cfg);

struct ScbReport {
    std::size_t classes_sampled = 0;
    std::size_t classes_hit = 0;
    bool holds_sampled = false;
};

/// Z+ meets each of `n_classes` sampled stoichiometric classes x_ref exp(noise) + S.
ScbReport scb_check(const ReactionNetwork& net, const Kinetics& kin, const Eigen::VectorXd& x_ref, std::size_t n_classes,
                    const SolverConfig& cfg);

struct PolyPlEquilibratedReport {
    std::optional<bool> pl_equilibrated;            // E+ = ∩ E+(K_j)
    std::optional<bool> pl_complex_balanced;        // Z+ = ∩ Z+(K_j)
    std::optional<bool> absolutely_pl_complex_balanced;  // ∩ Z+(K_j) = ∩ E+(K_j)
    std::size_t e_points = 0;
    std::size_t z_points = 0;
    std::size_t e_common_points = 0;
    std::size_t z_common_points = 0;
};

PolyPlEquilibratedReport poly_pl_equilibrated_check(const ReactionNetwork& net, const PolyPLKinetics& kin,
                                                    const SolverConfig& cfg);

/// Orthonormal basis of S.
Eigen::MatrixXd stoichiometric_basis(const ReactionNetwork& net);

const char* to_string(EquilibriumMode mode);

}  // namespace crnbal

#endif  // CRNBAL_EQUILIBRIA_HPP
