#ifndef CRNBAL_SOLVER_HPP
#define CRNBAL_SOLVER_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace crnbal {

struct SolverConfig {
    std::size_t seeds = 64;
    std::uint64_t rng_seed = 42;
    double tol = 1e-9;
    std::size_t max_iter = 200;
    std::size_t max_halvings = 40;
    double dedup = 1e-6;      // Euclidean distance in log coordinates
    double seed_range = 3.0;  // seeds drawn log-uniform in [e^-range, e^range]
};

/// F(x) and dF/d(log x) for a square or rectangular system on the positive orthant.
struct ResidualModel {
    std::size_t dim = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> residual;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> log_jacobian;
};

/// Positive coset x0 + span(basis).
struct Coset {
    Eigen::VectorXd x0;
    Eigen::MatrixXd basis;
};

struct SolveStats {
    std::size_t attempted = 0;
    std::size_t converged = 0;
    std::size_t distinct = 0;
};

/// Multi-start damped Gauss-Newton. Unconstrained runs work in u = log x and start from
/// x = 1 followed by random seeds; constrained runs work in x = x0 + B a with a
/// fraction-to-boundary rule and start from x0. Returned points are sorted
/// lexicographically and deduplicated.
std::vector<Eigen::VectorXd> find_zeros(const ResidualModel& model, const std::optional<Coset>& coset,
                                        const SolverConfig& cfg, SolveStats* stats = nullptr);

/// A single Newton polish from `start` (unconstrained). Empty on failure.
std::optional<Eigen::VectorXd> newton_from(const ResidualModel& model, const Eigen::VectorXd& start, const SolverConfig& cfg);

}  // namespace crnbal

#endif  // CRNBAL_SOLVER_HPP
