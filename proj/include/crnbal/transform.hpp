#ifndef CRNBAL_TRANSFORM_HPP
#define CRNBAL_TRANSFORM_HPP

#include "crnbal/kinetics.hpp"
#include "crnbal/network.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crnbal {

/// Power-law image of a poly-PL system: h shifted replicas of the network.
struct StarMscResult {
    ReactionNetwork network;
    PowerLawKinetics kinetics;
    long long M = 0;  // shift, 1 + largest stoichiometric coefficient
    std::size_t h = 0;
    std::vector<std::pair<std::size_t, std::size_t>> replica_map;  // new reaction -> (q, j), 0-based
    std::vector<std::string> complex_labels;                       // "C{i}_rep{j}", 1-based
    std::size_t predicted_delta = 0;                               // delta + (n - l)(h - 1)
    /// Reaction index sets of the replicas, in replica order.
    std::vector<std::vector<std::size_t>> replica_parts() const;
};

/// Normalizes `kin` first when needed. Throws NonIntegerComplex.
StarMscResult star_msc(const ReactionNetwork& net, const PolyPLKinetics& kin);

/// Largest relative gap |N* K*(x) - N K(x)|_inf / |N K(x)|_inf over `n_states` states drawn
/// log-uniform in [e^-2, e^2] from `seed`.
double star_msc_sfrf_deviation(const ReactionNetwork& net, const PolyPLKinetics& kin, const StarMscResult& star,
                               std::size_t n_states, std::uint64_t seed);

enum class FactorKind { Constant, Monomial, Sampled };

struct PffCertificate {
    bool equivalent = false;
    FactorKind factor_kind = FactorKind::Sampled;
    double sampled_max_spread = 0.0;
    /// Power-law pairs: U(x) = ratio * x^shift, with shift the common row of F - F'.
    std::optional<double> ratio;
    std::optional<std::vector<double>> shift;
};

/// Checks that K_q(x) / K'_q(x) does not depend on q. Throws DimensionMismatch.
PffCertificate pff_check(const Kinetics& a, const Kinetics& b, const std::vector<Eigen::VectorXd>& samples);

/// Distinct denominator factors of a Hill or rational kinetics, in first-appearance order.
std::vector<Polynomial> denominator_factors(const Kinetics& kin);

/// Multiplies every rate by the product of the distinct denominator factors and expands.
/// Accepts Hill and rational kinetics; throws InvalidKinetics otherwise.
PolyPLKinetics hill_to_poly_pl(const ReactionNetwork& net, const Kinetics& kin);

const char* to_string(FactorKind kind);

}  // namespace crnbal

#endif  // CRNBAL_TRANSFORM_HPP
