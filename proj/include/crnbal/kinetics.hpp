#ifndef CRNBAL_KINETICS_HPP
#define CRNBAL_KINETICS_HPP

#include "crnbal/linalg.hpp"
#include "crnbal/network.hpp"

#include <Eigen/Dense>

#include <optional>
#include <variant>
#include <vector>

namespace crnbal {

/// K_q(x) = k_q * prod_i x_i^F(q,i).
struct PowerLawKinetics {
    MixedMatrix orders;        // r x m
    std::vector<double> rates;  // r, strictly positive
};

/// coeff * x^exponents.
struct Monomial {
    double coeff = 1.0;
    std::vector<double> exponents;
    std::optional<RationalVector> exact_exponents;
};

using Polynomial = std::vector<Monomial>;

/// K_q(x) = k_q * sum_j a_{q,j} x^{F_{q,j}}.
struct PolyPLKinetics {
    std::vector<Polynomial> terms;  // per reaction, nonempty
    std::vector<double> rates;

    std::size_t length() const;  // h = max term count
    bool is_normalized() const;
};

/// K_q(x) = k_q * prod_i x_i^F(q,i) / prod_i (D(q,i) + x_i^F(q,i)), product over supp F_q.
struct HillKinetics {
    MixedMatrix orders;
    Eigen::MatrixXd dissociation;  // r x m, supp D_q = supp F_q
    std::vector<double> rates;
};

/// K_q(x) = k_q * P_q(x) / Q_q(x) with positive-coefficient polynomials.
struct RationalFunctionKinetics {
    std::vector<Polynomial> numerators;
    std::vector<Polynomial> denominators;
    std::vector<double> rates;
};

using Kinetics = std::variant<PowerLawKinetics, PolyPLKinetics, HillKinetics, RationalFunctionKinetics>;

std::size_t reaction_count(const Kinetics& kin);
std::size_t species_count(const Kinetics& kin);
const std::vector<double>& rates_of(const Kinetics& kin);
std::string family_name(const Kinetics& kin);

/// Checks dimensions and positivity against `net`; throws InvalidKinetics.
void validate(const Kinetics& kin, const ReactionNetwork& net);

/// Rate vector K(x). Throws NonPositiveState for power-law/poly-PL kinetics when
/// some x_i <= 0; Hill and rational kinetics accept zeros where they are defined.
Eigen::VectorXd evaluate(const Kinetics& kin, const Eigen::VectorXd& x);

/// dK_q/d(log x_i) at x > 0, r x m.
Eigen::MatrixXd log_jacobian(const Kinetics& kin, const Eigen::VectorXd& x);

/// Mass action: kinetic orders are the reactant complex coefficients (exact).
PowerLawKinetics mass_action_from(const ReactionNetwork& net, std::vector<double> rates);

/// Splits the last term of short rows so every reaction carries exactly h terms.
PolyPLKinetics normalize_poly_pl(const PolyPLKinetics& kin);

/// Term system j (0-based) of a normalized poly-PL kinetics: rates k_q a_{q,j}.
PowerLawKinetics term_kinetics(const PolyPLKinetics& kin, std::size_t j);

/// Rows of `kin` for the listed reactions, in order.
Kinetics restrict_kinetics(const Kinetics& kin, const std::vector<std::size_t>& reactions);
/// Same kinetics with every rate multiplied by `factor`.
Kinetics scale_rates(const Kinetics& kin, double factor);

struct KineticsClassification {
    std::optional<bool> pl_rdk;
    std::optional<bool> factor_span_surjective;
    std::optional<bool> pl_nik;
    std::optional<bool> por;
    std::optional<bool> cf;
    bool mass_action = false;
};

struct TMatrices;

bool is_pl_rdk(const PowerLawKinetics& kin, const ReactionNetwork& net);
bool is_pl_nik(const PowerLawKinetics& kin);
bool is_por(const PowerLawKinetics& kin);
bool is_mass_action(const PowerLawKinetics& kin, const ReactionNetwork& net);
/// Poly-PL complex factorizability: each term system is RDK and branching reactions
/// share their coefficients termwise.
bool is_cf_poly_pl(const PolyPLKinetics& kin, const ReactionNetwork& net);
/// Kinetic complexes (columns of T) pairwise distinct.
bool is_factor_span_surjective(const TMatrices& t);

/// Flags that do not apply to the kinetics family stay empty. Throws NotApplicable only
/// through the single-flag helpers above when called on the wrong family.
KineticsClassification classify(const Kinetics& kin, const ReactionNetwork& net, const TMatrices* t = nullptr);

enum class KineticsFlag { PlRdk, FactorSpanSurjective, PlNik, Por, Cf, MassAction };

/// Single flag lookup; throws NotApplicable when the flag is undefined for the family.
bool query_flag(const Kinetics& kin, const ReactionNetwork& net, KineticsFlag flag);

}  // namespace crnbal

#endif  // CRNBAL_KINETICS_HPP
