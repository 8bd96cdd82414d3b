#include "support.hpp"

#include "crnbal/errors.hpp"
#include "crnbal/kinetic_matrices.hpp"
#include "crnbal/kinetics.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace crnbal;
using namespace crnbal::testing;
using Catch::Approx;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

// central differences in log coordinates
Eigen::MatrixXd numeric_log_jacobian(const Kinetics& kin, const Eigen::VectorXd& x) {
    const Eigen::VectorXd k0 = evaluate(kin, x);
    Eigen::MatrixXd j(k0.size(), x.size());
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Eigen::VectorXd up = x, dn = x;
        up(i) *= std::exp(h);
        dn(i) *= std::exp(-h);
        j.col(i) = (evaluate(kin, up) - evaluate(kin, dn)) / (2 * h);
    }
    return j;
}

}  // namespace

TEST_CASE("power-law evaluation of the counterexample") {
    const CrnFile f = load("counterexample.crn");
    const Eigen::VectorXd x = vec({2.0, 3.0, 5.0});
    const Eigen::VectorXd k = evaluate(f.kinetics, x);
    // hand-expanded rows
    CHECK(k(0) == Approx(5.0 / 3.0));
    CHECK(k(1) == Approx(5.0 / 6.0));
    CHECK(k(2) == Approx(5.0 / 6.0));
    CHECK(k(3) == Approx(1.0 / 9.0));
    CHECK(k(4) == Approx(1.5 / 25.0));
}

TEST_CASE("log jacobian matches finite differences for every family") {
    const Eigen::VectorXd x3 = vec({0.7, 1.9, 1.3});
    const Eigen::VectorXd x4 = vec({0.7, 1.9, 1.3, 0.4});
    for (const auto& [name, x] : {std::pair{"counterexample.crn", x3}, std::pair{"re1.crn", x3}, std::pair{"re3_polypl.crn", x4},
                                  std::pair{"re3_rational.crn", x4}, std::pair{"hill_mm.crn", vec({0.7, 1.9})}}) {
        INFO(name);
        const CrnFile f = load(name);
        const Eigen::MatrixXd exact = log_jacobian(f.kinetics, x);
        const Eigen::MatrixXd approx = numeric_log_jacobian(f.kinetics, x);
        CHECK((exact - approx).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("mass action orders are the reactant complexes") {
    const ReactionNetwork net = re1_network();
    const PowerLawKinetics ma = mass_action_from(net, std::vector<double>(8, 1.0));
    REQUIRE(ma.orders.exact());
    CHECK(*ma.orders.exact() == rm({{2, 0, 0}, {1, 1, 0}, {1, 1, 0}, {0, 2, 0}, {2, 0, 1}, {1, 0, 2}, {1, 0, 2}, {0, 0, 3}}));
    CHECK(is_mass_action(ma, net));
    CHECK(is_pl_rdk(ma, net));
    CHECK(is_pl_nik(ma));
    CHECK_FALSE(is_por(ma));
}

TEST_CASE("classification of the counterexample") {
    const CrnFile f = load("counterexample.crn");
    const KineticsClassification c = classify(f.kinetics, f.network);
    CHECK(c.pl_rdk == true);
    CHECK(c.pl_nik == false);
    CHECK(c.por == true);  // every species carries a negative order somewhere
    CHECK_FALSE(c.mass_action);
    CHECK(query_flag(f.kinetics, f.network, KineticsFlag::PlRdk));
}

TEST_CASE("RE1 power law is RDK") {
    const CrnFile f = load("re1.crn");
    CHECK(query_flag(f.kinetics, f.network, KineticsFlag::PlRdk));
    CHECK_FALSE(query_flag(f.kinetics, f.network, KineticsFlag::MassAction));
}

TEST_CASE("NDK when a shared reactant has two order rows") {
    const CrnFile f = load("re3_polypl.crn");
    // R2 and R3 leave S4 but their first terms differ (S3 versus S2)
    const PolyPLKinetics& py = std::get<PolyPLKinetics>(f.kinetics);
    CHECK_FALSE(is_pl_rdk(term_kinetics(normalize_poly_pl(py), 0), f.network));
    const auto c = classify(f.kinetics, f.network);
    CHECK_FALSE(c.pl_rdk.has_value());
    CHECK(c.cf == false);
    CHECK_THROWS_AS(query_flag(f.kinetics, f.network, KineticsFlag::PlRdk), CrnError);
}

TEST_CASE("poly-PL length normalization") {
    const CrnFile f = load("re3_polypl.crn");
    const PolyPLKinetics& py = std::get<PolyPLKinetics>(f.kinetics);
    CHECK(py.length() == 3);
    CHECK_FALSE(py.is_normalized());
    const PolyPLKinetics norm = normalize_poly_pl(py);
    CHECK(norm.is_normalized());
    REQUIRE(norm.terms[2].size() == 3);
    for (const auto& t : norm.terms[2]) CHECK(t.coeff == Approx(1.0 / 3.0));
    // normalization never changes the rate function
    const Eigen::VectorXd x = vec({0.3, 1.7, 2.2, 0.9});
    CHECK((evaluate(Kinetics{norm}, x) - evaluate(f.kinetics, x)).norm() < 1e-13);
    // the j-th term system carries k_q a_qj
    const PowerLawKinetics k2 = term_kinetics(norm, 1);
    CHECK(k2.rates[0] == Approx(0.5));
    CHECK(k2.rates[2] == Approx(1.0 / 3.0));
}

TEST_CASE("Hill evaluation") {
    const CrnFile f = load("hill_mm.crn");
    const Eigen::VectorXd x = vec({2.0, 3.0});
    const Eigen::VectorXd k = evaluate(f.kinetics, x);
    CHECK(k(0) == Approx(2.0 * 4.0 / (0.5 + 4.0)));  // k1 x^2 / (d + x^2)
    CHECK(k(1) == Approx(1.0 * 3.0 / (1.0 + 3.0)));
}

TEST_CASE("rate scaling and restriction") {
    const CrnFile f = load("re1.crn");
    const Eigen::VectorXd x = vec({1.1, 0.8, 1.4});
    CHECK((evaluate(scale_rates(f.kinetics, 3.0), x) - 3.0 * evaluate(f.kinetics, x)).norm() < 1e-12);
    const Kinetics sub = restrict_kinetics(f.kinetics, {4, 5, 6, 7});
    CHECK(reaction_count(sub) == 4);
    CHECK(evaluate(sub, x)(0) == Approx(evaluate(f.kinetics, x)(4)));
}

TEST_CASE("validation rejects mismatched kinetics") {
    const CrnFile f = load("re1.crn");
    const CrnFile g = load("counterexample.crn");
    CHECK_THROWS_AS(validate(g.kinetics, f.network), CrnError);
    CHECK(family_name(f.kinetics) == "powerlaw");
}
