#include "support.hpp"

#include "crnbal/equilibria.hpp"
#include "crnbal/errors.hpp"
#include "crnbal/verdict.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace crnbal;
using namespace crnbal::testing;
using Catch::Approx;

namespace {

ReactionNetwork a_b() {
    return build_network({"A", "B"}, {cx({1, 0}), cx({0, 1})}, {{0, 1, ""}, {1, 0, ""}});
}

bool contains(const std::vector<EquilibriumPoint>& pts, const Eigen::VectorXd& x, double tol) {
    return std::any_of(pts.begin(), pts.end(), [&](const EquilibriumPoint& p) { return (p.x - x).cwiseAbs().maxCoeff() <= tol; });
}

}  // namespace

TEST_CASE("counterexample equilibria") {
    const CrnFile f = load("counterexample.crn");
    const SolverConfig cfg;
    const auto e = solve_equilibria(f.network, f.kinetics, EquilibriumMode::Positive, std::nullopt, cfg);
    const auto z = solve_equilibria(f.network, f.kinetics, EquilibriumMode::ComplexBalanced, std::nullopt, cfg);
    // x = 1 zeroes N K but leaves 3/2 at the first complex
    const EquilibriumPoint one = make_point(f.network, f.kinetics, Eigen::Vector3d::Ones(), EquilibriumMode::Positive);
    CHECK(one.sfrf_residual <= 1e-12);
    CHECK(one.cfrf_residual == Approx(1.5));
    CHECK(contains(e.points, Eigen::Vector3d::Ones(), 1e-9));
    // solving I_a K = 0 by hand: x1 = 2, x2^4 = 4 / k4, x3^4 = 9 / k4
    const double k4 = 1.5;
    const Eigen::Vector3d cb(2.0, std::pow(4.0 / k4, 0.25), std::pow(9.0 / k4, 0.25));
    CHECK(contains(z.points, cb, 1e-6));
    CHECK(z.points.size() == 1);
    for (const auto& p : z.points) CHECK(p.sfrf_residual <= 1e-9);
}

TEST_CASE("mass action A <-> B lies on a ray") {
    const ReactionNetwork net = a_b();
    const Kinetics kin = mass_action_from(net, {2.0, 3.0});
    const auto e = solve_equilibria(net, kin, EquilibriumMode::Positive, std::nullopt, SolverConfig{});
    REQUIRE(!e.points.empty());
    for (const auto& p : e.points) CHECK(p.x(1) / p.x(0) == Approx(2.0 / 3.0));

    // every stoichiometric class A + B = c meets E+ exactly once
    const CosetCount c = coset_intersection_count(net, kin, stoichiometric_basis(net), Eigen::Vector2d(1.0, 4.0), SolverConfig{});
    CHECK(c.positive == 1);
    CHECK(c.complex_balanced == 1);
}

TEST_CASE("constrained solve stays on its coset") {
    const ReactionNetwork net = a_b();
    const Kinetics kin = mass_action_from(net, {2.0, 3.0});
    const auto e = solve_equilibria(net, kin, EquilibriumMode::Positive, Coset{Eigen::Vector2d(1.0, 4.0), stoichiometric_basis(net)},
                                    SolverConfig{});
    REQUIRE(e.points.size() == 1);
    CHECK(e.points[0].x.sum() == Approx(5.0));
    CHECK(e.points[0].x(0) == Approx(3.0));
    CHECK_THROWS_AS(solve_equilibria(net, kin, EquilibriumMode::Positive, Coset{Eigen::Vector2d(-1.0, 4.0), stoichiometric_basis(net)},
                                     SolverConfig{}),
                    CrnError);
}

TEST_CASE("LP property for mass action with flux space S") {
    const ReactionNetwork net = a_b();
    const Kinetics kin = mass_action_from(net, {2.0, 3.0});
    const LPSetSpec spec{MixedMatrix(net.N()), Eigen::Vector2d(3.0, 2.0)};
    const LpReport z = check_lp_property(net, kin, EquilibriumMode::ComplexBalanced, spec, 8, SolverConfig{});
    CHECK(z.holds);
    CHECK(z.max_distance <= 1e-7);
    const LpReport e = check_lp_property(net, kin, EquilibriumMode::Positive, spec, 8, SolverConfig{});
    CHECK(e.holds);
    CHECK(check_bilp(spec.flux_basis, spec.flux_basis));
}

TEST_CASE("wrong flux space breaks the LP property") {
    const ReactionNetwork net = a_b();
    const Kinetics kin = mass_action_from(net, {2.0, 3.0});
    const LPSetSpec spec{MixedMatrix(rm({{1}, {0}})), Eigen::Vector2d(3.0, 2.0)};
    CHECK_FALSE(check_lp_property(net, kin, EquilibriumMode::Positive, spec, 8, SolverConfig{}).holds);
    CHECK_FALSE(check_bilp(MixedMatrix(rm({{1}, {0}})), MixedMatrix(rm({{1}, {1}}))));
}

TEST_CASE("LP reference must be an equilibrium") {
    const ReactionNetwork net = a_b();
    const Kinetics kin = mass_action_from(net, {2.0, 3.0});
    try {
        check_lp_property(net, kin, EquilibriumMode::Positive, LPSetSpec{MixedMatrix(net.N()), Eigen::Vector2d(1.0, 1.0)}, 4,
                          SolverConfig{});
        FAIL("expected ReferenceNotEquilibrium");
    } catch (const CrnError& e) {
        CHECK(e.code() == ErrorCode::ReferenceNotEquilibrium);
    }
}

TEST_CASE("KSE for A <-> B") {
    // on the ray K(x) is a positive multiple of (1, 1), a single direction spanning ker N
    const ReactionNetwork net = a_b();
    const Kinetics kin = mass_action_from(net, {2.0, 3.0});
    const auto e = solve_equilibria(net, kin, EquilibriumMode::Positive, std::nullopt, SolverConfig{});
    const KseReport k = kse_check(net, kin, e.points, SolverConfig{});
    CHECK(k.r_minus_s == 1);
    CHECK(k.sampled_span_dim == 1);
    CHECK(k.kse);
    CHECK_THROWS_AS(kse_check(net, kin, {}, SolverConfig{}), CrnError);
}

TEST_CASE("KSE span of the counterexample respects K2 = K3") {
    // R2 and R3 share reactant, orders and rate, so every image has equal second and third entries:
    // the span sits inside ker N intersected with that hyperplane, which has dimension 3
    const CrnFile f = load("counterexample.crn");
    const auto e = solve_equilibria(f.network, f.kinetics, EquilibriumMode::Positive, std::nullopt, SolverConfig{});
    const KseReport k = kse_check(f.network, f.kinetics, e.points, SolverConfig{});
    CHECK(k.r_minus_s == 4);
    CHECK(k.sampled_span_dim == 3);
    CHECK(k.por);
}

TEST_CASE("sampled SCB on the PL-TIK fixture") {
    const CrnFile f = load("bilp_pltik.crn");
    const auto z = solve_equilibria(f.network, f.kinetics, EquilibriumMode::ComplexBalanced, std::nullopt, SolverConfig{});
    REQUIRE(!z.points.empty());
    const ScbReport s = scb_check(f.network, f.kinetics, z.points[0].x, 6, SolverConfig{});
    CHECK(s.classes_sampled == 6);
    CHECK(s.holds_sampled);
}

TEST_CASE("poly-PL term systems of the duplicated chain agree") {
    const CrnFile f = load("chain_polypl.crn");
    const auto rep = poly_pl_equilibrated_check(f.network, std::get<PolyPLKinetics>(f.kinetics), SolverConfig{});
    CHECK(rep.pl_equilibrated == true);
    CHECK(rep.pl_complex_balanced == true);
    CHECK(rep.e_common_points > 0);
}

TEST_CASE("rate scaling leaves the solver point set unchanged") {
    // E+ is a continuum here, so compare sets: every point of one system solves the other
    const CrnFile f = load("re1.crn");
    const Kinetics scaled = scale_rates(f.kinetics, 7.5);
    const auto a = solve_equilibria(f.network, f.kinetics, EquilibriumMode::Positive, std::nullopt, SolverConfig{});
    const auto b = solve_equilibria(f.network, scaled, EquilibriumMode::Positive, std::nullopt, SolverConfig{});
    const ResidualModel on_a = residual_model(f.network, f.kinetics, EquilibriumMode::Positive);
    const ResidualModel on_b = residual_model(f.network, scaled, EquilibriumMode::Positive);
    CHECK(!a.points.empty());
    CHECK(!b.points.empty());
    for (const auto& p : a.points) CHECK(on_b.residual(p.x).cwiseAbs().maxCoeff() <= 1e-9);
    for (const auto& p : b.points) CHECK(on_a.residual(p.x).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("verdicts on small fixtures") {
    const AcbConfig cfg;
    {
        const CrnFile f = load("bilp_pltik.crn");
        const AcbAnalysis a = analyze_acb(f.network, f.kinetics, cfg);
        CHECK(a.verdict.status == AcbStatus::ACB_certified);
        CHECK(a.verdict.justification.front().rule == "complex_balancing");
        CHECK(a.bilp == true);
    }
    {
        const CrnFile f = load("re1.crn");
        const AcbAnalysis a = analyze_acb(f.network, f.kinetics, cfg);
        CHECK(a.verdict.status == AcbStatus::NotACB_numeric);
        REQUIRE(a.verdict.witness);
        CHECK(a.verdict.witness->cfrf_residual > 1e-4);
        CHECK(a.verdict.witness->sfrf_residual <= 1e-9);
    }
    {
        // 0 -> A, 2A -> 0 has a positive equilibrium but cannot balance its complexes
        const ReactionNetwork net = build_network({"A"}, {cx({0}), cx({1}), cx({2})}, {{0, 1, ""}, {2, 0, ""}});
        try {
            analyze_acb(net, mass_action_from(net, {1.0, 1.0}), cfg);
            FAIL("expected NotComplexBalanced");
        } catch (const CrnError& e) {
            CHECK(e.code() == ErrorCode::NotComplexBalanced);
        }
    }
}
