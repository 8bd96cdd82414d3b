#include "support.hpp"

#include "crnbal/decomposition.hpp"
#include "crnbal/equilibria.hpp"
#include "crnbal/errors.hpp"
#include "crnbal/kinetic_matrices.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace crnbal;
using namespace crnbal::testing;

namespace {

std::vector<ReactionNetwork> corpus() {
    std::vector<ReactionNetwork> out;
    for (const char* name : {"re1.crn", "counterexample.crn", "re3_polypl.crn", "bilp_pltik.crn", "chain_polypl.crn", "hill_mm.crn"})
        out.push_back(load(name).network);
    std::mt19937_64 rng(20240611);
    for (int k = 0; k < 100; ++k) out.push_back(random_network(rng));
    return out;
}

const std::vector<ReactionNetwork>& networks() {
    static const std::vector<ReactionNetwork> all = corpus();
    return all;
}

std::vector<double> random_rates(std::size_t r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> k(r);
    for (auto& v : k) v = std::exp(u(rng));
    return k;
}

SolverConfig light() {
    SolverConfig cfg;
    cfg.seeds = 16;
    return cfg;
}

}  // namespace

TEST_CASE("structural identities on every network") {
    for (const auto& net : networks()) {
        const StructuralInvariants inv = structural_invariants(net);
        CHECK(inv.n >= inv.l + inv.s);  // deficiency is never negative
        CHECK(inv.delta == inv.n - inv.l - inv.s);
        CHECK(net.N() == net.Y() * net.Ia());
        CHECK(inv.weakly_reversible == has_positive_incidence_kernel(net));
        CHECK(inv.sl >= inv.l);
        CHECK(inv.t >= inv.l);
    }
}

TEST_CASE("mass action kinetic deficiency is never negative") {
    for (const auto& net : networks()) {
        const TMatrices t = build_t_matrices(net, mass_action_from(net, std::vector<double>(net.r(), 1.0)));
        CHECK(t.q_hat <= t.reactant_complexes.size());
        CHECK(t.delta_hat == t.reactant_complexes.size() - t.q_hat);
    }
}

TEST_CASE("linkage decompositions are incidence independent") {
    for (const auto& net : networks()) {
        const IndependenceVerdict v = check_decomposition(net, linkage_class_parts(net));
        CHECK(v.incidence_independent);
        CHECK(v.deficiency >= v.deficiency_sum);
    }
}

TEST_CASE("deficiency relation follows the independence verdicts") {
    std::mt19937_64 rng(5);
    for (const auto& net : networks()) {
        if (net.r() < 2) continue;
        // random two-part split
        std::vector<std::vector<std::size_t>> parts(2);
        for (std::size_t q = 0; q < net.r(); ++q) parts[q == 0 ? 0 : (q == 1 ? 1 : rng() % 2)].push_back(q);
        const IndependenceVerdict v = check_decomposition(net, parts);
        if (v.independent) CHECK(v.deficiency <= v.deficiency_sum);
        if (v.incidence_independent) CHECK(v.deficiency >= v.deficiency_sum);
        if (v.bi_independent) CHECK(v.deficiency == v.deficiency_sum);
        CHECK(v.s <= v.s_sum);
        CHECK(v.incidence_rank <= v.incidence_rank_sum);
    }
}

TEST_CASE("complex balanced points are positive equilibria") {
    std::mt19937_64 rng(11);
    std::size_t checked = 0;
    for (const auto& net : networks()) {
        const Kinetics kin = mass_action_from(net, random_rates(net.r(), rng));
        const ResidualModel sfrf = residual_model(net, kin, EquilibriumMode::Positive);
        for (const auto& p : solve_equilibria(net, kin, EquilibriumMode::ComplexBalanced, std::nullopt, light()).points) {
            CHECK(sfrf.residual(p.x).cwiseAbs().maxCoeff() <= 1e-8);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("rate scaling does not move solver point sets") {
    std::mt19937_64 rng(13);
    for (std::size_t i = 0; i < networks().size(); i += 5) {
        const auto& net = networks()[i];
        const Kinetics kin = mass_action_from(net, random_rates(net.r(), rng));
        const Kinetics scaled = scale_rates(kin, 9.0);
        const ResidualModel on_kin = residual_model(net, kin, EquilibriumMode::Positive);
        const ResidualModel on_scaled = residual_model(net, scaled, EquilibriumMode::Positive);
        const auto a = solve_equilibria(net, kin, EquilibriumMode::Positive, std::nullopt, light()).points;
        const auto b = solve_equilibria(net, scaled, EquilibriumMode::Positive, std::nullopt, light()).points;
        CHECK(a.empty() == b.empty());
        for (const auto& p : a) CHECK(on_scaled.residual(p.x).cwiseAbs().maxCoeff() <= 1e-9);
        for (const auto& p : b) CHECK(on_kin.residual(p.x).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("CLP fixtures have one complex balanced point per flux class") {
    // mass action RE1 (flux S) and the PL-TIK pair (flux S~); each stoichiometric class is sampled
    for (const char* name : {"re1_massaction.crn", "bilp_pltik.crn"}) {
        INFO(name);
        const CrnFile f = load(name);
        const Eigen::MatrixXd s = stoichiometric_basis(f.network);
        std::mt19937_64 rng(17);
        std::normal_distribution<double> g(0.0, 0.5);
        for (int c = 0; c < 5; ++c) {
            Eigen::VectorXd x0 = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(f.network.m()));
            for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = std::exp(g(rng));
            const auto z = solve_equilibria(f.network, f.kinetics, EquilibriumMode::ComplexBalanced, Coset{x0, s}, light());
            CHECK(z.points.size() == 1);
        }
    }
}
