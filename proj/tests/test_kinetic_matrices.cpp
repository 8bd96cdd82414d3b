#include "support.hpp"

#include "crnbal/errors.hpp"
#include "crnbal/kinetic_matrices.hpp"

#include <catch_amalgamated.hpp>

using namespace crnbal;
using namespace crnbal::testing;

TEST_CASE("counterexample T_hat is exact") {
    const CrnFile f = load("counterexample.crn");
    const TMatrices t = build_t_matrices(f.network, std::get<PowerLawKinetics>(f.kinetics));
    REQUIRE(t.That.exact());
    CHECK(*t.That.exact() == rm({{0, -1, 0, 0}, {-1, -1, -2, 0}, {1, 1, 0, -2}, {1, 1, 1, 1}}));
    CHECK(t.reactant_complexes == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(t.q_tilde == 3);
    CHECK(t.q_hat == 4);
    CHECK(t.delta_hat == 0);
    CHECK(t.ranks_exact);
    CHECK(is_pl_tik(t));
}

TEST_CASE("kinetic order subspace of the counterexample fills species space") {
    const CrnFile f = load("counterexample.crn");
    const TMatrices t = build_t_matrices(f.network, std::get<PowerLawKinetics>(f.kinetics));
    const KineticOrderSubspace ks = kinetic_order_subspace(t, f.network);
    CHECK(ks.dimension == 3);
    CHECK(ks.complement.cols() == 0);
}

TEST_CASE("two-species PL-TIK fixture") {
    const CrnFile f = load("bilp_pltik.crn");
    const TMatrices t = build_t_matrices(f.network, std::get<PowerLawKinetics>(f.kinetics));
    CHECK(*t.T.exact() == rm({{2, 0}, {0, 3}}));
    CHECK(*t.L.exact() == rm({{1}, {1}}));
    CHECK(t.q_hat == 2);
    CHECK(t.delta_hat == 0);
    // S~ is spanned by (0,3) - (2,0)
    const KineticOrderSubspace ks = kinetic_order_subspace(t, f.network);
    CHECK(ks.dimension == 1);
    REQUIRE(ks.basis.exact());
    const RationalVector b = ks.basis.exact()->column(0);
    CHECK(b[0] * 3 == -b[1] * 2);
}

TEST_CASE("mass action T matrix is the reactant part of Y") {
    const ReactionNetwork net = re1_network();
    const TMatrices t = build_t_matrices(net, mass_action_from(net, std::vector<double>(8, 1.0)));
    CHECK(*t.T.exact() == net.Y());
    // delta_hat = n_r - rank T_hat, and T_hat of mass action has rank s + l here
    CHECK(t.q_hat == 4);
    CHECK(t.delta_hat == 2);
    CHECK_FALSE(is_pl_tik(t));
}

TEST_CASE("NDK kinetics are rejected") {
    const ReactionNetwork net =
        build_network({"A", "B", "C"}, {cx({1, 0, 0}), cx({0, 1, 0}), cx({0, 0, 1})}, {{0, 1, ""}, {0, 2, ""}});
    PowerLawKinetics kin{MixedMatrix(rm({{1, 0, 0}, {2, 0, 0}})), {1.0, 1.0}};
    try {
        build_t_matrices(net, kin);
        FAIL("expected NotRDK");
    } catch (const CrnError& e) {
        CHECK(e.code() == ErrorCode::NotRDK);
    }
}

TEST_CASE("float orders give numeric ranks") {
    const ReactionNetwork net =
        build_network({"A", "B"}, {cx({1, 0}), cx({0, 1})}, {{0, 1, ""}, {1, 0, ""}});
    Eigen::MatrixXd f(2, 2);
    f << 0.5, 0.0, 0.0, 0.25;
    const TMatrices t = build_t_matrices(net, PowerLawKinetics{MixedMatrix(f), {1.0, 1.0}});
    CHECK_FALSE(t.ranks_exact);
    CHECK(t.q_hat == 2);
    CHECK(t.delta_hat == 0);
}
