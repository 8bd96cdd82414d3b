#include "support.hpp"

#include "crnbal/decomposition.hpp"
#include "crnbal/errors.hpp"
#include "crnbal/transform.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace crnbal;
using namespace crnbal::testing;
using Catch::Approx;

namespace {

std::vector<Eigen::VectorXd> samples(std::size_t m, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Eigen::VectorXd> out;
    for (std::size_t k = 0; k < count; ++k) {
        Eigen::VectorXd x(static_cast<Eigen::Index>(m));
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = std::exp(u(rng));
        out.push_back(x);
    }
    return out;
}

}  // namespace

TEST_CASE("STAR-MSC of RE3") {
    const CrnFile f = load("re3_polypl.crn");
    const auto& py = std::get<PolyPLKinetics>(f.kinetics);
    const StarMscResult star = star_msc(f.network, py);
    CHECK(star.M == 2);
    CHECK(star.h == 3);
    CHECK(star.network.n() == 9);
    CHECK(star.network.r() == 12);
    CHECK(star.network.m() == 4);
    // deficiency recomputed from scratch on the transformed network
    const StructuralInvariants inv = structural_invariants(star.network);
    CHECK(inv.delta == 4);
    CHECK(star.predicted_delta == 4);
    CHECK(inv.weakly_reversible);
    CHECK(star.complex_labels.front() == "C1_rep1");
    CHECK(star.complex_labels.back() == "C3_rep3");
    CHECK(star.network.reactions()[4].label == "R1_rep2");
}

TEST_CASE("replica complexes are shifted by multiples of M") {
    const CrnFile f = load("re3_polypl.crn");
    const StarMscResult star = star_msc(f.network, std::get<PolyPLKinetics>(f.kinetics));
    for (std::size_t q = 0; q < star.network.r(); ++q) {
        const auto [orig, j] = star.replica_map[q];
        const auto& src = f.network.complexes()[f.network.reactions()[orig].reactant].coefficients;
        const auto& dst = star.network.complexes()[star.network.reactions()[q].reactant].coefficients;
        for (std::size_t i = 0; i < src.size(); ++i) CHECK(dst[i] == src[i] + static_cast<long long>(j) * star.M);
    }
}

TEST_CASE("STAR-MSC is dynamically equivalent") {
    const CrnFile f = load("re3_polypl.crn");
    const auto& py = std::get<PolyPLKinetics>(f.kinetics);
    const StarMscResult star = star_msc(f.network, py);
    CHECK(star_msc_sfrf_deviation(f.network, py, star, 20, 7) <= 1e-10);
    // direct check at one state
    Eigen::VectorXd x(4);
    x << 0.4, 1.3, 2.5, 0.8;
    const Eigen::VectorXd a = f.network.N().to_eigen() * evaluate(f.kinetics, x);
    const Eigen::VectorXd b = star.network.N().to_eigen() * evaluate(Kinetics{star.kinetics}, x);
    CHECK((a - b).norm() < 1e-12);
}

TEST_CASE("replica decomposition is incidence independent only") {
    const CrnFile f = load("re3_polypl.crn");
    const StarMscResult star = star_msc(f.network, std::get<PolyPLKinetics>(f.kinetics));
    const IndependenceVerdict v = check_decomposition(star.network, star.replica_parts());
    CHECK(v.incidence_independent);
    CHECK_FALSE(v.independent);
    CHECK_FALSE(v.bi_independent);
}

TEST_CASE("non-integer complexes are refused") {
    Complex half;
    half.coefficients = {Rational(1, 2)};
    const ReactionNetwork net = build_network({"A"}, {half, cx({1})}, {{0, 1, ""}, {1, 0, ""}});
    Monomial m{1.0, {1.0}, std::nullopt};
    PolyPLKinetics kin{{{m}, {m}}, {1.0, 1.0}};
    try {
        star_msc(net, kin);
        FAIL("expected NonIntegerComplex");
    } catch (const CrnError& e) {
        CHECK(e.code() == ErrorCode::NonIntegerComplex);
    }
}

TEST_CASE("PFF of power laws with a monomial factor") {
    const CrnFile f = load("counterexample.crn");
    const auto& pl = std::get<PowerLawKinetics>(f.kinetics);
    Eigen::MatrixXd shifted = pl.orders.values();
    shifted.rowwise() += Eigen::RowVector3d(1.0, -0.5, 2.0);
    std::vector<double> rates = pl.rates;
    for (double& k : rates) k *= 4.0;
    const PowerLawKinetics other{MixedMatrix(shifted), rates};
    const PffCertificate c = pff_check(f.kinetics, other, samples(3, 20, 1));
    CHECK(c.equivalent);
    CHECK(c.factor_kind == FactorKind::Monomial);
    REQUIRE(c.ratio);
    CHECK(*c.ratio == Approx(0.25));
    REQUIRE(c.shift);
    CHECK((*c.shift)[0] == Approx(-1.0));
}

TEST_CASE("PFF fails when one rate moves") {
    const CrnFile f = load("counterexample.crn");
    auto other = std::get<PowerLawKinetics>(f.kinetics);
    other.rates[1] *= 2.0;
    CHECK_FALSE(pff_check(f.kinetics, other, samples(3, 20, 2)).equivalent);
    CHECK(pff_check(f.kinetics, scale_rates(f.kinetics, 3.0), samples(3, 20, 2)).factor_kind == FactorKind::Constant);
}

TEST_CASE("rational RE3 maps onto the poly-PL rates") {
    const CrnFile rat = load("re3_rational.crn");
    const CrnFile poly = load("re3_polypl.crn");
    const auto factors = denominator_factors(rat.kinetics);
    CHECK(factors.size() == 1);  // the shared 1 + k3 S2 + S4; unit denominators drop out
    const PolyPLKinetics mapped = hill_to_poly_pl(rat.network, rat.kinetics);
    for (const auto& x : samples(4, 20, 3))
        CHECK((evaluate(Kinetics{mapped}, x) - evaluate(poly.kinetics, x)).cwiseAbs().maxCoeff() <=
              1e-12 * evaluate(poly.kinetics, x).cwiseAbs().maxCoeff());
    // and the two are PFF with factor 1 + k3 S2 + S4
    const PffCertificate c = pff_check(rat.kinetics, Kinetics{mapped}, samples(4, 20, 4));
    CHECK(c.equivalent);
    CHECK(c.factor_kind == FactorKind::Sampled);
}

TEST_CASE("Hill kinetics clear their denominators") {
    const CrnFile f = load("hill_mm.crn");
    const PolyPLKinetics mapped = hill_to_poly_pl(f.network, f.kinetics);
    CHECK(denominator_factors(f.kinetics).size() == 2);
    for (const auto& x : samples(2, 10, 5)) {
        const double d = (0.5 + x(0) * x(0)) * (1.0 + x(1));
        const Eigen::VectorXd want = evaluate(f.kinetics, x) * d;
        CHECK((evaluate(Kinetics{mapped}, x) - want).norm() <= 1e-12 * want.norm());
    }
    CHECK_THROWS_AS(hill_to_poly_pl(f.network, load("re1.crn").kinetics), CrnError);
}
