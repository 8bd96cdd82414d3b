#include "support.hpp"

#include "crnbal/cli.hpp"
#include "crnbal/errors.hpp"
#include "crnbal/kinetics.hpp"
#include "crnbal/report.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <sstream>

using namespace crnbal;
using namespace crnbal::testing;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

ParseFailure parse_error(const std::string& text) {
    try {
        parse_crn(text);
    } catch (const ParseFailure& e) {
        return e;
    }
    FAIL("no parse error");
    throw;
}

}  // namespace

TEST_CASE("parse errors carry line and column") {
    const ParseFailure e = parse_error("species A B\nR1: A -> C rate 1\n");
    CHECK(e.code() == ErrorCode::UnknownSpecies);
    CHECK(e.line() == 2);
    CHECK(e.column() == 10);

    CHECK(parse_error("species A B\nR1: A -> B rate -1\n").code() == ErrorCode::NegativeRate);
    CHECK(parse_error("species A B\nR1: A -> B rate 1\nR2: B -> A rate 1\nkinetics powerlaw\norder R1: A=1\n").code() ==
          ErrorCode::MissingKineticsRow);
    CHECK(parse_error("species A\nR1: A -> A rate 1\n").code() == ErrorCode::SelfLoopReaction);
    const ParseFailure bad = parse_error("species A B\nR1: A => B rate 1\n");
    CHECK(bad.code() == ErrorCode::ParseError);
    CHECK(bad.line() == 2);
}

TEST_CASE("render and parse round trip") {
    for (const char* name : {"re1.crn", "counterexample.crn", "re3_polypl.crn", "re3_rational.crn", "hill_mm.crn", "re1_massaction.crn"}) {
        INFO(name);
        const CrnFile f = load(name);
        const std::string text = render_crn(f.network, f.kinetics);
        const CrnFile g = parse_crn(text);
        CHECK(g.network.Y() == f.network.Y());
        CHECK(g.network.Ia() == f.network.Ia());
        CHECK(render_crn(g.network, g.kinetics) == text);
        Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(f.network.m()), 0.5, 2.0);
        CHECK((evaluate(f.kinetics, x) - evaluate(g.kinetics, x)).norm() < 1e-12);
    }
}

TEST_CASE("zero complex parses") {
    const CrnFile f = parse_crn("species A\nin: 0 -> A rate 1\nout: A -> 0 rate 2\n");
    CHECK(f.network.n() == 2);
    CHECK(f.network.complex_string(0) == "0");
}

TEST_CASE("json report round trip") {
    const Run r = run({"analyze", fixture("re1.crn"), "--json"});
    REQUIRE(r.code == kExitOk);
    const AnalysisReport rep = report_from_json(r.out);
    CHECK(rep.schema == "crn-balance/1");
    CHECK(rep.command == "analyze");
    REQUIRE(rep.structural);
    CHECK(rep.structural->deficiency == 2);
    CHECK(rep.structural->Y[2][5] == "3");
    CHECK(to_json(rep) == r.out);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["config"]["rng_seed"] == 42);
    CHECK(j["config"]["seeds"] == 64);
    CHECK_THROWS_AS(report_from_json("{\"schema\": \"other\"}"), CrnError);
    CHECK_THROWS_AS(report_from_json("not json"), CrnError);
}

TEST_CASE("text output lists verdict citations") {
    const Run r = run({"acb", fixture("bilp_pltik.crn")});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("ACB verdict: ACB_certified") != std::string::npos);
    CHECK(r.out.find("Feinberg ACB Theorem") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({"--help"}).code == kExitOk);
    CHECK(run({}).code == kExitParseError);
    CHECK(run({"analyze", fixture("missing.crn")}).code == kExitParseError);
    CHECK(run({"analyze", fixture("re1.crn"), "--bogus"}).code == kExitParseError);
    // T matrices are undefined for poly-PL input
    const Run t = run({"tmatrix", fixture("re3_polypl.crn")});
    CHECK(t.code == kExitAnalysisError);
    CHECK(t.err.find("NotApplicable") != std::string::npos);
}

TEST_CASE("starmsc emits a parseable file") {
    const Run r = run({"starmsc", fixture("re3_polypl.crn"), "--emit"});
    REQUIRE(r.code == kExitOk);
    const CrnFile g = parse_crn(r.out);
    CHECK(g.network.r() == 12);
    CHECK(g.network.n() == 9);
}

TEST_CASE("pff command compares two files") {
    const Run r = run({"pff", fixture("re3_rational.crn"), fixture("re3_polypl.crn"), "--json"});
    REQUIRE(r.code == kExitOk);
    const AnalysisReport rep = report_from_json(r.out);
    REQUIRE(rep.pff);
    CHECK(rep.pff->equivalent);
}

TEST_CASE("custom flux space file") {
    const Run r = run({"acb", fixture("bilp_pltik.crn"), "--flux-space", fixture("bilp_flux.txt"), "--json"});
    REQUIRE(r.code == kExitOk);
    const AnalysisReport rep = report_from_json(r.out);
    REQUIRE(rep.verdicts);
    CHECK(rep.verdicts->flux_space == "custom");
    CHECK(rep.verdicts->bilp == true);
}
