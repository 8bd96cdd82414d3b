#include "support.hpp"

#include "crnbal/decomposition.hpp"
#include "crnbal/errors.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace crnbal;
using namespace crnbal::testing;

TEST_CASE("RE1 linkage decomposition") {
    const ReactionNetwork net = re1_network();
    const IndependenceVerdict v = check_decomposition(net, linkage_class_parts(net));
    CHECK(v.independent);
    CHECK(v.incidence_independent);
    CHECK(v.bi_independent);
    CHECK(v.deficiency == 2);
    CHECK(v.deficiency_sum == 2);
    REQUIRE(v.decomposition.invariants.size() == 2);
    CHECK(v.decomposition.invariants[0].delta == 1);
    CHECK(v.decomposition.invariants[1].delta == 1);
    CHECK(v.relation == DeficiencyRelation::Equal);
}

TEST_CASE("subnetwork keeps labels and touched species") {
    const ReactionNetwork net = re1_network();
    const Subnetwork sub = subnetwork(net, {3, 1, 0, 2});
    CHECK(sub.reaction_map == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(sub.complex_map == std::vector<std::size_t>{0, 1, 2});
    CHECK(sub.species_map == std::vector<std::size_t>{0, 1});
    CHECK(sub.network.reactions()[3].label == "R4");
    const Subnetwork all = subnetwork(net, {0, 1}, SpeciesScope::All);
    CHECK(all.network.m() == 3);
    CHECK_THROWS_AS(subnetwork(net, {}), CrnError);
    CHECK_THROWS_AS(subnetwork(net, {9}), CrnError);
}

TEST_CASE("non-partitions are rejected") {
    const ReactionNetwork net = re1_network();
    try {
        check_decomposition(net, {{0, 1, 2}, {3, 4, 5, 6}});
        FAIL("expected NotAPartition");
    } catch (const CrnError& e) {
        CHECK(e.code() == ErrorCode::NotAPartition);
    }
    CHECK_THROWS_AS(check_decomposition(net, {{0, 1, 2, 3, 4}, {4, 5, 6, 7}}), CrnError);
}

TEST_CASE("dependent split of a cycle") {
    // A -> B -> C -> A split as {A->B} | {B->C, C->A}: stoichiometric ranks 1 + 2 > s = 2 and
    // incidence ranks 1 + 2 > n - l = 2
    const ReactionNetwork net = build_network({"A", "B", "C"}, {cx({1, 0, 0}), cx({0, 1, 0}), cx({0, 0, 1})},
                                              {{0, 1, ""}, {1, 2, ""}, {2, 0, ""}});
    const IndependenceVerdict v = check_decomposition(net, {{0}, {1, 2}});
    CHECK_FALSE(v.independent);
    CHECK_FALSE(v.incidence_independent);
    CHECK(v.s == 2);
    CHECK(v.s_sum == 3);
    CHECK(v.incidence_rank == 2);
    CHECK(v.incidence_rank_sum == 3);
    CHECK(v.deficiency == 0);
    CHECK(v.deficiency_sum == 0);
}

TEST_CASE("trivial decomposition is always returned") {
    const ReactionNetwork net = build_network({"A", "B"}, {cx({1, 0}), cx({0, 1})}, {{0, 1, ""}});
    const auto found = search_decompositions(net, DecompositionPredicate::BiIndependent, 0);
    REQUIRE(found.size() == 1);
    CHECK(found[0].parts == std::vector<std::vector<std::size_t>>{{0}});
}

TEST_CASE("search finds the linkage split of RE1") {
    const ReactionNetwork net = re1_network();
    const auto found = search_decompositions(net, DecompositionPredicate::BiIndependent, 2);
    auto has = [&](std::vector<std::vector<std::size_t>> parts) {
        std::sort(parts.begin(), parts.end());
        return std::any_of(found.begin(), found.end(), [&](const Decomposition& d) {
            auto p = d.parts;
            std::sort(p.begin(), p.end());
            return p == parts;
        });
    };
    CHECK(has({{0, 1, 2, 3}, {4, 5, 6, 7}}));
    for (const auto& d : found) {
        CHECK(d.parts.size() <= 2);
        CHECK(check_decomposition(net, d.parts).bi_independent);
    }
}

TEST_CASE("two-part independent splits of the counterexample match brute force") {
    const CrnFile f = load("counterexample.crn");
    const ReactionNetwork& net = f.network;
    const std::size_t r = net.r();
    const std::size_t s = rational_rank(net.N());
    // every 2-part partition once: reaction 0 stays in the first part
    std::vector<std::vector<std::vector<std::size_t>>> expected;
    for (unsigned mask = 0; mask < (1u << (r - 1)); ++mask) {
        std::vector<std::vector<std::size_t>> parts(2);
        parts[0].push_back(0);
        for (std::size_t q = 1; q < r; ++q) parts[(mask >> (q - 1)) & 1u].push_back(q);
        if (parts[1].empty()) continue;
        if (rational_rank(net.N().select_columns(parts[0])) + rational_rank(net.N().select_columns(parts[1])) == s)
            expected.push_back(parts);
    }
    std::vector<std::vector<std::vector<std::size_t>>> got;
    for (const auto& d : search_decompositions(net, DecompositionPredicate::Independent, 2)) {
        if (d.parts.size() != 2) continue;
        auto p = d.parts;
        std::sort(p.begin(), p.end());
        got.push_back(p);
    }
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
}

TEST_CASE("search results all satisfy the predicate") {
    const CrnFile f = load("counterexample.crn");
    for (auto pred : {DecompositionPredicate::Independent, DecompositionPredicate::IncidenceIndependent}) {
        const auto found = search_decompositions(f.network, pred, 0);
        CHECK(!found.empty());
        for (const auto& d : found) {
            const IndependenceVerdict v = check_decomposition(f.network, d.parts);
            if (pred == DecompositionPredicate::Independent)
                CHECK(v.independent);
            else
                CHECK(v.incidence_independent);
        }
    }
}

TEST_CASE("search refuses large networks") {
    std::vector<std::string> species;
    std::vector<Complex> complexes;
    std::vector<ReactionSpec> reactions;
    for (int i = 0; i < 14; ++i) species.push_back("S" + std::to_string(i));
    for (int i = 0; i < 14; ++i) {
        Complex c;
        c.coefficients.assign(14, 0);
        c.coefficients[static_cast<std::size_t>(i)] = 1;
        complexes.push_back(c);
    }
    for (std::size_t i = 0; i < 13; ++i) reactions.push_back({i, i + 1, ""});
    const ReactionNetwork net = build_network(species, complexes, reactions);
    CHECK_THROWS_AS(search_decompositions(net, DecompositionPredicate::Independent, 2), CrnError);
}
