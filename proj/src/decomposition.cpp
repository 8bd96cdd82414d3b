#include "crnbal/decomposition.hpp"

#include "crnbal/errors.hpp"

#include <algorithm>
#include <functional>

namespace crnbal {

Subnetwork subnetwork(const ReactionNetwork& net, std::vector<std::size_t> reactions, SpeciesScope scope) {
    if (reactions.empty()) throw CrnError(ErrorCode::EmptySelection, "subnetwork needs at least one reaction");
    std::sort(reactions.begin(), reactions.end());
    reactions.erase(std::unique(reactions.begin(), reactions.end()), reactions.end());
    for (std::size_t q : reactions)
        if (q >= net.r()) throw CrnError(ErrorCode::InvalidIndex, "reaction index " + std::to_string(q) + " out of range");

    Subnetwork sub;
    sub.reaction_map = reactions;
    std::vector<bool> complex_used(net.n(), false);
    for (std::size_t q : reactions) {
        complex_used[net.reactions()[q].reactant] = true;
        complex_used[net.reactions()[q].product] = true;
    }
    for (std::size_t c = 0; c < net.n(); ++c)
        if (complex_used[c]) sub.complex_map.push_back(c);

    for (std::size_t i = 0; i < net.m(); ++i) {
        const bool touched = std::any_of(sub.complex_map.begin(), sub.complex_map.end(),
                                         [&](std::size_t c) { return net.complexes()[c].coefficients[i] != 0; });
        if (touched || scope == SpeciesScope::All) sub.species_map.push_back(i);
    }

    std::vector<std::string> names;
    for (std::size_t i : sub.species_map) names.push_back(net.species()[i].name);
    std::vector<Complex> complexes;
    std::vector<std::size_t> local(net.n(), SIZE_MAX);
    for (std::size_t k = 0; k < sub.complex_map.size(); ++k) {
        local[sub.complex_map[k]] = k;
        Complex c;
        for (std::size_t i : sub.species_map) c.coefficients.push_back(net.complexes()[sub.complex_map[k]].coefficients[i]);
        complexes.push_back(std::move(c));
    }
    std::vector<ReactionSpec> specs;
    for (std::size_t q : reactions) {
        const auto& rx = net.reactions()[q];
        specs.push_back({local[rx.reactant], local[rx.product], rx.label});
    }
    sub.network = build_network(std::move(names), std::move(complexes), std::move(specs), scope == SpeciesScope::All);
    return sub;
}

std::vector<std::vector<std::size_t>> linkage_class_parts(const ReactionNetwork& net) {
    return structural_invariants(net).linkage_partition;
}

namespace {

void require_partition(const ReactionNetwork& net, const std::vector<std::vector<std::size_t>>& parts) {
    std::vector<int> hits(net.r(), 0);
    for (const auto& part : parts) {
        if (part.empty()) throw CrnError(ErrorCode::NotAPartition, "empty part");
        for (std::size_t q : part) {
            if (q >= net.r()) throw CrnError(ErrorCode::NotAPartition, "reaction index " + std::to_string(q) + " out of range");
            ++hits[q];
        }
    }
    for (std::size_t q = 0; q < net.r(); ++q)
        if (hits[q] != 1)
            throw CrnError(ErrorCode::NotAPartition, "reaction " + net.reactions()[q].label + " appears " + std::to_string(hits[q]) + " times");
}

RationalVector incidence_vector(const ReactionNetwork& net, std::size_t q) {
    RationalVector v(net.n());
    v[net.reactions()[q].reactant] = -1;
    v[net.reactions()[q].product] = 1;
    return v;
}

}  // namespace

IndependenceVerdict check_decomposition(const ReactionNetwork& net, const std::vector<std::vector<std::size_t>>& parts) {
    require_partition(net, parts);
    const StructuralInvariants whole = structural_invariants(net);

    IndependenceVerdict v;
    v.s = whole.s;
    v.deficiency = whole.delta;
    v.incidence_rank = whole.n - whole.l;
    for (const auto& part : parts) {
        const Subnetwork sub = subnetwork(net, part);
        const StructuralInvariants inv = structural_invariants(sub.network);
        PartInvariants pi{sub.reaction_map, inv.n, inv.l, inv.s, inv.delta};
        v.s_sum += inv.s;
        v.deficiency_sum += inv.delta;
        v.incidence_rank_sum += inv.n - inv.l;
        v.decomposition.parts.push_back(sub.reaction_map);
        v.decomposition.invariants.push_back(std::move(pi));
    }
    v.independent = v.s == v.s_sum;
    v.incidence_independent = v.incidence_rank == v.incidence_rank_sum;
    v.bi_independent = v.independent && v.incidence_independent;
    if (v.bi_independent)
        v.relation = DeficiencyRelation::Equal;
    else if (v.independent)
        v.relation = DeficiencyRelation::AtMost;
    else if (v.incidence_independent)
        v.relation = DeficiencyRelation::AtLeast;
    return v;
}

std::vector<Decomposition> search_decompositions(const ReactionNetwork& net, DecompositionPredicate predicate,
                                                 std::size_t max_parts) {
    const std::size_t r = net.r();
    if (r > kMaxSearchReactions)
        throw CrnError(ErrorCode::TooLarge, std::to_string(r) + " reactions exceed the search limit of " + std::to_string(kMaxSearchReactions));
    if (max_parts == 0 || max_parts > r) max_parts = r;

    const bool need_stoich = predicate != DecompositionPredicate::IncidenceIndependent;
    const bool need_incidence = predicate != DecompositionPredicate::Independent;
    const StructuralInvariants whole = structural_invariants(net);
    const std::size_t s_target = whole.s;
    const std::size_t inc_target = whole.n - whole.l;

    std::vector<RationalVector> stoich(r), incidence(r);
    for (std::size_t q = 0; q < r; ++q) {
        stoich[q] = net.reaction_vector(q);
        incidence[q] = incidence_vector(net, q);
    }

    struct PartState {
        EchelonBasis stoich;
        EchelonBasis incidence;
    };
    std::vector<std::vector<std::size_t>> found;  // restricted-growth strings
    std::vector<std::size_t> rgs(r, 0);

    // Part ranks only grow as reactions are added, so an exceeded target prunes the subtree.
    std::function<void(std::size_t, std::vector<PartState>&, std::size_t, std::size_t)> recurse =
        [&](std::size_t q, std::vector<PartState>& states, std::size_t s_sum, std::size_t inc_sum) {
            if (q == r) {
                if ((!need_stoich || s_sum == s_target) && (!need_incidence || inc_sum == inc_target)) found.push_back(rgs);
                return;
            }
            const std::size_t open = states.size();
            const std::size_t limit = std::min(open + 1, max_parts);
            for (std::size_t p = 0; p < limit; ++p) {
                // Remaining reactions must still fit into at most max_parts parts: always true.
                PartState saved = p < open ? states[p] : PartState{EchelonBasis(net.m()), EchelonBasis(net.n())};
                PartState next = saved;
                const std::size_t ds = next.stoich.insert(stoich[q]) ? 1 : 0;
                const std::size_t di = next.incidence.insert(incidence[q]) ? 1 : 0;
                if (need_stoich && s_sum + ds > s_target) continue;
                if (need_incidence && inc_sum + di > inc_target) continue;
                rgs[q] = p;
                if (p < open) {
                    states[p] = std::move(next);
                    recurse(q + 1, states, s_sum + ds, inc_sum + di);
                    states[p] = std::move(saved);
                } else {
                    states.push_back(std::move(next));
                    recurse(q + 1, states, s_sum + ds, inc_sum + di);
                    states.pop_back();
                }
            }
        };
    std::vector<PartState> states;
    recurse(0, states, 0, 0);

    std::vector<Decomposition> out;
    for (const auto& code : found) {
        const std::size_t k = *std::max_element(code.begin(), code.end()) + 1;
        std::vector<std::vector<std::size_t>> parts(k);
        for (std::size_t q = 0; q < r; ++q) parts[code[q]].push_back(q);
        out.push_back(check_decomposition(net, parts).decomposition);
    }
    return out;
}

const char* to_string(DeficiencyRelation rel) {
    switch (rel) {
        case DeficiencyRelation::AtMost: return "delta <= sum";
        case DeficiencyRelation::AtLeast: return "delta >= sum";
        case DeficiencyRelation::Equal: return "delta = sum";
    }
    return "";
}

const char* to_string(DecompositionPredicate pred) {
    switch (pred) {
        case DecompositionPredicate::Independent: return "independent";
        case DecompositionPredicate::IncidenceIndependent: return "incidence_independent";
        case DecompositionPredicate::BiIndependent: return "bi_independent";
    }
    return "";
}

}  // namespace crnbal
