#ifndef CRNBAL_DECOMPOSITION_HPP
#define CRNBAL_DECOMPOSITION_HPP

#include "crnbal/network.hpp"

#include <optional>
#include <vector>

namespace crnbal {

enum class SpeciesScope {
    Touched,  // only species occurring in the selected complexes
    All,      // keep the parent's species list (for kinetics on the parent state space)
};

struct Subnetwork {
    ReactionNetwork network;
    std::vector<std::size_t> reaction_map;  // subnetwork reaction -> parent reaction
    std::vector<std::size_t> complex_map;   // subnetwork complex -> parent complex
    std::vector<std::size_t> species_map;   // subnetwork species -> parent species
};

/// Subnetwork defined by a reaction subset (ascending order is imposed). Throws EmptySelection.
Subnetwork subnetwork(const ReactionNetwork& net, std::vector<std::size_t> reactions,
                      SpeciesScope scope = SpeciesScope::Touched);

struct PartInvariants {
    std::vector<std::size_t> reactions;
    std::size_t n = 0;
    std::size_t l = 0;
    std::size_t s = 0;
    std::size_t delta = 0;
};

struct Decomposition {
    std::vector<std::vector<std::size_t>> parts;
    std::vector<PartInvariants> invariants;
};

enum class DeficiencyRelation { AtMost, AtLeast, Equal };  // delta vs sum of part deficiencies

struct IndependenceVerdict {
    bool independent = false;
    bool incidence_independent = false;
    bool bi_independent = false;
    std::size_t deficiency = 0;
    std::size_t deficiency_sum = 0;
    std::size_t s = 0;
    std::size_t s_sum = 0;
    std::size_t incidence_rank = 0;      // n - l
    std::size_t incidence_rank_sum = 0;  // sum (n_i - l_i)
    std::optional<DeficiencyRelation> relation;
    Decomposition decomposition;
};

/// Throws NotAPartition unless `parts` are disjoint, nonempty and cover every reaction.
IndependenceVerdict check_decomposition(const ReactionNetwork& net, const std::vector<std::vector<std::size_t>>& parts);

/// The linkage-class decomposition.
std::vector<std::vector<std::size_t>> linkage_class_parts(const ReactionNetwork& net);

enum class DecompositionPredicate { Independent, IncidenceIndependent, BiIndependent };

inline constexpr std::size_t kMaxSearchReactions = 12;

/// All set partitions of the reactions with at most `max_parts` parts satisfying the predicate,
/// in lexicographic restricted-growth order. Throws TooLarge when r > 12.
std::vector<Decomposition> search_decompositions(const ReactionNetwork& net, DecompositionPredicate predicate,
                                                 std::size_t max_parts);

const char* to_string(DeficiencyRelation rel);
const char* to_string(DecompositionPredicate pred);

}  // namespace crnbal

#endif  // CRNBAL_DECOMPOSITION_HPP
