#ifndef CRNBAL_NETWORK_HPP
#define CRNBAL_NETWORK_HPP

#include "crnbal/linalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crnbal {

struct Species {
    std::size_t index = 0;
    std::string name;
};

/// Nonnegative rational combination of species; the zero complex is allowed.
struct Complex {
    RationalVector coefficients;

    friend bool operator==(const Complex&, const Complex&) = default;
};

struct Reaction {
    std::size_t reactant = 0;
    std::size_t product = 0;
    std::string label;
};

struct ReactionSpec {
    std::size_t reactant = 0;
    std::size_t product = 0;
    std::string label;  // defaults to "R<q+1>" when empty
};

/// Immutable reaction network with its complex, incidence and stoichiometric matrices.
/// N = Y * Ia holds exactly.
class ReactionNetwork {
public:
    const std::vector<Species>& species() const { return species_; }
    const std::vector<Complex>& complexes() const { return complexes_; }
    const std::vector<Reaction>& reactions() const { return reactions_; }

    std::size_t m() const { return species_.size(); }
    std::size_t n() const { return complexes_.size(); }
    std::size_t r() const { return reactions_.size(); }

    const RationalMatrix& Y() const { return y_; }
    const RationalMatrix& Ia() const { return ia_; }
    const RationalMatrix& N() const { return n_; }

    std::optional<std::size_t> species_index(const std::string& name) const;
    std::optional<std::size_t> reaction_index(const std::string& label) const;
    /// Human-readable complex, e.g. "2X1 + X2" or "0".
    std::string complex_string(std::size_t c) const;
    /// Reaction vector y' - y.
    RationalVector reaction_vector(std::size_t q) const;
    /// Indices of complexes that are the reactant of at least one reaction, ascending.
    std::vector<std::size_t> reactant_complexes() const;
    /// Infinity norm of Y (max absolute row sum).
    double y_inf_norm() const;

private:
    friend ReactionNetwork build_network(std::vector<std::string>, std::vector<Complex>,
                                         std::vector<ReactionSpec>, bool);
    std::vector<Species> species_;
    std::vector<Complex> complexes_;
    std::vector<Reaction> reactions_;
    RationalMatrix y_;
    RationalMatrix ia_;
    RationalMatrix n_;
};

/// Validates and assembles a network. Throws CrnError with DuplicateSpecies,
/// DuplicateComplex, DuplicateReaction, SelfLoopReaction, UnusedComplex, UnusedSpecies or
/// InvalidComplex. `allow_unused_species` keeps species that occur in no complex
/// (subnetworks evaluated on the parent's state space need them).
ReactionNetwork build_network(std::vector<std::string> species, std::vector<Complex> complexes,
                              std::vector<ReactionSpec> reactions, bool allow_unused_species = false);

struct StructuralInvariants {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t n_r = 0;
    std::size_t r = 0;
    std::size_t l = 0;
    std::size_t sl = 0;  // every SCC counts, including single complexes
    std::size_t t = 0;
    std::size_t s = 0;
    std::size_t delta = 0;
    bool weakly_reversible = false;
    bool t_minimal = false;
    bool cycle_terminal = false;
    bool conservative = false;
    std::vector<std::vector<std::size_t>> linkage_partition;  // reaction indices
    std::vector<std::vector<std::size_t>> linkage_complexes;  // complex indices
    std::vector<std::vector<std::size_t>> terminal_classes;   // complex indices
};

StructuralInvariants structural_invariants(const ReactionNetwork& net);

struct ConservationResult {
    bool conservative = false;
    std::optional<RationalVector> witness;  // strictly positive z with N^T z = 0
};

ConservationResult is_conservative(const ReactionNetwork& net);

/// True iff ker Ia holds a strictly positive vector (the algebraic weak-reversibility test).
bool has_positive_incidence_kernel(const ReactionNetwork& net);

}  // namespace crnbal

#endif  // CRNBAL_NETWORK_HPP
