#ifndef CRNBAL_KINETIC_MATRICES_HPP
#define CRNBAL_KINETIC_MATRICES_HPP

#include "crnbal/kinetics.hpp"
#include "crnbal/linalg.hpp"
#include "crnbal/network.hpp"

#include <vector>

namespace crnbal {

/// Kinetic-order analogues of Y for a PL-RDK system.
struct TMatrices {
    MixedMatrix ytilde;  // m x n, zero columns for non-reactant complexes
    MixedMatrix T;       // m x n_r, columns in ascending reactant-complex index order
    MixedMatrix L;       // n_r x l linkage-class indicators
    MixedMatrix That;    // (m + l) x n_r, T stacked over L^T
    std::vector<std::size_t> reactant_complexes;
    std::size_t q_tilde = 0;
    std::size_t q_hat = 0;
    std::size_t delta_hat = 0;
    bool ranks_exact = true;
    MixedMatrix s_tilde_basis;  // columns span S~
};

/// Throws NotRDK when reactions sharing a reactant have different kinetic orders.
TMatrices build_t_matrices(const ReactionNetwork& net, const PowerLawKinetics& kin);

/// q_hat == n_r, equivalently delta_hat == 0.
bool is_pl_tik(const TMatrices& t);

struct KineticOrderSubspace {
    MixedMatrix basis;       // columns span S~
    MixedMatrix complement;  // columns span S~ perp
    std::size_t dimension = 0;
    bool exact = true;
    /// Set when some product complex is not a reactant, so Y~ has zero columns.
    bool non_cycle_terminal_warning = false;
};

KineticOrderSubspace kinetic_order_subspace(const TMatrices& t, const ReactionNetwork& net);

}  // namespace crnbal

#endif  // CRNBAL_KINETIC_MATRICES_HPP
