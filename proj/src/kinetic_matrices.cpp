#include "crnbal/kinetic_matrices.hpp"

#include "crnbal/errors.hpp"

namespace crnbal {

namespace {

// Difference vectors Y~(y') - Y~(y), one column per reaction.
MixedMatrix kinetic_differences(const TMatrices& t, const ReactionNetwork& net) {
    if (t.ytilde.exact()) {
        const RationalMatrix& yt = *t.ytilde.exact();
        RationalMatrix d(net.m(), net.r());
        for (std::size_t q = 0; q < net.r(); ++q) {
            const auto& rx = net.reactions()[q];
            for (std::size_t i = 0; i < net.m(); ++i) d(i, q) = yt(i, rx.product) - yt(i, rx.reactant);
        }
        return MixedMatrix(std::move(d));
    }
    const Eigen::MatrixXd& yt = t.ytilde.values();
    Eigen::MatrixXd d(static_cast<Eigen::Index>(net.m()), static_cast<Eigen::Index>(net.r()));
    for (std::size_t q = 0; q < net.r(); ++q) {
        const auto& rx = net.reactions()[q];
        d.col(static_cast<Eigen::Index>(q)) = yt.col(static_cast<Eigen::Index>(rx.product)) - yt.col(static_cast<Eigen::Index>(rx.reactant));
    }
    return MixedMatrix(std::move(d));
}

}  // namespace

TMatrices build_t_matrices(const ReactionNetwork& net, const PowerLawKinetics& kin) {
    validate(kin, net);
    if (!is_pl_rdk(kin, net)) throw CrnError(ErrorCode::NotRDK, "kinetic orders are not reactant-determined");

    const std::size_t m = net.m();
    const std::size_t n = net.n();
    TMatrices t;
    t.reactant_complexes = net.reactant_complexes();
    const std::size_t n_r = t.reactant_complexes.size();

    // Any reaction leaving complex c supplies its kinetic complex.
    std::vector<std::size_t> row_of(n, SIZE_MAX);
    for (std::size_t q = 0; q < net.r(); ++q)
        if (row_of[net.reactions()[q].reactant] == SIZE_MAX) row_of[net.reactions()[q].reactant] = q;

    const StructuralInvariants inv = structural_invariants(net);
    std::vector<std::size_t> linkage_of(n);
    for (std::size_t k = 0; k < inv.l; ++k)
        for (std::size_t c : inv.linkage_complexes[k]) linkage_of[c] = k;

    RationalMatrix l_exact(n_r, inv.l);
    for (std::size_t j = 0; j < n_r; ++j) l_exact(j, linkage_of[t.reactant_complexes[j]]) = 1;
    t.L = MixedMatrix(l_exact);

    if (kin.orders.exact()) {
        const RationalMatrix& f = *kin.orders.exact();
        RationalMatrix yt(m, n);
        for (std::size_t c = 0; c < n; ++c)
            if (row_of[c] != SIZE_MAX)
                for (std::size_t i = 0; i < m; ++i) yt(i, c) = f(row_of[c], i);
        t.ytilde = MixedMatrix(yt);
        t.T = MixedMatrix(yt.select_columns(t.reactant_complexes));
        t.That = MixedMatrix(t.T.exact()->vstack(l_exact.transpose()));
        t.ranks_exact = true;
    } else {
        Eigen::MatrixXd yt = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
        for (std::size_t c = 0; c < n; ++c)
            if (row_of[c] != SIZE_MAX) yt.col(static_cast<Eigen::Index>(c)) = kin.orders.values().row(static_cast<Eigen::Index>(row_of[c])).transpose();
        t.ytilde = MixedMatrix(yt);
        t.T = t.ytilde.select_columns(t.reactant_complexes);
        t.That = t.T.vstack(t.L.transpose());
        t.ranks_exact = false;
    }
    t.q_tilde = t.T.rank();
    t.q_hat = t.That.rank();
    t.delta_hat = n_r - t.q_hat;
    t.s_tilde_basis = span_basis(kinetic_differences(t, net));
    return t;
}

bool is_pl_tik(const TMatrices& t) { return t.q_hat == t.reactant_complexes.size(); }

KineticOrderSubspace kinetic_order_subspace(const TMatrices& t, const ReactionNetwork& net) {
    KineticOrderSubspace out;
    const MixedMatrix diffs = kinetic_differences(t, net);
    out.basis = span_basis(diffs);
    out.complement = complement_basis(diffs);
    out.dimension = out.basis.cols();
    out.exact = diffs.is_exact();
    out.non_cycle_terminal_warning = t.reactant_complexes.size() != net.n();
    return out;
}

}  // namespace crnbal
