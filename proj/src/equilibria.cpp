#include "crnbal/equilibria.hpp"

#include "crnbal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace crnbal {

namespace {

double norm_inf(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd mode_matrix(const ReactionNetwork& net, EquilibriumMode mode) {
    return mode == EquilibriumMode::Positive ? net.N().to_eigen() : net.Ia().to_eigen();
}

// Row i of A K(x) divided by the total flux through it, (|A| K(x))_i. Plain residuals vanish
// near the boundary and at infinity whenever the rates feeding a row collapse, equilibrium or not.
Eigen::VectorXd scaled(const Eigen::MatrixXd& a, const Eigen::MatrixXd& abs_a, const Eigen::VectorXd& k) {
    const Eigen::VectorXd w = abs_a * k;
    Eigen::VectorXd out = a * k;
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = w(i) > 0.0 ? out(i) / w(i) : 0.0;
    return out;
}

Eigen::MatrixXd scaled_jacobian(const Eigen::MatrixXd& a, const Eigen::MatrixXd& abs_a, const Eigen::VectorXd& k,
                                const Eigen::MatrixXd& jk) {
    const Eigen::VectorXd w = abs_a * k;
    const Eigen::VectorXd ak = a * k;
    const Eigen::MatrixXd aj = a * jk;
    const Eigen::MatrixXd wj = abs_a * jk;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(aj.rows(), aj.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        if (w(i) > 0.0) out.row(i) = aj.row(i) / w(i) - ak(i) * wj.row(i) / (w(i) * w(i));
    return out;
}

// Same equations for every term system, stacked.
ResidualModel stacked_model(const ReactionNetwork& net, const std::vector<PowerLawKinetics>& terms, EquilibriumMode mode) {
    const Eigen::MatrixXd a = mode_matrix(net, mode);
    const auto blocks = static_cast<Eigen::Index>(terms.size());
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(a.rows() * blocks, a.cols() * blocks);
    for (Eigen::Index j = 0; j < blocks; ++j) big.block(j * a.rows(), j * a.cols(), a.rows(), a.cols()) = a;
    auto stacked_k = [terms, cols = a.cols()](const Eigen::VectorXd& x) {
        Eigen::VectorXd k(cols * static_cast<Eigen::Index>(terms.size()));
        for (std::size_t j = 0; j < terms.size(); ++j) k.segment(static_cast<Eigen::Index>(j) * cols, cols) = evaluate(terms[j], x);
        return k;
    };
    ResidualModel model;
    model.dim = net.m();
    const Eigen::MatrixXd abs_big = big.cwiseAbs();
    model.residual = [big, abs_big, stacked_k](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return scaled(big, abs_big, stacked_k(x));
    };
    model.log_jacobian = [big, abs_big, stacked_k, terms, cols = a.cols()](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
        Eigen::MatrixXd jk(cols * static_cast<Eigen::Index>(terms.size()), x.size());
        for (std::size_t j = 0; j < terms.size(); ++j) jk.middleRows(static_cast<Eigen::Index>(j) * cols, cols) = log_jacobian(terms[j], x);
        return scaled_jacobian(big, abs_big, stacked_k(x), jk);
    };
    return model;
}

double model_residual(const ResidualModel& model, const Eigen::VectorXd& x) { return norm_inf(model.residual(x)); }

}  // namespace

EquilibriumPoint make_point(const ReactionNetwork& net, const Kinetics& kin, const Eigen::VectorXd& x, EquilibriumMode kind) {
    const Eigen::VectorXd k = evaluate(kin, x);
    EquilibriumPoint p;
    p.x = x;
    p.sfrf_residual = norm_inf(net.N().to_eigen() * k);
    p.cfrf_residual = norm_inf(net.Ia().to_eigen() * k);
    p.kind = kind;
    return p;
}

ResidualModel residual_model(const ReactionNetwork& net, const Kinetics& kin, EquilibriumMode mode) {
    validate(kin, net);
    const Eigen::MatrixXd a = mode_matrix(net, mode);
    ResidualModel model;
    model.dim = net.m();
    const Eigen::MatrixXd abs_a = a.cwiseAbs();
    model.residual = [a, abs_a, kin](const Eigen::VectorXd& x) -> Eigen::VectorXd { return scaled(a, abs_a, evaluate(kin, x)); };
    model.log_jacobian = [a, abs_a, kin](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
        return scaled_jacobian(a, abs_a, evaluate(kin, x), log_jacobian(kin, x));
    };
    return model;
}

SolveReport solve_equilibria(const ReactionNetwork& net, const Kinetics& kin, EquilibriumMode mode,
                             const std::optional<Coset>& coset, const SolverConfig& cfg) {
    SolveReport report;
    const ResidualModel model = residual_model(net, kin, mode);
    for (const auto& x : find_zeros(model, coset, cfg, &report.stats)) {
        // find_zeros already enforced the scaled residual; the point keeps the raw ones.
        report.points.push_back(make_point(net, kin, x, mode));
    }
    return report;
}

CosetCount coset_intersection_count(const ReactionNetwork& net, const Kinetics& kin, const Eigen::MatrixXd& w,
                                    const Eigen::VectorXd& x0, const SolverConfig& cfg) {
    const Coset coset{x0, orthonormal_column_basis(w)};
    CosetCount count;
    count.positive = solve_equilibria(net, kin, EquilibriumMode::Positive, coset, cfg).points.size();
    count.complex_balanced = solve_equilibria(net, kin, EquilibriumMode::ComplexBalanced, coset, cfg).points.size();
    return count;
}

LpReport check_lp_property(const ReactionNetwork& net, const Kinetics& kin, EquilibriumMode which, const LPSetSpec& spec,
                           std::size_t n_samples, const SolverConfig& cfg) {
    const Eigen::VectorXd& xs = spec.reference;
    if (static_cast<std::size_t>(xs.size()) != net.m() || spec.flux_basis.rows() != net.m())
        throw CrnError(ErrorCode::DimensionMismatch, "flux basis and reference must live in species space");
    if ((xs.array() <= 0.0).any()) throw CrnError(ErrorCode::ReferenceNotEquilibrium, "reference state is not positive");
    const ResidualModel model = residual_model(net, kin, which);
    if (model_residual(model, xs) > kLpTol)
        throw CrnError(ErrorCode::ReferenceNotEquilibrium, std::string("reference is not a ") +
                                                               (which == EquilibriumMode::Positive ? "positive" : "complex balanced") +
                                                               " equilibrium");

    const Eigen::MatrixXd p = orthonormal_column_basis(spec.flux_basis.values());
    const Eigen::MatrixXd perp = orthonormal_complement(spec.flux_basis.values());
    const Eigen::VectorXd log_ref = xs.array().log().matrix();

    LpReport report;
    report.found_points_in_set = true;
    for (const auto& point : solve_equilibria(net, kin, which, std::nullopt, cfg).points) {
        const Eigen::VectorXd v = point.x.array().log().matrix() - log_ref;
        const double dist = p.cols() == 0 ? 0.0 : (p.transpose() * v).norm();
        report.max_distance = std::max(report.max_distance, dist);
        if (dist > kLpTol * std::max(1.0, v.norm())) report.found_points_in_set = false;
        ++report.points_checked;
    }

    std::mt19937_64 rng(cfg.rng_seed + 1);
    std::normal_distribution<double> normal(0.0, 0.7);
    report.set_in_equilibria = true;
    const std::size_t samples = perp.cols() == 0 ? 1 : n_samples;
    for (std::size_t k = 0; k < samples; ++k) {
        Eigen::VectorXd g(perp.cols());
        for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = normal(rng);
        const Eigen::VectorXd x = (log_ref + perp * g).array().exp().matrix();
        const double res = model_residual(model, x);
        report.max_member_residual = std::max(report.max_member_residual, res);
        if (res > kLpTol) report.set_in_equilibria = false;
        ++report.members_checked;
    }
    report.holds = report.points_checked > 0 && report.found_points_in_set && report.set_in_equilibria;
    return report;
}

bool check_bilp(const MixedMatrix& pz, const MixedMatrix& pe) {
    if (pz.rows() != pe.rows()) throw CrnError(ErrorCode::DimensionMismatch, "flux bases live in different spaces");
    const std::size_t joint = pz.hstack(pe).rank();
    return joint == pz.rank() && joint == pe.rank();
}

KseReport kse_check(const ReactionNetwork& net, const Kinetics& kin, const std::vector<EquilibriumPoint>& found,
                    const SolverConfig& cfg) {
    if (found.empty()) throw CrnError(ErrorCode::NoEquilibria, "KSE needs at least one positive equilibrium");
    KseReport report;
    report.r_minus_s = net.r() - rational_rank(net.N());

    // Re-solve from log-perturbed copies of each point to spread the sample over E+.
    std::vector<Eigen::VectorXd> points;
    for (const auto& p : found) points.push_back(p.x);
    const ResidualModel model = residual_model(net, kin, EquilibriumMode::Positive);
    std::mt19937_64 rng(cfg.rng_seed + 2);
    std::normal_distribution<double> normal(0.0, 0.5);
    const std::size_t rounds = std::max<std::size_t>(2, 2 * net.r() / std::max<std::size_t>(1, found.size()));
    for (const auto& p : found)
        for (std::size_t k = 0; k < rounds; ++k) {
            Eigen::VectorXd start = p.x;
            for (Eigen::Index i = 0; i < start.size(); ++i) start(i) *= std::exp(normal(rng));
            if (auto x = newton_from(model, start, cfg)) points.push_back(*x);
        }

    // K(E+) lies in ker N; projecting removes the solver's residual noise.
    const Eigen::MatrixXd kernel = orthonormal_column_basis(nullspace(net.N()).to_eigen());
    Eigen::MatrixXd images(static_cast<Eigen::Index>(net.r()), static_cast<Eigen::Index>(points.size()));
    for (std::size_t c = 0; c < points.size(); ++c) {
        const Eigen::VectorXd v = evaluate(kin, points[c]);
        images.col(static_cast<Eigen::Index>(c)) = v / v.norm();
    }
    const Eigen::MatrixXd projected = kernel.cols() == 0 ? Eigen::MatrixXd(images.rows(), 0) : Eigen::MatrixXd(kernel * (kernel.transpose() * images));
    report.sampled_span_dim = projected.cols() == 0 ? 0 : numeric_rank(projected, 1e-9);
    report.images = points.size();
    report.kse = report.sampled_span_dim == report.r_minus_s;

    if (const auto* pl = std::get_if<PowerLawKinetics>(&kin)) {
        report.por = is_por(*pl);
        if (report.por) {
            const Eigen::MatrixXd f = pl->orders.values();
            const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(f);
            bool consistent = true;
            for (const auto& x : points) {
                const Eigen::VectorXd v = evaluate(kin, x);
                Eigen::VectorXd target(v.size());
                for (Eigen::Index q = 0; q < v.size(); ++q) target(q) = std::log(v(q) / pl->rates[static_cast<std::size_t>(q)]);
                const double miss = (f * cod.solve(target) - target).norm();
                if (miss > kLpTol * std::max(1.0, target.norm())) consistent = false;
            }
            report.exact_route_consistent = consistent;
        }
    }
    return report;
}

ScbReport scb_check(const ReactionNetwork& net, const Kinetics& kin, const Eigen::VectorXd& x_ref, std::size_t n_classes,
                    const SolverConfig& cfg) {
    const Eigen::MatrixXd s = stoichiometric_basis(net);
    std::mt19937_64 rng(cfg.rng_seed + 3);
    std::normal_distribution<double> normal(0.0, 0.5);
    SolverConfig inner = cfg;
    inner.seeds = std::max<std::size_t>(8, cfg.seeds / 4);
    ScbReport report;
    for (std::size_t c = 0; c < n_classes; ++c) {
        Eigen::VectorXd x0 = x_ref;
        if (c > 0)
            for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) *= std::exp(normal(rng));
        ++report.classes_sampled;
        if (!solve_equilibria(net, kin, EquilibriumMode::ComplexBalanced, Coset{x0, s}, inner).points.empty()) ++report.classes_hit;
    }
    report.holds_sampled = report.classes_sampled > 0 && report.classes_hit == report.classes_sampled;
    return report;
}

PolyPlEquilibratedReport poly_pl_equilibrated_check(const ReactionNetwork& net, const PolyPLKinetics& input,
                                                    const SolverConfig& cfg) {
    validate(input, net);
    const PolyPLKinetics kin = input.is_normalized() ? input : normalize_poly_pl(input);
    std::vector<PowerLawKinetics> terms;
    for (std::size_t j = 0; j < kin.length(); ++j) terms.push_back(term_kinetics(kin, j));

    const ResidualModel common_e = stacked_model(net, terms, EquilibriumMode::Positive);
    const ResidualModel common_z = stacked_model(net, terms, EquilibriumMode::ComplexBalanced);
    const auto e_full = solve_equilibria(net, kin, EquilibriumMode::Positive, std::nullopt, cfg).points;
    const auto z_full = solve_equilibria(net, kin, EquilibriumMode::ComplexBalanced, std::nullopt, cfg).points;
    const auto e_common = find_zeros(common_e, std::nullopt, cfg);
    const auto z_common = find_zeros(common_z, std::nullopt, cfg);

    PolyPlEquilibratedReport report;
    report.e_points = e_full.size();
    report.z_points = z_full.size();
    report.e_common_points = e_common.size();
    report.z_common_points = z_common.size();

    // The intersections are always contained in the full sets; test the other inclusion.
    if (!e_full.empty())
        report.pl_equilibrated = std::all_of(e_full.begin(), e_full.end(),
                                             [&](const EquilibriumPoint& p) { return model_residual(common_e, p.x) <= kLpTol; });
    if (!z_full.empty())
        report.pl_complex_balanced = std::all_of(z_full.begin(), z_full.end(),
                                                 [&](const EquilibriumPoint& p) { return model_residual(common_z, p.x) <= kLpTol; });
    if (!z_common.empty())
        report.absolutely_pl_complex_balanced = std::all_of(
            e_common.begin(), e_common.end(), [&](const Eigen::VectorXd& x) { return model_residual(common_z, x) <= kLpTol; });
    return report;
}

Eigen::MatrixXd stoichiometric_basis(const ReactionNetwork& net) { return orthonormal_column_basis(net.N().to_eigen()); }

const char* to_string(EquilibriumMode mode) {
    return mode == EquilibriumMode::Positive ? "positive" : "complex_balanced";
}

}  // namespace crnbal
