#include "crnbal/solver.hpp"

#include "crnbal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace crnbal {

namespace {

constexpr double kLogBound = 60.0;  // give up once |log x_i| leaves this box

double norm_inf(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

std::optional<Eigen::VectorXd> safe_residual(const ResidualModel& model, const Eigen::VectorXd& x) {
    try {
        Eigen::VectorXd f = model.residual(x);
        if (!f.allFinite()) return std::nullopt;
        return f;
    } catch (const CrnError&) {
        return std::nullopt;
    }
}

Eigen::VectorXd min_norm_step(const Eigen::MatrixXd& j, const Eigen::VectorXd& f) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(j);
    cod.setThreshold(1e-12);
    return -cod.solve(f);
}

std::optional<Eigen::VectorXd> newton_log(const ResidualModel& model, Eigen::VectorXd u, const SolverConfig& cfg) {
    auto f = safe_residual(model, u.array().exp().matrix());
    if (!f) return std::nullopt;
    double fn = f->norm();
    for (std::size_t it = 0; it < cfg.max_iter; ++it) {
        if (norm_inf(*f) <= cfg.tol * 1e-3) break;
        const Eigen::VectorXd x = u.array().exp().matrix();
        const Eigen::MatrixXd jac = model.log_jacobian(x);
        if (!jac.allFinite()) return std::nullopt;
        const Eigen::VectorXd step = min_norm_step(jac, *f);
        if (!step.allFinite()) return std::nullopt;
        double t = 1.0;
        bool improved = false;
        for (std::size_t h = 0; h <= cfg.max_halvings; ++h, t *= 0.5) {
            const Eigen::VectorXd trial = u + t * step;
            if (trial.cwiseAbs().maxCoeff() > kLogBound) continue;
            auto ft = safe_residual(model, trial.array().exp().matrix());
            if (ft && ft->norm() < fn) {
                u = trial;
                f = std::move(ft);
                fn = f->norm();
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (norm_inf(*f) > cfg.tol) return std::nullopt;
    return Eigen::VectorXd(u.array().exp().matrix());
}

// Largest t in (0, 1] keeping every component of x + t dx at least 1% of its current value.
double boundary_fraction(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
    double t = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (dx(i) < 0.0) t = std::min(t, 0.99 * x(i) / -dx(i));
    return t;
}

std::optional<Eigen::VectorXd> newton_coset(const ResidualModel& model, const Coset& coset, Eigen::VectorXd a,
                                            const SolverConfig& cfg) {
    const Eigen::MatrixXd& b = coset.basis;
    Eigen::VectorXd x = coset.x0 + b * a;
    auto f = safe_residual(model, x);
    if (!f) return std::nullopt;
    double fn = f->norm();
    for (std::size_t it = 0; it < cfg.max_iter; ++it) {
        if (norm_inf(*f) <= cfg.tol * 1e-3 || b.cols() == 0) break;
        const Eigen::MatrixXd jx = model.log_jacobian(x) * x.cwiseInverse().asDiagonal();
        const Eigen::VectorXd da = min_norm_step(jx * b, *f);
        if (!da.allFinite()) return std::nullopt;
        double t = boundary_fraction(x, b * da);
        bool improved = false;
        for (std::size_t h = 0; h <= cfg.max_halvings; ++h, t *= 0.5) {
            const Eigen::VectorXd ta = a + t * da;
            const Eigen::VectorXd tx = coset.x0 + b * ta;
            if ((tx.array() <= 0.0).any()) continue;
            auto ft = safe_residual(model, tx);
            if (ft && ft->norm() < fn) {
                a = ta;
                x = tx;
                f = std::move(ft);
                fn = f->norm();
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (norm_inf(*f) > cfg.tol) return std::nullopt;
    return x;
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

std::vector<Eigen::VectorXd> dedup(std::vector<Eigen::VectorXd> points, double tol) {
    std::sort(points.begin(), points.end(), lex_less);
    std::vector<Eigen::VectorXd> out;
    for (auto& p : points) {
        const Eigen::VectorXd lp = p.array().log().matrix();
        const bool seen = std::any_of(out.begin(), out.end(), [&](const Eigen::VectorXd& q) {
            return (q.array().log().matrix() - lp).norm() <= tol;
        });
        if (!seen) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

std::optional<Eigen::VectorXd> newton_from(const ResidualModel& model, const Eigen::VectorXd& start, const SolverConfig& cfg) {
    if ((start.array() <= 0.0).any()) return std::nullopt;
    return newton_log(model, start.array().log().matrix(), cfg);
}

std::vector<Eigen::VectorXd> find_zeros(const ResidualModel& model, const std::optional<Coset>& coset,
                                        const SolverConfig& cfg, SolveStats* stats) {
    const auto m = static_cast<Eigen::Index>(model.dim);
    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> unif(-cfg.seed_range, cfg.seed_range);
    auto random_log = [&] {
        Eigen::VectorXd u(m);
        for (Eigen::Index i = 0; i < m; ++i) u(i) = unif(rng);
        return u;
    };

    std::vector<Eigen::VectorXd> found;
    SolveStats local;
    for (std::size_t k = 0; k < cfg.seeds; ++k) {
        ++local.attempted;
        std::optional<Eigen::VectorXd> x;
        if (!coset) {
            x = newton_log(model, k == 0 ? Eigen::VectorXd::Zero(m) : random_log(), cfg);
        } else {
            if ((coset->x0.array() <= 0.0).any())
                throw CrnError(ErrorCode::NonPositiveState, "coset representative must be strictly positive");
            Eigen::VectorXd a = Eigen::VectorXd::Zero(coset->basis.cols());
            if (k > 0) {
                const Eigen::VectorXd target = random_log().array().exp().matrix();
                a = coset->basis.completeOrthogonalDecomposition().solve(target - coset->x0);
                // Shrink toward x0 until the projected seed is positive.
                for (int s = 0; s < 60 && ((coset->x0 + coset->basis * a).array() <= 0.0).any(); ++s) a *= 0.5;
            }
            x = newton_coset(model, *coset, a, cfg);
        }
        if (x) {
            ++local.converged;
            found.push_back(std::move(*x));
        }
    }
    found = dedup(std::move(found), cfg.dedup);
    local.distinct = found.size();
    if (stats) *stats = local;
    return found;
}

}  // namespace crnbal
