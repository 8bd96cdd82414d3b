#include "crnbal/kinetics.hpp"

#include "crnbal/errors.hpp"
#include "crnbal/kinetic_matrices.hpp"

#include <algorithm>
#include <cmath>

namespace crnbal {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double monomial_value(const Monomial& mono, const Eigen::VectorXd& x) {
    double v = mono.coeff;
    for (std::size_t i = 0; i < mono.exponents.size(); ++i) {
        const double e = mono.exponents[i];
        if (e == 0.0) continue;
        v *= std::pow(x(static_cast<Eigen::Index>(i)), e);
    }
    return v;
}

double polynomial_value(const Polynomial& poly, const Eigen::VectorXd& x) {
    double v = 0.0;
    for (const auto& mono : poly) v += monomial_value(mono, x);
    return v;
}

// Sum over terms of coeff * e_i * x^e, i.e. the log-derivative numerator.
Eigen::VectorXd polynomial_log_gradient(const Polynomial& poly, const Eigen::VectorXd& x) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
    for (const auto& mono : poly) {
        const double v = monomial_value(mono, x);
        for (std::size_t i = 0; i < mono.exponents.size(); ++i) g(static_cast<Eigen::Index>(i)) += mono.exponents[i] * v;
    }
    return g;
}

void require_positive(const Eigen::VectorXd& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!(x(i) > 0.0))
            throw CrnError(ErrorCode::NonPositiveState, "state component " + std::to_string(i) + " is not positive");
}

void require_defined(const Polynomial& poly, const Eigen::VectorXd& x) {
    for (const auto& mono : poly)
        for (std::size_t i = 0; i < mono.exponents.size(); ++i) {
            const double xi = x(static_cast<Eigen::Index>(i));
            if (xi < 0.0 || (xi == 0.0 && mono.exponents[i] < 0.0))
                throw CrnError(ErrorCode::NonPositiveState, "state component " + std::to_string(i) + " outside the domain");
        }
}

// One Hill factor x^f/(d + x^f), written as 1/(d x^|f| + 1) for f < 0.
double hill_factor(double x, double f, double d) {
    if (f > 0.0) {
        const double p = std::pow(x, f);
        return p / (d + p);
    }
    return 1.0 / (d * std::pow(x, -f) + 1.0);
}

void check_rates(const std::vector<double>& rates, std::size_t r) {
    if (rates.size() != r) throw CrnError(ErrorCode::InvalidKinetics, "rate vector length differs from reaction count");
    for (double k : rates)
        if (!(k > 0.0)) throw CrnError(ErrorCode::InvalidKinetics, "rate constants must be strictly positive");
}

void check_polys(const std::vector<Polynomial>& polys, std::size_t r, std::size_t m, bool allow_empty) {
    if (polys.size() != r) throw CrnError(ErrorCode::InvalidKinetics, "term list count differs from reaction count");
    for (const auto& p : polys) {
        if (p.empty() && !allow_empty) throw CrnError(ErrorCode::InvalidKinetics, "reaction without terms");
        for (const auto& mono : p) {
            if (mono.exponents.size() != m) throw CrnError(ErrorCode::InvalidKinetics, "exponent row length differs from species count");
            if (!(mono.coeff > 0.0)) throw CrnError(ErrorCode::InvalidKinetics, "term coefficients must be strictly positive");
        }
    }
}

Polynomial select_poly(const std::vector<Polynomial>& polys, std::size_t q) { return polys.at(q); }

}  // namespace

std::size_t PolyPLKinetics::length() const {
    std::size_t h = 0;
    for (const auto& t : terms) h = std::max(h, t.size());
    return h;
}

bool PolyPLKinetics::is_normalized() const {
    const std::size_t h = length();
    return std::all_of(terms.begin(), terms.end(), [h](const Polynomial& p) { return p.size() == h; });
}

std::size_t reaction_count(const Kinetics& kin) { return rates_of(kin).size(); }

std::size_t species_count(const Kinetics& kin) {
    return std::visit(overloaded{
                          [](const PowerLawKinetics& k) { return k.orders.cols(); },
                          [](const HillKinetics& k) { return k.orders.cols(); },
                          [](const PolyPLKinetics& k) { return k.terms.empty() || k.terms[0].empty() ? std::size_t{0} : k.terms[0][0].exponents.size(); },
                          [](const RationalFunctionKinetics& k) { return k.numerators.empty() || k.numerators[0].empty() ? std::size_t{0} : k.numerators[0][0].exponents.size(); },
                      },
                      kin);
}

const std::vector<double>& rates_of(const Kinetics& kin) {
    return std::visit([](const auto& k) -> const std::vector<double>& { return k.rates; }, kin);
}

std::string family_name(const Kinetics& kin) {
    return std::visit(overloaded{
                          [](const PowerLawKinetics&) { return std::string("powerlaw"); },
                          [](const PolyPLKinetics&) { return std::string("polypl"); },
                          [](const HillKinetics&) { return std::string("hill"); },
                          [](const RationalFunctionKinetics&) { return std::string("rational"); },
                      },
                      kin);
}

void validate(const Kinetics& kin, const ReactionNetwork& net) {
    const std::size_t r = net.r();
    const std::size_t m = net.m();
    std::visit(overloaded{
                   [&](const PowerLawKinetics& k) {
                       if (k.orders.rows() != r || k.orders.cols() != m)
                           throw CrnError(ErrorCode::InvalidKinetics, "kinetic order matrix must be r x m");
                       check_rates(k.rates, r);
                   },
                   [&](const PolyPLKinetics& k) {
                       check_polys(k.terms, r, m, false);
                       check_rates(k.rates, r);
                   },
                   [&](const HillKinetics& k) {
                       if (k.orders.rows() != r || k.orders.cols() != m || static_cast<std::size_t>(k.dissociation.rows()) != r ||
                           static_cast<std::size_t>(k.dissociation.cols()) != m)
                           throw CrnError(ErrorCode::InvalidKinetics, "Hill matrices must be r x m");
                       for (std::size_t q = 0; q < r; ++q)
                           for (std::size_t i = 0; i < m; ++i) {
                               const double d = k.dissociation(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i));
                               if (d < 0.0) throw CrnError(ErrorCode::InvalidKinetics, "dissociation constants must be nonnegative");
                               if ((k.orders(q, i) != 0.0) != (d != 0.0))
                                   throw CrnError(ErrorCode::InvalidKinetics, "supp D_q must equal supp F_q for reaction " + net.reactions()[q].label);
                           }
                       check_rates(k.rates, r);
                   },
                   [&](const RationalFunctionKinetics& k) {
                       check_polys(k.numerators, r, m, false);
                       check_polys(k.denominators, r, m, false);
                       check_rates(k.rates, r);
                   },
               },
               kin);
}

Eigen::VectorXd evaluate(const Kinetics& kin, const Eigen::VectorXd& x) {
    return std::visit(
        overloaded{
            [&](const PowerLawKinetics& k) {
                require_positive(x);
                const auto r = static_cast<Eigen::Index>(k.rates.size());
                const Eigen::VectorXd logs = k.orders.values() * x.array().log().matrix();
                Eigen::VectorXd out(r);
                for (Eigen::Index q = 0; q < r; ++q) out(q) = k.rates[static_cast<std::size_t>(q)] * std::exp(logs(q));
                return out;
            },
            [&](const PolyPLKinetics& k) {
                require_positive(x);
                Eigen::VectorXd out(static_cast<Eigen::Index>(k.rates.size()));
                for (std::size_t q = 0; q < k.rates.size(); ++q)
                    out(static_cast<Eigen::Index>(q)) = k.rates[q] * polynomial_value(k.terms[q], x);
                return out;
            },
            [&](const HillKinetics& k) {
                for (Eigen::Index i = 0; i < x.size(); ++i)
                    if (x(i) < 0.0) throw CrnError(ErrorCode::NonPositiveState, "negative state component");
                Eigen::VectorXd out(static_cast<Eigen::Index>(k.rates.size()));
                for (std::size_t q = 0; q < k.rates.size(); ++q) {
                    double v = k.rates[q];
                    for (std::size_t i = 0; i < k.orders.cols(); ++i) {
                        const double f = k.orders(q, i);
                        if (f == 0.0) continue;
                        v *= hill_factor(x(static_cast<Eigen::Index>(i)), f,
                                         k.dissociation(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i)));
                    }
                    out(static_cast<Eigen::Index>(q)) = v;
                }
                return out;
            },
            [&](const RationalFunctionKinetics& k) {
                Eigen::VectorXd out(static_cast<Eigen::Index>(k.rates.size()));
                for (std::size_t q = 0; q < k.rates.size(); ++q) {
                    require_defined(k.numerators[q], x);
                    require_defined(k.denominators[q], x);
                    out(static_cast<Eigen::Index>(q)) =
                        k.rates[q] * polynomial_value(k.numerators[q], x) / polynomial_value(k.denominators[q], x);
                }
                return out;
            },
        },
        kin);
}

Eigen::MatrixXd log_jacobian(const Kinetics& kin, const Eigen::VectorXd& x) {
    require_positive(x);
    const Eigen::VectorXd rates = evaluate(kin, x);
    const auto m = x.size();
    return std::visit(
        overloaded{
            [&](const PowerLawKinetics& k) -> Eigen::MatrixXd {
                return rates.asDiagonal() * k.orders.values();
            },
            [&](const PolyPLKinetics& k) -> Eigen::MatrixXd {
                Eigen::MatrixXd j(static_cast<Eigen::Index>(k.rates.size()), m);
                for (std::size_t q = 0; q < k.rates.size(); ++q)
                    j.row(static_cast<Eigen::Index>(q)) = k.rates[q] * polynomial_log_gradient(k.terms[q], x).transpose();
                return j;
            },
            [&](const HillKinetics& k) -> Eigen::MatrixXd {
                Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k.rates.size()), m);
                for (std::size_t q = 0; q < k.rates.size(); ++q)
                    for (std::size_t i = 0; i < k.orders.cols(); ++i) {
                        const double f = k.orders(q, i);
                        if (f == 0.0) continue;
                        const double d = k.dissociation(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i));
                        const double p = std::pow(x(static_cast<Eigen::Index>(i)), f);
                        j(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i)) =
                            rates(static_cast<Eigen::Index>(q)) * f * d / (d + p);
                    }
                return j;
            },
            [&](const RationalFunctionKinetics& k) -> Eigen::MatrixXd {
                Eigen::MatrixXd j(static_cast<Eigen::Index>(k.rates.size()), m);
                for (std::size_t q = 0; q < k.rates.size(); ++q) {
                    const double p = polynomial_value(k.numerators[q], x);
                    const double d = polynomial_value(k.denominators[q], x);
                    const Eigen::VectorXd g = polynomial_log_gradient(k.numerators[q], x) / p -
                                              polynomial_log_gradient(k.denominators[q], x) / d;
                    j.row(static_cast<Eigen::Index>(q)) = rates(static_cast<Eigen::Index>(q)) * g.transpose();
                }
                return j;
            },
        },
        kin);
}

PowerLawKinetics mass_action_from(const ReactionNetwork& net, std::vector<double> rates) {
    RationalMatrix f(net.r(), net.m());
    for (std::size_t q = 0; q < net.r(); ++q) {
        const auto& reactant = net.complexes()[net.reactions()[q].reactant].coefficients;
        for (std::size_t i = 0; i < net.m(); ++i) f(q, i) = reactant[i];
    }
    PowerLawKinetics kin{MixedMatrix(std::move(f)), std::move(rates)};
    validate(kin, net);
    return kin;
}

PolyPLKinetics normalize_poly_pl(const PolyPLKinetics& kin) {
    PolyPLKinetics out = kin;
    const std::size_t h = kin.length();
    for (auto& row : out.terms) {
        if (row.empty() || row.size() == h) continue;
        const std::size_t copies = h - row.size() + 1;
        Monomial last = row.back();
        row.pop_back();
        last.coeff /= static_cast<double>(copies);
        for (std::size_t c = 0; c < copies; ++c) row.push_back(last);
    }
    return out;
}

PowerLawKinetics term_kinetics(const PolyPLKinetics& kin, std::size_t j) {
    if (!kin.is_normalized()) throw CrnError(ErrorCode::InvalidKinetics, "term systems need a normalized poly-PL kinetics");
    const std::size_t r = kin.terms.size();
    const std::size_t m = r == 0 ? 0 : kin.terms[0][0].exponents.size();
    bool exact = true;
    for (const auto& row : kin.terms) exact = exact && row.at(j).exact_exponents.has_value();

    std::vector<double> rates(r);
    for (std::size_t q = 0; q < r; ++q) rates[q] = kin.rates[q] * kin.terms[q][j].coeff;
    if (exact) {
        RationalMatrix f(r, m);
        for (std::size_t q = 0; q < r; ++q)
            for (std::size_t i = 0; i < m; ++i) f(q, i) = (*kin.terms[q][j].exact_exponents)[i];
        return {MixedMatrix(std::move(f)), std::move(rates)};
    }
    Eigen::MatrixXd f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m));
    for (std::size_t q = 0; q < r; ++q)
        for (std::size_t i = 0; i < m; ++i) f(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i)) = kin.terms[q][j].exponents[i];
    return {MixedMatrix(std::move(f)), std::move(rates)};
}

Kinetics restrict_kinetics(const Kinetics& kin, const std::vector<std::size_t>& reactions) {
    auto pick_rates = [&](const std::vector<double>& rates) {
        std::vector<double> out;
        for (std::size_t q : reactions) out.push_back(rates.at(q));
        return out;
    };
    auto pick_polys = [&](const std::vector<Polynomial>& polys) {
        std::vector<Polynomial> out;
        for (std::size_t q : reactions) out.push_back(select_poly(polys, q));
        return out;
    };
    return std::visit(overloaded{
                          [&](const PowerLawKinetics& k) -> Kinetics {
                              return PowerLawKinetics{k.orders.select_rows(reactions), pick_rates(k.rates)};
                          },
                          [&](const PolyPLKinetics& k) -> Kinetics {
                              return PolyPLKinetics{pick_polys(k.terms), pick_rates(k.rates)};
                          },
                          [&](const HillKinetics& k) -> Kinetics {
                              Eigen::MatrixXd d(static_cast<Eigen::Index>(reactions.size()), k.dissociation.cols());
                              for (std::size_t i = 0; i < reactions.size(); ++i)
                                  d.row(static_cast<Eigen::Index>(i)) = k.dissociation.row(static_cast<Eigen::Index>(reactions[i]));
                              return HillKinetics{k.orders.select_rows(reactions), d, pick_rates(k.rates)};
                          },
                          [&](const RationalFunctionKinetics& k) -> Kinetics {
                              return RationalFunctionKinetics{pick_polys(k.numerators), pick_polys(k.denominators), pick_rates(k.rates)};
                          },
                      },
                      kin);
}

Kinetics scale_rates(const Kinetics& kin, double factor) {
    Kinetics out = kin;
    std::visit([factor](auto& k) {
        for (auto& v : k.rates) v *= factor;
    },
               out);
    return out;
}

bool is_pl_rdk(const PowerLawKinetics& kin, const ReactionNetwork& net) {
    const auto& rx = net.reactions();
    for (std::size_t a = 0; a < rx.size(); ++a)
        for (std::size_t b = a + 1; b < rx.size(); ++b)
            if (rx[a].reactant == rx[b].reactant && !kin.orders.rows_equal(a, b)) return false;
    return true;
}

bool is_pl_nik(const PowerLawKinetics& kin) {
    return kin.orders.values().size() == 0 || kin.orders.values().minCoeff() >= 0.0;
}

bool is_por(const PowerLawKinetics& kin) {
    const auto& f = kin.orders.values();
    if (f.cols() == 0) return false;
    for (Eigen::Index i = 0; i < f.cols(); ++i)
        if (f.rows() == 0 || f.col(i).minCoeff() >= 0.0) return false;
    return true;
}

bool is_mass_action(const PowerLawKinetics& kin, const ReactionNetwork& net) {
    for (std::size_t q = 0; q < net.r(); ++q) {
        const auto& reactant = net.complexes()[net.reactions()[q].reactant].coefficients;
        for (std::size_t i = 0; i < net.m(); ++i) {
            if (kin.orders.exact()) {
                if ((*kin.orders.exact())(q, i) != reactant[i]) return false;
            } else if (std::abs(kin.orders(q, i) - to_double(reactant[i])) > 1e-12) {
                return false;
            }
        }
    }
    return true;
}

bool is_cf_poly_pl(const PolyPLKinetics& kin, const ReactionNetwork& net) {
    const PolyPLKinetics normalized = normalize_poly_pl(kin);
    const std::size_t h = normalized.length();
    for (std::size_t j = 0; j < h; ++j)
        if (!is_pl_rdk(term_kinetics(normalized, j), net)) return false;
    const auto& rx = net.reactions();
    for (std::size_t a = 0; a < rx.size(); ++a)
        for (std::size_t b = a + 1; b < rx.size(); ++b) {
            if (rx[a].reactant != rx[b].reactant) continue;
            for (std::size_t j = 0; j < h; ++j)
                if (std::abs(normalized.terms[a][j].coeff - normalized.terms[b][j].coeff) > 1e-12) return false;
        }
    return true;
}

bool is_factor_span_surjective(const TMatrices& t) {
    for (std::size_t a = 0; a < t.T.cols(); ++a)
        for (std::size_t b = a + 1; b < t.T.cols(); ++b)
            if (t.T.columns_equal(a, b)) return false;
    return true;
}

KineticsClassification classify(const Kinetics& kin, const ReactionNetwork& net, const TMatrices* t) {
    validate(kin, net);
    KineticsClassification c;
    if (const auto* pl = std::get_if<PowerLawKinetics>(&kin)) {
        c.pl_rdk = is_pl_rdk(*pl, net);
        c.cf = c.pl_rdk;
        c.pl_nik = is_pl_nik(*pl);
        c.por = is_por(*pl);
        c.mass_action = is_mass_action(*pl, net);
        if (*c.pl_rdk) {
            if (t) {
                c.factor_span_surjective = is_factor_span_surjective(*t);
            } else {
                const TMatrices own = build_t_matrices(net, *pl);
                c.factor_span_surjective = is_factor_span_surjective(own);
            }
        }
    } else if (const auto* py = std::get_if<PolyPLKinetics>(&kin)) {
        c.cf = is_cf_poly_pl(*py, net);
        if (py->length() == 1) {
            const PowerLawKinetics single = term_kinetics(*py, 0);
            c.pl_rdk = is_pl_rdk(single, net);
            c.pl_nik = is_pl_nik(single);
            c.por = is_por(single);
        }
    }
    return c;
}

bool query_flag(const Kinetics& kin, const ReactionNetwork& net, KineticsFlag flag) {
    const KineticsClassification c = classify(kin, net);
    std::optional<bool> v;
    switch (flag) {
        case KineticsFlag::PlRdk: v = c.pl_rdk; break;
        case KineticsFlag::FactorSpanSurjective: v = c.factor_span_surjective; break;
        case KineticsFlag::PlNik: v = c.pl_nik; break;
        case KineticsFlag::Por: v = c.por; break;
        case KineticsFlag::Cf: v = c.cf; break;
        case KineticsFlag::MassAction: v = c.mass_action; break;
    }
    if (!v) throw CrnError(ErrorCode::NotApplicable, "flag is undefined for " + family_name(kin) + " kinetics");
    return *v;
}

}  // namespace crnbal
