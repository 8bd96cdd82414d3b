#include "crnbal/transform.hpp"

#include "crnbal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace crnbal {

std::vector<std::vector<std::size_t>> StarMscResult::replica_parts() const {
    std::vector<std::vector<std::size_t>> parts(h);
    for (std::size_t q = 0; q < replica_map.size(); ++q) parts[replica_map[q].second].push_back(q);
    return parts;
}

StarMscResult star_msc(const ReactionNetwork& net, const PolyPLKinetics& input) {
    validate(input, net);
    const PolyPLKinetics kin = input.is_normalized() ? input : normalize_poly_pl(input);
    const std::size_t h = kin.length();
    const std::size_t m = net.m();
    const std::size_t n = net.n();
    const std::size_t r = net.r();

    Rational largest = 0;
    for (std::size_t c = 0; c < n; ++c)
        for (const Rational& v : net.complexes()[c].coefficients) {
            if (!is_integer(v))
                throw CrnError(ErrorCode::NonIntegerComplex, "complex " + net.complex_string(c) + " has a non-integer coefficient");
            largest = std::max(largest, v);
        }

    StarMscResult out;
    out.M = static_cast<long long>(numerator(largest)) + 1;
    out.h = h;

    std::vector<std::string> species;
    for (const auto& s : net.species()) species.push_back(s.name);
    std::vector<Complex> complexes;
    std::vector<ReactionSpec> reactions;
    for (std::size_t j = 0; j < h; ++j) {
        const Rational shift = static_cast<long long>(j) * out.M;
        for (std::size_t c = 0; c < n; ++c) {
            Complex shifted = net.complexes()[c];
            for (auto& v : shifted.coefficients) v += shift;
            complexes.push_back(std::move(shifted));
            out.complex_labels.push_back("C" + std::to_string(c + 1) + "_rep" + std::to_string(j + 1));
        }
        for (std::size_t q = 0; q < r; ++q) {
            const auto& rx = net.reactions()[q];
            reactions.push_back({j * n + rx.reactant, j * n + rx.product, rx.label + "_rep" + std::to_string(j + 1)});
            out.replica_map.emplace_back(q, j);
        }
    }
    out.network = build_network(std::move(species), std::move(complexes), std::move(reactions));

    bool exact = true;
    for (const auto& row : kin.terms)
        for (const auto& mono : row) exact = exact && mono.exact_exponents.has_value();
    std::vector<double> rates;
    Eigen::MatrixXd f(static_cast<Eigen::Index>(h * r), static_cast<Eigen::Index>(m));
    RationalMatrix fx(exact ? h * r : 0, exact ? m : 0);
    for (std::size_t j = 0; j < h; ++j)
        for (std::size_t q = 0; q < r; ++q) {
            const Monomial& mono = kin.terms[q][j];
            const std::size_t row = j * r + q;
            rates.push_back(kin.rates[q] * mono.coeff);
            for (std::size_t i = 0; i < m; ++i) {
                f(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i)) = mono.exponents[i];
                if (exact) fx(row, i) = (*mono.exact_exponents)[i];
            }
        }
    out.kinetics = PowerLawKinetics{exact ? MixedMatrix(std::move(fx)) : MixedMatrix(std::move(f)), std::move(rates)};

    const StructuralInvariants inv = structural_invariants(net);
    out.predicted_delta = inv.delta + (inv.n - inv.l) * (h - 1);
    return out;
}

double star_msc_sfrf_deviation(const ReactionNetwork& net, const PolyPLKinetics& kin, const StarMscResult& star,
                               std::size_t n_states, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    const Eigen::MatrixXd n = net.N().to_eigen();
    const Eigen::MatrixXd n_star = star.network.N().to_eigen();
    double worst = 0.0;
    for (std::size_t k = 0; k < n_states; ++k) {
        Eigen::VectorXd x(static_cast<Eigen::Index>(net.m()));
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = std::exp(unif(rng));
        const Eigen::VectorXd f = n * evaluate(kin, x);
        const Eigen::VectorXd f_star = n_star * evaluate(star.kinetics, x);
        const double scale = std::max(f.cwiseAbs().maxCoeff(), 1e-300);
        worst = std::max(worst, (f_star - f).cwiseAbs().maxCoeff() / scale);
    }
    return worst;
}

namespace {

constexpr double kPffTol = 1e-9;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

double ratio_spread(const Eigen::VectorXd& ka, const Eigen::VectorXd& kb) {
    const Eigen::ArrayXd ratio = ka.array() / kb.array();
    const double mean = ratio.mean();
    return (ratio.maxCoeff() - ratio.minCoeff()) / mean;
}

}  // namespace

PffCertificate pff_check(const Kinetics& a, const Kinetics& b, const std::vector<Eigen::VectorXd>& samples) {
    if (reaction_count(a) != reaction_count(b) || species_count(a) != species_count(b))
        throw CrnError(ErrorCode::DimensionMismatch, "kinetics must share reactions and species");
    PffCertificate cert;
    for (const auto& x : samples) {
        if (static_cast<std::size_t>(x.size()) != species_count(a))
            throw CrnError(ErrorCode::DimensionMismatch, "sample state has the wrong length");
        if (reaction_count(a) > 0) cert.sampled_max_spread = std::max(cert.sampled_max_spread, ratio_spread(evaluate(a, x), evaluate(b, x)));
    }

    const auto* pa = std::get_if<PowerLawKinetics>(&a);
    const auto* pb = std::get_if<PowerLawKinetics>(&b);
    if (pa && pb) {
        const std::size_t r = pa->rates.size();
        const std::size_t m = pa->orders.cols();
        bool same_rows = true;
        std::vector<double> shift(m, 0.0);
        for (std::size_t i = 0; i < m && r > 0; ++i) shift[i] = pa->orders(0, i) - pb->orders(0, i);
        if (pa->orders.exact() && pb->orders.exact()) {
            const RationalMatrix& fa = *pa->orders.exact();
            const RationalMatrix& fb = *pb->orders.exact();
            for (std::size_t q = 1; q < r; ++q)
                for (std::size_t i = 0; i < m; ++i) same_rows = same_rows && fa(q, i) - fb(q, i) == fa(0, i) - fb(0, i);
        } else {
            for (std::size_t q = 1; q < r; ++q)
                for (std::size_t i = 0; i < m; ++i)
                    same_rows = same_rows && near(pa->orders(q, i) - pb->orders(q, i), shift[i], 1e-12);
        }
        bool constant_ratio = true;
        const double ratio = r > 0 ? pa->rates[0] / pb->rates[0] : 1.0;
        for (std::size_t q = 1; q < r; ++q) constant_ratio = constant_ratio && near(pa->rates[q] / pb->rates[q], ratio, 1e-12);
        cert.equivalent = same_rows && constant_ratio;
        const bool zero_shift = std::all_of(shift.begin(), shift.end(), [](double v) { return v == 0.0; });
        cert.factor_kind = zero_shift ? FactorKind::Constant : FactorKind::Monomial;
        if (cert.equivalent) {
            cert.ratio = ratio;
            cert.shift = shift;
        }
        return cert;
    }
    cert.factor_kind = FactorKind::Sampled;
    cert.equivalent = cert.sampled_max_spread <= kPffTol;
    return cert;
}

namespace {

bool same_exponents(const Monomial& a, const Monomial& b) {
    if (a.exact_exponents && b.exact_exponents) return *a.exact_exponents == *b.exact_exponents;
    return a.exponents == b.exponents;
}

bool same_polynomial(const Polynomial& a, const Polynomial& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k].coeff != b[k].coeff || !same_exponents(a[k], b[k])) return false;
    return true;
}

bool is_unit(const Polynomial& p) {
    return p.size() == 1 && p[0].coeff == 1.0 &&
           std::all_of(p[0].exponents.begin(), p[0].exponents.end(), [](double e) { return e == 0.0; });
}

Monomial unit_monomial(std::size_t m) {
    return Monomial{1.0, std::vector<double>(m, 0.0), RationalVector(m)};
}

Monomial single_power(std::size_t m, std::size_t i, double coeff, double e, const std::optional<Rational>& exact_e) {
    Monomial mono = unit_monomial(m);
    mono.coeff = coeff;
    mono.exponents[i] = e;
    if (exact_e)
        (*mono.exact_exponents)[i] = *exact_e;
    else
        mono.exact_exponents.reset();
    return mono;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    out.coeff *= b.coeff;
    for (std::size_t i = 0; i < out.exponents.size(); ++i) out.exponents[i] += b.exponents[i];
    if (a.exact_exponents && b.exact_exponents) {
        for (std::size_t i = 0; i < out.exponents.size(); ++i) (*out.exact_exponents)[i] += (*b.exact_exponents)[i];
        for (std::size_t i = 0; i < out.exponents.size(); ++i) out.exponents[i] = to_double((*out.exact_exponents)[i]);
    } else {
        out.exact_exponents.reset();
    }
    return out;
}

// Product with like terms merged; term order follows first appearance.
Polynomial multiply(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& ta : a)
        for (const auto& tb : b) {
            Monomial t = multiply(ta, tb);
            auto it = std::find_if(out.begin(), out.end(), [&](const Monomial& o) { return same_exponents(o, t); });
            if (it == out.end())
                out.push_back(std::move(t));
            else
                it->coeff += t.coeff;
        }
    return out;
}

struct RationalForm {
    std::vector<Polynomial> numerators;
    std::vector<std::vector<Polynomial>> factors;  // per reaction
};

RationalForm rational_form(const Kinetics& kin) {
    RationalForm form;
    if (const auto* hill = std::get_if<HillKinetics>(&kin)) {
        const std::size_t r = hill->rates.size();
        const std::size_t m = hill->orders.cols();
        for (std::size_t q = 0; q < r; ++q) {
            Polynomial num{unit_monomial(m)};
            std::vector<Polynomial> own;
            for (std::size_t i = 0; i < m; ++i) {
                const double f = hill->orders(q, i);
                if (f == 0.0) continue;
                const double d = hill->dissociation(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i));
                std::optional<Rational> fx;
                if (hill->orders.exact()) fx = (*hill->orders.exact())(q, i);
                if (f > 0.0) {
                    num = multiply(num, Polynomial{single_power(m, i, 1.0, f, fx)});
                    own.push_back(Polynomial{single_power(m, i, d, 0.0, Rational(0)), single_power(m, i, 1.0, f, fx)});
                } else {
                    std::optional<Rational> neg;
                    if (fx) neg = -*fx;
                    own.push_back(Polynomial{single_power(m, i, d, -f, neg), unit_monomial(m)});
                }
            }
            form.numerators.push_back(std::move(num));
            form.factors.push_back(std::move(own));
        }
        return form;
    }
    if (const auto* rat = std::get_if<RationalFunctionKinetics>(&kin)) {
        for (std::size_t q = 0; q < rat->rates.size(); ++q) {
            form.numerators.push_back(rat->numerators[q]);
            std::vector<Polynomial> own;
            if (!is_unit(rat->denominators[q])) own.push_back(rat->denominators[q]);
            form.factors.push_back(std::move(own));
        }
        return form;
    }
    throw CrnError(ErrorCode::InvalidKinetics, "expected Hill or rational kinetics, got " + family_name(kin));
}

}  // namespace

namespace {

// Distinct factors with the largest multiplicity any single reaction needs.
void collect_factors(const RationalForm& form, std::vector<Polynomial>& distinct, std::vector<std::size_t>& power) {
    for (const auto& own : form.factors) {
        std::vector<std::size_t> count(distinct.size(), 0);
        for (const auto& f : own) {
            std::size_t k = 0;
            while (k < distinct.size() && !same_polynomial(distinct[k], f)) ++k;
            if (k == distinct.size()) {
                distinct.push_back(f);
                power.push_back(0);
                count.push_back(0);
            }
            power[k] = std::max(power[k], ++count[k]);
        }
    }
}

}  // namespace

std::vector<Polynomial> denominator_factors(const Kinetics& kin) {
    std::vector<Polynomial> distinct;
    std::vector<std::size_t> power;
    collect_factors(rational_form(kin), distinct, power);
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < distinct.size(); ++k)
        for (std::size_t p = 0; p < power[k]; ++p) out.push_back(distinct[k]);
    return out;
}

PolyPLKinetics hill_to_poly_pl(const ReactionNetwork& net, const Kinetics& kin) {
    validate(kin, net);
    const RationalForm form = rational_form(kin);
    std::vector<Polynomial> distinct;
    std::vector<std::size_t> power;
    collect_factors(form, distinct, power);

    PolyPLKinetics out;
    out.rates = rates_of(kin);
    for (std::size_t q = 0; q < form.numerators.size(); ++q) {
        // Own factors cancel against D; the remaining ones multiply the numerator.
        std::vector<std::size_t> remaining = power;
        for (const auto& f : form.factors[q])
            for (std::size_t k = 0; k < distinct.size(); ++k)
                if (same_polynomial(distinct[k], f)) {
                    --remaining[k];
                    break;
                }
        Polynomial row = form.numerators[q];
        for (std::size_t k = 0; k < distinct.size(); ++k)
            for (std::size_t p = 0; p < remaining[k]; ++p) row = multiply(row, distinct[k]);
        out.terms.push_back(std::move(row));
    }
    return out;
}

const char* to_string(FactorKind kind) {
    switch (kind) {
        case FactorKind::Constant: return "constant";
        case FactorKind::Monomial: return "monomial";
        case FactorKind::Sampled: return "sampled";
    }
    return "";
}

}  // namespace crnbal
