#include "crnbal/cli.hpp"

#include "crnbal/crn_format.hpp"
#include "crnbal/errors.hpp"
#include "crnbal/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <random>
#include <sstream>

namespace crnbal {

namespace {

struct Options {
    std::vector<std::string> files;
    bool json = false;
    double tol = 1e-9;
    std::size_t seeds = 64;
    std::uint64_t rng = 42;
    std::size_t max_parts = 0;
    bool assume_concordant = false;
    std::string flux_space = "auto";
    std::string predicate = "bi_independent";
    bool star = false;
    bool emit = false;
};

SolverConfig solver_config(const Options& o) {
    SolverConfig cfg;
    cfg.tol = o.tol;
    cfg.seeds = o.seeds;
    cfg.rng_seed = o.rng;
    return cfg;
}

ConfigEcho echo(const Options& o) {
    return ConfigEcho{decimal(o.tol), o.seeds, o.rng, o.max_parts, o.assume_concordant, o.flux_space};
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

std::string yes_no(const std::optional<bool>& v) { return v ? (*v ? "yes" : "no") : "n/a"; }

void print_matrix(std::ostream& out, const std::string& name, const StringMatrix& rows) {
    out << name << ":\n";
    for (const auto& row : rows) out << "  [" << join(row, ", ") << "]\n";
}

// Basis vectors, one per line, as whitespace-separated numbers.
MixedMatrix load_flux_file(const std::string& path, std::size_t m) {
    std::ifstream in(path);
    if (!in) throw ParseFailure(ErrorCode::ParseError, 0, 0, "cannot read flux space file '" + path + "'");
    std::vector<RationalVector> cols;
    std::vector<std::vector<double>> values;
    bool exact = true;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        RationalVector col;
        std::vector<double> vals;
        while (ls >> tok) {
            try {
                if (tok.find_first_of(".eE") != std::string::npos) {
                    exact = false;
                    vals.push_back(std::stod(tok));
                    col.push_back(0);
                } else {
                    const auto slash = tok.find('/');
                    const Rational q = slash == std::string::npos ? Rational(Integer(tok))
                                                                  : Rational(Integer(tok.substr(0, slash)), Integer(tok.substr(slash + 1)));
                    col.push_back(q);
                    vals.push_back(to_double(q));
                }
            } catch (const std::exception&) {
                throw ParseFailure(ErrorCode::ParseError, line_no, 1, "malformed number '" + tok + "'");
            }
        }
        if (col.empty()) continue;
        if (col.size() != m) throw ParseFailure(ErrorCode::DimensionMismatch, line_no, 1, "basis vector needs " + std::to_string(m) + " entries");
        cols.push_back(std::move(col));
        values.push_back(std::move(vals));
    }
    if (exact) return MixedMatrix(RationalMatrix::from_columns(cols, m));
    Eigen::MatrixXd a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(values.size()));
    for (std::size_t j = 0; j < values.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[j][i];
    return MixedMatrix(std::move(a));
}

AcbConfig acb_config(const Options& o, std::size_t m) {
    AcbConfig cfg;
    cfg.solver = solver_config(o);
    cfg.assume_concordant = o.assume_concordant;
    if (o.max_parts > 0) cfg.max_parts = o.max_parts;
    if (o.flux_space == "auto") {
        cfg.flux = FluxSpaceChoice::Auto;
    } else if (o.flux_space == "S") {
        cfg.flux = FluxSpaceChoice::S;
    } else if (o.flux_space == "Stilde") {
        cfg.flux = FluxSpaceChoice::Stilde;
    } else {
        cfg.flux = FluxSpaceChoice::Custom;
        cfg.custom_flux = load_flux_file(o.flux_space, m);
    }
    return cfg;
}

PolyPLKinetics as_poly_pl(const CrnFile& f) {
    if (const auto* py = std::get_if<PolyPLKinetics>(&f.kinetics)) return *py;
    if (std::holds_alternative<HillKinetics>(f.kinetics) || std::holds_alternative<RationalFunctionKinetics>(f.kinetics))
        return hill_to_poly_pl(f.network, f.kinetics);
    const auto& pl = std::get<PowerLawKinetics>(f.kinetics);
    PolyPLKinetics out;
    out.rates = pl.rates;
    for (std::size_t q = 0; q < pl.rates.size(); ++q) {
        Monomial mono{1.0, std::vector<double>(pl.orders.cols()), std::nullopt};
        if (pl.orders.exact()) mono.exact_exponents = pl.orders.exact()->row(q);
        for (std::size_t i = 0; i < pl.orders.cols(); ++i) mono.exponents[i] = pl.orders(q, i);
        out.terms.push_back({mono});
    }
    return out;
}

StarMscSummary star_summary(const CrnFile& f, const PolyPLKinetics& kin, const StarMscResult& star, std::uint64_t seed) {
    const StructuralInvariants inv = structural_invariants(star.network);
    StarMscSummary s;
    s.M = star.M;
    s.h = star.h;
    s.n = star.network.n();
    s.r = star.network.r();
    s.deficiency = inv.delta;
    s.predicted_deficiency = star.predicted_delta;
    s.weakly_reversible = inv.weakly_reversible;
    if (is_pl_rdk(star.kinetics, star.network)) s.factor_span_surjective = is_factor_span_surjective(build_t_matrices(star.network, star.kinetics));
    s.sfrf_max_relative_deviation = decimal(star_msc_sfrf_deviation(f.network, kin, star, 20, seed));
    s.complex_labels = star.complex_labels;
    return s;
}

void text_structural(std::ostream& out, const StructuralSummary& s) {
    out << "species: " << join(s.species, " ") << "\n";
    out << "m = " << s.m << ", n = " << s.n << ", n_r = " << s.n_r << ", r = " << s.r << "\n";
    out << "l = " << s.l << ", sl = " << s.sl << ", t = " << s.t << ", s = " << s.s << ", deficiency = " << s.deficiency << "\n";
    out << "weakly reversible: " << yes_no(s.weakly_reversible) << ", t-minimal: " << yes_no(s.t_minimal)
        << ", cycle terminal: " << yes_no(s.cycle_terminal) << ", conservative: " << yes_no(s.conservative) << "\n";
    print_matrix(out, "Y", s.Y);
    print_matrix(out, "Ia", s.Ia);
}

void text_kinetics(std::ostream& out, const KineticsSummary& k) {
    out << "kinetics: " << k.family << (k.family == "polypl" ? " (length " + std::to_string(k.length) + ")" : "") << "\n";
    out << "  PL-RDK: " << yes_no(k.pl_rdk) << ", factor span surjective: " << yes_no(k.factor_span_surjective)
        << ", PL-NIK: " << yes_no(k.pl_nik) << ", POR: " << yes_no(k.por) << ", CF: " << yes_no(k.cf)
        << ", mass action: " << yes_no(k.mass_action) << "\n";
}

void text_tmatrix(std::ostream& out, const TMatrixSummary& t) {
    print_matrix(out, "T_hat", t.T_hat);
    out << "q_tilde = " << t.q_tilde << ", q_hat = " << t.q_hat << ", delta_hat = " << t.delta_hat
        << ", dim S_tilde = " << t.s_tilde_dim << ", PL-TIK: " << yes_no(t.pl_tik) << (t.ranks_exact ? " (exact)" : " (numeric)") << "\n";
}

void text_decomposition(std::ostream& out, const DecompositionSummary& d) {
    std::vector<std::string> parts;
    for (const auto& p : d.parts) parts.push_back("{" + join(p, ", ") + "}");
    out << d.source << " decomposition " << join(parts, " ") << "\n";
    out << "  independent: " << yes_no(d.independent) << ", incidence independent: " << yes_no(d.incidence_independent)
        << ", bi-independent: " << yes_no(d.bi_independent) << ", deficiency " << d.deficiency << " vs sum " << d.deficiency_sum
        << " (" << d.relation << ")\n";
}

void text_points(std::ostream& out, const char* name, const std::vector<PointSummary>& ps) {
    out << name << ": " << ps.size() << " distinct\n";
    for (const auto& p : ps)
        out << "  x = (" << join(p.x, ", ") << ")  |NK| = " << p.sfrf_residual << "  |IaK| = " << p.cfrf_residual << "\n";
}

void text_verdict(std::ostream& out, const VerdictSummary& v) {
    out << "ACB verdict: " << v.status << "\n";
    out << "complex balancing: " << v.complex_balance_basis << "\n";
    for (const auto& j : v.justification) out << "  [" << j.rule << "] " << j.citation << ": " << j.detail << "\n";
    if (v.witness) out << "  witness x = (" << join(v.witness->x, ", ") << "), |IaK| = " << v.witness->cfrf_residual << "\n";
    if (v.clp) out << "  CLP (" << v.flux_space << "): " << yes_no(v.clp->holds) << "\n";
    if (v.plp) out << "  PLP (" << v.flux_space << "): " << yes_no(v.plp->holds) << "\n";
    if (v.bilp) out << "  bi-LP: " << yes_no(v.bilp) << "\n";
    if (v.kse) out << "  KSE: " << yes_no(v.kse->kse) << " (r - s = " << v.kse->r_minus_s << ", sampled span " << v.kse->sampled_span_dim << ")\n";
    if (v.scb) out << "  SCB: " << *v.scb << "\n";
}

void emit(std::ostream& out, const Options& o, const AnalysisReport& r) {
    if (o.json) {
        out << to_json(r);
        return;
    }
    if (r.structural) text_structural(out, *r.structural);
    if (r.kinetics) text_kinetics(out, *r.kinetics);
    if (r.t_matrices) text_tmatrix(out, *r.t_matrices);
    for (const auto& d : r.decompositions) text_decomposition(out, d);
    if (r.star_msc) {
        const auto& s = *r.star_msc;
        out << "STAR-MSC: M = " << s.M << ", h = " << s.h << ", |C*| = " << s.n << ", |R*| = " << s.r << ", deficiency " << s.deficiency
            << " (predicted " << s.predicted_deficiency << "), weakly reversible: " << yes_no(s.weakly_reversible)
            << ", factor span surjective: " << yes_no(s.factor_span_surjective) << "\n";
        out << "  SFRF relative deviation: " << s.sfrf_max_relative_deviation << "\n";
    }
    if (r.equilibria) {
        text_points(out, "positive equilibria", r.equilibria->positive);
        text_points(out, "complex balanced equilibria", r.equilibria->complex_balanced);
    }
    if (r.pff)
        out << "PFF equivalent: " << yes_no(r.pff->equivalent) << " (" << r.pff->factor_kind << ", spread " << r.pff->sampled_max_spread << ")\n";
    if (r.verdicts) text_verdict(out, *r.verdicts);
}

int run_command(const std::string& cmd, const Options& o, std::ostream& out) {
    AnalysisReport report;
    report.command = cmd;
    report.config = echo(o);
    const CrnFile f = load_crn(o.files.at(0));
    const ReactionNetwork& net = f.network;

    if (cmd == "analyze") {
        const StructuralInvariants inv = structural_invariants(net);
        report.structural = summarize(net, inv);
        std::optional<TMatrices> t;
        if (const auto* pl = std::get_if<PowerLawKinetics>(&f.kinetics); pl && is_pl_rdk(*pl, net)) t = build_t_matrices(net, *pl);
        report.kinetics = summarize(f.kinetics, classify(f.kinetics, net, t ? &*t : nullptr));
        if (t) report.t_matrices = summarize(*t);
        report.decompositions.push_back(summarize(net, check_decomposition(net, inv.linkage_partition), "linkage"));
    } else if (cmd == "kinetics") {
        report.kinetics = summarize(f.kinetics, classify(f.kinetics, net));
    } else if (cmd == "tmatrix") {
        const auto* pl = std::get_if<PowerLawKinetics>(&f.kinetics);
        if (!pl) throw CrnError(ErrorCode::NotApplicable, "T matrices need power-law kinetics");
        report.t_matrices = summarize(build_t_matrices(net, *pl));
    } else if (cmd == "decompose") {
        const StructuralInvariants inv = structural_invariants(net);
        report.decompositions.push_back(summarize(net, check_decomposition(net, inv.linkage_partition), "linkage"));
        DecompositionPredicate pred;
        if (o.predicate == "independent")
            pred = DecompositionPredicate::Independent;
        else if (o.predicate == "incidence_independent")
            pred = DecompositionPredicate::IncidenceIndependent;
        else if (o.predicate == "bi_independent")
            pred = DecompositionPredicate::BiIndependent;
        else
            throw CrnError(ErrorCode::NotApplicable, "unknown predicate '" + o.predicate + "'");
        for (const auto& d : search_decompositions(net, pred, o.max_parts))
            report.decompositions.push_back(summarize(net, check_decomposition(net, d.parts), "search"));
    } else if (cmd == "starmsc") {
        const PolyPLKinetics kin = as_poly_pl(f);
        const StarMscResult star = star_msc(net, kin);
        report.star_msc = star_summary(f, kin, star, o.rng);
        report.decompositions.push_back(summarize(star.network, check_decomposition(star.network, star.replica_parts()), "replicas"));
        if (o.emit && !o.json) {
            out << render_crn(star.network, star.kinetics);
            return kExitOk;
        }
    } else if (cmd == "equilibria") {
        const SolverConfig cfg = solver_config(o);
        const SolveReport e = solve_equilibria(net, f.kinetics, EquilibriumMode::Positive, std::nullopt, cfg);
        const SolveReport z = solve_equilibria(net, f.kinetics, EquilibriumMode::ComplexBalanced, std::nullopt, cfg);
        EquilibriaSummary s;
        s.attempted = e.stats.attempted;
        for (const auto& p : e.points) s.positive.push_back(summarize(p));
        for (const auto& p : z.points) s.complex_balanced.push_back(summarize(p));
        report.equilibria = std::move(s);
    } else if (cmd == "acb") {
        AcbConfig cfg = acb_config(o, net.m());
        if (o.star) {
            const PolyPLKinetics kin = as_poly_pl(f);
            const StarMscResult star = star_msc(net, kin);
            const StarMscProvenance prov{net, kin, star.replica_parts()};
            report.star_msc = star_summary(f, kin, star, o.rng);
            report.verdicts = summarize(analyze_acb(star.network, star.kinetics, cfg, &prov));
        } else {
            report.verdicts = summarize(analyze_acb(net, f.kinetics, cfg));
        }
    } else if (cmd == "pff") {
        const CrnFile g = load_crn(o.files.at(1));
        if (g.network.m() != net.m() || g.network.r() != net.r())
            throw CrnError(ErrorCode::DimensionMismatch, "the two files describe different networks");
        std::mt19937_64 rng(o.rng);
        std::uniform_real_distribution<double> unif(-2.0, 2.0);
        std::vector<Eigen::VectorXd> samples;
        for (int k = 0; k < 20; ++k) {
            Eigen::VectorXd x(static_cast<Eigen::Index>(net.m()));
            for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = std::exp(unif(rng));
            samples.push_back(std::move(x));
        }
        const PffCertificate c = pff_check(f.kinetics, g.kinetics, samples);
        report.pff = PffSummary{c.equivalent, to_string(c.factor_kind), decimal(c.sampled_max_spread)};
    }
    emit(out, o, report);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Absolute complex balancing analysis for chemical reaction networks", "crnbal"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"analyze", "structural invariants, kinetics classes, T matrices, linkage decomposition"},
        {"kinetics", "kinetics classification"},
        {"tmatrix", "T, T_hat and derived ranks of a PL-RDK system"},
        {"decompose", "linkage decomposition and decomposition search"},
        {"starmsc", "STAR-MSC transform of a poly-PL (or Hill/rational) system"},
        {"equilibria", "multi-start search for positive and complex balanced equilibria"},
        {"acb", "absolute complex balancing verdict"},
        {"pff", "PFF equivalence of the kinetics in two files"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        auto* files = sub->add_option("files", o.files, "network file(s)")->required();
        files->expected(name == "pff" ? 2 : 1);
        sub->add_flag("--json", o.json, "emit the JSON report");
        sub->add_option("--tol", o.tol, "residual tolerance")->capture_default_str();
        sub->add_option("--seeds", o.seeds, "multi-start seeds")->capture_default_str();
        sub->add_option("--rng", o.rng, "random seed")->capture_default_str();
        sub->add_option("--max-parts", o.max_parts, "largest number of parts in decomposition searches");
        sub->add_flag("--assume-concordant", o.assume_concordant, "treat the network as concordant");
        sub->add_option("--flux-space", o.flux_space, "flux space for LP checks: S, Stilde or a basis file")->capture_default_str();
        if (name == "decompose") sub->add_option("--predicate", o.predicate, "independent, incidence_independent or bi_independent")->capture_default_str();
        if (name == "acb") sub->add_flag("--star-msc", o.star, "analyze the STAR-MSC transform of a poly-PL system");
        if (name == "starmsc") sub->add_flag("--emit", o.emit, "print the transformed system in file format");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParseError;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run_command(cmd, o, out);
    } catch (const ParseFailure& e) {
        err << "crnbal: " << e.what() << "\n";
        return kExitParseError;
    } catch (const CrnError& e) {
        err << "crnbal: " << e.what() << "\n";
        return kExitAnalysisError;
    } catch (const std::exception& e) {
        err << "crnbal: " << e.what() << "\n";
        return kExitAnalysisError;
    }
}

}  // namespace crnbal
