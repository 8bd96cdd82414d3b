#include "crnbal/report.hpp"

#include "crnbal/errors.hpp"

#include <json.hpp>

namespace crnbal {

namespace {

using Json = nlohmann::ordered_json;

template <class T>
Json opt(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> get_opt(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

StringMatrix exact_rows(const RationalMatrix& a) {
    StringMatrix out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i].push_back(to_string(a(i, j)));
    return out;
}

StringMatrix mixed_rows(const MixedMatrix& a) {
    StringMatrix out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i].push_back(a.entry_string(i, j));
    return out;
}

Json put(const ConfigEcho& c) {
    return Json{{"tol", c.tol}, {"seeds", c.seeds}, {"rng_seed", c.rng_seed}, {"max_parts", c.max_parts},
                {"assume_concordant", c.assume_concordant}, {"flux_space", c.flux_space}};
}
ConfigEcho get_config(const Json& j) {
    ConfigEcho c;
    c.tol = j.at("tol").get<std::string>();
    c.seeds = j.at("seeds").get<std::size_t>();
    c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    c.max_parts = j.at("max_parts").get<std::size_t>();
    c.assume_concordant = j.at("assume_concordant").get<bool>();
    c.flux_space = j.at("flux_space").get<std::string>();
    return c;
}

Json put(const StructuralSummary& s) {
    return Json{{"m", s.m},
                {"n", s.n},
                {"n_r", s.n_r},
                {"r", s.r},
                {"l", s.l},
                {"sl", s.sl},
                {"t", s.t},
                {"s", s.s},
                {"deficiency", s.deficiency},
                {"weakly_reversible", s.weakly_reversible},
                {"t_minimal", s.t_minimal},
                {"cycle_terminal", s.cycle_terminal},
                {"conservative", s.conservative},
                {"species", s.species},
                {"complexes", s.complexes},
                {"reactions", s.reactions},
                {"Y", s.Y},
                {"Ia", s.Ia},
                {"N", s.N},
                {"linkage_classes", s.linkage_classes}};
}
StructuralSummary get_structural(const Json& j) {
    StructuralSummary s;
    s.m = j.at("m");
    s.n = j.at("n");
    s.n_r = j.at("n_r");
    s.r = j.at("r");
    s.l = j.at("l");
    s.sl = j.at("sl");
    s.t = j.at("t");
    s.s = j.at("s");
    s.deficiency = j.at("deficiency");
    s.weakly_reversible = j.at("weakly_reversible");
    s.t_minimal = j.at("t_minimal");
    s.cycle_terminal = j.at("cycle_terminal");
    s.conservative = j.at("conservative");
    s.species = j.at("species").get<std::vector<std::string>>();
    s.complexes = j.at("complexes").get<std::vector<std::string>>();
    s.reactions = j.at("reactions").get<std::vector<std::string>>();
    s.Y = j.at("Y").get<StringMatrix>();
    s.Ia = j.at("Ia").get<StringMatrix>();
    s.N = j.at("N").get<StringMatrix>();
    s.linkage_classes = j.at("linkage_classes").get<StringMatrix>();
    return s;
}

Json put(const KineticsSummary& k) {
    return Json{{"family", k.family},
                {"pl_rdk", opt(k.pl_rdk)},
                {"factor_span_surjective", opt(k.factor_span_surjective)},
                {"pl_nik", opt(k.pl_nik)},
                {"por", opt(k.por)},
                {"cf", opt(k.cf)},
                {"mass_action", k.mass_action},
                {"length", k.length}};
}
KineticsSummary get_kinetics(const Json& j) {
    KineticsSummary k;
    k.family = j.at("family");
    k.pl_rdk = get_opt<bool>(j, "pl_rdk");
    k.factor_span_surjective = get_opt<bool>(j, "factor_span_surjective");
    k.pl_nik = get_opt<bool>(j, "pl_nik");
    k.por = get_opt<bool>(j, "por");
    k.cf = get_opt<bool>(j, "cf");
    k.mass_action = j.at("mass_action");
    k.length = j.at("length");
    return k;
}

Json put(const TMatrixSummary& t) {
    return Json{{"q_tilde", t.q_tilde},         {"q_hat", t.q_hat},   {"delta_hat", t.delta_hat},
                {"s_tilde_dim", t.s_tilde_dim}, {"pl_tik", t.pl_tik}, {"ranks_exact", t.ranks_exact},
                {"T_hat", t.T_hat}};
}
TMatrixSummary get_tmatrix(const Json& j) {
    TMatrixSummary t;
    t.q_tilde = j.at("q_tilde");
    t.q_hat = j.at("q_hat");
    t.delta_hat = j.at("delta_hat");
    t.s_tilde_dim = j.at("s_tilde_dim");
    t.pl_tik = j.at("pl_tik");
    t.ranks_exact = j.at("ranks_exact");
    t.T_hat = j.at("T_hat").get<StringMatrix>();
    return t;
}

Json put(const DecompositionSummary& d) {
    return Json{{"source", d.source},
                {"parts", d.parts},
                {"independent", d.independent},
                {"incidence_independent", d.incidence_independent},
                {"bi_independent", d.bi_independent},
                {"deficiency", d.deficiency},
                {"deficiency_sum", d.deficiency_sum},
                {"relation", d.relation}};
}
DecompositionSummary get_decomposition(const Json& j) {
    DecompositionSummary d;
    d.source = j.at("source");
    d.parts = j.at("parts").get<StringMatrix>();
    d.independent = j.at("independent");
    d.incidence_independent = j.at("incidence_independent");
    d.bi_independent = j.at("bi_independent");
    d.deficiency = j.at("deficiency");
    d.deficiency_sum = j.at("deficiency_sum");
    d.relation = j.at("relation");
    return d;
}

Json put(const PointSummary& p) {
    return Json{{"x", p.x}, {"sfrf_residual", p.sfrf_residual}, {"cfrf_residual", p.cfrf_residual}, {"kind", p.kind}};
}
PointSummary get_point(const Json& j) {
    PointSummary p;
    p.x = j.at("x").get<std::vector<std::string>>();
    p.sfrf_residual = j.at("sfrf_residual");
    p.cfrf_residual = j.at("cfrf_residual");
    p.kind = j.at("kind");
    return p;
}

Json put_points(const std::vector<PointSummary>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(put(p));
    return a;
}
std::vector<PointSummary> get_points(const Json& j) {
    std::vector<PointSummary> out;
    for (const auto& p : j) out.push_back(get_point(p));
    return out;
}

Json put(const EquilibriaSummary& e) {
    return Json{{"attempted_seeds", e.attempted}, {"positive", put_points(e.positive)}, {"complex_balanced", put_points(e.complex_balanced)}};
}
EquilibriaSummary get_equilibria(const Json& j) {
    EquilibriaSummary e;
    e.attempted = j.at("attempted_seeds");
    e.positive = get_points(j.at("positive"));
    e.complex_balanced = get_points(j.at("complex_balanced"));
    return e;
}

Json put(const StarMscSummary& s) {
    return Json{{"M", s.M},
                {"h", s.h},
                {"n", s.n},
                {"r", s.r},
                {"deficiency", s.deficiency},
                {"predicted_deficiency", s.predicted_deficiency},
                {"weakly_reversible", s.weakly_reversible},
                {"factor_span_surjective", opt(s.factor_span_surjective)},
                {"sfrf_max_relative_deviation", s.sfrf_max_relative_deviation},
                {"complex_labels", s.complex_labels}};
}
StarMscSummary get_star(const Json& j) {
    StarMscSummary s;
    s.M = j.at("M");
    s.h = j.at("h");
    s.n = j.at("n");
    s.r = j.at("r");
    s.deficiency = j.at("deficiency");
    s.predicted_deficiency = j.at("predicted_deficiency");
    s.weakly_reversible = j.at("weakly_reversible");
    s.factor_span_surjective = get_opt<bool>(j, "factor_span_surjective");
    s.sfrf_max_relative_deviation = j.at("sfrf_max_relative_deviation");
    s.complex_labels = j.at("complex_labels").get<std::vector<std::string>>();
    return s;
}

Json put(const PffSummary& p) {
    return Json{{"equivalent", p.equivalent}, {"factor_kind", p.factor_kind}, {"sampled_max_spread", p.sampled_max_spread}};
}
PffSummary get_pff(const Json& j) {
    PffSummary p;
    p.equivalent = j.at("equivalent");
    p.factor_kind = j.at("factor_kind");
    p.sampled_max_spread = j.at("sampled_max_spread");
    return p;
}

Json put(const LpSummary& l) {
    return Json{{"holds", l.holds},
                {"found_points_in_set", l.found_points_in_set},
                {"set_in_equilibria", l.set_in_equilibria},
                {"max_distance", l.max_distance},
                {"max_member_residual", l.max_member_residual}};
}
LpSummary get_lp(const Json& j) {
    LpSummary l;
    l.holds = j.at("holds");
    l.found_points_in_set = j.at("found_points_in_set");
    l.set_in_equilibria = j.at("set_in_equilibria");
    l.max_distance = j.at("max_distance");
    l.max_member_residual = j.at("max_member_residual");
    return l;
}

Json put(const VerdictSummary& v) {
    Json just = Json::array();
    for (const auto& j : v.justification) just.push_back(Json{{"rule", j.rule}, {"citation", j.citation}, {"detail", j.detail}});
    Json out{{"status", v.status}, {"complex_balance_basis", v.complex_balance_basis}, {"justification", just}};
    out["witness"] = v.witness ? put(*v.witness) : Json(nullptr);
    out["flux_space"] = v.flux_space;
    out["clp"] = v.clp ? put(*v.clp) : Json(nullptr);
    out["plp"] = v.plp ? put(*v.plp) : Json(nullptr);
    out["bilp"] = opt(v.bilp);
    out["kse"] = v.kse ? Json{{"r_minus_s", v.kse->r_minus_s},
                              {"sampled_span_dim", v.kse->sampled_span_dim},
                              {"kse", v.kse->kse},
                              {"por", v.kse->por}}
                       : Json(nullptr);
    out["scb"] = opt(v.scb);
    return out;
}
VerdictSummary get_verdict(const Json& j) {
    VerdictSummary v;
    v.status = j.at("status");
    v.complex_balance_basis = j.at("complex_balance_basis");
    for (const auto& e : j.at("justification")) v.justification.push_back({e.at("rule"), e.at("citation"), e.at("detail")});
    if (!j.at("witness").is_null()) v.witness = get_point(j.at("witness"));
    v.flux_space = j.at("flux_space");
    if (!j.at("clp").is_null()) v.clp = get_lp(j.at("clp"));
    if (!j.at("plp").is_null()) v.plp = get_lp(j.at("plp"));
    v.bilp = get_opt<bool>(j, "bilp");
    if (!j.at("kse").is_null()) {
        const Json& k = j.at("kse");
        v.kse = KseSummary{k.at("r_minus_s"), k.at("sampled_span_dim"), k.at("kse"), k.at("por")};
    }
    v.scb = get_opt<std::string>(j, "scb");
    return v;
}

template <class T, class F>
void put_section(Json& out, const char* key, const std::optional<T>& v, F&& f) {
    out[key] = v ? f(*v) : Json(nullptr);
}

template <class T, class G>
void get_section(const Json& j, const char* key, std::optional<T>& v, G&& g) {
    if (j.contains(key) && !j.at(key).is_null()) v = g(j.at(key));
}

}  // namespace

std::string decimal(double v) { return format_sig(v, 12); }

std::string to_json(const AnalysisReport& r) {
    Json out;
    out["schema"] = r.schema;
    out["tool_version"] = r.tool_version;
    out["command"] = r.command;
    out["config"] = put(r.config);
    put_section(out, "structural", r.structural, [](const auto& v) { return put(v); });
    put_section(out, "kinetics", r.kinetics, [](const auto& v) { return put(v); });
    put_section(out, "t_matrices", r.t_matrices, [](const auto& v) { return put(v); });
    Json decs = Json::array();
    for (const auto& d : r.decompositions) decs.push_back(put(d));
    out["decompositions"] = decs;
    put_section(out, "star_msc", r.star_msc, [](const auto& v) { return put(v); });
    put_section(out, "equilibria", r.equilibria, [](const auto& v) { return put(v); });
    put_section(out, "pff", r.pff, [](const auto& v) { return put(v); });
    put_section(out, "verdicts", r.verdicts, [](const auto& v) { return put(v); });
    return out.dump(2) + "\n";
}

AnalysisReport report_from_json(const std::string& text) {
    try {
        const Json j = Json::parse(text);
        AnalysisReport r;
        r.schema = j.at("schema");
        if (r.schema != kSchema) throw CrnError(ErrorCode::ParseError, "unsupported schema '" + r.schema + "'");
        r.tool_version = j.at("tool_version");
        r.command = j.at("command");
        r.config = get_config(j.at("config"));
        get_section(j, "structural", r.structural, get_structural);
        get_section(j, "kinetics", r.kinetics, get_kinetics);
        get_section(j, "t_matrices", r.t_matrices, get_tmatrix);
        for (const auto& d : j.at("decompositions")) r.decompositions.push_back(get_decomposition(d));
        get_section(j, "star_msc", r.star_msc, get_star);
        get_section(j, "equilibria", r.equilibria, get_equilibria);
        get_section(j, "pff", r.pff, get_pff);
        get_section(j, "verdicts", r.verdicts, get_verdict);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw CrnError(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
    }
}

StructuralSummary summarize(const ReactionNetwork& net, const StructuralInvariants& inv) {
    StructuralSummary s;
    s.m = inv.m;
    s.n = inv.n;
    s.n_r = inv.n_r;
    s.r = inv.r;
    s.l = inv.l;
    s.sl = inv.sl;
    s.t = inv.t;
    s.s = inv.s;
    s.deficiency = inv.delta;
    s.weakly_reversible = inv.weakly_reversible;
    s.t_minimal = inv.t_minimal;
    s.cycle_terminal = inv.cycle_terminal;
    s.conservative = inv.conservative;
    for (const auto& sp : net.species()) s.species.push_back(sp.name);
    for (std::size_t c = 0; c < net.n(); ++c) s.complexes.push_back(net.complex_string(c));
    for (const auto& rx : net.reactions()) s.reactions.push_back(rx.label);
    s.Y = exact_rows(net.Y());
    s.Ia = exact_rows(net.Ia());
    s.N = exact_rows(net.N());
    for (const auto& part : inv.linkage_partition) {
        std::vector<std::string> labels;
        for (std::size_t q : part) labels.push_back(net.reactions()[q].label);
        s.linkage_classes.push_back(std::move(labels));
    }
    return s;
}

KineticsSummary summarize(const Kinetics& kin, const KineticsClassification& c) {
    KineticsSummary k;
    k.family = family_name(kin);
    k.pl_rdk = c.pl_rdk;
    k.factor_span_surjective = c.factor_span_surjective;
    k.pl_nik = c.pl_nik;
    k.por = c.por;
    k.cf = c.cf;
    k.mass_action = c.mass_action;
    if (const auto* py = std::get_if<PolyPLKinetics>(&kin)) k.length = py->length();
    return k;
}

TMatrixSummary summarize(const TMatrices& t) {
    TMatrixSummary s;
    s.q_tilde = t.q_tilde;
    s.q_hat = t.q_hat;
    s.delta_hat = t.delta_hat;
    s.s_tilde_dim = t.s_tilde_basis.cols();
    s.pl_tik = is_pl_tik(t);
    s.ranks_exact = t.ranks_exact;
    s.T_hat = mixed_rows(t.That);
    return s;
}

DecompositionSummary summarize(const ReactionNetwork& net, const IndependenceVerdict& v, const std::string& source) {
    DecompositionSummary d;
    d.source = source;
    for (const auto& part : v.decomposition.parts) {
        std::vector<std::string> labels;
        for (std::size_t q : part) labels.push_back(net.reactions()[q].label);
        d.parts.push_back(std::move(labels));
    }
    d.independent = v.independent;
    d.incidence_independent = v.incidence_independent;
    d.bi_independent = v.bi_independent;
    d.deficiency = v.deficiency;
    d.deficiency_sum = v.deficiency_sum;
    d.relation = v.relation ? to_string(*v.relation) : "none certified";
    return d;
}

PointSummary summarize(const EquilibriumPoint& p) {
    PointSummary s;
    for (Eigen::Index i = 0; i < p.x.size(); ++i) s.x.push_back(decimal(p.x(i)));
    s.sfrf_residual = decimal(p.sfrf_residual);
    s.cfrf_residual = decimal(p.cfrf_residual);
    s.kind = to_string(p.kind);
    return s;
}

VerdictSummary summarize(const AcbAnalysis& a) {
    VerdictSummary v;
    v.status = to_string(a.verdict.status);
    v.complex_balance_basis = a.complex_balance_basis;
    for (const auto& j : a.verdict.justification) v.justification.push_back({j.rule, j.citation, j.detail});
    if (a.verdict.witness) v.witness = summarize(*a.verdict.witness);
    v.flux_space = a.flux_space;
    auto lp = [](const LpReport& r) {
        return LpSummary{r.holds, r.found_points_in_set, r.set_in_equilibria, decimal(r.max_distance), decimal(r.max_member_residual)};
    };
    if (a.clp) v.clp = lp(*a.clp);
    if (a.plp) v.plp = lp(*a.plp);
    v.bilp = a.bilp;
    if (a.kse) v.kse = KseSummary{a.kse->r_minus_s, a.kse->sampled_span_dim, a.kse->kse, a.kse->por};
    if (a.scb) v.scb = std::to_string(a.scb->classes_hit) + "/" + std::to_string(a.scb->classes_sampled) + " classes (sampled)";
    return v;
}

}  // namespace crnbal
