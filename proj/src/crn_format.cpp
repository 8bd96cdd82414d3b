#include "crnbal/crn_format.hpp"

#include "crnbal/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace crnbal {

namespace {

enum class Tok { Ident, Number, Arrow, Colon, Comma, Plus, Equals, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t col = 0;  // 1-based
};

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& what, ErrorCode code = ErrorCode::ParseError) {
    throw ParseFailure(code, line, col, what);
}

std::vector<Token> tokenize(const std::string& s, std::size_t line) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t col = i + 1;
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", col});
            i += 2;
            continue;
        }
        const bool starts_number = std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
                                   (c == '-' && i + 1 < s.size() && (std::isdigit(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '.'));
        if (starts_number) {
            std::size_t j = i + (c == '-' ? 1 : 0);
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
            if (j < s.size() && (s[j] == 'e' || s[j] == 'E') && j + 1 < s.size() &&
                (std::isdigit(static_cast<unsigned char>(s[j + 1])) ||
                 ((s[j + 1] == '-' || s[j + 1] == '+') && j + 2 < s.size() && std::isdigit(static_cast<unsigned char>(s[j + 2]))))) {
                j += 2;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            if (j < s.size() && s[j] == '/') {
                ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            // "2A" lexes as the number 2 followed by the identifier A.
            out.push_back({Tok::Number, s.substr(i, j - i), col});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && is_ident(s[j])) ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), col});
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case ':': k = Tok::Colon; break;
            case ',': k = Tok::Comma; break;
            case '+': k = Tok::Plus; break;
            case '=': k = Tok::Equals; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default: fail(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), col});
        ++i;
    }
    out.push_back({Tok::End, "", s.size() + 1});
    return out;
}

struct Number {
    double value = 0.0;
    std::optional<Rational> exact;  // set for integers and p/q
};

// Decimal literals are floats, except where an exact rational is required.
Number parse_number(const Token& t, std::size_t line) {
    const std::string& s = t.text;
    Number n;
    try {
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            const Integer p(s.substr(0, slash));
            const Integer q(s.substr(slash + 1));
            if (q == 0) fail(line, t.col, "zero denominator in '" + s + "'");
            n.exact = Rational(p, q);
            n.value = to_double(*n.exact);
            return n;
        }
        if (s.find_first_of(".eE") == std::string::npos) {
            n.exact = Rational(Integer(s));
            n.value = to_double(*n.exact);
            return n;
        }
        std::size_t used = 0;
        n.value = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const ParseFailure&) {
        throw;
    } catch (const std::exception&) {
        fail(line, t.col, "malformed number '" + s + "'");
    }
    return n;
}

// Exact value of a decimal literal such as "0.25" or "1e-3".
Rational decimal_to_rational(const std::string& s, std::size_t line, std::size_t col) {
    std::string mant = s;
    long exp10 = 0;
    const auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
        mant = s.substr(0, e);
        exp10 = std::stol(s.substr(e + 1));
    }
    bool neg = false;
    if (!mant.empty() && mant[0] == '-') {
        neg = true;
        mant.erase(0, 1);
    }
    const auto dot = mant.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    if (mant.empty()) fail(line, col, "malformed number '" + s + "'");
    Rational v{Integer(mant)};
    Integer ten = 1;
    for (long k = 0; k < (exp10 < 0 ? -exp10 : exp10); ++k) ten *= 10;
    v = exp10 < 0 ? v / Rational(ten) : v * Rational(ten);
    return neg ? -v : v;
}

Rational exact_coefficient(const Token& t, std::size_t line) {
    const Number n = parse_number(t, line);
    if (n.exact) return *n.exact;
    return decimal_to_rational(t.text, line, t.col);
}

class LineParser {
public:
    LineParser(std::vector<Token> toks, std::size_t line) : toks_(std::move(toks)), line_(line) {}

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    const Token& next() { return toks_[pos_++]; }
    std::size_t line() const { return line_; }

    const Token& expect(Tok k, const char* what) {
        if (!at(k)) fail(line_, peek().col, std::string("expected ") + what + (peek().text.empty() ? "" : ", found '" + peek().text + "'"));
        return next();
    }
    void expect_end() {
        if (!at(Tok::End)) fail(line_, peek().col, "unexpected '" + peek().text + "'");
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

enum class Family { MassAction, PowerLaw, PolyPL, Hill, Rational };

struct RawReaction {
    std::string label;
    std::size_t reactant = 0;
    std::size_t product = 0;
    double rate = 0.0;
    std::size_t line = 0;
};

struct SpeciesValue {
    std::size_t species = 0;
    Number value;
};

struct HillEntry {
    std::size_t species = 0;
    Number f;
    double d = 0.0;
};

struct TermLine {
    double coeff = 1.0;
    std::vector<SpeciesValue> entries;
};

struct Parser {
    std::vector<std::string> species;
    std::map<std::string, std::size_t> species_index;
    std::vector<RationalVector> complexes;
    std::vector<RawReaction> reactions;
    std::map<std::string, std::size_t> reaction_index;
    std::optional<Family> family;
    std::size_t family_line = 0;
    std::map<std::size_t, std::vector<SpeciesValue>> orders;
    std::map<std::size_t, std::vector<TermLine>> terms;
    std::map<std::size_t, std::vector<TermLine>> dens;
    std::map<std::size_t, std::vector<HillEntry>> hills;

    std::size_t lookup_species(const Token& t, std::size_t line) const {
        const auto it = species_index.find(t.text);
        if (it == species_index.end()) fail(line, t.col, "unknown species '" + t.text + "'", ErrorCode::UnknownSpecies);
        return it->second;
    }

    std::size_t lookup_reaction(const Token& t, std::size_t line) const {
        const auto it = reaction_index.find(t.text);
        if (it == reaction_index.end()) fail(line, t.col, "unknown reaction '" + t.text + "'");
        return it->second;
    }

    std::size_t parse_complex(LineParser& p) {
        RationalVector coeffs(species.size());
        // "0 rate" ends a product side; "0 A" would be a zero coefficient
        if (p.at(Tok::Number) && p.peek().text == "0" && (p.peek(1).kind != Tok::Ident || p.peek(1).text == "rate")) {
            p.next();
            return intern(std::move(coeffs));
        }
        while (true) {
            Rational c = 1;
            if (p.at(Tok::Number)) {
                const Token& t = p.next();
                if (!t.text.empty() && t.text[0] == '-') fail(p.line(), t.col, "negative stoichiometric coefficient", ErrorCode::InvalidComplex);
                c = exact_coefficient(t, p.line());
            }
            const Token& s = p.expect(Tok::Ident, "species name");
            coeffs[lookup_species(s, p.line())] += c;
            if (!p.at(Tok::Plus)) break;
            p.next();
        }
        return intern(std::move(coeffs));
    }

    std::size_t intern(RationalVector coeffs) {
        for (std::size_t c = 0; c < complexes.size(); ++c)
            if (complexes[c] == coeffs) return c;
        complexes.push_back(std::move(coeffs));
        return complexes.size() - 1;
    }

    std::vector<SpeciesValue> parse_assignments(LineParser& p) {
        std::vector<SpeciesValue> out;
        if (p.at(Tok::End)) return out;
        while (true) {
            const Token& s = p.expect(Tok::Ident, "species name");
            const std::size_t i = lookup_species(s, p.line());
            p.expect(Tok::Equals, "'='");
            const Token& v = p.expect(Tok::Number, "number");
            out.push_back({i, parse_number(v, p.line())});
            if (!p.at(Tok::Comma)) break;
            p.next();
        }
        return out;
    }

    void species_line(LineParser& p) {
        if (!reactions.empty()) fail(p.line(), p.peek().col, "species must be declared before reactions");
        p.next();
        if (p.at(Tok::End)) fail(p.line(), p.peek().col, "expected species names");
        while (!p.at(Tok::End)) {
            const Token& t = p.expect(Tok::Ident, "species name");
            if (species_index.count(t.text)) fail(p.line(), t.col, "duplicate species '" + t.text + "'", ErrorCode::DuplicateSpecies);
            species_index[t.text] = species.size();
            species.push_back(t.text);
        }
    }

    void reaction_line(LineParser& p) {
        const Token label = p.next();
        p.expect(Tok::Colon, "':'");
        if (species.empty()) fail(p.line(), label.col, "no species declared");
        if (reaction_index.count(label.text)) fail(p.line(), label.col, "duplicate reaction label '" + label.text + "'");
        RawReaction rx;
        rx.label = label.text;
        rx.line = p.line();
        rx.reactant = parse_complex(p);
        p.expect(Tok::Arrow, "'->'");
        rx.product = parse_complex(p);
        const Token& kw = p.expect(Tok::Ident, "'rate'");
        if (kw.text != "rate") fail(p.line(), kw.col, "expected 'rate', found '" + kw.text + "'");
        const Token& v = p.expect(Tok::Number, "rate constant");
        rx.rate = parse_number(v, p.line()).value;
        if (!(rx.rate > 0.0)) fail(p.line(), v.col, "rate constant must be positive, got " + v.text, ErrorCode::NegativeRate);
        p.expect_end();
        reaction_index[rx.label] = reactions.size();
        reactions.push_back(std::move(rx));
    }

    void kinetics_line(LineParser& p) {
        const Token kw = p.next();
        if (family) fail(p.line(), kw.col, "second kinetics block");
        const Token& name = p.expect(Tok::Ident, "kinetics family");
        static const std::map<std::string, Family> names{{"massaction", Family::MassAction}, {"powerlaw", Family::PowerLaw},
                                                         {"polypl", Family::PolyPL},         {"hill", Family::Hill},
                                                         {"rational", Family::Rational}};
        const auto it = names.find(name.text);
        if (it == names.end()) fail(p.line(), name.col, "unknown kinetics family '" + name.text + "'");
        family = it->second;
        family_line = p.line();
        p.expect_end();
    }

    void require_family(const Token& kw, std::size_t line, std::initializer_list<Family> allowed) {
        if (family)
            for (Family f : allowed)
                if (*family == f) return;
        fail(line, kw.col, "'" + kw.text + "' line outside a matching kinetics block");
    }

    void order_line(LineParser& p) {
        const Token kw = p.next();
        require_family(kw, p.line(), {Family::PowerLaw});
        const std::size_t q = lookup_reaction(p.expect(Tok::Ident, "reaction label"), p.line());
        p.expect(Tok::Colon, "':'");
        if (orders.count(q)) fail(p.line(), kw.col, "second order line for " + reactions[q].label);
        orders[q] = parse_assignments(p);
        p.expect_end();
    }

    void term_line(LineParser& p, std::map<std::size_t, std::vector<TermLine>>& into, std::initializer_list<Family> allowed) {
        const Token kw = p.next();
        require_family(kw, p.line(), allowed);
        const std::size_t q = lookup_reaction(p.expect(Tok::Ident, "reaction label"), p.line());
        TermLine t;
        if (p.at(Tok::Ident) && p.peek().text == "coeff") {
            p.next();
            const Token& v = p.expect(Tok::Number, "coefficient");
            t.coeff = parse_number(v, p.line()).value;
            if (!(t.coeff > 0.0)) fail(p.line(), v.col, "term coefficient must be positive");
        }
        p.expect(Tok::Colon, "':'");
        t.entries = parse_assignments(p);
        p.expect_end();
        into[q].push_back(std::move(t));
    }

    void hill_line(LineParser& p) {
        const Token kw = p.next();
        require_family(kw, p.line(), {Family::Hill});
        const std::size_t q = lookup_reaction(p.expect(Tok::Ident, "reaction label"), p.line());
        p.expect(Tok::Colon, "':'");
        if (hills.count(q)) fail(p.line(), kw.col, "second hill line for " + reactions[q].label);
        std::vector<HillEntry> entries;
        while (!p.at(Tok::End)) {
            HillEntry e;
            e.species = lookup_species(p.expect(Tok::Ident, "species name"), p.line());
            p.expect(Tok::Equals, "'='");
            p.expect(Tok::LParen, "'('");
            bool have_f = false, have_d = false;
            while (true) {
                const Token& key = p.expect(Tok::Ident, "'f' or 'd'");
                p.expect(Tok::Equals, "'='");
                const Token& v = p.expect(Tok::Number, "number");
                if (key.text == "f") {
                    e.f = parse_number(v, p.line());
                    have_f = true;
                } else if (key.text == "d") {
                    e.d = parse_number(v, p.line()).value;
                    have_d = true;
                } else {
                    fail(p.line(), key.col, "expected 'f' or 'd'");
                }
                if (!p.at(Tok::Comma)) break;
                p.next();
            }
            p.expect(Tok::RParen, "')'");
            if (!have_f || !have_d) fail(p.line(), p.peek().col, "hill entry needs both f and d");
            entries.push_back(e);
            if (!p.at(Tok::Comma)) break;
            p.next();
        }
        p.expect_end();
        hills[q] = std::move(entries);
    }

    [[noreturn]] void missing(std::size_t q, const char* what) const {
        fail(family_line, 1, std::string("no ") + what + " line for reaction " + reactions[q].label, ErrorCode::MissingKineticsRow);
    }

    Monomial monomial(const TermLine& t) const {
        Monomial mono{t.coeff, std::vector<double>(species.size(), 0.0), RationalVector(species.size())};
        for (const auto& e : t.entries) {
            mono.exponents[e.species] = e.value.value;
            if (e.value.exact && mono.exact_exponents)
                (*mono.exact_exponents)[e.species] = *e.value.exact;
            else
                mono.exact_exponents.reset();
        }
        return mono;
    }

    Kinetics build_kinetics(const ReactionNetwork& net) const {
        const std::size_t r = reactions.size();
        const std::size_t m = species.size();
        std::vector<double> rates;
        for (const auto& rx : reactions) rates.push_back(rx.rate);
        switch (family.value_or(Family::MassAction)) {
            case Family::MassAction: return mass_action_from(net, std::move(rates));
            case Family::PowerLaw: {
                bool exact = true;
                Eigen::MatrixXd f = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m));
                RationalMatrix fx(r, m);
                for (std::size_t q = 0; q < r; ++q) {
                    const auto it = orders.find(q);
                    if (it == orders.end()) missing(q, "order");
                    for (const auto& e : it->second) {
                        f(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(e.species)) = e.value.value;
                        if (e.value.exact)
                            fx(q, e.species) = *e.value.exact;
                        else
                            exact = false;
                    }
                }
                return PowerLawKinetics{exact ? MixedMatrix(std::move(fx)) : MixedMatrix(std::move(f)), std::move(rates)};
            }
            case Family::PolyPL: {
                PolyPLKinetics k;
                for (std::size_t q = 0; q < r; ++q) {
                    const auto it = terms.find(q);
                    if (it == terms.end()) missing(q, "term");
                    Polynomial row;
                    for (const auto& t : it->second) row.push_back(monomial(t));
                    k.terms.push_back(std::move(row));
                }
                k.rates = std::move(rates);
                return k;
            }
            case Family::Hill: {
                bool exact = true;
                Eigen::MatrixXd f = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m));
                Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m));
                RationalMatrix fx(r, m);
                for (std::size_t q = 0; q < r; ++q) {
                    const auto it = hills.find(q);
                    if (it == hills.end()) missing(q, "hill");
                    for (const auto& e : it->second) {
                        f(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(e.species)) = e.f.value;
                        d(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(e.species)) = e.d;
                        if (e.f.exact)
                            fx(q, e.species) = *e.f.exact;
                        else
                            exact = false;
                    }
                }
                return HillKinetics{exact ? MixedMatrix(std::move(fx)) : MixedMatrix(std::move(f)), std::move(d), std::move(rates)};
            }
            case Family::Rational: {
                RationalFunctionKinetics k;
                for (std::size_t q = 0; q < r; ++q) {
                    const auto it = terms.find(q);
                    if (it == terms.end()) missing(q, "num");
                    Polynomial num, den;
                    for (const auto& t : it->second) num.push_back(monomial(t));
                    const auto dt = dens.find(q);
                    if (dt == dens.end())
                        den.push_back(monomial(TermLine{}));
                    else
                        for (const auto& t : dt->second) den.push_back(monomial(t));
                    k.numerators.push_back(std::move(num));
                    k.denominators.push_back(std::move(den));
                }
                k.rates = std::move(rates);
                return k;
            }
        }
        throw CrnError(ErrorCode::InvalidKinetics, "unknown kinetics family");
    }
};

}  // namespace

CrnFile parse_crn(std::string_view text) {
    Parser parser;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        LineParser p(tokenize(raw, line_no), line_no);
        if (p.at(Tok::End)) continue;
        const Token& head = p.peek();
        if (head.kind != Tok::Ident) fail(line_no, head.col, "expected a keyword or reaction label");
        if (head.text == "species") {
            parser.species_line(p);
        } else if (head.text == "kinetics") {
            parser.kinetics_line(p);
        } else if (head.text == "order") {
            parser.order_line(p);
        } else if (head.text == "term") {
            parser.term_line(p, parser.terms, {Family::PolyPL});
        } else if (head.text == "num") {
            parser.term_line(p, parser.terms, {Family::Rational});
        } else if (head.text == "den") {
            parser.term_line(p, parser.dens, {Family::Rational});
        } else if (head.text == "hill") {
            parser.hill_line(p);
        } else {
            if (parser.family) fail(line_no, head.col, "reaction lines must precede the kinetics block");
            parser.reaction_line(p);
        }
    }
    if (parser.species.empty()) fail(line_no + 1, 1, "no species declared");
    if (parser.reactions.empty()) fail(line_no + 1, 1, "no reactions");

    std::vector<Complex> complexes;
    for (auto& c : parser.complexes) complexes.push_back(Complex{c});
    std::vector<ReactionSpec> specs;
    for (const auto& rx : parser.reactions) specs.push_back({rx.reactant, rx.product, rx.label});
    ReactionNetwork net;
    try {
        net = build_network(parser.species, std::move(complexes), std::move(specs));
    } catch (const ParseFailure&) {
        throw;
    } catch (const CrnError& e) {
        // Structural problems are still file problems: report them against the file.
        throw ParseFailure(e.code(), 0, 0, e.what());
    }
    Kinetics kin = parser.build_kinetics(net);
    validate(kin, net);
    return CrnFile{std::move(net), std::move(kin)};
}

CrnFile load_crn(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseFailure(ErrorCode::ParseError, 0, 0, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_crn(buf.str());
}

namespace {

// Floats keep a decimal point so they parse back as floats.
std::string float_literal(double v) {
    std::string s = format_double(v);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string exponent_literal(double v, const std::optional<Rational>& exact) {
    return exact ? to_string(*exact) : float_literal(v);
}

std::string assignments(const std::vector<double>& values, const std::optional<RationalVector>& exact,
                        const ReactionNetwork& net) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const bool zero = exact ? (*exact)[i] == 0 : values[i] == 0.0;
        if (zero) continue;
        if (!out.empty()) out += ", ";
        out += net.species()[i].name + "=" +
               exponent_literal(values[i], exact ? std::optional<Rational>((*exact)[i]) : std::nullopt);
    }
    return out;
}

std::string complex_literal(const ReactionNetwork& net, std::size_t c) {
    std::string out;
    const auto& coeffs = net.complexes()[c].coefficients;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (coeffs[i] != 1) out += to_string(coeffs[i]) + " ";
        out += net.species()[i].name;
    }
    return out.empty() ? "0" : out;
}

void render_poly(std::ostringstream& out, const char* kw, const std::string& label, const Polynomial& poly,
                 const ReactionNetwork& net) {
    for (const auto& mono : poly)
        out << kw << ' ' << label << " coeff " << float_literal(mono.coeff) << ": "
            << assignments(mono.exponents, mono.exact_exponents, net) << '\n';
}

}  // namespace

std::string render_crn(const ReactionNetwork& net, const Kinetics& kin) {
    std::ostringstream out;
    out << "species";
    for (const auto& s : net.species()) out << ' ' << s.name;
    out << '\n';
    const auto& rates = rates_of(kin);
    for (std::size_t q = 0; q < net.r(); ++q) {
        const auto& rx = net.reactions()[q];
        out << rx.label << ": " << complex_literal(net, rx.reactant) << " -> " << complex_literal(net, rx.product) << " rate "
            << float_literal(rates[q]) << '\n';
    }
    const std::size_t m = net.m();
    if (const auto* pl = std::get_if<PowerLawKinetics>(&kin)) {
        if (pl->orders.exact() && is_mass_action(*pl, net)) {
            out << "kinetics massaction\n";
        } else {
            out << "kinetics powerlaw\n";
            for (std::size_t q = 0; q < net.r(); ++q) {
                std::vector<double> row(m);
                std::optional<RationalVector> exact;
                for (std::size_t i = 0; i < m; ++i) row[i] = pl->orders(q, i);
                if (pl->orders.exact()) exact = pl->orders.exact()->row(q);
                out << "order " << net.reactions()[q].label << ": " << assignments(row, exact, net) << '\n';
            }
        }
    } else if (const auto* py = std::get_if<PolyPLKinetics>(&kin)) {
        out << "kinetics polypl\n";
        for (std::size_t q = 0; q < net.r(); ++q) render_poly(out, "term", net.reactions()[q].label, py->terms[q], net);
    } else if (const auto* hill = std::get_if<HillKinetics>(&kin)) {
        out << "kinetics hill\n";
        for (std::size_t q = 0; q < net.r(); ++q) {
            out << "hill " << net.reactions()[q].label << ":";
            bool first = true;
            for (std::size_t i = 0; i < m; ++i) {
                if (hill->orders(q, i) == 0.0) continue;
                std::optional<Rational> fx;
                if (hill->orders.exact()) fx = (*hill->orders.exact())(q, i);
                out << (first ? " " : ", ") << net.species()[i].name << "=(f=" << exponent_literal(hill->orders(q, i), fx)
                    << ", d=" << float_literal(hill->dissociation(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i))) << ")";
                first = false;
            }
            out << '\n';
        }
    } else if (const auto* rat = std::get_if<RationalFunctionKinetics>(&kin)) {
        out << "kinetics rational\n";
        for (std::size_t q = 0; q < net.r(); ++q) {
            render_poly(out, "num", net.reactions()[q].label, rat->numerators[q], net);
            render_poly(out, "den", net.reactions()[q].label, rat->denominators[q], net);
        }
    }
    return out.str();
}

}  // namespace crnbal
