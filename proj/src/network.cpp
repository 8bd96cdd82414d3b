#include "crnbal/network.hpp"

#include "crnbal/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

namespace crnbal {

ReactionNetwork build_network(std::vector<std::string> species, std::vector<Complex> complexes,
                              std::vector<ReactionSpec> reactions, bool allow_unused_species) {
    ReactionNetwork net;
    const std::size_t m = species.size();

    std::unordered_set<std::string> seen_names;
    for (std::size_t i = 0; i < m; ++i) {
        if (species[i].empty()) throw CrnError(ErrorCode::InvalidComplex, "empty species name");
        if (!seen_names.insert(species[i]).second)
            throw CrnError(ErrorCode::DuplicateSpecies, "species '" + species[i] + "' declared twice");
        net.species_.push_back({i, species[i]});
    }

    for (std::size_t c = 0; c < complexes.size(); ++c) {
        if (complexes[c].coefficients.size() != m)
            throw CrnError(ErrorCode::InvalidComplex, "complex " + std::to_string(c) + " has wrong length");
        for (const auto& v : complexes[c].coefficients)
            if (v < 0) throw CrnError(ErrorCode::InvalidComplex, "complex " + std::to_string(c) + " has a negative coefficient");
        for (std::size_t d = 0; d < c; ++d)
            if (complexes[d] == complexes[c])
                throw CrnError(ErrorCode::DuplicateComplex,
                               "complexes " + std::to_string(d) + " and " + std::to_string(c) + " are equal");
    }
    net.complexes_ = std::move(complexes);

    std::set<std::pair<std::size_t, std::size_t>> seen_edges;
    std::unordered_set<std::string> seen_labels;
    std::vector<bool> used(net.complexes_.size(), false);
    for (std::size_t q = 0; q < reactions.size(); ++q) {
        auto& spec = reactions[q];
        if (spec.label.empty()) spec.label = "R" + std::to_string(q + 1);
        if (spec.reactant >= net.complexes_.size() || spec.product >= net.complexes_.size())
            throw CrnError(ErrorCode::InvalidIndex, "reaction " + spec.label + " references a missing complex");
        if (spec.reactant == spec.product)
            throw CrnError(ErrorCode::SelfLoopReaction, "reaction " + spec.label + " has identical reactant and product");
        if (!seen_edges.insert({spec.reactant, spec.product}).second)
            throw CrnError(ErrorCode::DuplicateReaction, "reaction " + spec.label + " duplicates an earlier reaction");
        if (!seen_labels.insert(spec.label).second)
            throw CrnError(ErrorCode::DuplicateReaction, "reaction label " + spec.label + " is used twice");
        used[spec.reactant] = used[spec.product] = true;
        net.reactions_.push_back({spec.reactant, spec.product, spec.label});
    }
    for (std::size_t c = 0; c < used.size(); ++c)
        if (!used[c]) throw CrnError(ErrorCode::UnusedComplex, "complex " + net.complex_string(c) + " occurs in no reaction");

    if (!allow_unused_species) {
        for (std::size_t i = 0; i < m; ++i) {
            const bool occurs = std::any_of(net.complexes_.begin(), net.complexes_.end(),
                                            [i](const Complex& c) { return c.coefficients[i] != 0; });
            if (!occurs) throw CrnError(ErrorCode::UnusedSpecies, "species '" + species[i] + "' occurs in no complex");
        }
    }

    const std::size_t n = net.complexes_.size();
    const std::size_t r = net.reactions_.size();
    net.y_ = RationalMatrix(m, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < m; ++i) net.y_(i, c) = net.complexes_[c].coefficients[i];
    net.ia_ = RationalMatrix(n, r);
    for (std::size_t q = 0; q < r; ++q) {
        net.ia_(net.reactions_[q].reactant, q) = -1;
        net.ia_(net.reactions_[q].product, q) = 1;
    }
    net.n_ = net.y_ * net.ia_;
    return net;
}

std::optional<std::size_t> ReactionNetwork::species_index(const std::string& name) const {
    for (const auto& s : species_)
        if (s.name == name) return s.index;
    return std::nullopt;
}

std::optional<std::size_t> ReactionNetwork::reaction_index(const std::string& label) const {
    for (std::size_t q = 0; q < reactions_.size(); ++q)
        if (reactions_[q].label == label) return q;
    return std::nullopt;
}

std::string ReactionNetwork::complex_string(std::size_t c) const {
    std::string out;
    const auto& coeffs = complexes_.at(c).coefficients;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (coeffs[i] != 1) out += to_string(coeffs[i]) + " ";
        out += species_[i].name;
    }
    return out.empty() ? "0" : out;
}

RationalVector ReactionNetwork::reaction_vector(std::size_t q) const {
    return n_.column(q);
}

std::vector<std::size_t> ReactionNetwork::reactant_complexes() const {
    std::vector<bool> is_reactant(complexes_.size(), false);
    for (const auto& rx : reactions_) is_reactant[rx.reactant] = true;
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < is_reactant.size(); ++c)
        if (is_reactant[c]) out.push_back(c);
    return out;
}

double ReactionNetwork::y_inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < y_.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t c = 0; c < y_.cols(); ++c) sum += std::abs(to_double(y_(i, c)));
        best = std::max(best, sum);
    }
    return best;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

// Tarjan's algorithm; returns the component id of every vertex.
std::vector<std::size_t> strongly_connected(const std::vector<std::vector<std::size_t>>& adj,
                                            std::size_t& count) {
    const std::size_t n = adj.size();
    std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t next = 0;
    count = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = next++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w : adj[v]) {
            if (index[w] == SIZE_MAX) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = count;
            } while (w != v);
            ++count;
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] == SIZE_MAX) visit(v);
    return comp;
}

}  // namespace

StructuralInvariants structural_invariants(const ReactionNetwork& net) {
    StructuralInvariants inv;
    inv.m = net.m();
    inv.n = net.n();
    inv.r = net.r();
    inv.n_r = net.reactant_complexes().size();

    // Linkage classes: undirected components, numbered by smallest complex index.
    std::vector<std::size_t> parent(inv.n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& rx : net.reactions()) {
        const std::size_t a = find_root(parent, rx.reactant);
        const std::size_t b = find_root(parent, rx.product);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> linkage_of(inv.n, SIZE_MAX);
    std::vector<std::size_t> root_to_class(inv.n, SIZE_MAX);
    for (std::size_t c = 0; c < inv.n; ++c) {
        const std::size_t root = find_root(parent, c);
        if (root_to_class[root] == SIZE_MAX) {
            root_to_class[root] = inv.l++;
            inv.linkage_complexes.emplace_back();
            inv.linkage_partition.emplace_back();
        }
        linkage_of[c] = root_to_class[root];
        inv.linkage_complexes[linkage_of[c]].push_back(c);
    }
    for (std::size_t q = 0; q < inv.r; ++q)
        inv.linkage_partition[linkage_of[net.reactions()[q].reactant]].push_back(q);

    std::vector<std::vector<std::size_t>> adj(inv.n);
    for (const auto& rx : net.reactions()) adj[rx.reactant].push_back(rx.product);
    std::size_t scc_count = 0;
    const auto comp = strongly_connected(adj, scc_count);
    inv.sl = scc_count;

    std::vector<bool> has_exit(scc_count, false);
    for (const auto& rx : net.reactions())
        if (comp[rx.reactant] != comp[rx.product]) has_exit[comp[rx.reactant]] = true;
    std::vector<std::vector<std::size_t>> members(scc_count);
    for (std::size_t c = 0; c < inv.n; ++c) members[comp[c]].push_back(c);
    for (std::size_t k = 0; k < scc_count; ++k)
        if (!has_exit[k]) inv.terminal_classes.push_back(members[k]);
    std::sort(inv.terminal_classes.begin(), inv.terminal_classes.end());
    inv.t = inv.terminal_classes.size();

    inv.s = rational_rank(net.N());
    inv.delta = inv.n - inv.l - inv.s;
    inv.weakly_reversible = inv.sl == inv.l;
    inv.t_minimal = inv.t == inv.l;
    inv.cycle_terminal = inv.n == inv.n_r;
    inv.conservative = is_conservative(net).conservative;
    return inv;
}

ConservationResult is_conservative(const ReactionNetwork& net) {
    auto z = positive_kernel_vector(net.N().transpose());
    ConservationResult out;
    out.conservative = z.has_value();
    out.witness = std::move(z);
    return out;
}

bool has_positive_incidence_kernel(const ReactionNetwork& net) {
    return positive_kernel_vector(net.Ia()).has_value();
}

}  // namespace crnbal
