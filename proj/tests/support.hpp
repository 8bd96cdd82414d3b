#ifndef CRNBAL_TESTS_SUPPORT_HPP
#define CRNBAL_TESTS_SUPPORT_HPP

#include "crnbal/crn_format.hpp"
#include "crnbal/errors.hpp"
#include "crnbal/linalg.hpp"
#include "crnbal/network.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace crnbal::testing {

inline std::string fixture(const std::string& name) { return std::string(CRNBAL_FIXTURES) + "/" + name; }

inline CrnFile load(const std::string& name) { return load_crn(fixture(name)); }

inline Complex cx(std::initializer_list<long long> c) {
    Complex out;
    for (long long v : c) out.coefficients.emplace_back(v);
    return out;
}

inline RationalMatrix rm(std::initializer_list<std::initializer_list<long long>> rows) { return RationalMatrix(rows); }

// Built by hand rather than parsed, so parser bugs cannot hide here.
inline ReactionNetwork re1_network() {
    return build_network({"X1", "X2", "X3"},
                         {cx({2, 0, 0}), cx({1, 1, 0}), cx({0, 2, 0}), cx({2, 0, 1}), cx({1, 0, 2}), cx({0, 0, 3})},
                         {{0, 1, "R1"}, {1, 0, "R2"}, {1, 2, "R3"}, {2, 1, "R4"},
                          {3, 4, "R5"}, {4, 3, "R6"}, {4, 5, "R7"}, {5, 4, "R8"}});
}

// Random network with 2-3 species, 3-5 complexes, coefficients in 0..2; every complex and
// species used. Retries until build_network accepts.
inline ReactionNetwork random_network(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(0, 2);
    for (;;) {
        const std::size_t m = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 5)(rng);
        std::set<std::vector<int>> seen;
        std::vector<Complex> complexes;
        while (complexes.size() < n) {
            std::vector<int> c(m);
            for (auto& v : c) v = coeff(rng);
            if (!seen.insert(c).second) continue;
            Complex cx;
            for (int v : c) cx.coefficients.emplace_back(v);
            complexes.push_back(cx);
        }
        std::vector<ReactionSpec> reactions;
        std::set<std::pair<std::size_t, std::size_t>> pairs;
        const std::size_t r = std::uniform_int_distribution<std::size_t>(n - 1, 2 * n)(rng);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        // a chain through every complex first, in random order, so nothing is unused
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (std::bernoulli_distribution(0.8)(rng) || i == 0) pairs.insert({order[i], order[i + 1]});
        while (pairs.size() < r) {
            const std::size_t a = pick(rng), b = pick(rng);
            if (a != b) pairs.insert({a, b});
        }
        for (const auto& [a, b] : pairs) reactions.push_back({a, b, ""});
        std::vector<std::string> species;
        for (std::size_t i = 0; i < m; ++i) species.push_back("S" + std::to_string(i + 1));
        try {
            return build_network(species, complexes, reactions);
        } catch (const CrnError&) {
            // an unused complex or species; draw again
        }
    }
}

}  // namespace crnbal::testing

#endif
