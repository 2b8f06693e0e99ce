#pragma once

// Random generators and independent oracles shared by the unit and
// acceptance suites.  Nothing here calls the reduction or Chern code paths
// it is used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "gbott/cohomring.hpp"
#include "gbott/exactpoly.hpp"
#include "gbott/tower.hpp"

namespace gbott::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline TowerSpec random_tower(Rng& rng, int max_height, int max_dim, int coeff_bound)
{
    const int h = uniform(rng, 1, max_height);
    std::vector<int> dims;
    for (int i = 0; i < h; ++i)
        dims.push_back(uniform(rng, 1, max_dim));
    TowerSpec t = product_tower(dims);
    for (auto& s : t.stages) {
        for (auto& row : s.coeffs) {
            for (auto& a : row)
                a = uniform(rng, -coeff_bound, coeff_bound);
        }
    }
    return t;
}

inline Rational random_rational(Rng& rng, int num_bound, int den_bound)
{
    Rational q(uniform(rng, -num_bound, num_bound), uniform(rng, 1, den_bound));
    q.canonicalize();
    return q;
}

inline Polynomial random_polynomial(Rng& rng, std::size_t n, int max_terms, int max_exp,
                                    int den_bound = 1)
{
    Polynomial p(n);
    const int terms = uniform(rng, 0, max_terms);
    for (int t = 0; t < terms; ++t) {
        Monomial m(n);
        for (std::size_t i = 0; i < n; ++i)
            m[i] = static_cast<std::uint32_t>(uniform(rng, 0, max_exp));
        p.add_term(m, random_rational(rng, 9, den_bound));
    }
    return p;
}

inline Polynomial random_homogeneous(Rng& rng, std::size_t n, int max_terms, std::uint32_t degree)
{
    Polynomial p(n);
    const int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) {
        Monomial m(n);
        for (std::uint32_t k = 0; k < degree; ++k)
            ++m[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1))];
        p.add_term(m, uniform(rng, -5, 5));
    }
    return p;
}

// Total Chern class by expanding prod_j (1 + l_j) term by term, split into
// homogeneous parts.  c[k] for k = 0..n_i.
inline std::vector<Polynomial> chern_by_expansion(const TowerSpec& t, std::size_t i)
{
    const std::size_t h = t.height();
    Polynomial total = Polynomial::constant(h, 1);
    for (const auto& row : t.stage(i).coeffs) {
        Polynomial factor = Polynomial::constant(h, 1);
        for (std::size_t k = 0; k < row.size(); ++k)
            factor.add_term(Monomial::unit(h, k), Rational(row[k]));
        total = total * factor;
    }
    std::vector<Polynomial> c;
    for (int k = 0; k <= t.fiber_dim(i); ++k)
        c.push_back(total.homogeneous_part(static_cast<std::uint64_t>(k)));
    return c;
}

// Reduction by rewriting one randomly chosen reducible term at a time, with
// stages visited in random order, until nothing is reducible.  Uses the
// product form of the relations only.
inline Polynomial reduce_randomly(const Polynomial& p, const TowerSpec& t, Rng& rng)
{
    const std::size_t h = t.height();
    // x_i^{n+1} = x_i^{n+1} - r_i
    std::vector<Polynomial> rewrite;
    for (std::size_t i = 1; i <= h; ++i) {
        Polynomial r = Polynomial::generator(h, i - 1);
        for (const auto& row : t.stage(i).coeffs) {
            Polynomial l = Polynomial::generator(h, i - 1);
            for (std::size_t k = 0; k < row.size(); ++k)
                l.add_term(Monomial::unit(h, k), Rational(row[k]));
            r = r * l;
        }
        const auto lead = Monomial::unit(h, i - 1, static_cast<std::uint32_t>(t.fiber_dim(i) + 1));
        rewrite.push_back(Polynomial::monomial(lead) - r);
    }

    Polynomial cur = p;
    while (true) {
        std::vector<std::pair<Monomial, std::size_t>> reducible;
        for (const auto& [m, c] : cur.terms()) {
            for (std::size_t i = 0; i < h; ++i) {
                if (m[i] > static_cast<std::uint32_t>(t.fiber_dim(i + 1)))
                    reducible.emplace_back(m, i);
            }
        }
        if (reducible.empty())
            return cur;
        const auto& [m, i] =
            reducible[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(reducible.size()) - 1))];
        const Rational c = cur.coefficient(m);
        Monomial rest = m;
        rest[i] -= static_cast<std::uint32_t>(t.fiber_dim(i + 1) + 1);
        cur.add_term(m, -c);
        cur += Polynomial::monomial(rest, c) * rewrite[i];
    }
}

// Degree-wise count of the monomials x^e with e_i <= n_i.
inline std::vector<std::uint64_t> basis_count_by_degree(const TowerSpec& t)
{
    std::vector<std::uint64_t> counts(t.total_fiber_dim() + 1, 0);
    std::vector<int> e(t.height(), 0);
    while (true) {
        int d = 0;
        for (int v : e)
            d += v;
        ++counts[static_cast<std::size_t>(d)];
        std::size_t i = 0;
        while (i < e.size() && e[i] == t.fiber_dim(i + 1)) {
            e[i] = 0;
            ++i;
        }
        if (i == e.size())
            return counts;
        ++e[i];
    }
}

} // namespace gbott::testing
