#pragma once

// Integral cohomology of a generalized Bott tower:
//
//   H*(B_h) = Z[x_1..x_h] / < x_i * prod_j (x_i + sum_k a^i_{jk} x_k) >
//
// The relation for stage i is monic in x_i and its other coefficients live in
// x_1..x_{i-1}, so rewriting x_i^{n_i+1} from the top stage down is a
// terminating triangular reduction to the basis {x^e : e_i <= n_i}.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gbott/exactpoly.hpp"
#include "gbott/tower.hpp"

namespace gbott {

struct ChernData {
    std::size_t stage = 0;
    // classes[k] = c_k(xi_stage), k = 0..n_stage, each in h generators.
    std::vector<Polynomial> classes;

    // c_k with c_k = 0 for k > n.
    Polynomial c(std::size_t k) const;
    std::size_t rank() const noexcept { return classes.empty() ? 0 : classes.size() - 1; }
};

// c_k(xi_i) as the k-th elementary symmetric polynomial of the linear forms
// l_j = sum_k a^i_{jk} x_k.  Throws std::out_of_range unless 1 <= i <= h.
ChernData chern_classes(const TowerSpec& t, std::size_t i);

// The linear forms l_1..l_{n_i} of stage i.
std::vector<Polynomial> stage_linear_forms(const TowerSpec& t, std::size_t i);

class CohomRing {
public:
    explicit CohomRing(TowerSpec tower);

    const TowerSpec& tower() const noexcept { return tower_; }
    std::size_t generator_count() const noexcept { return tower_.height(); }
    int fiber_dim(std::size_t i) const { return tower_.fiber_dim(i); }

    // x_i * prod_j (l_j + x_i), 1-based.
    const Polynomial& relation(std::size_t i) const { return relations_.at(i - 1); }
    const std::vector<Polynomial>& relations() const noexcept { return relations_; }
    // x_i^{n_i+1} + c_1 x_i^{n_i} + ... + c_{n_i} x_i, the same polynomial built
    // from the Chern classes.
    Polynomial relation_from_chern(std::size_t i) const;

    const ChernData& chern(std::size_t i) const { return chern_.at(i - 1); }
    const std::vector<Monomial>& basis() const noexcept { return basis_; }

    Polynomial generator(std::size_t i) const;
    Polynomial one() const;
    Polynomial zero() const { return Polynomial(generator_count()); }

    // Unique representative supported on basis().
    Polynomial normal_form(const Polynomial& p) const;
    bool is_basis_monomial(const Monomial& m) const;

private:
    TowerSpec tower_;
    std::vector<ChernData> chern_;
    std::vector<Polynomial> relations_;
    // tails_[i-1] = -(c_1 x_i^{n_i} + ... + c_{n_i} x_i), the value of x_i^{n_i+1}
    std::vector<Polynomial> tails_;
    std::vector<Monomial> basis_;
};

CohomRing build_ring(const TowerSpec& t);

Polynomial normal_form(const Polynomial& p, const CohomRing& ring);

// over_integers only matters for bookkeeping: the ring is a free Z-module, so
// an integral class vanishes over Z iff it vanishes over Q.
bool is_zero_class(const Polynomial& p, const CohomRing& ring, bool over_integers = false);

// Rank of H^{2d} for d = 0..sum n_i, the coefficients of prod_i (1 + t + ... + t^{n_i}).
std::vector<std::uint64_t> poincare_ranks(const TowerSpec& t);

// Generators with degrees, relations and Poincare ranks.
std::string ring_report(const CohomRing& ring, std::span<const std::string> names = {});

} // namespace gbott
