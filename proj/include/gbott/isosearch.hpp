#pragma once

// Graded ring maps between tower cohomology rings that are determined by
// their action on H^2, and a bounded exhaustive search for isomorphisms.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gbott/cohomring.hpp"
#include "gbott/tower.hpp"

namespace gbott {

using RationalMatrix = std::vector<std::vector<Rational>>;

// x_j |-> sum_i M(i,j) X_i; column j holds the image of source generator j.
struct Degree2Map {
    RationalMatrix matrix;

    static Degree2Map identity(std::size_t h);
    static Degree2Map from_integers(const std::vector<std::vector<long>>& rows);

    std::size_t size() const noexcept { return matrix.size(); }
    bool is_integral() const;
    // Images of the source generators as polynomials in target generators.
    std::vector<Polynomial> images() const;
    // (N o M) where this = M is applied first.
    Degree2Map then(const Degree2Map& next) const;

    friend bool operator==(const Degree2Map&, const Degree2Map&) = default;
};

Rational determinant(const RationalMatrix& m);

// Normal forms in the target of every source relation pushed through the map.
std::vector<Polynomial> hom_residues(const Degree2Map& map, const CohomRing& source,
                                     const CohomRing& target);

// The map extends to a ring homomorphism iff every residue vanishes.  With
// over_integers the matrix must be integral (PreconditionError otherwise).
bool check_hom(const Degree2Map& map, const CohomRing& source, const CohomRing& target,
               bool over_integers);

// A homomorphism that is bijective on H^2 between rings with the same
// Poincare ranks is an isomorphism; over Z bijective means det = +-1.
bool is_iso(const Degree2Map& map, const CohomRing& source, const CohomRing& target,
            bool over_integers);

struct SearchOptions {
    bool sequential = false;
    unsigned threads = 0;  // 0: hardware concurrency
};

// First integer matrix with entries in [-bound, bound] that gives an
// isomorphism, in a fixed order that starts at the identity.  The parallel
// mode returns the same matrix as the sequential one.
std::optional<Degree2Map> search_iso(const CohomRing& source, const CohomRing& target,
                                     bool over_integers, int bound, SearchOptions opts = {});

// Bounded Z-isomorphism search against the product of projective spaces
// with the same fiber dimensions.  Finding one proves Z-triviality.
bool z_trivial_oracle(const TowerSpec& t, int bound);

// Row-major matrix, images of the generators and per-relation residues.
std::string witness_text(const Degree2Map& map, const CohomRing& source, const CohomRing& target,
                         std::span<const std::string> source_names = {},
                         std::span<const std::string> target_names = {});

} // namespace gbott
