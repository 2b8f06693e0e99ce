#pragma once

// Deciders for Q-triviality, total-Chern triviality, Z-triviality of a
// generalized Bott tower, and the reordering of a Q-trivial tower into a
// product-of-projective-spaces bundle over a Bott tower.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbott/cohomring.hpp"
#include "gbott/tower.hpp"

namespace gbott {

class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A sum b_1 x_1 + ... + b_h x_h in H^2.
struct Degree2Class {
    std::vector<Integer> coeffs;

    std::size_t size() const noexcept { return coeffs.size(); }
    bool is_primitive() const;
    // Largest index with a nonzero coefficient (1-based), 0 for the zero class.
    std::size_t top_support() const;
    Polynomial to_polynomial() const { return Polynomial::linear(coeffs); }

    friend bool operator==(const Degree2Class&, const Degree2Class&) = default;
};

// Degree-2 part of a homogeneous linear polynomial with integer coefficients.
Degree2Class degree2_class(const Polynomial& linear);
// True when a and b span the same line over Q.
bool parallel(const Degree2Class& a, const Degree2Class& b);

// The primitive integer vector z_i = r_i (x_i + c_1(xi_i)/(n_i+1)).
struct GeneratorCandidate {
    std::size_t stage = 0;
    Integer scale;  // r_i
    Degree2Class vector;
};

struct QTrivialityResult {
    bool trivial = true;
    // First stage/k pair whose relation (n+1)^k c_k = C(n+1,k) c_1^k fails.
    std::optional<std::pair<std::size_t, std::size_t>> first_violation;
    explicit operator bool() const noexcept { return trivial; }
};

QTrivialityResult is_q_trivial(const TowerSpec& t);
QTrivialityResult is_q_trivial(const CohomRing& ring);

// Index k of the first violated relation at stage i, if any.
std::optional<std::size_t> q_violation_at(const CohomRing& ring, std::size_t i);

bool is_total_chern_trivial(const TowerSpec& t);
bool is_total_chern_trivial(const CohomRing& ring);

// (n_i+1) x_i + c_1(xi_i) as an integer vector.
Degree2Class line_vector(const CohomRing& ring, std::size_t i);

// Requires a Q-trivial tower; throws PreconditionError otherwise.
std::vector<GeneratorCandidate> generator_candidates(const TowerSpec& t);
std::vector<GeneratorCandidate> generator_candidates(const CohomRing& ring);

bool is_z_trivial(const TowerSpec& t);
bool is_z_trivial(const CohomRing& ring);

// All n_i must be 1; throws PreconditionError otherwise.
bool bott_q_trivial(const TowerSpec& t);

struct Decomposition {
    Permutation permutation;   // sigma(i) = new position of stage i
    TowerSpec reordered;
    std::size_t base_height = 0;      // number of CP^1 stages
    std::vector<int> fiber_dims;      // dims of the n > 1 stages, in order
    std::vector<Permutation> swaps;   // adjacent transpositions applied in order
};

// Requires a Q-trivial tower.  Moves every n_i = 1 stage before every n_i > 1
// stage (stable), then checks the zero-block shape of the result.
Decomposition decompose(const TowerSpec& t);

// Zero-block shape of a decomposed tower: every stage at position > r has
// zero columns for positions > r, and every stage at position <= r has fiber
// dimension 1.  Returns an explanation of the first violation, if any.
std::optional<std::string> check_decomposed_shape(const TowerSpec& t, std::size_t base_height);

struct StageDiagnostic {
    std::size_t stage = 0;
    std::optional<std::size_t> violated_k;
    std::optional<GeneratorCandidate> candidate;
};

struct TrivialityReport {
    bool q_trivial = false;
    bool z_trivial = false;
    bool total_chern_trivial = false;
    std::vector<StageDiagnostic> per_stage;
    std::optional<Decomposition> decomposition;
};

TrivialityReport full_report(const TowerSpec& t);

std::string to_text(const TrivialityReport& r);
nlohmann::json to_json(const TrivialityReport& r);
std::string to_text(const Decomposition& d);
nlohmann::json to_json(const Decomposition& d);

} // namespace gbott
