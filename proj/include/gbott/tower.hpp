#pragma once

// Generalized Bott towers B_h -> ... -> B_1 -> point.
//
// Stage i (1-based) projectivizes C + xi_i where xi_i is a sum of n_i line
// bundles; line bundle j of stage i is the tensor product over k < i of the
// pulled-back tautological bundles raised to a^i_{jk}.  The integer array a
// together with the fiber dimensions is the whole description.

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gbott/exactpoly.hpp"

namespace gbott {

class ValidationError : public std::invalid_argument {
public:
    ValidationError(const std::string& what, std::size_t stage)
        : std::invalid_argument(what), stage_(stage) {}
    // 1-based stage index, 0 when the error is not tied to one stage.
    std::size_t stage() const noexcept { return stage_; }

private:
    std::size_t stage_;
};

class TowerParseError : public std::invalid_argument {
public:
    TowerParseError(const std::string& what, std::size_t line)
        : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InadmissiblePermutation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using IntegerMatrix = std::vector<std::vector<Integer>>;

struct StageSpec {
    int fiber_dim = 1;
    // fiber_dim rows, (stage index - 1) columns; coeffs[j][k] = a^i_{j+1,k+1}
    IntegerMatrix coeffs;

    friend bool operator==(const StageSpec&, const StageSpec&) = default;
};

struct TowerSpec {
    std::vector<StageSpec> stages;

    std::size_t height() const noexcept { return stages.size(); }
    // 1-based accessors
    const StageSpec& stage(std::size_t i) const { return stages.at(i - 1); }
    int fiber_dim(std::size_t i) const { return stage(i).fiber_dim; }
    std::vector<int> fiber_dims() const;
    // Column vector a^i_k (length n_i), i > k >= 1.
    std::vector<Integer> column(std::size_t i, std::size_t k) const;
    bool column_is_zero(std::size_t i, std::size_t k) const;
    bool all_coefficients_zero() const;
    std::size_t total_fiber_dim() const;

    friend bool operator==(const TowerSpec&, const TowerSpec&) = default;
};

// Product of projective spaces CP^{n_1} x ... x CP^{n_h}.
TowerSpec product_tower(const std::vector<int>& dims);
// Two-stage Bott tower with xi_2 = (taut)^a over CP^1.
TowerSpec hirzebruch_tower(const Integer& a);

// Throws ValidationError naming the first malformed stage.
void validate(const TowerSpec& t);

// A^T laid out by blocks: block row i has n_i rows, all-ones in column i and
// a^i_k in column k < i, zeros above the diagonal.  Shape (sum n_i) x h.
IntegerMatrix vector_matrix_transpose(const TowerSpec& t);
// -A^T.
IntegerMatrix reduced_characteristic_matrix(const TowerSpec& t);

// Bijection on {1..h}; images[i-1] = sigma(i), the new position of stage i.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> images);

    static Permutation identity(std::size_t h);
    // Swaps positions a and b (1-based).
    static Permutation transposition(std::size_t h, std::size_t a, std::size_t b);

    std::size_t size() const noexcept { return images_.size(); }
    std::size_t operator()(std::size_t i) const { return images_.at(i - 1); }
    const std::vector<std::size_t>& images() const noexcept { return images_; }
    bool is_identity() const;

    Permutation inverse() const;
    // (this * other)(i) = this(other(i))
    Permutation compose(const Permutation& other) const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> images_;
};

// Conjugates the vector matrix by the permutation: stage i moves to position
// sigma(i) and its coefficient column for stage k moves to column sigma(k).
// Throws InadmissiblePermutation if a nonzero column a^i_k would land at or
// above the diagonal (stage sigma(i) depending on a later stage).
TowerSpec permute(const TowerSpec& t, const Permutation& s);
bool is_admissible(const TowerSpec& t, const Permutation& s);

// Tower file format, see README.
TowerSpec parse_tower(std::string_view text);
std::string serialize_tower(const TowerSpec& t);
TowerSpec load_tower(const std::string& path);

std::string to_string(const IntegerMatrix& m);
std::string to_string(const Permutation& p);

} // namespace gbott
