#pragma once

// Exact multivariate polynomials over Q in generators x_1..x_h.
//
// Every generator has cohomological degree 2; a monomial x^e therefore sits in
// degree 2*|e|.  Internally degrees are counted in units of d = |e|.
//
// Coefficients are GMP rationals, always in lowest terms.  Integrality is a
// predicate (is_integral) rather than a separate type.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gbott {

using Integer = mpz_class;
using Rational = mpq_class;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PolynomialParseError : public std::invalid_argument {
public:
    PolynomialParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t generator_count) : exps_(generator_count, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

    static Monomial unit(std::size_t generator_count, std::size_t index, std::uint32_t power = 1);

    std::size_t size() const noexcept { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
    std::span<const std::uint32_t> exponents() const noexcept { return exps_; }

    // Sum of exponents.  The cohomological degree is twice this.
    std::uint64_t degree() const noexcept;
    std::uint64_t cohomological_degree() const noexcept { return 2 * degree(); }

    Monomial operator*(const Monomial& other) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<std::uint32_t> exps_;
};

// Graded lex with the highest-index generator most significant
// (x_h > x_{h-1} > ... > x_1).  compare(a, b) is true when a precedes b in
// printed order, i.e. a is the larger monomial.
struct TermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, TermOrder>;

    Polynomial() = default;
    explicit Polynomial(std::size_t generator_count) : n_(generator_count) {}

    static Polynomial constant(std::size_t generator_count, const Rational& c);
    static Polynomial generator(std::size_t generator_count, std::size_t index,
                                const Rational& c = 1);
    static Polynomial monomial(const Monomial& m, const Rational& c = 1);
    // sum_j coeffs[j] * x_{j+1}
    static Polynomial linear(std::span<const Integer> coeffs);

    std::size_t generator_count() const noexcept { return n_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    Rational coefficient(const Monomial& m) const;
    // Highest d = |e| among the terms; nullopt for the zero polynomial.
    std::optional<std::uint64_t> degree() const;
    bool is_homogeneous() const;
    // Largest exponent of generator `index` (0-based) that appears.
    std::uint32_t max_exponent(std::size_t index) const;
    // Part of degree exactly d.
    Polynomial homogeneous_part(std::uint64_t d) const;

    void add_term(const Monomial& m, const Rational& c);

    Polynomial& operator+=(const Polynomial& q);
    Polynomial& operator-=(const Polynomial& q);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
    friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
    friend Polynomial operator-(Polynomial p) { return p *= Rational(-1); }
    friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);

    friend bool operator==(const Polynomial& p, const Polynomial& q);

private:
    void check_same(const Polynomial& q) const;

    std::size_t n_ = 0;
    TermMap terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, std::uint32_t k);
bool is_integral(const Polynomial& p);

// Replace x_{j+1} by images[j].  All images must share one generator count,
// which becomes the generator count of the result.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images);

// "x1".."xn".
std::vector<std::string> default_names(std::size_t generator_count);

// Terms in TermOrder, e.g. "y^4 + x*y^3", "-1/2*x1^2 + 3".  Unit coefficients
// and unit exponents are omitted; the zero polynomial prints as "0".
std::string to_string(const Polynomial& p, std::span<const std::string> names = {});
std::string to_string(const Rational& c);

// Inverse of to_string.  Accepts any arrangement of terms, repeated factors
// and optional '*' between a coefficient and the first factor.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);
Polynomial parse_polynomial(std::string_view text, std::size_t generator_count);

} // namespace gbott
