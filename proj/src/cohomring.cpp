#include "gbott/cohomring.hpp"

#include <cassert>
#include <sstream>

namespace gbott {

Polynomial ChernData::c(std::size_t k) const
{
    if (k < classes.size())
        return classes[k];
    return Polynomial(classes.front().generator_count());
}

std::vector<Polynomial> stage_linear_forms(const TowerSpec& t, std::size_t i)
{
    if (i < 1 || i > t.height())
        throw std::out_of_range("stage index " + std::to_string(i) + " outside 1.." +
                                std::to_string(t.height()));
    const std::size_t h = t.height();
    std::vector<Polynomial> forms;
    for (const auto& row : t.stage(i).coeffs) {
        std::vector<Integer> full(h, 0);
        std::copy(row.begin(), row.end(), full.begin());
        forms.push_back(Polynomial::linear(full));
    }
    return forms;
}

ChernData chern_classes(const TowerSpec& t, std::size_t i)
{
    const auto forms = stage_linear_forms(t, i);
    const std::size_t h = t.height();
    const std::size_t n = forms.size();

    // e[k] after processing forms 1..j is e_k(l_1..l_j).
    std::vector<Polynomial> e(n + 1, Polynomial(h));
    e[0] = Polynomial::constant(h, 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k >= 1; --k)
            e[k] += forms[j] * e[k - 1];
    }
    return ChernData{i, std::move(e)};
}

CohomRing::CohomRing(TowerSpec tower) : tower_(std::move(tower))
{
    validate(tower_);
    const std::size_t h = tower_.height();
    for (std::size_t i = 1; i <= h; ++i) {
        chern_.push_back(chern_classes(tower_, i));

        const auto xi = Polynomial::generator(h, i - 1);
        Polynomial r = xi;
        for (const auto& l : stage_linear_forms(tower_, i))
            r = r * (l + xi);
        relations_.push_back(std::move(r));

        const auto n = static_cast<std::uint32_t>(tower_.fiber_dim(i));
        Polynomial tail(h);
        for (std::uint32_t k = 1; k <= n; ++k)
            tail -= chern_.back().classes[k] * Polynomial::monomial(Monomial::unit(h, i - 1, n + 1 - k));
        tails_.push_back(std::move(tail));
    }

    // odometer over 0 <= e_i <= n_i
    Monomial m(h);
    while (true) {
        basis_.push_back(m);
        std::size_t i = 0;
        while (i < h && m[i] == static_cast<std::uint32_t>(tower_.fiber_dim(i + 1))) {
            m[i] = 0;
            ++i;
        }
        if (i == h)
            break;
        ++m[i];
    }
}

Polynomial CohomRing::relation_from_chern(std::size_t i) const
{
    const std::size_t h = generator_count();
    const auto n = static_cast<std::uint32_t>(fiber_dim(i));
    Polynomial r(h);
    for (std::uint32_t k = 0; k <= n; ++k)
        r += chern(i).classes[k] * Polynomial::monomial(Monomial::unit(h, i - 1, n + 1 - k));
    return r;
}

Polynomial CohomRing::generator(std::size_t i) const
{
    return Polynomial::generator(generator_count(), i - 1);
}

Polynomial CohomRing::one() const
{
    return Polynomial::constant(generator_count(), 1);
}

bool CohomRing::is_basis_monomial(const Monomial& m) const
{
    if (m.size() != generator_count())
        return false;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] > static_cast<std::uint32_t>(tower_.fiber_dim(i + 1)))
            return false;
    }
    return true;
}

Polynomial CohomRing::normal_form(const Polynomial& p) const
{
    const std::size_t h = generator_count();
    if (p.generator_count() != h)
        throw DimensionError("polynomial has " + std::to_string(p.generator_count()) +
                             " generators, ring has " + std::to_string(h));

    Polynomial current = p;
    for (std::size_t i = h; i >= 1; --i) {
        const auto n = static_cast<std::uint32_t>(fiber_dim(i));
        const std::uint32_t top = current.max_exponent(i - 1);
        if (top <= n)
            continue;

        // Bucket terms by their x_i exponent and rewrite from the top down; each
        // rewrite lowers the x_i exponent by 1..n and touches only x_1..x_{i-1}.
        std::vector<Polynomial> buckets(top + 1, Polynomial(h));
        for (const auto& [m, c] : current.terms())
            buckets[m[i - 1]].add_term(m, c);
        const Polynomial& tail = tails_[i - 1];
        for (std::uint32_t e = top; e > n; --e) {
            for (const auto& [m, c] : buckets[e].terms()) {
                Monomial rest = m;
                rest[i - 1] -= n + 1;
                for (const auto& [tm, tc] : tail.terms()) {
                    Monomial out = rest * tm;
                    buckets[out[i - 1]].add_term(out, c * tc);
                }
            }
        }
        current = Polynomial(h);
        for (std::uint32_t e = 0; e <= n; ++e)
            current += buckets[e];
    }

#ifndef NDEBUG
    for (const auto& [m, c] : current.terms())
        assert(is_basis_monomial(m));
#endif
    return current;
}

CohomRing build_ring(const TowerSpec& t)
{
    return CohomRing(t);
}

Polynomial normal_form(const Polynomial& p, const CohomRing& ring)
{
    return ring.normal_form(p);
}

bool is_zero_class(const Polynomial& p, const CohomRing& ring, bool over_integers)
{
    const auto nf = ring.normal_form(p);
    // Relations are monic with integer coefficients: integral input stays integral.
    assert(!over_integers || !is_integral(p) || is_integral(nf));
    (void)over_integers;
    return nf.is_zero();
}

std::vector<std::uint64_t> poincare_ranks(const TowerSpec& t)
{
    validate(t);
    std::vector<std::uint64_t> ranks{1};
    for (const auto& s : t.stages) {
        const auto n = static_cast<std::size_t>(s.fiber_dim);
        std::vector<std::uint64_t> next(ranks.size() + n, 0);
        for (std::size_t d = 0; d < ranks.size(); ++d) {
            for (std::size_t e = 0; e <= n; ++e)
                next[d + e] += ranks[d];
        }
        ranks = std::move(next);
    }
    return ranks;
}

std::string ring_report(const CohomRing& ring, std::span<const std::string> names)
{
    std::vector<std::string> fallback;
    if (names.empty()) {
        fallback = default_names(ring.generator_count());
        names = fallback;
    }
    std::ostringstream out;
    out << "generators:";
    for (std::size_t i = 0; i < ring.generator_count(); ++i)
        out << (i ? ", " : " ") << names[i] << " (degree 2)";
    out << '\n';
    out << "relations:\n";
    for (const auto& r : ring.relations())
        out << "  " << to_string(r, names) << '\n';
    out << "poincare ranks:";
    for (auto r : poincare_ranks(ring.tower()))
        out << ' ' << r;
    out << '\n';
    return out.str();
}

} // namespace gbott
