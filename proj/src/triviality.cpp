#include "gbott/triviality.hpp"

#include <algorithm>
#include <sstream>

namespace gbott {

namespace {

Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer int_pow(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer content(const std::vector<Integer>& v)
{
    Integer g = 0;
    for (const auto& a : v)
        g = gcd(g, a);
    return g;
}

} // namespace

// --- degree-2 classes -------------------------------------------------------

bool Degree2Class::is_primitive() const
{
    return content(coeffs) == 1;
}

std::size_t Degree2Class::top_support() const
{
    for (std::size_t i = coeffs.size(); i > 0; --i) {
        if (coeffs[i - 1] != 0)
            return i;
    }
    return 0;
}

Degree2Class degree2_class(const Polynomial& linear)
{
    Degree2Class out{std::vector<Integer>(linear.generator_count(), 0)};
    for (const auto& [m, c] : linear.terms()) {
        if (m.degree() != 1 || c.get_den() != 1)
            throw std::invalid_argument("not an integral degree-2 class: " + to_string(linear));
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m[j] == 1)
                out.coeffs[j] = c.get_num();
        }
    }
    return out;
}

bool parallel(const Degree2Class& a, const Degree2Class& b)
{
    if (a.size() != b.size())
        return false;
    // all 2x2 minors vanish
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (a.coeffs[i] * b.coeffs[j] != a.coeffs[j] * b.coeffs[i])
                return false;
        }
    }
    return true;
}

// --- Q-triviality -----------------------------------------------------------

std::optional<std::size_t> q_violation_at(const CohomRing& ring, std::size_t i)
{
    const auto& ch = ring.chern(i);
    const auto n1 = static_cast<unsigned long>(ring.fiber_dim(i)) + 1;
    const Polynomial& c1 = ch.c(1);
    Polynomial c1_power = ring.one();
    for (unsigned long k = 1; k <= n1; ++k) {
        c1_power = c1_power * c1;
        const Polynomial lhs = Rational(int_pow(Integer(n1), k)) * ch.c(k);
        const Polynomial rhs = Rational(binomial(n1, k)) * c1_power;
        if (!ring.normal_form(lhs - rhs).is_zero())
            return k;
    }
    return std::nullopt;
}

QTrivialityResult is_q_trivial(const CohomRing& ring)
{
    QTrivialityResult result;
    for (std::size_t i = 1; i <= ring.generator_count(); ++i) {
        if (auto k = q_violation_at(ring, i)) {
            result.trivial = false;
            result.first_violation = std::make_pair(i, *k);
            break;
        }
    }
    return result;
}

QTrivialityResult is_q_trivial(const TowerSpec& t)
{
    return is_q_trivial(build_ring(t));
}

bool is_total_chern_trivial(const CohomRing& ring)
{
    for (std::size_t i = 1; i <= ring.generator_count(); ++i) {
        const auto& ch = ring.chern(i);
        for (std::size_t k = 1; k < ch.classes.size(); ++k) {
            if (!ring.normal_form(ch.classes[k]).is_zero())
                return false;
        }
    }
    return true;
}

bool is_total_chern_trivial(const TowerSpec& t)
{
    return is_total_chern_trivial(build_ring(t));
}

// --- generator candidates and Z-triviality ----------------------------------

Degree2Class line_vector(const CohomRing& ring, std::size_t i)
{
    const std::size_t h = ring.generator_count();
    Polynomial v = Rational(ring.fiber_dim(i) + 1) * ring.generator(i) + ring.chern(i).c(1);
    auto cls = degree2_class(v);
    cls.coeffs.resize(h, 0);
    return cls;
}

std::vector<GeneratorCandidate> generator_candidates(const CohomRing& ring)
{
    if (!is_q_trivial(ring))
        throw PreconditionError("generator candidates need a Q-trivial tower");

    std::vector<GeneratorCandidate> out;
    for (std::size_t i = 1; i <= ring.generator_count(); ++i) {
        Degree2Class v = line_vector(ring, i);
        // the x_i entry is n_i + 1 > 0, so g > 0 and the sign convention holds
        const Integer g = content(v.coeffs);
        for (auto& a : v.coeffs)
            a /= g;
        GeneratorCandidate cand{i, Integer(ring.fiber_dim(i) + 1) / g, std::move(v)};

        const auto n1 = static_cast<std::uint32_t>(ring.fiber_dim(i) + 1);
        if (!ring.normal_form(pow(cand.vector.to_polynomial(), n1)).is_zero())
            throw std::logic_error("candidate z_" + std::to_string(i) +
                                   " does not satisfy z^(n+1) = 0 in a Q-trivial ring");
        out.push_back(std::move(cand));
    }
    return out;
}

std::vector<GeneratorCandidate> generator_candidates(const TowerSpec& t)
{
    return generator_candidates(build_ring(t));
}

bool is_z_trivial(const CohomRing& ring)
{
    if (!is_q_trivial(ring))
        return false;
    const auto cands = generator_candidates(ring);
    return std::all_of(cands.begin(), cands.end(),
                       [](const GeneratorCandidate& c) { return c.scale == 1; });
}

bool is_z_trivial(const TowerSpec& t)
{
    return is_z_trivial(build_ring(t));
}

bool bott_q_trivial(const TowerSpec& t)
{
    validate(t);
    for (std::size_t i = 1; i <= t.height(); ++i) {
        if (t.fiber_dim(i) != 1)
            throw PreconditionError("stage " + std::to_string(i) + " has fiber dimension " +
                                    std::to_string(t.fiber_dim(i)) + ", not a Bott tower");
    }
    const auto ring = build_ring(t);
    for (std::size_t i = 1; i <= t.height(); ++i) {
        const auto& c1 = ring.chern(i).c(1);
        if (!ring.normal_form(c1 * c1).is_zero())
            return false;
    }
    return true;
}

// --- decomposition ----------------------------------------------------------

std::optional<std::string> check_decomposed_shape(const TowerSpec& t, std::size_t base_height)
{
    for (std::size_t p = 1; p <= t.height(); ++p) {
        const bool in_base = p <= base_height;
        if (in_base != (t.fiber_dim(p) == 1))
            return "stage " + std::to_string(p) + " with fiber dimension " +
                   std::to_string(t.fiber_dim(p)) + " is on the wrong side of the base";
        for (std::size_t k = base_height + 1; k < p; ++k) {
            if (!t.column_is_zero(p, k))
                return "stage " + std::to_string(p) + " has a nonzero column for fiber stage " +
                       std::to_string(k);
        }
    }
    return std::nullopt;
}

Decomposition decompose(const TowerSpec& t)
{
    const auto ring = build_ring(t);
    if (!is_q_trivial(ring))
        throw PreconditionError("decompose needs a Q-trivial tower");

    const std::size_t h = t.height();
    Decomposition d;
    d.permutation = Permutation::identity(h);
    d.reordered = t;

    // Stable bubble sort by (n == 1 first); each step swaps adjacent stages.
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t p = 1; p < h; ++p) {
            if (d.reordered.fiber_dim(p) > 1 && d.reordered.fiber_dim(p + 1) == 1) {
                const auto swap = Permutation::transposition(h, p, p + 1);
                d.reordered = permute(d.reordered, swap);
                d.permutation = swap.compose(d.permutation);
                d.swaps.push_back(swap);
                moved = true;
            }
        }
    }

    for (std::size_t p = 1; p <= h; ++p) {
        if (d.reordered.fiber_dim(p) == 1)
            ++d.base_height;
        else
            d.fiber_dims.push_back(d.reordered.fiber_dim(p));
    }
    if (auto why = check_decomposed_shape(d.reordered, d.base_height))
        throw std::logic_error("decomposition produced an unexpected shape: " + *why);
    return d;
}

// --- reports ----------------------------------------------------------------

TrivialityReport full_report(const TowerSpec& t)
{
    const auto ring = build_ring(t);
    TrivialityReport r;
    r.total_chern_trivial = is_total_chern_trivial(ring);
    r.q_trivial = true;
    for (std::size_t i = 1; i <= ring.generator_count(); ++i) {
        StageDiagnostic diag;
        diag.stage = i;
        diag.violated_k = q_violation_at(ring, i);
        if (diag.violated_k)
            r.q_trivial = false;
        r.per_stage.push_back(std::move(diag));
    }
    if (r.q_trivial) {
        auto cands = generator_candidates(ring);
        r.z_trivial = std::all_of(cands.begin(), cands.end(),
                                  [](const GeneratorCandidate& c) { return c.scale == 1; });
        for (auto& c : cands)
            r.per_stage[c.stage - 1].candidate = std::move(c);
        r.decomposition = decompose(t);
    }
    if ((r.z_trivial || r.total_chern_trivial) && !r.q_trivial)
        throw std::logic_error("inconsistent triviality flags");
    return r;
}

namespace {

std::string vector_text(const Degree2Class& v)
{
    std::ostringstream out;
    out << '(';
    for (std::size_t j = 0; j < v.size(); ++j)
        out << (j ? "," : "") << v.coeffs[j].get_str();
    out << ')';
    return out.str();
}

nlohmann::json vector_json(const Degree2Class& v)
{
    auto arr = nlohmann::json::array();
    for (const auto& a : v.coeffs)
        arr.push_back(a.get_str());
    return arr;
}

} // namespace

std::string to_text(const Decomposition& d)
{
    std::ostringstream out;
    out << "permutation: " << to_string(d.permutation) << '\n';
    out << "base: Bott tower of height " << d.base_height << '\n';
    out << "fiber:";
    if (d.fiber_dims.empty())
        out << " (none)";
    for (auto n : d.fiber_dims)
        out << " CP^" << n;
    out << '\n';
    out << "reordered A^T: " << to_string(vector_matrix_transpose(d.reordered)) << '\n';
    return out.str();
}

nlohmann::json to_json(const Decomposition& d)
{
    nlohmann::json j;
    j["permutation"] = d.permutation.images();
    j["base_height"] = d.base_height;
    j["fiber_dims"] = d.fiber_dims;
    j["reordered"] = serialize_tower(d.reordered);
    return j;
}

std::string to_text(const TrivialityReport& r)
{
    std::ostringstream out;
    out << "q_trivial=" << (r.q_trivial ? "true" : "false") << '\n';
    out << "z_trivial=" << (r.z_trivial ? "true" : "false") << '\n';
    out << "total_chern_trivial=" << (r.total_chern_trivial ? "true" : "false") << '\n';
    for (const auto& s : r.per_stage) {
        out << "stage " << s.stage << ": ";
        if (s.violated_k)
            out << "violates k=" << *s.violated_k;
        else if (s.candidate)
            out << "z=" << vector_text(s.candidate->vector) << " r=" << s.candidate->scale.get_str();
        else
            out << "ok";
        out << '\n';
    }
    if (r.decomposition)
        out << to_text(*r.decomposition);
    return out.str();
}

nlohmann::json to_json(const TrivialityReport& r)
{
    nlohmann::json j;
    j["q_trivial"] = r.q_trivial;
    j["z_trivial"] = r.z_trivial;
    j["total_chern_trivial"] = r.total_chern_trivial;
    auto stages = nlohmann::json::array();
    for (const auto& s : r.per_stage) {
        nlohmann::json js;
        js["stage"] = s.stage;
        js["violated_k"] = s.violated_k ? nlohmann::json(*s.violated_k) : nlohmann::json(nullptr);
        if (s.candidate) {
            js["candidate"] = {{"vector", vector_json(s.candidate->vector)},
                               {"r", s.candidate->scale.get_str()}};
        }
        stages.push_back(std::move(js));
    }
    j["stages"] = std::move(stages);
    if (r.decomposition)
        j["decomposition"] = to_json(*r.decomposition);
    return j;
}

} // namespace gbott
