#include "gbott/exactpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace gbott {

Monomial Monomial::unit(std::size_t generator_count, std::size_t index, std::uint32_t power)
{
    Monomial m(generator_count);
    m.exps_.at(index) = power;
    return m;
}

std::uint64_t Monomial::degree() const noexcept
{
    return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

Monomial Monomial::operator*(const Monomial& other) const
{
    if (exps_.size() != other.exps_.size())
        throw DimensionError("monomial generator counts differ");
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i)
        r.exps_[i] += other.exps_[i];
    return r;
}

bool TermOrder::operator()(const Monomial& a, const Monomial& b) const
{
    const auto da = a.degree();
    const auto db = b.degree();
    if (da != db)
        return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i])
            return a[i] > b[i];
    }
    return false;
}

// --- Polynomial -----------------------------------------------------------

Polynomial Polynomial::constant(std::size_t generator_count, const Rational& c)
{
    Polynomial p(generator_count);
    p.add_term(Monomial(generator_count), c);
    return p;
}

Polynomial Polynomial::generator(std::size_t generator_count, std::size_t index, const Rational& c)
{
    if (index >= generator_count)
        throw DimensionError("generator index out of range");
    Polynomial p(generator_count);
    p.add_term(Monomial::unit(generator_count, index), c);
    return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c)
{
    Polynomial p(m.size());
    p.add_term(m, c);
    return p;
}

Polynomial Polynomial::linear(std::span<const Integer> coeffs)
{
    Polynomial p(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        p.add_term(Monomial::unit(coeffs.size(), j), Rational(coeffs[j]));
    return p;
}

Rational Polynomial::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<std::uint64_t> Polynomial::degree() const
{
    if (terms_.empty())
        return std::nullopt;
    // TermOrder is graded, so the leading term has the top degree.
    return terms_.begin()->first.degree();
}

bool Polynomial::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    const auto d = terms_.begin()->first.degree();
    return terms_.rbegin()->first.degree() == d;
}

std::uint32_t Polynomial::max_exponent(std::size_t index) const
{
    std::uint32_t best = 0;
    for (const auto& [m, c] : terms_)
        best = std::max(best, m[index]);
    return best;
}

Polynomial Polynomial::homogeneous_part(std::uint64_t d) const
{
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) {
        if (m.degree() == d)
            r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
}

void Polynomial::add_term(const Monomial& m, const Rational& c)
{
    if (m.size() != n_)
        throw DimensionError("monomial has " + std::to_string(m.size()) +
                             " exponents, polynomial has " + std::to_string(n_) + " generators");
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

void Polynomial::check_same(const Polynomial& q) const
{
    if (n_ != q.n_)
        throw DimensionError("generator counts differ: " + std::to_string(n_) + " vs " +
                             std::to_string(q.n_));
}

Polynomial& Polynomial::operator+=(const Polynomial& q)
{
    check_same(q);
    for (const auto& [m, c] : q.terms_)
        add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q)
{
    check_same(q);
    for (const auto& [m, c] : q.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_)
        coeff *= c;
    return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q)
{
    p.check_same(q);
    Polynomial r(p.n_);
    for (const auto& [mp, cp] : p.terms_) {
        for (const auto& [mq, cq] : q.terms_)
            r.add_term(mp * mq, cp * cq);
    }
    return r;
}

bool operator==(const Polynomial& p, const Polynomial& q)
{
    return p.n_ == q.n_ && p.terms_ == q.terms_;
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial pow(const Polynomial& p, std::uint32_t k)
{
    Polynomial result = Polynomial::constant(p.generator_count(), 1);
    Polynomial base = p;
    while (k > 0) {
        if (k & 1u)
            result = result * base;
        k >>= 1;
        if (k > 0)
            base = base * base;
    }
    return result;
}

bool is_integral(const Polynomial& p)
{
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const auto& t) { return t.second.get_den() == 1; });
}

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images)
{
    if (images.size() != p.generator_count())
        throw DimensionError("substitution needs one image per generator");
    const std::size_t target = images.empty() ? 0 : images.front().generator_count();
    for (const auto& img : images) {
        if (img.generator_count() != target)
            throw DimensionError("substitution images disagree on generator count");
    }

    // powers[j][e] = images[j]^e, grown on demand
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power_of = [&](std::size_t j, std::uint32_t e) -> const Polynomial& {
        auto& table = powers[j];
        if (table.empty())
            table.push_back(Polynomial::constant(target, 1));
        while (table.size() <= e)
            table.push_back(table.back() * images[j]);
        return table[e];
    };

    Polynomial result(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial term = Polynomial::constant(target, c);
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m[j] != 0)
                term = term * power_of(j, m[j]);
        }
        result += term;
    }
    return result;
}

// --- text form ------------------------------------------------------------

std::vector<std::string> default_names(std::size_t generator_count)
{
    std::vector<std::string> names;
    names.reserve(generator_count);
    for (std::size_t i = 1; i <= generator_count; ++i)
        names.push_back("x" + std::to_string(i));
    return names;
}

std::string to_string(const Rational& c)
{
    return c.get_str();
}

std::string to_string(const Polynomial& p, std::span<const std::string> names)
{
    std::vector<std::string> fallback;
    if (names.empty()) {
        fallback = default_names(p.generator_count());
        names = fallback;
    }
    if (names.size() != p.generator_count())
        throw DimensionError("need one name per generator");
    if (p.is_zero())
        return "0";

    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = sgn(c) < 0;
        if (first)
            out << (negative ? "-" : "");
        else
            out << (negative ? " - " : " + ");
        first = false;

        const Rational mag = abs(c);
        const bool constant = m.degree() == 0;
        bool wrote = false;
        if (constant || mag != 1) {
            out << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            if (wrote)
                out << '*';
            out << names[i];
            if (m[i] != 1)
                out << '^' << m[i];
            wrote = true;
        }
    }
    return out.str();
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, std::span<const std::string> names)
        : text_(text), names_(names) {}

    Polynomial parse()
    {
        Polynomial result(names_.size());
        skip_ws();
        if (at_end())
            fail("empty polynomial");
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
        }
        while (true) {
            skip_ws();
            auto term = parse_term();
            if (negative)
                term = -term;
            result += term;
            skip_ws();
            if (at_end())
                break;
            if (peek() != '+' && peek() != '-')
                fail("expected '+' or '-'");
            negative = peek() == '-';
            ++pos_;
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw PolynomialParseError("polynomial parse error at offset " + std::to_string(pos_) +
                                       ": " + msg,
                                   pos_);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    std::string read_digits()
    {
        const auto start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_)
            fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    Polynomial parse_term()
    {
        Monomial m(names_.size());
        Rational coeff = 1;
        bool have_item = false;
        if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            Integer num(read_digits());
            Integer den = 1;
            skip_ws();
            if (!at_end() && peek() == '/') {
                ++pos_;
                skip_ws();
                den = Integer(read_digits());
                if (den == 0)
                    fail("zero denominator");
            }
            coeff = Rational(num, den);
            coeff.canonicalize();
            have_item = true;
            skip_ws();
            if (at_end() || peek() != '*')
                return Polynomial::monomial(m, coeff);
            ++pos_;
            skip_ws();
        }
        while (true) {
            parse_factor(m);
            have_item = true;
            skip_ws();
            if (at_end() || peek() != '*')
                break;
            ++pos_;
            skip_ws();
        }
        if (!have_item)
            fail("empty term");
        return Polynomial::monomial(m, coeff);
    }

    void parse_factor(Monomial& m)
    {
        const auto start = pos_;
        if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            fail("expected a generator name");
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) {
            pos_ = start;
            fail("unknown generator '" + std::string(name) + "'");
        }
        std::uint32_t e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_ws();
            e = static_cast<std::uint32_t>(std::stoul(read_digits()));
        }
        m[static_cast<std::size_t>(it - names_.begin())] += e;
    }

    std::string_view text_;
    std::span<const std::string> names_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names)
{
    return PolyParser(text, names).parse();
}

Polynomial parse_polynomial(std::string_view text, std::size_t generator_count)
{
    const auto names = default_names(generator_count);
    return parse_polynomial(text, names);
}

} // namespace gbott
