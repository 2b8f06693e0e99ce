#include "gbott/tower.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gbott {

std::vector<int> TowerSpec::fiber_dims() const
{
    std::vector<int> dims;
    dims.reserve(stages.size());
    for (const auto& s : stages)
        dims.push_back(s.fiber_dim);
    return dims;
}

std::vector<Integer> TowerSpec::column(std::size_t i, std::size_t k) const
{
    const auto& s = stage(i);
    if (k == 0 || k >= i)
        throw std::out_of_range("column index must satisfy 1 <= k < i");
    std::vector<Integer> col;
    col.reserve(s.coeffs.size());
    for (const auto& row : s.coeffs)
        col.push_back(row.at(k - 1));
    return col;
}

bool TowerSpec::column_is_zero(std::size_t i, std::size_t k) const
{
    const auto& s = stage(i);
    return std::all_of(s.coeffs.begin(), s.coeffs.end(),
                       [k](const auto& row) { return row.at(k - 1) == 0; });
}

bool TowerSpec::all_coefficients_zero() const
{
    for (const auto& s : stages) {
        for (const auto& row : s.coeffs) {
            for (const auto& a : row) {
                if (a != 0)
                    return false;
            }
        }
    }
    return true;
}

std::size_t TowerSpec::total_fiber_dim() const
{
    std::size_t total = 0;
    for (const auto& s : stages)
        total += static_cast<std::size_t>(s.fiber_dim);
    return total;
}

TowerSpec product_tower(const std::vector<int>& dims)
{
    TowerSpec t;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        StageSpec s;
        s.fiber_dim = dims[i];
        s.coeffs.assign(static_cast<std::size_t>(std::max(dims[i], 0)), std::vector<Integer>(i, 0));
        t.stages.push_back(std::move(s));
    }
    return t;
}

TowerSpec hirzebruch_tower(const Integer& a)
{
    TowerSpec t = product_tower({1, 1});
    t.stages[1].coeffs[0][0] = a;
    return t;
}

void validate(const TowerSpec& t)
{
    for (std::size_t i = 1; i <= t.height(); ++i) {
        const auto& s = t.stage(i);
        const std::string where = "stage " + std::to_string(i) + ": ";
        if (s.fiber_dim < 1)
            throw ValidationError(where + "fiber dimension must be positive, got " +
                                      std::to_string(s.fiber_dim),
                                  i);
        if (s.coeffs.size() != static_cast<std::size_t>(s.fiber_dim))
            throw ValidationError(where + "expected " + std::to_string(s.fiber_dim) +
                                      " coefficient rows, got " + std::to_string(s.coeffs.size()),
                                  i);
        for (const auto& row : s.coeffs) {
            if (row.size() != i - 1)
                throw ValidationError(where + "coefficient rows must have " +
                                          std::to_string(i - 1) + " entries, got " +
                                          std::to_string(row.size()),
                                      i);
        }
    }
}

IntegerMatrix vector_matrix_transpose(const TowerSpec& t)
{
    validate(t);
    const std::size_t h = t.height();
    IntegerMatrix m;
    m.reserve(t.total_fiber_dim());
    for (std::size_t i = 1; i <= h; ++i) {
        for (const auto& row : t.stage(i).coeffs) {
            std::vector<Integer> out(h, 0);
            std::copy(row.begin(), row.end(), out.begin());
            out[i - 1] = 1;
            m.push_back(std::move(out));
        }
    }
    return m;
}

IntegerMatrix reduced_characteristic_matrix(const TowerSpec& t)
{
    auto m = vector_matrix_transpose(t);
    for (auto& row : m) {
        for (auto& e : row)
            e = -e;
    }
    return m;
}

// --- permutations ---------------------------------------------------------

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images))
{
    std::vector<bool> seen(images_.size(), false);
    for (auto v : images_) {
        if (v < 1 || v > images_.size() || seen[v - 1])
            throw std::invalid_argument("not a permutation of 1.." + std::to_string(images_.size()));
        seen[v - 1] = true;
    }
}

Permutation Permutation::identity(std::size_t h)
{
    std::vector<std::size_t> images(h);
    for (std::size_t i = 0; i < h; ++i)
        images[i] = i + 1;
    return Permutation(std::move(images));
}

Permutation Permutation::transposition(std::size_t h, std::size_t a, std::size_t b)
{
    auto images = identity(h).images_;
    std::swap(images.at(a - 1), images.at(b - 1));
    return Permutation(std::move(images));
}

bool Permutation::is_identity() const
{
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != i + 1)
            return false;
    }
    return true;
}

Permutation Permutation::inverse() const
{
    std::vector<std::size_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        inv[images_[i] - 1] = i + 1;
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const
{
    if (other.size() != size())
        throw std::invalid_argument("permutation sizes differ");
    std::vector<std::size_t> out(size());
    for (std::size_t i = 1; i <= size(); ++i)
        out[i - 1] = (*this)(other(i));
    return Permutation(std::move(out));
}

bool is_admissible(const TowerSpec& t, const Permutation& s)
{
    if (s.size() != t.height())
        return false;
    for (std::size_t i = 1; i <= t.height(); ++i) {
        for (std::size_t k = 1; k < i; ++k) {
            if (!t.column_is_zero(i, k) && s(k) >= s(i))
                return false;
        }
    }
    return true;
}

TowerSpec permute(const TowerSpec& t, const Permutation& s)
{
    validate(t);
    if (s.size() != t.height())
        throw InadmissiblePermutation("permutation size " + std::to_string(s.size()) +
                                      " does not match tower height " +
                                      std::to_string(t.height()));
    for (std::size_t i = 1; i <= t.height(); ++i) {
        for (std::size_t k = 1; k < i; ++k) {
            if (!t.column_is_zero(i, k) && s(k) >= s(i))
                throw InadmissiblePermutation(
                    "stage " + std::to_string(i) + " depends on stage " + std::to_string(k) +
                    ", which the permutation moves after it");
        }
    }

    const auto inv = s.inverse();
    TowerSpec out;
    out.stages.resize(t.height());
    for (std::size_t p = 1; p <= t.height(); ++p) {
        const std::size_t i = inv(p);
        const auto& src = t.stage(i);
        StageSpec dst;
        dst.fiber_dim = src.fiber_dim;
        dst.coeffs.assign(src.coeffs.size(), std::vector<Integer>(p - 1, 0));
        for (std::size_t q = 1; q < p; ++q) {
            const std::size_t k = inv(q);
            if (k >= i)
                continue;
            for (std::size_t j = 0; j < src.coeffs.size(); ++j)
                dst.coeffs[j][q - 1] = src.coeffs[j][k - 1];
        }
        out.stages[p - 1] = std::move(dst);
    }
    return out;
}

// --- text format ----------------------------------------------------------

namespace {

std::string_view trim(std::string_view s)
{
    const auto* ws = " \t\r\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

bool parse_int(std::string_view tok, Integer& out)
{
    std::string_view digits = tok;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
        digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return c >= '0' && c <= '9'; }))
        return false;
    std::string s(tok);
    if (s.front() == '+')
        s.erase(0, 1);
    return out.set_str(s, 10) == 0;
}

} // namespace

TowerSpec parse_tower(std::string_view text)
{
    TowerSpec t;
    std::size_t rows_needed = 0;
    std::size_t line_no = 0;
    std::size_t header_line = 0;

    auto incomplete = [&](std::size_t at) {
        const auto i = t.height();
        return TowerParseError("stage " + std::to_string(i) + " (header on line " +
                                   std::to_string(header_line) + ") expects " +
                                   std::to_string(t.stages.back().fiber_dim) +
                                   " coefficient rows, found " +
                                   std::to_string(t.stages.back().coeffs.size()),
                               at);
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (nl == std::string_view::npos && raw.empty())
            break;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        const auto line = trim(raw);
        if (line.empty())
            continue;

        if (line.starts_with("stage")) {
            if (rows_needed > 0)
                throw incomplete(line_no);
            auto rest = trim(line.substr(5));
            if (!rest.starts_with("n="))
                throw TowerParseError("expected 'stage n=<int>'", line_no);
            Integer n;
            if (!parse_int(trim(rest.substr(2)), n))
                throw TowerParseError("fiber dimension is not an integer", line_no);
            if (n < 1)
                throw TowerParseError("fiber dimension must be positive", line_no);
            if (!n.fits_sint_p() || n > 4096)
                throw TowerParseError("fiber dimension too large", line_no);
            StageSpec s;
            s.fiber_dim = static_cast<int>(n.get_si());
            t.stages.push_back(std::move(s));
            header_line = line_no;
            // stage 1 has no coefficient columns and hence no rows
            rows_needed = t.height() == 1 ? 0 : static_cast<std::size_t>(t.stages.back().fiber_dim);
            if (t.height() == 1)
                t.stages.back().coeffs.assign(static_cast<std::size_t>(t.stages.back().fiber_dim), {});
            continue;
        }

        if (t.stages.empty())
            throw TowerParseError("coefficient row before the first stage header", line_no);
        if (rows_needed == 0)
            throw TowerParseError("stage " + std::to_string(t.height()) + " has more than " +
                                      std::to_string(t.stages.back().fiber_dim) +
                                      " coefficient rows",
                                  line_no);

        std::vector<Integer> row;
        std::istringstream tokens{std::string(line)};
        std::string tok;
        while (tokens >> tok) {
            Integer v;
            if (!parse_int(tok, v))
                throw TowerParseError("'" + tok + "' is not an integer", line_no);
            row.push_back(std::move(v));
        }
        if (row.size() != t.height() - 1)
            throw TowerParseError("stage " + std::to_string(t.height()) + " rows need " +
                                      std::to_string(t.height() - 1) + " integers, got " +
                                      std::to_string(row.size()),
                                  line_no);
        t.stages.back().coeffs.push_back(std::move(row));
        --rows_needed;
    }

    if (rows_needed > 0)
        throw incomplete(line_no);
    if (t.stages.empty())
        throw TowerParseError("no stages", line_no);
    validate(t);
    return t;
}

std::string serialize_tower(const TowerSpec& t)
{
    validate(t);
    std::ostringstream out;
    for (const auto& s : t.stages) {
        out << "stage n=" << s.fiber_dim << '\n';
        for (const auto& row : s.coeffs) {
            if (row.empty())
                continue;
            for (std::size_t k = 0; k < row.size(); ++k)
                out << (k ? " " : "") << row[k].get_str();
            out << '\n';
        }
    }
    return out.str();
}

TowerSpec load_tower(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw TowerParseError("cannot open '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tower(buf.str());
}

std::string to_string(const IntegerMatrix& m)
{
    std::ostringstream out;
    out << '[';
    for (std::size_t r = 0; r < m.size(); ++r) {
        out << (r ? "," : "") << '[';
        for (std::size_t c = 0; c < m[r].size(); ++c)
            out << (c ? "," : "") << m[r][c].get_str();
        out << ']';
    }
    out << ']';
    return out.str();
}

std::string to_string(const Permutation& p)
{
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < p.size(); ++i)
        out << (i ? "," : "") << p.images()[i];
    out << ')';
    return out.str();
}

} // namespace gbott
