#include "gbott/isosearch.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "gbott/triviality.hpp"

namespace gbott {

Degree2Map Degree2Map::identity(std::size_t h)
{
    Degree2Map m;
    m.matrix.assign(h, std::vector<Rational>(h, 0));
    for (std::size_t i = 0; i < h; ++i)
        m.matrix[i][i] = 1;
    return m;
}

Degree2Map Degree2Map::from_integers(const std::vector<std::vector<long>>& rows)
{
    Degree2Map m;
    for (const auto& row : rows) {
        if (row.size() != rows.size())
            throw DimensionError("degree-2 map matrix must be square");
        std::vector<Rational> r;
        for (long v : row)
            r.emplace_back(v);
        m.matrix.push_back(std::move(r));
    }
    return m;
}

bool Degree2Map::is_integral() const
{
    for (const auto& row : matrix) {
        for (const auto& v : row) {
            if (v.get_den() != 1)
                return false;
        }
    }
    return true;
}

std::vector<Polynomial> Degree2Map::images() const
{
    const std::size_t h = size();
    std::vector<Polynomial> out;
    out.reserve(h);
    for (std::size_t j = 0; j < h; ++j) {
        Polynomial img(h);
        for (std::size_t i = 0; i < h; ++i)
            img.add_term(Monomial::unit(h, i), matrix[i][j]);
        out.push_back(std::move(img));
    }
    return out;
}

Degree2Map Degree2Map::then(const Degree2Map& next) const
{
    const std::size_t h = size();
    if (next.size() != h)
        throw DimensionError("cannot compose maps of different sizes");
    Degree2Map out;
    out.matrix.assign(h, std::vector<Rational>(h, 0));
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < h; ++j) {
            for (std::size_t k = 0; k < h; ++k)
                out.matrix[i][j] += next.matrix[i][k] * matrix[k][j];
        }
    }
    return out;
}

Rational determinant(const RationalMatrix& input)
{
    RationalMatrix m = input;
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(m[pivot][col]) == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(m[r][col]) == 0)
                continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

std::vector<Polynomial> hom_residues(const Degree2Map& map, const CohomRing& source,
                                     const CohomRing& target)
{
    if (map.size() != source.generator_count() || map.size() != target.generator_count())
        throw DimensionError("map size must match both generator counts");
    const auto imgs = map.images();
    std::vector<Polynomial> residues;
    for (const auto& r : source.relations())
        residues.push_back(target.normal_form(substitute(r, imgs)));
    return residues;
}

bool check_hom(const Degree2Map& map, const CohomRing& source, const CohomRing& target,
               bool over_integers)
{
    if (over_integers && !map.is_integral())
        throw PreconditionError("a map over Z needs an integer matrix");
    const auto residues = hom_residues(map, source, target);
    return std::all_of(residues.begin(), residues.end(),
                       [](const Polynomial& p) { return p.is_zero(); });
}

bool is_iso(const Degree2Map& map, const CohomRing& source, const CohomRing& target,
            bool over_integers)
{
    if (poincare_ranks(source.tower()) != poincare_ranks(target.tower()))
        return false;
    if (!check_hom(map, source, target, over_integers))
        return false;
    const Rational det = determinant(map.matrix);
    if (over_integers)
        return abs(det) == 1;
    return sgn(det) != 0;
}

// --- search -----------------------------------------------------------------

namespace {

using IntVector = std::vector<Integer>;

// Values of [-bound, bound] ordered by distance from `centre`, + before -.
std::vector<long> value_order(long centre, long bound)
{
    std::vector<long> out;
    for (long off = 0; out.size() < static_cast<std::size_t>(2 * bound + 1); ++off) {
        for (long v : {centre + off, centre - off}) {
            if (v >= -bound && v <= bound && std::find(out.begin(), out.end(), v) == out.end())
                out.push_back(v);
        }
    }
    return out;
}

std::vector<IntVector> column_candidates(std::size_t h, std::size_t j, long bound)
{
    std::vector<std::vector<long>> orders;
    for (std::size_t i = 0; i < h; ++i)
        orders.push_back(value_order(i == j ? 1 : 0, bound));

    std::vector<IntVector> out;
    std::vector<std::size_t> idx(h, 0);
    while (true) {
        IntVector v(h);
        bool zero = true;
        for (std::size_t i = 0; i < h; ++i) {
            v[i] = orders[i][idx[i]];
            zero = zero && v[i] == 0;
        }
        if (!zero)
            out.push_back(std::move(v));
        // row 1 is the most significant digit
        std::size_t i = h;
        while (i > 0) {
            --i;
            if (++idx[i] < orders[i].size())
                break;
            idx[i] = 0;
            if (i == 0)
                return out;
        }
        if (h == 0)
            return out;
    }
}

// gcd of the maximal minors of the h x k matrix whose columns are cols.
Integer minor_gcd(const std::vector<IntVector>& cols)
{
    const std::size_t k = cols.size();
    const std::size_t h = cols.front().size();
    Integer g = 0;
    std::vector<bool> pick(h, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
        RationalMatrix sub;
        for (std::size_t r = 0; r < h; ++r) {
            if (!pick[r])
                continue;
            std::vector<Rational> row;
            for (const auto& c : cols)
                row.emplace_back(c[r]);
            sub.push_back(std::move(row));
        }
        const Rational d = determinant(sub);
        g = gcd(g, Integer(d.get_num()));
        if (g == 1)
            return g;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return g;
}

class IsoSearch {
public:
    IsoSearch(const CohomRing& source, const CohomRing& target, bool over_integers, long bound)
        : source_(source), target_(target), over_z_(over_integers), h_(source.generator_count())
    {
        for (std::size_t j = 0; j < h_; ++j)
            candidates_.push_back(column_candidates(h_, j, bound));
    }

    std::size_t first_level_size() const { return candidates_.front().size(); }

    // Search the subtree whose first column is candidates_[0][first].  Gives
    // up as soon as `best` drops below `first`.
    std::optional<std::vector<IntVector>> run(std::size_t first,
                                              const std::atomic<std::size_t>& best) const
    {
        std::vector<IntVector> cols{candidates_[0][first]};
        if (!accept(cols))
            return std::nullopt;
        if (dfs(cols, first, best))
            return cols;
        return std::nullopt;
    }

private:
    bool accept(const std::vector<IntVector>& cols) const
    {
        const Integer g = minor_gcd(cols);
        if (g == 0 || (over_z_ && g != 1))
            return false;
        // source relation j only involves x_1..x_j
        const std::size_t j = cols.size();
        std::vector<Polynomial> imgs(h_, Polynomial(h_));
        for (std::size_t c = 0; c < j; ++c)
            imgs[c] = Polynomial::linear(cols[c]);
        return target_.normal_form(substitute(source_.relation(j), imgs)).is_zero();
    }

    bool dfs(std::vector<IntVector>& cols, std::size_t first,
             const std::atomic<std::size_t>& best) const
    {
        if (cols.size() == h_)
            return true;
        if (best.load(std::memory_order_relaxed) < first)
            return false;
        for (const auto& cand : candidates_[cols.size()]) {
            cols.push_back(cand);
            if (accept(cols) && dfs(cols, first, best))
                return true;
            cols.pop_back();
        }
        return false;
    }

    const CohomRing& source_;
    const CohomRing& target_;
    bool over_z_;
    std::size_t h_;
    std::vector<std::vector<IntVector>> candidates_;
};

Degree2Map to_map(const std::vector<IntVector>& cols)
{
    const std::size_t h = cols.size();
    Degree2Map m;
    m.matrix.assign(h, std::vector<Rational>(h, 0));
    for (std::size_t j = 0; j < h; ++j) {
        for (std::size_t i = 0; i < h; ++i)
            m.matrix[i][j] = Rational(cols[j][i]);
    }
    return m;
}

} // namespace

std::optional<Degree2Map> search_iso(const CohomRing& source, const CohomRing& target,
                                     bool over_integers, int bound, SearchOptions opts)
{
    if (bound < 1)
        throw PreconditionError("search bound must be at least 1");
    if (source.generator_count() != target.generator_count())
        return std::nullopt;
    if (poincare_ranks(source.tower()) != poincare_ranks(target.tower()))
        return std::nullopt;
    if (source.generator_count() == 0)
        return Degree2Map{};

    const IsoSearch search(source, target, over_integers, bound);
    const std::size_t total = search.first_level_size();
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> best{none};
    std::optional<std::vector<IntVector>> found;

    if (opts.sequential) {
        for (std::size_t i = 0; i < total && !found; ++i)
            found = search.run(i, best);
    } else {
        std::mutex mu;
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= total || i > best.load())
                    return;
                if (auto cols = search.run(i, best)) {
                    std::lock_guard lock(mu);
                    if (i < best.load()) {
                        best.store(i);
                        found = std::move(cols);
                    }
                }
            }
        };
        unsigned n = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
        n = static_cast<unsigned>(std::min<std::size_t>(n, total));
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t)
            pool.emplace_back(worker);
    }

    if (!found)
        return std::nullopt;
    auto map = to_map(*found);
    if (!is_iso(map, source, target, over_integers))
        throw std::logic_error("search produced a map that is not an isomorphism");
    return map;
}

bool z_trivial_oracle(const TowerSpec& t, int bound)
{
    const auto ring = build_ring(t);
    const auto product = build_ring(product_tower(t.fiber_dims()));
    return search_iso(ring, product, true, bound, {.sequential = true}).has_value();
}

std::string witness_text(const Degree2Map& map, const CohomRing& source, const CohomRing& target,
                         std::span<const std::string> source_names,
                         std::span<const std::string> target_names)
{
    const std::size_t h = map.size();
    std::vector<std::string> sn(source_names.begin(), source_names.end());
    std::vector<std::string> tn(target_names.begin(), target_names.end());
    if (sn.empty())
        sn = default_names(h);
    if (tn.empty())
        tn = default_names(h);

    std::ostringstream out;
    out << "witness (row-major; column j is the image of source generator j):\n";
    for (const auto& row : map.matrix) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? " " : "") << to_string(row[j]);
        out << '\n';
    }
    const auto imgs = map.images();
    out << "images:";
    for (std::size_t j = 0; j < h; ++j)
        out << (j ? ", " : " ") << sn[j] << " -> " << to_string(imgs[j], tn);
    out << '\n';
    out << "determinant: " << to_string(determinant(map.matrix)) << '\n';
    out << "residues:\n";
    const auto residues = hom_residues(map, source, target);
    for (std::size_t i = 0; i < residues.size(); ++i)
        out << "  relation " << (i + 1) << ": " << to_string(residues[i], tn) << '\n';
    return out.str();
}

} // namespace gbott
