#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "gbott/cli.hpp"
#include "gbott/tower.hpp"
#include "test_support.hpp"

using namespace gbott;
using gbott::testing::Rng;

namespace {

TowerSpec tower_B()
{
    return parse_tower("stage n=2\nstage n=3\n0\n0\n1\n");
}

IntegerMatrix M(std::initializer_list<std::initializer_list<long>> rows)
{
    IntegerMatrix m;
    for (auto r : rows) {
        std::vector<Integer> row;
        for (long v : r)
            row.emplace_back(v);
        m.push_back(std::move(row));
    }
    return m;
}

std::multiset<std::string> nonzero_coeffs(const TowerSpec& t)
{
    std::multiset<std::string> out;
    for (const auto& s : t.stages) {
        for (const auto& row : s.coeffs) {
            for (const auto& a : row) {
                if (a != 0)
                    out.insert(a.get_str());
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("validate")
{
    const auto b = tower_B();
    CHECK_NOTHROW(validate(b));
    CHECK(b.height() == 2);
    CHECK(b.fiber_dims() == std::vector<int>{2, 3});
    CHECK(b.column(2, 1) == std::vector<Integer>{0, 0, 1});

    CHECK_NOTHROW(validate(product_tower({5})));

    TowerSpec bad = product_tower({2, 3});
    bad.stages[1].coeffs.pop_back();
    try {
        validate(bad);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.stage() == 2);
    }

    TowerSpec zero_dim = product_tower({1, 1});
    zero_dim.stages[0].fiber_dim = 0;
    CHECK_THROWS_AS(validate(zero_dim), ValidationError);

    TowerSpec wide = product_tower({1, 1});
    wide.stages[1].coeffs[0].push_back(4);
    CHECK_THROWS_AS(validate(wide), ValidationError);
}

TEST_CASE("vector matrix transpose")
{
    CHECK(vector_matrix_transpose(product_tower({2, 3})) ==
          M({{1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}}));
    CHECK(vector_matrix_transpose(tower_B()) == M({{1, 0}, {1, 0}, {0, 1}, {0, 1}, {1, 1}}));
    CHECK(vector_matrix_transpose(hirzebruch_tower(3)) == M({{1, 0}, {3, 1}}));
}

TEST_CASE("reduced characteristic matrix")
{
    CHECK(reduced_characteristic_matrix(product_tower({1})) == M({{-1}}));
    CHECK(reduced_characteristic_matrix(hirzebruch_tower(3)) == M({{-1, 0}, {-3, -1}}));
    CHECK(reduced_characteristic_matrix(tower_B()) ==
          M({{-1, 0}, {-1, 0}, {0, -1}, {0, -1}, {-1, -1}}));
}

TEST_CASE("permute: swapping the last two stages when they are independent")
{
    // stage 2 carries a, stage 3 carries b with a zero column for stage 2
    TowerSpec t = product_tower({1, 2, 3});
    t.stages[1].coeffs = {{1}, {2}};
    t.stages[2].coeffs = {{3, 0}, {4, 0}, {5, 0}};

    const auto swapped = permute(t, Permutation::transposition(3, 2, 3));
    CHECK(swapped.fiber_dims() == std::vector<int>{1, 3, 2});
    CHECK(vector_matrix_transpose(swapped) ==
          M({{1, 0, 0}, {3, 1, 0}, {4, 1, 0}, {5, 1, 0}, {1, 0, 1}, {2, 0, 1}}));

    t.stages[2].coeffs[1][1] = 7;
    CHECK_FALSE(is_admissible(t, Permutation::transposition(3, 2, 3)));
    CHECK_THROWS_AS(permute(t, Permutation::transposition(3, 2, 3)), InadmissiblePermutation);
}

TEST_CASE("permute: identity and products")
{
    const auto b = tower_B();
    CHECK(permute(b, Permutation::identity(2)) == b);

    const auto swapped = permute(product_tower({2, 3}), Permutation::transposition(2, 1, 2));
    CHECK(swapped == product_tower({3, 2}));

    CHECK_THROWS_AS(permute(b, Permutation::transposition(2, 1, 2)), InadmissiblePermutation);
    CHECK_THROWS_AS(permute(b, Permutation::identity(3)), InadmissiblePermutation);
    CHECK_THROWS_AS(Permutation({1, 1}), std::invalid_argument);
}

TEST_CASE("permutation algebra")
{
    const Permutation s({2, 3, 1});
    CHECK(s.inverse().compose(s).is_identity());
    CHECK(s.compose(s.inverse()).is_identity());
    CHECK(to_string(s) == "(2,3,1)");
}

TEST_CASE("property: admissible permutations invert and preserve multisets")
{
    Rng rng(0x70e1);
    int admissible = 0;
    for (int trial = 0; trial < 400; ++trial) {
        // sparse coefficients so that many permutations are admissible
        auto t = gbott::testing::random_tower(rng, 4, 3, 2);
        for (auto& s : t.stages) {
            for (auto& row : s.coeffs) {
                for (auto& a : row) {
                    if (gbott::testing::uniform(rng, 0, 2) != 0)
                        a = 0;
                }
            }
        }
        std::vector<std::size_t> images(t.height());
        std::iota(images.begin(), images.end(), 1);
        std::shuffle(images.begin(), images.end(), rng);
        const Permutation s(images);
        if (!is_admissible(t, s))
            continue;
        ++admissible;
        const auto u = permute(t, s);
        CHECK(permute(u, s.inverse()) == t);

        auto d1 = t.fiber_dims();
        auto d2 = u.fiber_dims();
        std::sort(d1.begin(), d1.end());
        std::sort(d2.begin(), d2.end());
        CHECK(d1 == d2);
        CHECK(nonzero_coeffs(t) == nonzero_coeffs(u));
        for (std::size_t i = 1; i <= t.height(); ++i)
            CHECK(u.fiber_dim(s(i)) == t.fiber_dim(i));
    }
    CHECK(admissible > 50);
}

TEST_CASE("property: vector_matrix_transpose is injective")
{
    EnumerationConfig config;
    config.height = 3;
    config.dims = {1, 2};
    config.coeff_bound = 1;
    std::set<std::string> seen;
    std::uint64_t count = 0;
    for_each_tower(config, [&](std::uint64_t, const TowerSpec& t) {
        // the block structure (row counts) is part of the matrix
        const auto m = vector_matrix_transpose(t);
        seen.insert(to_string(m));
        ++count;
    });
    CHECK(seen.size() == count);
}

TEST_CASE("parse_tower")
{
    CHECK(tower_B().stages[1].coeffs.size() == 3);
    const auto cp1 = parse_tower("stage n=1");
    CHECK(cp1 == product_tower({1}));

    const auto commented = parse_tower("# B'\n\nstage n=2   # base\nstage n=3\n0\n  0 \n\n2 # twist\n");
    CHECK(commented.column(2, 1) == std::vector<Integer>{0, 0, 2});

    const auto big = parse_tower("stage n=1\nstage n=1\n123456789012345678901234567890\n");
    CHECK(big.stages[1].coeffs[0][0] == Integer("123456789012345678901234567890"));
}

TEST_CASE("parse_tower errors carry line numbers")
{
    auto line_of = [](std::string_view text) -> std::size_t {
        try {
            parse_tower(text);
        } catch (const TowerParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("stage n=2\nstage n=3\n0\n0 1\n1\n") == 4);
    CHECK(line_of("stage n=2\nstage n=3\n0\n0\n") == 5);
    CHECK(line_of("stage n=2\nstage n=3\n0\nstage n=1\n") == 4);
    CHECK(line_of("stage n=2\nstage n=3\n0\n0\n1\n1\n") == 6);
    CHECK(line_of("stage n=0\n") == 1);
    CHECK(line_of("stage m=2\n") == 1);
    CHECK(line_of("1\nstage n=1\n") == 1);
    CHECK(line_of("stage n=1\nstage n=1\nx\n") == 3);
    CHECK(line_of("# nothing\n") == 2);
}

TEST_CASE("property: serialize then parse is the identity")
{
    Rng rng(0x70e2);
    for (int trial = 0; trial < 200; ++trial) {
        const auto t = gbott::testing::random_tower(rng, 5, 4, 9);
        CHECK(parse_tower(serialize_tower(t)) == t);
    }
    CHECK(serialize_tower(parse_tower("stage n=2\nstage n=3\n0\n0\n2\n")) ==
          "stage n=2\nstage n=3\n0\n0\n2\n");
}
