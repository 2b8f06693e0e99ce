#include <doctest.h>

#include <set>
#include <sstream>

#include <json.hpp>

#include "gbott/cli.hpp"

using namespace gbott;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name)
{
    return std::string(GBOTT_DATA_DIR) + "/" + name;
}

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}

std::size_t count_lines_with(const std::string& text, const std::string& needle)
{
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line))
        n += contains(line, needle);
    return n;
}

} // namespace

TEST_CASE("ring and chern commands")
{
    const auto r = run({"ring", data("B.tower"), "--vars", "x,y"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "  x^3\n  y^4 + x*y^3\n"));

    const auto c = run({"chern", data("B.tower"), "--vars", "x,y"});
    CHECK(c.code == 0);
    CHECK(contains(c.out, "stage 2 (n=3): c0 = 1, c1 = x, c2 = 0, c3 = 0"));

    CHECK(run({"ring", data("B.tower"), "--vars", "x"}).code == 2);
}

TEST_CASE("report command")
{
    const auto b = run({"report", data("B.tower"), "--vars", "x,y"});
    CHECK(b.code == 0);
    CHECK(contains(b.out, "y^4 + x*y^3"));
    CHECK(contains(b.out, "q_trivial=false"));
    CHECK(contains(b.out, "stage 2: violates k=2"));

    const auto p = run({"report", data("cp2_x_cp3.tower")});
    CHECK(p.code == 0);
    CHECK(contains(p.out, "q_trivial=true\nz_trivial=true\ntotal_chern_trivial=true"));

    const auto bad = run({"report", data("malformed.tower")});
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "line 4"));

    CHECK(run({"report", data("does-not-exist.tower")}).code == 2);

    const auto j = run({"report", data("hirzebruch3.tower"), "--json"});
    CHECK(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["q_trivial"] == true);
    CHECK(parsed["z_trivial"] == false);
    CHECK(parsed["stages"][1]["candidate"]["r"] == "2");
    CHECK(parsed["relations"][1] == "x2^2 + 3*x1*x2");
}

TEST_CASE("iso command")
{
    const auto q = run({"iso", data("B.tower"), data("Bprime.tower"), "--coeff", "q", "--bound",
                        "2", "--vars", "x,y", "--target-vars", "X,Y"});
    CHECK(q.code == 0);
    CHECK(contains(q.out, "x -> 2*X, y -> Y"));
    CHECK(count_lines_with(q.out, "relation ") == 2);
    CHECK(count_lines_with(q.out, ": 0") == 2);

    const auto z = run({"iso", data("B.tower"), data("Bprime.tower"), "--coeff", "z", "--bound", "10"});
    CHECK(z.code == 1);
    CHECK(z.out == "none within bound 10\n");

    const auto id = run({"iso", data("B.tower"), data("B.tower"), "--coeff", "z", "--bound", "1",
                         "--sequential"});
    CHECK(id.code == 0);
    CHECK(contains(id.out, "1 0\n0 1\n"));

    CHECK(run({"iso", data("B.tower"), data("malformed.tower")}).code == 2);
    CHECK(run({"iso", data("B.tower"), data("B.tower"), "--coeff", "r"}).code == 2);
}

TEST_CASE("decompose command")
{
    CHECK(run({"decompose", data("B.tower")}).code == 1);
    const auto h = run({"decompose", data("hirzebruch3.tower")});
    CHECK(h.code == 0);
    CHECK(contains(h.out, "permutation: (1,2)"));
}

TEST_CASE("enumerate command")
{
    const auto a = run({"enumerate", "--height", "2", "--dims", "1", "--bound", "1"});
    CHECK(a.code == 0);
    CHECK(count_lines_with(a.out, "n=1,1 ") == 3);
    CHECK(count_lines_with(a.out, "] q=1") == 3);
    CHECK(count_lines_with(a.out, "] q=1 z=1") == 1);
    CHECK(contains(a.out, "n=1,1 AT=[[1,0],[0,1]] q=1 z=1 chern=1"));

    const auto b = run({"enumerate", "--height", "1", "--dims", "3", "--bound", "0"});
    CHECK(contains(b.out, "n=3 AT=[[1],[1],[1]] q=1 z=1 chern=1\n"));
    CHECK(contains(b.out, "summary: towers=1 emitted=1"));

    const auto c = run({"enumerate", "--height", "2", "--dims", "2", "--bound", "1", "--filter", "q"});
    CHECK(contains(c.out, "summary: towers=9 emitted=1"));

    CHECK(run({"enumerate", "--height", "2", "--dims", "0", "--bound", "1"}).code == 2);
    CHECK(run({"enumerate", "--height", "2", "--dims", "1,1", "--bound", "1"}).code == 2);
    CHECK(run({"enumerate", "--height", "2", "--dims", "1", "--bound", "-1"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("property: enumeration is exhaustive, duplicate-free and deterministic")
{
    for (std::size_t h = 1; h <= 3; ++h) {
        for (int bound = 0; bound <= 1; ++bound) {
            EnumerationConfig config;
            config.height = h;
            config.dims = {2, 1};
            config.coeff_bound = bound;

            std::set<std::string> seen;
            std::uint64_t visited = 0;
            for_each_tower(config, [&](std::uint64_t index, const TowerSpec& t) {
                CHECK(index == visited);
                ++visited;
                seen.insert(serialize_tower(t));
            });
            CHECK(visited == enumeration_size(config));
            CHECK(seen.size() == visited);

            // closed form: sum over dim choices of (2C+1)^(sum n_i (i-1))
            std::uint64_t expected = 0;
            std::vector<int> choice(h, 0);
            for (std::uint64_t code = 0; code < (1u << h); ++code) {
                std::uint64_t slots = 0;
                for (std::size_t i = 0; i < h; ++i)
                    slots += static_cast<std::uint64_t>(config.dims[(code >> i) & 1]) * i;
                std::uint64_t n = 1;
                for (std::uint64_t s = 0; s < slots; ++s)
                    n *= static_cast<std::uint64_t>(2 * bound + 1);
                expected += n;
            }
            CHECK(visited == expected);

            std::ostringstream seq, par, again;
            config.sequential = true;
            run_enumeration(config, seq);
            run_enumeration(config, again);
            config.sequential = false;
            config.jobs = 4;
            run_enumeration(config, par);
            CHECK(seq.str() == par.str());
            CHECK(seq.str() == again.str());
        }
    }
}

TEST_CASE("re-running a command is byte-identical")
{
    const std::vector<std::string> args{"iso", data("B.tower"), data("Bprime.tower"), "--coeff",
                                        "q", "--bound", "2"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> e{"enumerate", "--height", "2", "--dims", "1,2,3", "--bound", "1"};
    CHECK(run(e).out == run(e).out);
}
