#include "gbott/cli.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "gbott/cohomring.hpp"
#include "gbott/isosearch.hpp"
#include "gbott/triviality.hpp"

namespace gbott {

// --- enumeration ------------------------------------------------------------

void EnumerationConfig::validate() const
{
    if (height < 1)
        throw std::invalid_argument("height must be at least 1");
    if (dims.empty())
        throw std::invalid_argument("dims must not be empty");
    for (std::size_t a = 0; a < dims.size(); ++a) {
        if (dims[a] < 1)
            throw std::invalid_argument("fiber dimensions must be positive");
        if (std::count(dims.begin(), dims.end(), dims[a]) > 1)
            throw std::invalid_argument("dims must not repeat");
    }
    if (coeff_bound < 0)
        throw std::invalid_argument("coefficient bound must be non-negative");
}

bool TowerFlags::has(Flag f) const
{
    switch (f) {
    case Flag::q_trivial:
        return q_trivial;
    case Flag::z_trivial:
        return z_trivial;
    case Flag::chern_trivial:
        return chern_trivial;
    }
    return false;
}

TowerFlags evaluate_flags(const TowerSpec& t)
{
    const auto ring = build_ring(t);
    TowerFlags f;
    f.q_trivial = is_q_trivial(ring).trivial;
    f.chern_trivial = is_total_chern_trivial(ring);
    f.z_trivial = f.q_trivial && is_z_trivial(ring);
    return f;
}

namespace {

std::uint64_t coefficient_slots(const std::vector<int>& dims)
{
    std::uint64_t slots = 0;
    for (std::size_t i = 0; i < dims.size(); ++i)
        slots += static_cast<std::uint64_t>(dims[i]) * i;
    return slots;
}

std::uint64_t ipow(std::uint64_t base, std::uint64_t e)
{
    std::uint64_t r = 1;
    while (e--)
        r *= base;
    return r;
}

// Advances an odometer whose first digit is most significant; false on wrap.
bool advance(std::vector<int>& digits, int lo, int hi)
{
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] < hi) {
            ++digits[i];
            return true;
        }
        digits[i] = lo;
    }
    return false;
}

} // namespace

std::uint64_t enumeration_size(const EnumerationConfig& config)
{
    config.validate();
    const std::uint64_t base = 2 * static_cast<std::uint64_t>(config.coeff_bound) + 1;
    std::uint64_t total = 0;
    std::vector<int> choice(config.height, 0);
    do {
        std::vector<int> dims;
        for (int c : choice)
            dims.push_back(config.dims[static_cast<std::size_t>(c)]);
        total += ipow(base, coefficient_slots(dims));
    } while (advance(choice, 0, static_cast<int>(config.dims.size()) - 1));
    return total;
}

void for_each_tower(const EnumerationConfig& config,
                    const std::function<void(std::uint64_t, const TowerSpec&)>& visit)
{
    config.validate();
    std::uint64_t index = 0;
    std::vector<int> choice(config.height, 0);
    do {
        std::vector<int> dims;
        for (int c : choice)
            dims.push_back(config.dims[static_cast<std::size_t>(c)]);
        const auto slots = coefficient_slots(dims);
        std::vector<int> coeffs(slots, -config.coeff_bound);
        do {
            TowerSpec t = product_tower(dims);
            std::size_t s = 0;
            for (std::size_t i = 1; i < t.height(); ++i) {
                for (auto& row : t.stages[i].coeffs) {
                    for (auto& a : row)
                        a = coeffs[s++];
                }
            }
            visit(index++, t);
        } while (advance(coeffs, -config.coeff_bound, config.coeff_bound));
    } while (advance(choice, 0, static_cast<int>(config.dims.size()) - 1));
}

std::string record_line(const TowerSpec& t, const TowerFlags& flags)
{
    std::ostringstream out;
    out << "n=";
    const auto dims = t.fiber_dims();
    for (std::size_t i = 0; i < dims.size(); ++i)
        out << (i ? "," : "") << dims[i];
    out << " AT=" << to_string(vector_matrix_transpose(t)) << " q=" << flags.q_trivial
        << " z=" << flags.z_trivial << " chern=" << flags.chern_trivial;
    return out.str();
}

EnumerationSummary run_enumeration(const EnumerationConfig& config, std::ostream& out)
{
    config.validate();
    constexpr std::size_t block_size = 4096;
    EnumerationSummary summary;

    std::vector<TowerSpec> block;
    auto flush = [&] {
        std::vector<TowerFlags> flags(block.size());
        if (config.sequential || block.size() < 64) {
            for (std::size_t k = 0; k < block.size(); ++k)
                flags[k] = evaluate_flags(block[k]);
        } else {
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t k = next.fetch_add(1); k < block.size(); k = next.fetch_add(1))
                    flags[k] = evaluate_flags(block[k]);
            };
            const unsigned n = config.jobs ? config.jobs
                                           : std::max(1u, std::thread::hardware_concurrency());
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < n; ++w)
                pool.emplace_back(worker);
        }
        for (std::size_t k = 0; k < block.size(); ++k) {
            const auto& f = flags[k];
            ++summary.towers;
            ++summary.counts[f.q_trivial * 4 + f.z_trivial * 2 + f.chern_trivial];
            const bool keep = std::all_of(config.filters.begin(), config.filters.end(),
                                          [&](Flag fl) { return f.has(fl); });
            if (keep) {
                ++summary.emitted;
                out << record_line(block[k], f) << '\n';
            }
        }
        block.clear();
    };

    for_each_tower(config, [&](std::uint64_t, const TowerSpec& t) {
        block.push_back(t);
        if (block.size() == block_size)
            flush();
    });
    flush();
    return summary;
}

// --- commands ---------------------------------------------------------------

namespace {

std::vector<std::string> split_names(const std::string& csv, std::size_t expected)
{
    if (csv.empty())
        return default_names(expected);
    std::vector<std::string> names;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        names.push_back(item);
    if (names.size() != expected)
        throw std::invalid_argument("--vars lists " + std::to_string(names.size()) +
                                    " names, tower has height " + std::to_string(expected));
    return names;
}

std::string chern_text(const CohomRing& ring, const std::vector<std::string>& names)
{
    std::ostringstream out;
    for (std::size_t i = 1; i <= ring.generator_count(); ++i) {
        const auto& ch = ring.chern(i);
        out << "stage " << i << " (n=" << ring.fiber_dim(i) << "):";
        for (std::size_t k = 0; k < ch.classes.size(); ++k)
            out << (k ? ", " : " ") << "c" << k << " = " << to_string(ch.classes[k], names);
        out << '\n';
    }
    return out.str();
}

void print_summary(const EnumerationSummary& s, std::ostream& out)
{
    out << "summary: towers=" << s.towers << " emitted=" << s.emitted << '\n';
    for (int combo = 7; combo >= 0; --combo) {
        if (s.counts[combo] == 0)
            continue;
        out << "  q=" << ((combo >> 2) & 1) << " z=" << ((combo >> 1) & 1)
            << " chern=" << (combo & 1) << ": " << s.counts[combo] << '\n';
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Generalized Bott tower cohomology toolkit", "gbott"};
    app.require_subcommand(1);

    std::string file, file_b, vars, vars_b;
    bool as_json = false;

    auto* ring_cmd = app.add_subcommand("ring", "Print the cohomology ring presentation");
    ring_cmd->add_option("file", file, "Tower file")->required();
    ring_cmd->add_option("--vars", vars, "Comma-separated generator names");

    auto* chern_cmd = app.add_subcommand("chern", "Print the Chern classes of each stage bundle");
    chern_cmd->add_option("file", file, "Tower file")->required();
    chern_cmd->add_option("--vars", vars, "Comma-separated generator names");

    auto* report_cmd = app.add_subcommand("report", "Ring, Chern classes and triviality report");
    report_cmd->add_option("file", file, "Tower file")->required();
    report_cmd->add_option("--vars", vars, "Comma-separated generator names");
    report_cmd->add_flag("--json", as_json, "Structured output");

    auto* decompose_cmd = app.add_subcommand("decompose", "Reorder a Q-trivial tower");
    decompose_cmd->add_option("file", file, "Tower file")->required();

    std::string coeff = "q";
    int bound = 10;
    bool sequential = false;
    auto* iso_cmd = app.add_subcommand("iso", "Search for a graded ring isomorphism");
    iso_cmd->add_option("fileA", file, "Source tower file")->required();
    iso_cmd->add_option("fileB", file_b, "Target tower file")->required();
    iso_cmd->add_option("--coeff", coeff, "Coefficients: q or z")
        ->check(CLI::IsMember({"q", "z"}));
    iso_cmd->add_option("--bound", bound, "Entry bound")->check(CLI::PositiveNumber);
    iso_cmd->add_flag("--sequential", sequential, "Single-threaded deterministic search");
    iso_cmd->add_option("--vars", vars, "Source generator names");
    iso_cmd->add_option("--target-vars", vars_b, "Target generator names");

    EnumerationConfig config;
    std::string dims_csv = "1";
    std::vector<std::string> filters;
    auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate towers and classify them");
    enum_cmd->add_option("--height", config.height, "Tower height")->required();
    enum_cmd->add_option("--dims", dims_csv, "Allowed fiber dimensions, comma-separated")
        ->required();
    enum_cmd->add_option("--bound", config.coeff_bound, "Coefficient bound")->required();
    enum_cmd->add_option("--filter", filters, "Only emit towers with these flags")
        ->check(CLI::IsMember({"q", "z", "chern"}));
    enum_cmd->add_flag("--sequential", config.sequential, "Single-threaded evaluation");
    enum_cmd->add_option("--jobs", config.jobs, "Worker threads (0: all cores)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ring_cmd->parsed()) {
            const auto t = load_tower(file);
            out << ring_report(build_ring(t), split_names(vars, t.height()));
            return 0;
        }
        if (chern_cmd->parsed()) {
            const auto t = load_tower(file);
            out << chern_text(build_ring(t), split_names(vars, t.height()));
            return 0;
        }
        if (report_cmd->parsed()) {
            const auto t = load_tower(file);
            const auto names = split_names(vars, t.height());
            const auto ring = build_ring(t);
            const auto report = full_report(t);
            if (as_json) {
                auto j = to_json(report);
                j["relations"] = nlohmann::json::array();
                for (const auto& r : ring.relations())
                    j["relations"].push_back(to_string(r, names));
                j["poincare_ranks"] = poincare_ranks(t);
                out << j.dump(2) << '\n';
            } else {
                out << ring_report(ring, names) << "chern classes:\n"
                    << chern_text(ring, names) << to_text(report);
            }
            return 0;
        }
        if (decompose_cmd->parsed()) {
            const auto t = load_tower(file);
            if (!is_q_trivial(t)) {
                out << "not Q-trivial; no decomposition\n";
                return 1;
            }
            out << to_text(decompose(t));
            return 0;
        }
        if (iso_cmd->parsed()) {
            const auto a = load_tower(file);
            const auto b = load_tower(file_b);
            const auto names_a = split_names(vars, a.height());
            const auto names_b = split_names(vars_b, b.height());
            const auto ra = build_ring(a);
            const auto rb = build_ring(b);
            const bool over_z = coeff == "z";
            const auto found = search_iso(ra, rb, over_z, bound, {.sequential = sequential});
            if (!found) {
                out << "none within bound " << bound << '\n';
                return 1;
            }
            out << witness_text(*found, ra, rb, names_a, names_b);
            return 0;
        }
        if (enum_cmd->parsed()) {
            config.dims.clear();
            std::stringstream ss(dims_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                config.dims.push_back(std::stoi(item));
            for (const auto& f : filters) {
                config.filters.push_back(f == "q"   ? Flag::q_trivial
                                         : f == "z" ? Flag::z_trivial
                                                    : Flag::chern_trivial);
            }
            config.validate();
            print_summary(run_enumeration(config, out), out);
            return 0;
        }
    } catch (const TowerParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace gbott
