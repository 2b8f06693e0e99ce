#pragma once

// Command-line front end and the tower enumeration harness.
//
// Exit codes: 0 success / found, 1 completed with a negative answer,
// 2 input error.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gbott/tower.hpp"

namespace gbott {

enum class Flag { q_trivial, z_trivial, chern_trivial };

struct EnumerationConfig {
    std::size_t height = 1;
    std::vector<int> dims{1};
    int coeff_bound = 0;
    std::vector<Flag> filters;
    bool sequential = false;
    unsigned jobs = 0;

    // Throws std::invalid_argument on a bad config.
    void validate() const;
};

struct TowerFlags {
    bool q_trivial = false;
    bool z_trivial = false;
    bool chern_trivial = false;

    bool has(Flag f) const;
    friend bool operator==(const TowerFlags&, const TowerFlags&) = default;
};

TowerFlags evaluate_flags(const TowerSpec& t);

// Number of towers the config describes, before filtering.
std::uint64_t enumeration_size(const EnumerationConfig& config);

// Calls visit(index, tower) for every tower in canonical order: dimension
// tuples first (stage 1 most significant, in config.dims order), then
// coefficients from -bound to bound (stage 2 row 1 most significant).
void for_each_tower(const EnumerationConfig& config,
                    const std::function<void(std::uint64_t, const TowerSpec&)>& visit);

// "n=2,3 AT=[[1,0],...] q=0 z=0 chern=0"
std::string record_line(const TowerSpec& t, const TowerFlags& flags);

struct EnumerationSummary {
    std::uint64_t towers = 0;
    std::uint64_t emitted = 0;
    // counts[q*4 + z*2 + chern]
    std::uint64_t counts[8] = {};
};

// Evaluates every tower (in parallel unless config.sequential), writes the
// records that pass the filters to `out` in canonical order.
EnumerationSummary run_enumeration(const EnumerationConfig& config, std::ostream& out);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gbott
