#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/genatom.hpp"
#include "teamltl/traces.hpp"

namespace teamltl {

enum class SplitMode { DisjointOnly, AllCovers };

struct CheckOptions {
    const GenRegistry* registry = nullptr;
    // Unset: DisjointOnly for syntactically downward-closed formulas, AllCovers otherwise.
    std::optional<SplitMode> split_mode;
    std::uint64_t max_lcm = kDefaultMaxLcm;
    std::size_t max_team = 12;             // team size cap for AllCovers splits
    std::uint64_t max_grid = 10'000'000;   // shift-vector grid cap for the asynchronous engine
};

// All pairs agreeing on every determinant agree on every determined proposition.
bool eval_dep_atom(const std::vector<PropSet>& first_letters, const std::vector<std::string>& determinants,
                   const std::vector<std::string>& determined);

SplitMode default_split_mode(const Formula& f, const GenRegistry* registry = nullptr);

bool check_sync(const TeamEncoding& team, const Formula& f, const CheckOptions& opts = {});
// Pure LTL: conjunction of check_trace over members. Otherwise check_async_general.
bool check_async(const TeamEncoding& team, const Formula& f, const CheckOptions& opts = {});
// Explicit per-trace shift vectors.
bool check_async_general(const TeamEncoding& team, const Formula& f, const CheckOptions& opts = {});

bool check_team(const TeamEncoding& team, const Formula& f, Semantics semantics, const CheckOptions& opts = {});

}  // namespace teamltl
