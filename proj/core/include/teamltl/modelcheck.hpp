#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "teamltl/classical.hpp"
#include "teamltl/formula.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/traces.hpp"

namespace teamltl {

inline constexpr std::size_t kDefaultMaxWorlds = 20;

// S_0 = {w_I}, S_{i+1} = successors of S_i, cut at the first repeated set.
struct SubsetSequence {
    std::vector<std::vector<std::size_t>> sets;  // sorted world indices
    Characteristic characteristic;
};

// Throws BoundExceeded when |W| exceeds max_worlds.
SubsetSequence subset_sequence(const KripkeStructure& k, std::size_t max_worlds = kDefaultMaxWorlds);

// Position i holds every p common to all worlds of S_i and p_bar for every
// barred p absent from all of them. `barred` defaults to every label
// proposition whose barred name is not itself a label.
UPTraceEncoding team_trace(const KripkeStructure& k, std::optional<PropSet> barred = std::nullopt,
                           std::size_t max_worlds = kDefaultMaxWorlds);

// Synchronous team model checking for splitjunction-free formulas.
// Throws UnsupportedOpenProblem on splitjunctions.
bool tmc_sync_splitfree(const KripkeStructure& k, const Formula& f, std::size_t max_worlds = kDefaultMaxWorlds);
// Same question by lasso search in subset-state x automaton-state products; '~'-free only.
bool tmc_sync_splitfree_onthefly(const KripkeStructure& k, const Formula& f);

// Asynchronous team model checking is classical model checking (flatness).
McResult tmc_async(const KripkeStructure& k, const Formula& f);

// T(K) as an explicit team when no branching world lies on a reachable cycle.
std::optional<TeamEncoding> traces_team_finite(const KripkeStructure& k, std::size_t max_traces = 100000);

}  // namespace teamltl
