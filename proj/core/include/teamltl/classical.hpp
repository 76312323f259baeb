#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/traces.hpp"

namespace teamltl {

// ============================================================================
// Single-trace semantics
// ============================================================================

// Classical satisfaction on one lasso. '~' is read as classical negation.
// Throws UnsupportedFragment on dep or generalised atoms.
bool check_trace(const UPTraceEncoding& e, const Formula& f);

// ============================================================================
// Buchi automata
// ============================================================================

struct NBATransition {
    std::size_t to = 0;
    std::uint64_t pos = 0;  // bit i: props[i] must hold
    std::uint64_t neg = 0;  // bit i: props[i] must not hold
};

struct NBA {
    std::vector<std::string> props;
    std::vector<std::vector<NBATransition>> out;  // per state
    std::vector<std::size_t> initial;
    std::vector<bool> accepting;

    std::size_t num_states() const { return out.size(); }
    std::uint64_t letter_mask(const PropSet& letter) const;
    static bool enabled(const NBATransition& t, std::uint64_t mask) { return (t.pos & ~mask) == 0 && (t.neg & mask) == 0; }
};

struct LassoWitness {
    std::vector<PropSet> stem;
    std::vector<PropSet> cycle;

    UPTraceEncoding encoding() const { return canonicalize(UPTraceEncoding{stem, cycle}); }
};

// Tableau construction. Pure LTL only.
NBA ltl_to_nba(const Formula& f);
// True iff some run of `a` on the word reads accepting states infinitely often.
bool nba_accepts(const NBA& a, const UPTraceEncoding& word);
std::optional<LassoWitness> nba_nonempty(const NBA& a);

// ============================================================================
// Satisfiability and model checking
// ============================================================================

std::optional<UPTraceEncoding> classical_sat(const Formula& f);

// Team satisfiability. Dep atoms and singleton-trivial downward-closed
// generalised atoms are replaced by a valid formula, then classical_sat runs.
std::optional<UPTraceEncoding> tsat(const Formula& f, Semantics semantics, const GenRegistry* registry = nullptr);

struct McResult {
    bool holds = true;
    std::optional<LassoWitness> counterexample;
};

McResult classical_mc(const KripkeStructure& k, const Formula& f);

}  // namespace teamltl
