#pragma once

// Random and exhaustive instance generators shared by unit and acceptance tests.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/reductions.hpp"
#include "teamltl/traces.hpp"

namespace teamltl::testing {

using Rng = std::mt19937_64;

struct FormulaShape {
    std::vector<std::string> props{"p", "q"};
    std::size_t max_length = 6;  // operator nodes, as counted by formula_length
    bool temporal = true;
    bool splits = true;
    bool tilde = false;
    bool dep = false;
};

Formula random_formula(Rng& rng, const FormulaShape& shape);

struct TeamShape {
    std::vector<std::string> props{"p", "q"};
    std::size_t max_traces = 4;
    std::size_t max_prefix = 2;
    std::size_t max_loop = 3;
    bool allow_empty = false;
};

UPTraceEncoding random_trace(Rng& rng, const TeamShape& shape);
TeamEncoding random_team(Rng& rng, const TeamShape& shape);

// Every world lies on at most one path to a cycle of non-branching worlds, so
// the trace team is finite.
KripkeStructure random_finite_kripke(Rng& rng, std::size_t max_worlds, const std::vector<std::string>& props);
// Arbitrary left-total structure.
KripkeStructure random_kripke(Rng& rng, std::size_t max_worlds, const std::vector<std::string>& props);

QBFInstance random_qbf(Rng& rng, std::size_t max_vars, std::size_t max_clauses);
// All instances over x1..xn (n <= max_vars) with up to max_clauses clauses drawn
// from the 2n literals, clauses as sorted triples, clause lists as sorted multisets.
void for_each_small_qbf(std::size_t max_vars, std::size_t max_clauses, const std::function<void(const QBFInstance&)>& fn);

// Every propositional formula built from `atoms` with &, | and, when `tilde`
// is set, ~, up to max_length operators. With `ac_normal`, & and | are read as
// associative and commutative: a node's operands never share its kind and
// appear once per multiset, nested to the right.
void for_each_pl_formula(const std::vector<Formula>& atoms, std::size_t max_length, bool tilde, bool ac_normal,
                         const std::function<void(const Formula&)>& fn);

// Subteams given by bitmask over team.traces().
TeamEncoding subteam(const TeamEncoding& team, std::uint64_t mask);

}  // namespace teamltl::testing
