#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/traces.hpp"

namespace teamltl {

struct QBFLiteral {
    std::string var;
    bool positive = true;
    bool operator==(const QBFLiteral&) const = default;
};

// Prenex 3CNF. Prefix variables are distinct and exactly the clause variables.
struct QBFInstance {
    std::vector<std::pair<Quantifier, std::string>> prefix;
    std::vector<std::array<QBFLiteral, 3>> clauses;
    bool operator==(const QBFInstance&) const = default;
};

// "prefix: E x1 A x2" followed by "clause: x1 -x2 x2" lines.
QBFInstance parse_qbf(std::string_view text);
std::string serialize_qbf(const QBFInstance& q);
// Throws InvalidInput when the prefix and the clause variables disagree.
void validate(const QBFInstance& q);

// Throws BoundExceeded above 16 variables.
bool qbf_brute_force(const QBFInstance& q);

struct TeamReduction {
    TeamEncoding team;
    Formula formula;
};

struct ModelReduction {
    KripkeStructure structure;
    Formula formula;
};

// Gadget team and formula whose synchronous check equals the validity of q.
TeamReduction reduce_qbf_sync(const QBFInstance& q);
// Two traces per variable; validity equals the asynchronous check of a dep formula.
TeamReduction reduce_qbf_async_dep(const QBFInstance& q);

// Layered structure over the variables of phi (sorted). The wrapped formula holds
// on its trace team iff some non-empty propositional team satisfies phi.
ModelReduction reduce_plneg_sat_to_tmc(const Formula& phi);
// Same structure; the translated formula holds iff phi holds on the maximal team.
ModelReduction reduce_pldep_val_to_tmc(const Formula& phi);

enum class PLMode { Sat, Val };

// Propositional teams as constant traces. At most 3 variables.
bool pl_team_brute_force(const Formula& phi, PLMode mode);

}  // namespace teamltl
