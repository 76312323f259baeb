#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "teamltl/genatom.hpp"
#include "teamltl/prop.hpp"

namespace teamltl {

// ============================================================================
// Abstract syntax
// ============================================================================

enum class Kind {
    Pos,         // p
    Neg,         // !p
    And,         // a & b
    Split,       // a | b   (splitjunction)
    Next,        // X a
    Eventually,  // F a
    Globally,    // G a
    Until,       // lhs U rhs
    Release,     // lhs R rhs: rhs holds until released by lhs
    Tilde,       // ~a      (contradictory negation)
    Dep,         // dep(determinants; determined)
    Gen,         // @name(args)
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Kind kind;
    std::string name;                 // Pos/Neg: proposition, Gen: atom name
    std::vector<std::string> args;    // Dep: determinants, Gen: arguments
    std::vector<std::string> args2;   // Dep: determined
    Formula lhs;                      // unary operand lives here
    Formula rhs;
};

Formula pos(std::string p);
Formula neg(std::string p);
Formula conj(Formula a, Formula b);
Formula split(Formula a, Formula b);
Formula next(Formula a);
Formula eventually(Formula a);
Formula globally(Formula a);
Formula until(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula tilde(Formula a);
Formula dep(std::vector<std::string> determinants, std::vector<std::string> determined);
Formula gen(std::string name, std::vector<std::string> args);

bool is_binary(Kind k);
bool is_unary(Kind k);
bool is_atomic(Kind k);

bool equal(const Formula& a, const Formula& b);

// ============================================================================
// Text
// ============================================================================

// Throws SyntaxError with line/column.
Formula parse_formula(std::string_view text);
std::string render_formula(const Formula& f);

// ============================================================================
// Structure
// ============================================================================

// Number of And/Split/X/F/G/U/R/~ nodes.
std::size_t formula_length(const Formula& f);

// Propositions occurring in literals, dep atoms and generalised atom arguments.
PropSet propositions(const Formula& f);

struct FragmentInfo {
    bool pure_ltl = true;
    bool has_dep = false;
    bool has_contradictory_neg = false;
    bool has_gen_atom = false;
    bool splitjunction_free = true;
    bool has_temporal = false;
    bool downward_closed_syntactic = true;
};

// Throws UnknownAtom if a generalised atom is not in `registry`.
FragmentInfo fragment_info(const Formula& f, const GenRegistry* registry = nullptr);

// Classical negation inside negation normal form. Pure LTL only.
Formula dualize(const Formula& f);

// !p -> p_bar. Splitjunction-free, no dep/generalised atoms.
Formula bar_transform(const Formula& f);

}  // namespace teamltl
