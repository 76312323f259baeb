#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/prop.hpp"
#include "teamltl/traces.hpp"

namespace teamltl {

enum class HKind { Atom, Not, Or, And, Next, Eventually, Globally, Until, Release };

struct HNode;
using HFormula = std::shared_ptr<const HNode>;

struct HNode {
    HKind kind;
    std::string prop;  // Atom
    std::string var;   // Atom
    HFormula lhs;
    HFormula rhs;
};

struct HyperSentence {
    std::vector<std::pair<Quantifier, std::string>> prefix;
    HFormula body;
};

inline constexpr std::size_t kDefaultMaxQuantifiers = 4;

// "E pi1. A pi2. p@pi1 U !q@pi2". Unbound trace variables are syntax errors.
HyperSentence parse_hyper(std::string_view text);
std::string render_hyper(const HyperSentence& s);
bool equal(const HFormula& a, const HFormula& b);

// Quantifiers range over the team members.
bool check_hyper(const TeamEncoding& team, const HyperSentence& s,
                 std::size_t max_quantifiers = kDefaultMaxQuantifiers, std::uint64_t max_lcm = kDefaultMaxLcm);

// A pi. f with every p replaced by p@pi. Pure LTL only.
HyperSentence ltl_to_forall_hyper(const Formula& f, const std::string& var = "pi");
// Negation normal form of the body with trace variables dropped.
// Throws NotForallFragment unless the prefix is a single universal quantifier.
Formula forall_hyper_to_ltl(const HyperSentence& s);

}  // namespace teamltl
