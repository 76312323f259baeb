#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "teamltl/prop.hpp"

namespace teamltl {

// A team-level atom evaluated on the first letters of the team's traces.
// `args` are the propositions written in the formula, e.g. @const(p) -> {"p"}.
struct GenAtomDef {
    using Predicate =
        std::function<bool(const std::vector<PropSet>& first_letters, const std::vector<std::string>& args)>;

    std::string name;
    std::optional<std::size_t> arity;  // nullopt: variadic
    Predicate predicate;
    bool downward_closed = false;
};

class GenRegistry {
public:
    // Throws DuplicateName.
    GenRegistry& add(GenAtomDef def);

    const GenAtomDef* find(const std::string& name) const;
    // Throws UnknownAtom.
    const GenAtomDef& at(const std::string& name) const;
    bool empty() const { return defs_.empty(); }

private:
    std::map<std::string, GenAtomDef> defs_;
};

// Returns a copy of `reg` extended with `def`. Throws DuplicateName.
GenRegistry register_gen_atom(GenRegistry reg, GenAtomDef def);

}  // namespace teamltl
