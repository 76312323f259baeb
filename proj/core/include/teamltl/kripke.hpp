#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "teamltl/prop.hpp"

namespace teamltl {

// Finite transition system (W, R, eta, w_I) with a left-total R.
struct KripkeStructure {
    std::vector<std::string> worlds;
    std::vector<PropSet> labels;
    std::vector<std::vector<std::size_t>> succ;  // sorted, duplicate-free
    std::size_t initial = 0;

    std::size_t size() const { return worlds.size(); }
    std::size_t index_of(const std::string& name) const;  // throws MalformedStructure
};

// Throws MalformedStructure if R is not left-total or indices are out of range.
void validate(const KripkeStructure& k);

// Lines: "world NAME { IDENT* }", "edge A B", "init NAME"; '#' comments.
KripkeStructure parse_kripke(std::string_view text);
std::string serialize_kripke(const KripkeStructure& k);

}  // namespace teamltl
