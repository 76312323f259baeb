#pragma once

#include <set>
#include <string>
#include <string_view>

namespace teamltl {

using PropSet = std::set<std::string>;

// [a-zA-Z_][a-zA-Z0-9_]*
bool is_identifier(std::string_view s);

// Name of the fresh proposition standing for "p is absent".
inline std::string bar_name(const std::string& p) { return p + "_bar"; }

}  // namespace teamltl

namespace teamltl {

enum class Semantics { Sync, Async };

enum class Quantifier { Exists, Forall };

}  // namespace teamltl
