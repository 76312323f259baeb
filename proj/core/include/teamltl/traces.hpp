#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "teamltl/prop.hpp"

namespace teamltl {

// Ultimately periodic trace prefix . loop^omega. The loop is never empty.
struct UPTraceEncoding {
    std::vector<PropSet> prefix;
    std::vector<PropSet> loop;

    auto operator<=>(const UPTraceEncoding&) const = default;
};

struct Characteristic {
    std::size_t s = 0;  // stem length
    std::size_t p = 1;  // period
};

// A finite set of canonical encodings, kept sorted and free of duplicates.
class TeamEncoding {
public:
    TeamEncoding() = default;
    // Canonicalizes and deduplicates. Throws InvalidInput on an empty loop.
    explicit TeamEncoding(std::vector<UPTraceEncoding> traces);

    const std::vector<UPTraceEncoding>& traces() const { return traces_; }
    std::size_t size() const { return traces_.size(); }
    bool empty() const { return traces_.empty(); }
    auto begin() const { return traces_.begin(); }
    auto end() const { return traces_.end(); }

    bool operator==(const TeamEncoding&) const = default;

private:
    std::vector<UPTraceEncoding> traces_;
};

inline constexpr std::uint64_t kDefaultMaxLcm = 1'000'000;

const PropSet& value_at(const UPTraceEncoding& e, std::size_t i);
UPTraceEncoding canonicalize(UPTraceEncoding e);
UPTraceEncoding suffix_encoding(const UPTraceEncoding& e, std::size_t i);

std::size_t prfx(const TeamEncoding& team);
// Throws BoundExceeded above `cap`.
std::uint64_t lcm(const TeamEncoding& team, std::uint64_t cap = kDefaultMaxLcm);
TeamEncoding team_suffix(const TeamEncoding& team, std::size_t i);

// Team files: one trace per line, "{p} {q} ; {r}". '#' starts a comment.
TeamEncoding parse_team(std::string_view text);
UPTraceEncoding parse_trace(std::string_view line);
std::string serialize_trace(const UPTraceEncoding& e);
std::string serialize_team(const TeamEncoding& team);

}  // namespace teamltl
