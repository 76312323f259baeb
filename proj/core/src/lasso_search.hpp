#pragma once

// Nested depth-first search for an accepting lasso in a graph given by a
// successor function over integer state ids.

#include <cstddef>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

namespace teamltl::detail {

struct StateLasso {
    std::vector<std::size_t> stem;   // states before the seed
    std::vector<std::size_t> cycle;  // seed first; last state steps back to the seed
};

template <class Succ, class Accepting>
std::optional<StateLasso> find_accepting_lasso(const std::vector<std::size_t>& init, Succ&& succ, Accepting&& accepting) {
    std::unordered_set<std::size_t> visited1, visited2;
    struct Frame {
        std::size_t state;
        std::vector<std::size_t> next;
        std::size_t idx = 0;
    };

    auto inner = [&](std::size_t seed) -> std::optional<std::vector<std::size_t>> {
        std::vector<Frame> stack;
        stack.push_back({seed, succ(seed)});
        visited2.insert(seed);
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.idx == f.next.size()) {
                stack.pop_back();
                continue;
            }
            std::size_t s = f.next[f.idx++];
            if (s == seed) {
                std::vector<std::size_t> path;
                for (auto& fr : stack) path.push_back(fr.state);
                return path;
            }
            if (visited2.insert(s).second) stack.push_back({s, succ(s)});
        }
        return std::nullopt;
    };

    for (std::size_t root : init) {
        if (!visited1.insert(root).second) continue;
        std::vector<Frame> stack;
        stack.push_back({root, succ(root)});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.idx < f.next.size()) {
                std::size_t s = f.next[f.idx++];
                if (visited1.insert(s).second) stack.push_back({s, succ(s)});
                continue;
            }
            std::size_t s = f.state;
            if (accepting(s)) {
                if (auto cyc = inner(s)) {
                    StateLasso out;
                    for (std::size_t k = 0; k + 1 < stack.size(); ++k) out.stem.push_back(stack[k].state);
                    out.cycle = std::move(*cyc);
                    return out;
                }
            }
            stack.pop_back();
        }
    }
    return std::nullopt;
}

}  // namespace teamltl::detail
