#pragma once

// Dynamic bitset over the trace-suffix universe of one evaluation.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace teamltl::detail {

class TeamSet {
public:
    TeamSet() = default;
    explicit TeamSet(std::size_t universe) : w_((universe + 63) / 64, 0) {}

    void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }

    bool empty() const {
        for (auto x : w_)
            if (x) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (auto x : w_) n += static_cast<std::size_t>(std::popcount(x));
        return n;
    }
    bool subset_of(const TeamSet& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }
    bool disjoint(const TeamSet& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return false;
        return true;
    }
    TeamSet& operator|=(const TeamSet& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    TeamSet& operator&=(const TeamSet& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    TeamSet minus(const TeamSet& o) const {
        TeamSet r = *this;
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= ~o.w_[k];
        return r;
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t x = w_[k];
            while (x) {
                int b = std::countr_zero(x);
                fn(k * 64 + static_cast<std::size_t>(b));
                x &= x - 1;
            }
        }
    }
    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    bool operator==(const TeamSet& o) const { return w_ == o.w_; }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto x : w_) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    std::vector<std::uint64_t> w_;
};

struct TeamSetHash {
    std::size_t operator()(const TeamSet& t) const { return t.hash(); }
};

}  // namespace teamltl::detail
