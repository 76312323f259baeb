#pragma once

// Fixpoint evaluation of temporal operators on a lasso of n positions whose
// last position steps back to `loop_start`.

#include <cstddef>
#include <vector>

namespace teamltl::detail {

using Bits = std::vector<char>;

inline std::size_t lasso_succ(std::size_t i, std::size_t n, std::size_t loop_start) {
    return i + 1 < n ? i + 1 : loop_start;
}

inline Bits lasso_next(const Bits& a, std::size_t loop_start) {
    const std::size_t n = a.size();
    Bits out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[lasso_succ(i, n, loop_start)];
    return out;
}

// Least fixpoint of  v = rhs | (lhs & X v).
inline Bits lasso_until(const Bits& lhs, const Bits& rhs, std::size_t loop_start) {
    const std::size_t n = rhs.size();
    Bits v(n, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = n; i-- > 0;) {
            char nv = rhs[i] || (lhs[i] && v[lasso_succ(i, n, loop_start)]);
            if (nv != v[i]) {
                v[i] = nv;
                changed = true;
            }
        }
    }
    return v;
}

// Greatest fixpoint of  v = rhs & (lhs | X v).
inline Bits lasso_release(const Bits& lhs, const Bits& rhs, std::size_t loop_start) {
    const std::size_t n = rhs.size();
    Bits v(n, 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = n; i-- > 0;) {
            char nv = rhs[i] && (lhs[i] || v[lasso_succ(i, n, loop_start)]);
            if (nv != v[i]) {
                v[i] = nv;
                changed = true;
            }
        }
    }
    return v;
}

}  // namespace teamltl::detail
