#pragma once

// Multi-indices over n variables with graded-lexicographic enumeration.
// Within a degree the order is lexicographic with earlier axes dominating,
// so for n=2, degree 1 enumerates (1,0) before (0,1).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetcc {

using MultiIndex = std::vector<int>;

inline int mi_degree(const MultiIndex& I) {
    return std::accumulate(I.begin(), I.end(), 0);
}

// I >= J componentwise.
inline bool mi_geq(const MultiIndex& I, const MultiIndex& J) {
    for (std::size_t m = 0; m < I.size(); ++m)
        if (I[m] < J[m]) return false;
    return true;
}

inline MultiIndex mi_sub(const MultiIndex& I, const MultiIndex& J) {
    MultiIndex out(I.size());
    for (std::size_t m = 0; m < I.size(); ++m) out[m] = I[m] - J[m];
    return out;
}

inline MultiIndex mi_add(const MultiIndex& I, const MultiIndex& J) {
    MultiIndex out(I.size());
    for (std::size_t m = 0; m < I.size(); ++m) out[m] = I[m] + J[m];
    return out;
}

inline MultiIndex mi_unit(int n, int axis) {
    MultiIndex out(static_cast<std::size_t>(n), 0);
    out[static_cast<std::size_t>(axis)] = 1;
    return out;
}

inline std::uint64_t mi_factorial_u64(const MultiIndex& I) {
    std::uint64_t f = 1;
    for (int c : I)
        for (int v = 2; v <= c; ++v) f *= static_cast<std::uint64_t>(v);
    return f;
}

// Graded-lex comparison: lower degree first, then lex with earlier axes
// dominating and larger entries first (so (1,0) precedes (0,1)).
inline bool mi_less(const MultiIndex& a, const MultiIndex& b) {
    int da = mi_degree(a), db = mi_degree(b);
    if (da != db) return da < db;
    for (std::size_t m = 0; m < a.size(); ++m)
        if (a[m] != b[m]) return a[m] > b[m];
    return false;
}

// All multi-indices of exact degree j over n variables, graded-lex order.
inline std::vector<MultiIndex> enumerate_multiindices(int n, int j) {
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int axis, int rem) {
        if (axis == n - 1) {
            cur[static_cast<std::size_t>(axis)] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = rem; v >= 0; --v) {
            cur[static_cast<std::size_t>(axis)] = v;
            rec(axis + 1, rem - v);
        }
    };
    if (n <= 0) throw std::invalid_argument("enumerate_multiindices: n must be positive");
    rec(0, j);
    return out;
}

// binom(n+j-1, j), the size of one layer.
inline std::size_t layer_size(int n, int j) {
    std::uint64_t num = 1, den = 1;
    for (int t = 1; t <= j; ++t) {
        num *= static_cast<std::uint64_t>(n - 1 + t);
        den *= static_cast<std::uint64_t>(t);
    }
    return static_cast<std::size_t>(num / den);
}

inline std::string mi_to_string(const MultiIndex& I) {
    std::string s = "(";
    for (std::size_t m = 0; m < I.size(); ++m) {
        if (m) s += ",";
        s += std::to_string(I[m]);
    }
    return s + ")";
}

}  // namespace jetcc
