#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

// Increasing multi-indices over {0,..,n-1}, n <= 8, encoded as bitmasks.
// Basis elements of Lambda^k are enumerated in lexicographic order of the
// increasing index tuple, which is the ordering used for all coefficient
// arrays in this library.

namespace g2strom::mi {

inline constexpr int kMaxDim = 8;

constexpr int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return static_cast<int>(r);
}

// Basis table for fixed (n, k): mask_of[j] is the bitmask of the j-th basis
// multi-index in lex order; index_of[mask] inverts it (-1 where undefined).
struct BasisTable {
    int n = 0;
    int k = 0;
    std::vector<std::uint8_t> mask_of;
    std::array<int, 256> index_of{};
};

const BasisTable& basis(int n, int k);

// Sign of merging two disjoint increasing tuples a, b into one increasing
// tuple: (-1)^{#inversions between a and b}. This is the coefficient rule
// e_a ^ e_b = sign(a,b) e_{a|b}.
inline int merge_sign(std::uint8_t a, std::uint8_t b) {
    int inversions = 0;
    for (std::uint8_t rest = b; rest;) {
        const int j = std::countr_zero(rest);
        rest &= static_cast<std::uint8_t>(rest - 1);
        inversions += std::popcount(static_cast<unsigned>(a >> (j + 1)));
    }
    return (inversions & 1) ? -1 : 1;
}

// Sign picked up when removing index i from mask m (interior product rule):
// (-1)^{position of i within m}.
inline int removal_sign(std::uint8_t m, int i) {
    const unsigned below = m & ((1u << i) - 1u);
    return (std::popcount(below) & 1) ? -1 : 1;
}

}  // namespace g2strom::mi
