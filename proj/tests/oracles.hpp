#pragma once

// Brute-force reference implementations used as oracles in tests. These are
// deliberately written against index tuples and explicit permutation sorting,
// independent of the bitmask kernels in the library.

#include <algorithm>
#include <random>
#include <vector>

#include "g2strom/exterior.hpp"

namespace oracles {

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

inline g2strom::AlternatingForm random_form(std::mt19937_64& gen, int dim, int deg,
                                            double scale = 1.0) {
    std::normal_distribution<double> N(0.0, scale);
    g2strom::AlternatingForm f(dim, deg);
    for (int i = 0; i < f.size(); ++i) f[i] = N(gen);
    return f;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& gen, int dim, double scale = 1.0) {
    std::normal_distribution<double> N(0.0, scale);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = N(gen);
    return v;
}

// All increasing k-tuples from {0,..,n-1} in lex order, by direct recursion.
inline std::vector<std::vector<int>> tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Sign of the permutation sorting seq, 0 if it has a repeat.
inline int sort_sign(std::vector<int> seq) {
    int sign = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] == seq[j]) return 0;
            if (seq[i] > seq[j]) {
                std::swap(seq[i], seq[j]);
                sign = -sign;
            }
        }
    return sign;
}

inline int tuple_rank(int n, const std::vector<int>& t) {
    const auto all = tuples(n, static_cast<int>(t.size()));
    return static_cast<int>(std::find(all.begin(), all.end(), t) - all.begin());
}

// Reference wedge product via tuple concatenation and permutation sorting.
inline g2strom::AlternatingForm brute_wedge(const g2strom::AlternatingForm& a,
                                            const g2strom::AlternatingForm& b) {
    const int n = a.dimension();
    g2strom::AlternatingForm r(n, a.degree() + b.degree());
    const auto ta = tuples(n, a.degree());
    const auto tb = tuples(n, b.degree());
    for (std::size_t i = 0; i < ta.size(); ++i) {
        for (std::size_t j = 0; j < tb.size(); ++j) {
            std::vector<int> seq = ta[i];
            seq.insert(seq.end(), tb[j].begin(), tb[j].end());
            const int s = sort_sign(seq);
            if (s == 0) continue;
            std::sort(seq.begin(), seq.end());
            r[tuple_rank(n, seq)] += s * a[static_cast<int>(i)] * b[static_cast<int>(j)];
        }
    }
    return r;
}

}  // namespace oracles
