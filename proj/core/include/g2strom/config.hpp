#pragma once

#include <string>

#include "g2strom/ansatz.hpp"

// Declarative scenario configuration (JSON). Unknown keys are rejected.
//
// {
//   "base":         {"side_lengths": [1,1,1,1], "grid": 16},
//   "beta_periods": [[1,-1,0,0,0,0], [0,0,1,-1,0,0], [0,0,0,0,1,-1]],
//   "t2":           [2,1]            // rational [num,den]; integers are exact
//   "alpha":        [-2,1],          // optional with "balanced" instantons
//   "instantons":   "balanced" | "none" |
//                   {"periods": [[..6 ints..],..], "weights": [..]},
//   "u_mode":       "constant" | "solved" |
//                   {"modes": [{"k":[1,0,0,0], "amp":0.04, "phase":0.0}, ..]},
//   "h0":           1.0
// }
//
// Period vectors are ordered (p01, p23, p02, p31, p03, p12), matching the
// three hyperbolic-plane blocks of the intersection lattice.

namespace g2strom {

struct LatticeCheckConfig {
    std::string mode = "K3";  // "K3" or "T4" (c2_base 24 or 0)
    Rational t2{1};
    Rational alpha{-1};
    bool exact = true;
    double t2_value = 1.0;
    double alpha_value = -1.0;
    int r = 1;
    std::array<long long, 3> q_values{};
};

Scenario load_scenario(const std::string& path, int grid_override = 0);
LatticeCheckConfig load_lattice_check(const std::string& path);

}  // namespace g2strom
