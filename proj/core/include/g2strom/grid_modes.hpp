#pragma once

#include <cstdint>
#include <vector>

#include "g2strom/grid.hpp"

// Band-limited scalar profiles built from explicit cosine modes; the
// reproducible source of warp profiles for configs and randomized suites.

namespace g2strom {

struct CosineMode {
    std::array<int, 4> k{};
    double amp = 0.0;
    double phase = 0.0;
};

BaseField field_from_cosine_modes(const std::shared_ptr<const Torus4>& base,
                                  const std::vector<CosineMode>& modes);

// Deterministic draw of `count` modes with |k|_inf <= band and the given
// total amplitude (the zero mode is never drawn).
std::vector<CosineMode> random_cosine_modes(std::uint64_t seed, int band, int count,
                                            double total_amplitude);

}  // namespace g2strom
