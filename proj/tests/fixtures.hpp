#pragma once

#include <cmath>
#include <vector>

namespace fixtures {

// Same formulas as tests/oracles/generate.py.
inline std::vector<double> test_series() {
    std::vector<double> x;
    for (int t = 1; t <= 200; ++t)
        x.push_back(std::sin(1.3 * t) + 0.5 * std::cos(0.7 * t * t) + 0.01 * t);
    return x;
}

inline std::vector<double> white_series() {
    std::vector<double> x;
    for (int t = 1; t <= 300; ++t) x.push_back(std::sin(0.731 * t * t) * (1 + 0.3 * std::cos(t)));
    return x;
}

}  // namespace fixtures
