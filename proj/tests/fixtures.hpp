#pragma once

// The worked-example tensors used across the suites:
//   diagonal_cube: 4-order 2-dim with a_0000 = a_1111 = 1, Ax^3 = (x1^3, x2^3).
//   coupled_cube: adds a_1001 = 1, a_0011 = -1,
//              Ax^3 = (x1^3 - x1 x2^2, x2^3 + x1^2 x2).

#include <fstream>
#include <sstream>
#include <string>

#include "tvi/tensor.hpp"

namespace fixtures {

inline tvi::SquareTensor diagonal_cube() {
    std::vector<double> e(16, 0.0);
    e[0] = 1.0;   // (0,0,0,0)
    e[15] = 1.0;  // (1,1,1,1)
    return tvi::SquareTensor(4, 2, std::move(e));
}

inline tvi::SquareTensor coupled_cube() {
    std::vector<double> e(16, 0.0);
    e[0] = 1.0;                    // a_0000
    e[15] = 1.0;                   // a_1111
    e[1 * 8 + 0 + 0 + 1] = 1.0;    // a_1001
    e[0 + 0 + 2 + 1] = -1.0;       // a_0011
    return tvi::SquareTensor(4, 2, std::move(e));
}

inline std::string fixture_path(const std::string& name) {
    return std::string(TVI_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fixtures
