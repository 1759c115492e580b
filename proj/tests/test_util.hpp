#pragma once

#include <random>

#include "smg/symbol.hpp"

namespace testutil {

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// random symbol with integer multi-indices in [-deg, deg]^d
inline smg::TrigPoly random_symbol(std::mt19937& rng, int d, int rows, int cols, int deg, int terms) {
    std::uniform_int_distribution<int> k(-deg, deg);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    smg::TrigPoly f(d, rows, cols);
    for (int t = 0; t < terms; ++t) {
        smg::MultiIndex idx(d);
        for (auto& x : idx) x = k(rng);
        Eigen::MatrixXcd c(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) c(i, j) = {u(rng), u(rng)};
        f.add_coeff(idx, c);
    }
    return f;
}

inline std::vector<double> random_theta(std::mt19937& rng, int d) {
    std::uniform_real_distribution<double> u(-3.2, 3.2);
    std::vector<double> th(d);
    for (auto& x : th) x = u(rng);
    return th;
}

// scalar a0 + a1 (e^{i t} + e^{-i t})
inline smg::TrigPoly cos_symbol(double a0, double a1) {
    smg::TrigPoly f(1, 1, 1);
    f.add_entry({0}, 0, 0, a0);
    f.add_entry({1}, 0, 0, a1);
    f.add_entry({-1}, 0, 0, a1);
    return f;
}

}  // namespace testutil
