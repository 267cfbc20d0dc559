#pragma once

#include <cmath>
#include <random>

#include "apportion/core.hpp"
#include "apportion/jordan.hpp"

namespace test {

using apportion::Complex;
using apportion::ComplexMatrix;

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix A(rows, cols);
    for (Eigen::Index k = 0; k < A.size(); ++k) A(k) = Complex(g(rng), g(rng));
    return A;
}

inline Complex random_complex(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return {u(rng), u(rng)};
}

inline double max_abs(const ComplexMatrix& A) { return A.cwiseAbs().maxCoeff(); }

inline const Complex kI(0.0, 1.0);
inline const Complex kZero(0.0, 0.0);

}  // namespace test
