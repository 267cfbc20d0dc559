#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace apportion {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Reciprocal-condition threshold below which M is treated as singular.
inline constexpr double kSingularRcond = 1e-12;

struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;

    void validate() const;
};

struct UniformityReport {
    bool is_uniform = false;
    double kappa = 0.0;   // mean entry modulus
    double defect = 0.0;  // max | |b_ij| - kappa |
};

// Accepts rectangular input. Throws InvalidInput on empty or non-finite B.
UniformityReport is_uniform(const ComplexMatrix& B, Tolerance tol = {});

// rcond of M after scaling each column to unit 2-norm. Column scaling does not
// change partial-pivoting LU, so this is the quantity that governs the solve.
double equilibrated_rcond(const ComplexMatrix& M);

// B = M A M^{-1} via a factorized solve of B M = M A.
ComplexMatrix similarity_image(const ComplexMatrix& M, const ComplexMatrix& A);
// Same, with a caller-supplied inverse.
ComplexMatrix similarity_image(const ComplexMatrix& M, const ComplexMatrix& Minv,
                               const ComplexMatrix& A);

// max_ij |B M - M A| / (|B||M| + |M||A|)_ij, the componentwise backward residual.
double similarity_residual(const ComplexMatrix& M, const ComplexMatrix& A,
                           const ComplexMatrix& B);

double trace_lower_bound(const ComplexMatrix& A);
double hadamard_lower_bound(const ComplexMatrix& A);

ComplexMatrix direct_sum(const ComplexMatrix& A, const ComplexMatrix& B);

void require_square(const ComplexMatrix& A, std::string_view what);
void require_finite(const ComplexMatrix& A, std::string_view what);
bool is_zero_matrix(const ComplexMatrix& A);

}  // namespace apportion
