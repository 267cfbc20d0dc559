#include "apportion/core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "apportion/errors.hpp"

namespace apportion {

void Tolerance::validate() const {
    if (!(rel >= 0.0) || !(abs >= 0.0) || (rel == 0.0 && abs == 0.0)) {
        throw InvalidInput("tolerance: rel and abs must be >= 0 and not both zero");
    }
}

void require_square(const ComplexMatrix& A, std::string_view what) {
    if (A.size() == 0) throw InvalidInput(std::string(what) + ": empty matrix");
    if (A.rows() != A.cols()) {
        throw InvalidInput(std::string(what) + ": matrix is " + std::to_string(A.rows()) + "x" +
                           std::to_string(A.cols()) + ", expected square");
    }
}

void require_finite(const ComplexMatrix& A, std::string_view what) {
    if (!A.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}

bool is_zero_matrix(const ComplexMatrix& A) {
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            if (A(i, j) != Complex(0.0, 0.0)) return false;
    return true;
}

UniformityReport is_uniform(const ComplexMatrix& B, Tolerance tol) {
    tol.validate();
    if (B.size() == 0) throw InvalidInput("is_uniform: empty matrix");
    require_finite(B, "is_uniform");

    const Eigen::MatrixXd moduli = B.cwiseAbs();
    UniformityReport r;
    r.kappa = moduli.mean();
    r.defect = (moduli.array() - r.kappa).abs().maxCoeff();
    r.is_uniform = r.defect <= std::max(tol.abs, tol.rel * r.kappa);
    return r;
}

double equilibrated_rcond(const ComplexMatrix& M) {
    require_square(M, "equilibrated_rcond");
    ComplexMatrix scaled = M;
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
        const double norm = M.col(j).norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) return 0.0;
        scaled.col(j) /= norm;
    }
    const Eigen::PartialPivLU<ComplexMatrix> lu(scaled);
    for (Eigen::Index i = 0; i < lu.matrixLU().rows(); ++i)
        if (lu.matrixLU()(i, i) == Complex(0.0, 0.0)) return 0.0;
    const double rc = lu.rcond();
    return std::isfinite(rc) ? rc : 0.0;
}

namespace {

void check_shapes(const ComplexMatrix& M, const ComplexMatrix& A) {
    require_square(M, "similarity_image (M)");
    require_square(A, "similarity_image (A)");
    if (M.rows() != A.rows()) throw InvalidInput("similarity_image: M and A differ in order");
    require_finite(M, "similarity_image (M)");
    require_finite(A, "similarity_image (A)");
}

}  // namespace

ComplexMatrix similarity_image(const ComplexMatrix& M, const ComplexMatrix& A) {
    check_shapes(M, A);
    const double rc = equilibrated_rcond(M);
    if (!(rc >= kSingularRcond)) {
        throw SingularMatrix("similarity_image: M is singular to working precision", rc);
    }
    // B M = M A  <=>  M^T B^T = (M A)^T
    const Eigen::PartialPivLU<ComplexMatrix> lu(M.transpose());
    const ComplexMatrix rhs = (M * A).transpose();
    return lu.solve(rhs).transpose();
}

ComplexMatrix similarity_image(const ComplexMatrix& M, const ComplexMatrix& Minv,
                               const ComplexMatrix& A) {
    check_shapes(M, A);
    if (Minv.rows() != M.rows() || Minv.cols() != M.cols()) {
        throw InvalidInput("similarity_image: inverse has the wrong shape");
    }
    return M * A * Minv;
}

double similarity_residual(const ComplexMatrix& M, const ComplexMatrix& A,
                           const ComplexMatrix& B) {
    const ComplexMatrix r = B * M - M * A;
    const Eigen::MatrixXd scale =
        B.cwiseAbs() * M.cwiseAbs() + M.cwiseAbs() * A.cwiseAbs();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
        for (Eigen::Index i = 0; i < r.rows(); ++i) {
            const double num = std::abs(r(i, j));
            if (num == 0.0) continue;
            const double den = scale(i, j);
            worst = std::max(worst, den > 0.0 ? num / den
                                              : std::numeric_limits<double>::infinity());
        }
    }
    return worst;
}

double trace_lower_bound(const ComplexMatrix& A) {
    require_square(A, "trace_lower_bound");
    return std::abs(A.trace()) / static_cast<double>(A.rows());
}

double hadamard_lower_bound(const ComplexMatrix& A) {
    require_square(A, "hadamard_lower_bound");
    const double n = static_cast<double>(A.rows());
    const Eigen::PartialPivLU<ComplexMatrix> lu(A);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const double u = std::abs(lu.matrixLU()(i, i));
        if (u == 0.0) return 0.0;
        log_det += std::log(u);
    }
    return std::exp(log_det / n) / std::sqrt(n);
}

ComplexMatrix direct_sum(const ComplexMatrix& A, const ComplexMatrix& B) {
    ComplexMatrix out = ComplexMatrix::Zero(A.rows() + B.rows(), A.cols() + B.cols());
    out.topLeftCorner(A.rows(), A.cols()) = A;
    out.bottomRightCorner(B.rows(), B.cols()) = B;
    return out;
}

}  // namespace apportion
