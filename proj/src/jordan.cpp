#include "apportion/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "apportion/errors.hpp"

namespace apportion {

int JordanSpec::order() const {
    int n = 0;
    for (const auto& b : blocks) n += b.size;
    return n;
}

int JordanSpec::rank() const {
    int zero_blocks = 0;
    for (const auto& b : blocks)
        if (b.lambda == Complex(0.0, 0.0)) ++zero_blocks;
    return order() - zero_blocks;
}

double JordanSpec::spectral_radius() const {
    double rho = 0.0;
    for (const auto& b : blocks) rho = std::max(rho, std::abs(b.lambda));
    return rho;
}

bool JordanSpec::is_nilpotent() const {
    return std::all_of(blocks.begin(), blocks.end(),
                       [](const JordanBlock& b) { return b.lambda == Complex(0.0, 0.0); });
}

bool JordanSpec::is_zero() const {
    return is_nilpotent() && std::all_of(blocks.begin(), blocks.end(),
                                         [](const JordanBlock& b) { return b.size == 1; });
}

std::vector<Complex> JordanSpec::diagonal() const {
    std::vector<Complex> d;
    d.reserve(static_cast<size_t>(order()));
    for (const auto& b : blocks) d.insert(d.end(), static_cast<size_t>(b.size), b.lambda);
    return d;
}

std::vector<int> JordanSpec::superdiagonal() const {
    std::vector<int> alpha;
    for (const auto& b : blocks) {
        for (int k = 0; k + 1 < b.size; ++k) alpha.push_back(1);
        alpha.push_back(0);
    }
    if (!alpha.empty()) alpha.pop_back();
    return alpha;
}

void validate(const JordanSpec& spec) {
    if (spec.blocks.empty()) throw InvalidInput("jordan spec: no blocks");
    for (const auto& b : spec.blocks) {
        if (b.size < 1) throw InvalidInput("jordan spec: block size must be >= 1");
        if (!std::isfinite(b.lambda.real()) || !std::isfinite(b.lambda.imag()))
            throw InvalidInput("jordan spec: non-finite eigenvalue");
    }
}

namespace {

double arg_key(Complex z) {
    if (z == Complex(0.0, 0.0)) return 0.0;
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
}

}  // namespace

JordanSpec canonical(JordanSpec spec) {
    for (auto& b : spec.blocks) {
        // Normalize signed zeros so equal eigenvalues compare and sort together.
        b.lambda = Complex(b.lambda.real() + 0.0, b.lambda.imag() + 0.0);
    }
    std::stable_sort(spec.blocks.begin(), spec.blocks.end(),
                     [](const JordanBlock& x, const JordanBlock& y) {
                         const double mx = std::abs(x.lambda), my = std::abs(y.lambda);
                         if (mx != my) return mx > my;
                         if (x.size != y.size) return x.size > y.size;
                         return arg_key(x.lambda) < arg_key(y.lambda);
                     });
    return spec;
}

Eigen::MatrixXd block_permutation(const JordanSpec& from, const JordanSpec& to) {
    const int n = from.order();
    if (to.order() != n || to.blocks.size() != from.blocks.size())
        throw InvalidInput("block_permutation: specs differ in shape");

    std::vector<int> offset(from.blocks.size());
    for (size_t i = 0, pos = 0; i < from.blocks.size(); ++i) {
        offset[i] = static_cast<int>(pos);
        pos += static_cast<size_t>(from.blocks[i].size);
    }
    std::vector<bool> used(from.blocks.size(), false);
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
    int target = 0;
    for (const auto& tb : to.blocks) {
        size_t match = from.blocks.size();
        for (size_t i = 0; i < from.blocks.size(); ++i) {
            if (!used[i] && from.blocks[i].size == tb.size && from.blocks[i].lambda == tb.lambda) {
                match = i;
                break;
            }
        }
        if (match == from.blocks.size())
            throw InvalidInput("block_permutation: specs hold different blocks");
        used[match] = true;
        for (int k = 0; k < tb.size; ++k) Q(target + k, offset[match] + k) = 1.0;
        target += tb.size;
    }
    return Q;
}

ComplexMatrix build_jordan(const JordanSpec& spec) {
    validate(spec);
    const int n = spec.order();
    ComplexMatrix J = ComplexMatrix::Zero(n, n);
    int pos = 0;
    for (const auto& b : spec.blocks) {
        for (int k = 0; k < b.size; ++k) {
            J(pos + k, pos + k) = b.lambda;
            if (k + 1 < b.size) J(pos + k, pos + k + 1) = 1.0;
        }
        pos += b.size;
    }
    return J;
}

ScaledJordan scale_jordan(const JordanSpec& spec, Complex lambda) {
    validate(spec);
    if (lambda == Complex(0.0, 0.0)) throw InvalidInput("scale_jordan: lambda must be nonzero");
    const int n = spec.order();
    ScaledJordan out;
    out.spec = spec;
    for (auto& b : out.spec.blocks) b.lambda *= lambda;
    out.S = ComplexMatrix::Zero(n, n);
    out.Sinv = ComplexMatrix::Zero(n, n);
    int pos = 0;
    for (const auto& b : spec.blocks) {
        Complex power(1.0, 0.0);
        for (int k = 0; k < b.size; ++k) {
            out.S(pos + k, pos + k) = power;
            out.Sinv(pos + k, pos + k) = 1.0 / power;
            power *= lambda;
        }
        pos += b.size;
    }
    return out;
}

std::optional<JordanSpec> read_jordan_form(const ComplexMatrix& A) {
    require_square(A, "read_jordan_form");
    const Eigen::Index n = A.rows();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            if (i != j && j != i + 1 && A(i, j) != Complex(0.0, 0.0)) return std::nullopt;

    JordanSpec spec;
    JordanBlock current{A(0, 0), 1};
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const Complex s = A(k, k + 1);
        if (s == Complex(1.0, 0.0)) {
            if (A(k + 1, k + 1) != A(k, k)) return std::nullopt;
            ++current.size;
        } else if (s == Complex(0.0, 0.0)) {
            spec.blocks.push_back(current);
            current = JordanBlock{A(k + 1, k + 1), 1};
        } else {
            return std::nullopt;
        }
    }
    spec.blocks.push_back(current);
    return spec;
}

namespace {

void check_pair(const ComplexMatrix& U, const ComplexMatrix& V) {
    const Eigen::Index n = U.rows(), m = U.cols();
    if (m < 1 || m >= n) throw InvalidInput("complete_inverse_pair: need 1 <= m < n");
    if (V.rows() != m || V.cols() != n) throw InvalidInput("complete_inverse_pair: V must be m x n");
    require_finite(U, "complete_inverse_pair (U)");
    require_finite(V, "complete_inverse_pair (V)");
    const double err = (V * U - ComplexMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
    if (!(err <= 1e-10))
        throw PreconditionViolation("complete_inverse_pair: V U differs from I by " +
                                    std::to_string(err));
}

}  // namespace

InversePair complete_inverse_pair(const ComplexMatrix& U, const ComplexMatrix& V) {
    check_pair(U, V);
    const Eigen::Index n = U.rows(), m = U.cols();

    const Eigen::HouseholderQR<ComplexMatrix> qr(V.adjoint());
    const ComplexMatrix R = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    const double rmax = R.diagonal().cwiseAbs().maxCoeff();
    const double rmin = R.diagonal().cwiseAbs().minCoeff();
    if (!(rmin > 1e-12 * rmax)) throw SingularMatrix("complete_inverse_pair: V is rank deficient", rmin / rmax);
    const ComplexMatrix Q1 = qr.householderQ() * ComplexMatrix::Identity(n, m);

    // Project e_1..e_n onto col(V^*)^perp, then pick columns greedily by
    // residual norm with modified Gram-Schmidt.
    ComplexMatrix residual = ComplexMatrix::Identity(n, n) - Q1 * Q1.adjoint();
    ComplexMatrix Uprime(n, n - m);
    for (Eigen::Index k = 0; k < n - m; ++k) {
        Eigen::Index best = 0;
        residual.colwise().norm().maxCoeff(&best);
        const ComplexVector q = residual.col(best).normalized();
        Uprime.col(k) = q;
        residual -= q * (q.adjoint() * residual);
    }

    InversePair out;
    out.M.resize(n, n);
    out.M << U, Uprime;
    out.Minv.resize(n, n);
    // With orthonormal U' and V U' = 0, [O I][U | U']^{-1} = U'^*(I - U V).
    out.Minv << V, Uprime.adjoint() * (ComplexMatrix::Identity(n, n) - U * V);
    return out;
}

InversePair complete_inverse_pair(const ComplexMatrix& U, const ComplexMatrix& V,
                                  const ComplexMatrix& Uprime) {
    check_pair(U, V);
    const Eigen::Index n = U.rows(), m = U.cols();
    if (Uprime.rows() != n || Uprime.cols() != n - m)
        throw InvalidInput("complete_inverse_pair: U' must be n x (n-m)");
    require_finite(Uprime, "complete_inverse_pair (U')");
    const double leak = (V * Uprime).cwiseAbs().maxCoeff();
    const double scale = V.cwiseAbs().maxCoeff() * Uprime.cwiseAbs().maxCoeff();
    if (!(leak <= 1e-10 * std::max(1.0, scale)))
        throw PreconditionViolation("complete_inverse_pair: columns of U' are not orthogonal to V^*");

    const ComplexMatrix gram = Uprime.adjoint() * Uprime;
    const Eigen::LDLT<ComplexMatrix> ldlt(gram);
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().real().minCoeff() > 0.0))
        throw SingularMatrix("complete_inverse_pair: U' is rank deficient", 0.0);

    InversePair out;
    out.M.resize(n, n);
    out.M << U, Uprime;
    out.Minv.resize(n, n);
    out.Minv << V, ldlt.solve(Uprime.adjoint() * (ComplexMatrix::Identity(n, n) - U * V));
    return out;
}

}  // namespace apportion
