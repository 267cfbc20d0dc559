#include <cmath>
#include <numbers>

#include "apportion/constructors.hpp"
#include "apportion/errors.hpp"
#include "internal.hpp"

namespace apportion {

ApportionCertificate pad_by_zero(const ApportionCertificate& cert) {
    const Eigen::Index n = cert.A.rows();
    const Complex omega = std::polar(1.0, std::numbers::pi / 3.0);

    ComplexMatrix N = ComplexMatrix::Identity(n + 1, n + 1);
    N(0, n) = -omega;
    N(n, 0) = omega;
    ComplexMatrix Ninv = ComplexMatrix::Identity(n + 1, n + 1);
    Ninv(0, 0) = std::conj(omega);
    Ninv(0, n) = 1.0;
    Ninv(n, 0) = -1.0;
    Ninv(n, n) = std::conj(omega);

    const ComplexMatrix one = ComplexMatrix::Identity(1, 1);
    const ComplexMatrix zero = ComplexMatrix::Zero(1, 1);
    return make_certificate(direct_sum(cert.A, zero), N * direct_sum(cert.M, one),
                            direct_sum(cert.Minv, one) * Ninv, TheoremTag::PadZero);
}

ApportionCertificate apportion_nilpotent(const JordanSpec& spec, double kappa) {
    validate(spec);
    if (!spec.is_nilpotent()) throw InvalidInput("apportion_nilpotent: spec has a nonzero eigenvalue");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw InvalidInput("apportion_nilpotent: kappa must be positive and finite");
    if (spec.is_zero())
        throw ConstantNotAchievable("apportion_nilpotent: the zero matrix is uniform only at kappa = 0", "{0}");

    const JordanSpec native = canonical(spec);
    JordanSpec reduced;
    int stripped = 0;
    for (const auto& b : native.blocks) {
        if (b.size >= 2) reduced.blocks.push_back(b);
        else ++stripped;
    }
    const int n = reduced.order();

    // M0 = I + P D with P the cyclic shift e_j -> e_{j+1}.
    std::vector<Complex> d(static_cast<size_t>(n));
    double phase_sum = 0.0;
    for (int j = 1; j < n; ++j) {
        const double phase = (j - 1) * std::numbers::pi / 3.0;
        d[static_cast<size_t>(j - 1)] = std::polar(1.0, phase);
        phase_sum += phase;
    }
    d[static_cast<size_t>(n - 1)] =
        std::polar(1.0, 2.0 * std::numbers::pi / 3.0 - std::numbers::pi * n - phase_sum);

    ComplexMatrix X = ComplexMatrix::Zero(n, n);  // P D
    for (int j = 0; j < n; ++j) X((j + 1) % n, j) = d[static_cast<size_t>(j)];
    const ComplexMatrix I = ComplexMatrix::Identity(n, n);
    const ComplexMatrix M0 = I + X;

    // (I + X)^{-1} = sum_{j<n} (-X)^j / det, since X^n is a scalar multiple of I.
    Complex prod(1.0, 0.0);
    for (const Complex v : d) prod *= v;
    const Complex det = 1.0 + ((n - 1) % 2 == 0 ? prod : -prod);
    ComplexMatrix term = I, adj = I;
    for (int j = 1; j < n; ++j) {
        term = -(term * X);
        adj += term;
    }
    const ComplexMatrix Minv0 = adj / det;

    // M0 apportions at 1/|det|; N A N^{-1} = c A moves that to kappa.
    const double c = kappa * std::abs(det);
    const ComplexVector powers = detail::block_powers(reduced, Complex(1.0 / c, 0.0));
    const ComplexMatrix M = M0 * powers.asDiagonal();
    const ComplexMatrix Minv = powers.cwiseInverse().asDiagonal() * Minv0;

    ApportionCertificate cert = make_certificate(build_jordan(reduced), M, Minv, TheoremTag::Nilpotent);
    for (int k = 0; k < stripped; ++k) {
        cert = pad_by_zero(cert);
        cert.tag = TheoremTag::Nilpotent;
    }
    return detail::reorder(cert, native, spec);
}

}  // namespace apportion
