#include "apportion/certificate.hpp"

#include <algorithm>
#include <string>

#include "apportion/errors.hpp"

namespace apportion {

std::string_view to_string(TheoremTag tag) {
    switch (tag) {
        case TheoremTag::Trivial: return "Trivial";
        case TheoremTag::PadZero: return "PadZero";
        case TheoremTag::Nilpotent: return "Nilpotent";
        case TheoremTag::IOplusO: return "IOplusO";
        case TheoremTag::HalfRank: return "HalfRank";
        case TheoremTag::RankOne: return "RankOne";
        case TheoremTag::PerturbIdentity: return "PerturbIdentity";
        case TheoremTag::TwoByTwo: return "TwoByTwo";
        case TheoremTag::ThreeByThreeTemplate: return "ThreeByThreeTemplate";
        case TheoremTag::Search: return "Search";
    }
    return "Trivial";
}

TheoremTag tag_from_string(std::string_view name) {
    for (const auto tag : {TheoremTag::Trivial, TheoremTag::PadZero, TheoremTag::Nilpotent,
                           TheoremTag::IOplusO, TheoremTag::HalfRank, TheoremTag::RankOne,
                           TheoremTag::PerturbIdentity, TheoremTag::TwoByTwo,
                           TheoremTag::ThreeByThreeTemplate, TheoremTag::Search}) {
        if (to_string(tag) == name) return tag;
    }
    throw InvalidInput("unknown theorem tag: " + std::string(name));
}

namespace {

// max_ij |M Minv - I|_ij / (|M| |Minv|)_ij
double inverse_error(const ComplexMatrix& M, const ComplexMatrix& Minv) {
    const Eigen::Index n = M.rows();
    const ComplexMatrix E = M * Minv - ComplexMatrix::Identity(n, n);
    const Eigen::MatrixXd scale = M.cwiseAbs() * Minv.cwiseAbs();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double e = std::abs(E(i, j));
            if (e == 0.0) continue;
            worst = std::max(worst, scale(i, j) > 0.0 ? e / scale(i, j) : e);
        }
    return worst;
}

std::string check(const ApportionCertificate& c, Tolerance tol) {
    const Eigen::Index n = c.A.rows();
    if (c.A.cols() != n || c.M.rows() != n || c.M.cols() != n || c.Minv.rows() != n ||
        c.Minv.cols() != n || c.B.rows() != n || c.B.cols() != n)
        return "shape mismatch";
    const double inv = inverse_error(c.M, c.Minv);
    if (!(inv <= 1e-10 * static_cast<double>(n))) return "M Minv differs from I (" + std::to_string(inv) + ")";
    const double res = similarity_residual(c.M, c.A, c.B);
    if (!(res <= 1e-9)) return "similarity residual " + std::to_string(res);
    const UniformityReport u = is_uniform(c.B, tol);
    if (!u.is_uniform) return "image is not uniform (defect " + std::to_string(u.defect) + ")";
    if (std::abs(u.kappa - c.kappa) > std::max(tol.abs, tol.rel * u.kappa)) return "kappa mismatch";
    return {};
}

}  // namespace

ApportionCertificate make_certificate(ComplexMatrix A, ComplexMatrix M, ComplexMatrix Minv,
                                      TheoremTag tag, Tolerance tol) {
    require_square(A, "certificate (A)");
    require_square(M, "certificate (M)");
    if (M.rows() != A.rows() || Minv.rows() != A.rows() || Minv.cols() != A.cols())
        throw InvalidInput("certificate: M, Minv and A differ in order");
    require_finite(M, "certificate (M)");
    require_finite(Minv, "certificate (Minv)");
    const double rc = equilibrated_rcond(M);
    if (!(rc >= kSingularRcond)) throw SingularMatrix("certificate: M is singular", rc);

    ApportionCertificate c;
    c.B = similarity_image(M, Minv, A);
    c.A = std::move(A);
    c.M = std::move(M);
    c.Minv = std::move(Minv);
    c.tag = tag;
    c.kappa = is_uniform(c.B, tol).kappa;
    if (const std::string why = check(c, tol); !why.empty())
        throw VerificationFailed("certificate (" + std::string(to_string(tag)) + ") failed verification: " + why);
    return c;
}

bool verify_certificate(const ApportionCertificate& cert, Tolerance tol) {
    try {
        if (!cert.M.allFinite() || !cert.Minv.allFinite() || !cert.B.allFinite()) return false;
        if (!(equilibrated_rcond(cert.M) >= kSingularRcond)) return false;
        return check(cert, tol).empty();
    } catch (const Error&) {
        return false;
    }
}

ApportionCertificate transport(const ApportionCertificate& cert, const ComplexMatrix& A_target,
                               const ComplexMatrix& S, const ComplexMatrix& Sinv) {
    return make_certificate(A_target, cert.M * S, Sinv * cert.Minv, cert.tag);
}

ApportionCertificate trivial_certificate(const ComplexMatrix& A) {
    require_square(A, "trivial_certificate");
    if (A.rows() != 1 && !is_zero_matrix(A))
        throw InvalidInput("trivial_certificate: only zero or 1x1 matrices are uniform as given");
    const Eigen::Index n = A.rows();
    return make_certificate(A, ComplexMatrix::Identity(n, n), ComplexMatrix::Identity(n, n),
                            TheoremTag::Trivial);
}

}  // namespace apportion
