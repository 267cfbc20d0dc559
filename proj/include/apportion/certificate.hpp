#pragma once

#include <limits>
#include <string_view>

#include "apportion/core.hpp"

namespace apportion {

enum class TheoremTag {
    Trivial,  // zero matrix or 1x1, uniform as given
    PadZero,
    Nilpotent,
    IOplusO,
    HalfRank,
    RankOne,
    PerturbIdentity,
    TwoByTwo,
    ThreeByThreeTemplate,
    Search,
};

std::string_view to_string(TheoremTag tag);
TheoremTag tag_from_string(std::string_view name);

struct ApportionCertificate {
    ComplexMatrix A;
    ComplexMatrix M;
    ComplexMatrix Minv;
    ComplexMatrix B;  // M A M^{-1}, uniform
    double kappa = 0.0;
    TheoremTag tag = TheoremTag::Trivial;
};

// Computes B from M and A, then checks M Minv = I, the similarity residual and
// uniformity. Throws std::logic_error when a construction fails verification.
ApportionCertificate make_certificate(ComplexMatrix A, ComplexMatrix M, ComplexMatrix Minv,
                                      TheoremTag tag, Tolerance tol = {});

// Re-checks an existing certificate; returns false instead of throwing.
bool verify_certificate(const ApportionCertificate& cert, Tolerance tol = {});

// Certificate for A_target = S^{-1} cert.A S, i.e. M' = M S, Minv' = S^{-1} Minv.
ApportionCertificate transport(const ApportionCertificate& cert, const ComplexMatrix& A_target,
                               const ComplexMatrix& S, const ComplexMatrix& Sinv);

// Zero matrices and 1x1 matrices are uniform already (M = I).
ApportionCertificate trivial_certificate(const ComplexMatrix& A);

}  // namespace apportion
