#pragma once

#include <optional>
#include <vector>

#include "apportion/certificate.hpp"
#include "apportion/jordan.hpp"
#include "apportion/report.hpp"

namespace apportion {

// Certificate for cert.A ⊕ [0] with the same kappa.
ApportionCertificate pad_by_zero(const ApportionCertificate& cert);

// Nilpotent Jordan spec, any kappa > 0. The certificate is for build_jordan(spec).
ApportionCertificate apportion_nilpotent(const JordanSpec& spec, double kappa);

// I_n ⊕ O_n, kappa >= 1/2.
ApportionCertificate apportion_I_oplus_O(int n, double kappa);

// Vectors of the half-rank construction for a canonical spec of order 2r and
// rank r whose eigenvalues all have modulus < 2 (target constant 1).
struct HalfRankPlan {
    int r = 0;
    std::vector<Complex> zetas;   // per k = 1..r (0 where lambda_k = 0)
    std::vector<Complex> gammas;  // per k = 1..r (1 where lambda_k = 0)
    ComplexMatrix U;              // 2r x r, columns u_1..u_r
    ComplexMatrix Uhat;           // 2r x r, columns û_1..û_r
    ComplexMatrix V;              // r x 2r, rows v_1^T..v_r^T
    std::vector<int> omega;       // Ω, 1-based, ascending
    std::vector<int> phi;         // phi[j-1] = φ(j), 1-based
};

HalfRankPlan plan_half_rank(const JordanSpec& scaled_padded);

struct PaddedCertificate {
    ApportionCertificate cert;  // for build_jordan(spec) ⊕ O_padding
    int padding = 0;
};

// rank(A) = r >= n/2; certificate for A ⊕ O_{2r-n} at kappa > rho/2.
PaddedCertificate apportion_A_oplus_zeros(const JordanSpec& spec, double kappa);

// rank(A) <= n/2, kappa > rho/2. The certificate is for build_jordan(spec).
ApportionCertificate apportion_half_rank(const JordanSpec& spec, double kappa);
// Raw-entry form, order <= 3 (the Jordan structure is recovered numerically).
ApportionCertificate apportion_half_rank(const ComplexMatrix& A, double kappa);

struct SpiralSolution {
    double rho = 0.0;
    double alpha = 0.0;
    std::vector<double> thetas;
};

// theta_1..theta_n with r * sum exp(i theta_j) = 1; needs n >= 2, r >= 1/n.
SpiralSolution spiral_sum(int n, double r);

// diag(lambda, 0, ..., 0) of order n at kappa >= |lambda|/n.
ApportionCertificate apportion_rank_one(Complex lambda, int n, double kappa);

// I_{n-1} ⊕ [lambda]. Without a target the unitary DFT certificate is built.
// A lambda whose real part is not 1 - n/2 yields a NotApportionable report.
ClassificationReport apportion_perturb_identity(int n, Complex lambda,
                                                std::optional<double> target = std::nullopt);
// K(I_{n-1} ⊕ [lambda]) when Re(lambda) = 1 - n/2.
ConstantSet perturb_identity_constants(int n, Complex lambda);

struct TwoByTwoPlan {
    Complex gamma;
    Complex omega;
    Complex a, b, c, d;  // M = [[a, b], [c, d]], det M = 1
};

// diag(lambda1, lambda2) with distinct nonzero eigenvalues.
ClassificationReport apportion_2x2(Complex lambda1, Complex lambda2,
                                   std::optional<double> target = std::nullopt);
// Exact K(diag(lambda1, lambda2)) for distinct nonzero eigenvalues (Empty when not apportionable).
ConstantSet two_by_two_constants(Complex lambda1, Complex lambda2);
// Plan for constant kappa (ignored unless gamma = 0); nullopt when not apportionable.
std::optional<TwoByTwoPlan> plan_2x2(Complex lambda1, Complex lambda2, double kappa);

bool polar_condition_2x2(Complex lambda1, Complex lambda2);

enum class TemplateKind {
    LambdaJ2PlusZero,  // J_2(lambda) ⊕ [0], constant |lambda|
    LambdaPlusN2,      // [lambda] ⊕ J_2(0), constant |lambda|/sqrt(3)
};

ApportionCertificate apportion_3x3_template(TemplateKind kind, Complex lambda);

}  // namespace apportion
