#include <cmath>
#include <numbers>
#include <string>

#include "apportion/constructors.hpp"
#include "apportion/errors.hpp"
#include "internal.hpp"

namespace apportion {
namespace {

std::string open_line(double lo) { return ConstantSet::open_half_line(lo).as_superset(lo).symbolic(); }

// Certificate for build_jordan(native), native canonical of order 2r and rank r,
// not nilpotent, kappa > rho/2.
ApportionCertificate half_rank_core(const JordanSpec& native, double kappa) {
    const ScaledJordan scaled = scale_jordan(native, Complex(1.0 / kappa, 0.0));
    const HalfRankPlan plan = plan_half_rank(scaled.spec);
    const int r = plan.r;

    const InversePair pair = complete_inverse_pair(plan.U, plan.V, plan.Uhat);
    ComplexMatrix MP(2 * r, 2 * r), MPinv(2 * r, 2 * r);
    for (int j = 0; j < 2 * r; ++j) {
        const int target = plan.phi[static_cast<size_t>(j)] - 1;
        MP.col(j) = pair.M.col(target);
        MPinv.row(j) = pair.Minv.row(target);
    }
    // MP (J/kappa scaled to Jordan form) MP^{-1} has modulus 1, so
    // (MP S) J (MP S)^{-1} has modulus kappa.
    return make_certificate(build_jordan(native), MP * scaled.S, scaled.Sinv * MPinv,
                            TheoremTag::HalfRank);
}

void require_kappa(double kappa, double rho) {
    if (!std::isfinite(kappa) || !(kappa > rho / 2.0))
        throw ConstantNotAchievable("half-rank construction needs kappa > rho/2 = " + std::to_string(rho / 2.0),
                                    open_line(rho / 2.0));
}

}  // namespace

ApportionCertificate apportion_I_oplus_O(int n, double kappa) {
    if (n < 1) throw InvalidInput("apportion_I_oplus_O: n must be >= 1");
    if (!std::isfinite(kappa) || !(kappa >= 0.5))
        throw ConstantNotAchievable("apportion_I_oplus_O: kappa must be >= 1/2", "[0.5, ∞)");
    const Complex zeta(0.5, std::sqrt(kappa * kappa - 0.25));
    ComplexMatrix U = ComplexMatrix::Zero(2 * n, n);
    ComplexMatrix V = ComplexMatrix::Zero(n, 2 * n);
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= 2 * n; ++j) U(j - 1, k - 1) = j >= 2 * k ? zeta : -std::conj(zeta);
        V(k - 1, 2 * k - 1) = 1.0;
        V(k - 1, 2 * k - 2) = -1.0;
    }
    const InversePair pair = complete_inverse_pair(U, V);
    const ComplexMatrix A = direct_sum(ComplexMatrix::Identity(n, n), ComplexMatrix::Zero(n, n));
    return make_certificate(A, pair.M, pair.Minv, TheoremTag::IOplusO);
}

HalfRankPlan plan_half_rank(const JordanSpec& spec) {
    validate(spec);
    const int n = spec.order();
    const int r = spec.rank();
    if (n != 2 * r) throw InvalidInput("plan_half_rank: order must be twice the rank");
    if (spec.is_nilpotent()) throw InvalidInput("plan_half_rank: nilpotent spec");
    if (!(spec.spectral_radius() < 2.0)) throw InvalidInput("plan_half_rank: eigenvalues must have modulus < 2");

    const std::vector<Complex> lambda = spec.diagonal();
    const std::vector<int> alpha = spec.superdiagonal();
    for (int k = 1; k < n; ++k)
        if (std::abs(lambda[static_cast<size_t>(k)]) > std::abs(lambda[static_cast<size_t>(k - 1)]))
            throw InvalidInput("plan_half_rank: eigenvalue moduli must be non-increasing");

    const Complex w1 = std::polar(1.0, std::numbers::pi / 3.0);
    const Complex w5 = std::polar(1.0, 5.0 * std::numbers::pi / 3.0);

    HalfRankPlan plan;
    plan.r = r;
    plan.U = ComplexMatrix::Zero(n, r);
    plan.Uhat = ComplexMatrix::Zero(n, r);
    plan.V = ComplexMatrix::Zero(r, n);
    for (int k = 1; k <= r; ++k) {
        const Complex lk = lambda[static_cast<size_t>(k - 1)];
        Complex hi, lo, gamma(1.0, 0.0), zeta(0.0, 0.0);
        if (lk != Complex(0.0, 0.0)) {
            const double m = std::abs(lk);
            zeta = Complex(m / 2.0, std::sqrt(4.0 - m * m) / 2.0);
            gamma = std::pow((std::conj(zeta) * std::conj(zeta) - 1.0) * lk, k);
            hi = zeta / (gamma * m);
            lo = -std::conj(zeta) / (gamma * m);
        } else {
            hi = w1;
            lo = -w5;
        }
        plan.zetas.push_back(zeta);
        plan.gammas.push_back(gamma);
        for (int j = 1; j <= n; ++j) {
            plan.U(j - 1, k - 1) = j >= 2 * k ? hi : lo;
            plan.Uhat(j - 1, k - 1) = j >= 2 * k + 1 ? 1.0 : -1.0;
        }
        plan.V(k - 1, 2 * k - 1) = gamma;
        plan.V(k - 1, 2 * k - 2) = -gamma;
    }

    plan.omega.push_back(1);
    for (int l = 2; l <= n; ++l)
        if (lambda[static_cast<size_t>(l - 1)] != Complex(0.0, 0.0) || alpha[static_cast<size_t>(l - 2)] != 0)
            plan.omega.push_back(l);
    if (static_cast<int>(plan.omega.size()) != r)
        throw std::logic_error("plan_half_rank: |Omega| differs from the rank");

    plan.phi.assign(static_cast<size_t>(n), 0);
    int next_in = 1, next_out = r + 1;
    size_t oi = 0;
    for (int j = 1; j <= n; ++j) {
        if (oi < plan.omega.size() && plan.omega[oi] == j) {
            plan.phi[static_cast<size_t>(j - 1)] = next_in++;
            ++oi;
        } else {
            plan.phi[static_cast<size_t>(j - 1)] = next_out++;
        }
    }
    return plan;
}

PaddedCertificate apportion_A_oplus_zeros(const JordanSpec& spec, double kappa) {
    validate(spec);
    const int n = spec.order(), r = spec.rank();
    if (2 * r < n) throw OutOfScope("apportion_A_oplus_zeros: rank < n/2 (use apportion_half_rank)");
    const int m = 2 * r - n;
    JordanSpec padded = spec;
    for (int k = 0; k < m; ++k) padded.blocks.push_back({Complex(0.0, 0.0), 1});

    if (spec.is_nilpotent()) return {apportion_nilpotent(padded, kappa), m};
    require_kappa(kappa, spec.spectral_radius());
    const JordanSpec native = canonical(padded);
    return {detail::reorder(half_rank_core(native, kappa), native, padded), m};
}

ApportionCertificate apportion_half_rank(const JordanSpec& spec, double kappa) {
    validate(spec);
    const int n = spec.order(), r = spec.rank();
    if (2 * r > n) throw OutOfScope("apportion_half_rank: rank " + std::to_string(r) + " exceeds n/2");
    if (spec.is_nilpotent()) return apportion_nilpotent(spec, kappa);
    require_kappa(kappa, spec.spectral_radius());

    const JordanSpec native = canonical(spec);
    const int m = n - 2 * r;
    JordanSpec core = native;
    for (int k = 0; k < m; ++k) {
        const JordanBlock last = core.blocks.back();
        if (last.size != 1 || last.lambda != Complex(0.0, 0.0))
            throw std::logic_error("apportion_half_rank: too few zero 1-blocks to peel");
        core.blocks.pop_back();
    }
    ApportionCertificate cert = half_rank_core(core, kappa);
    for (int k = 0; k < m; ++k) {
        cert = pad_by_zero(cert);
        cert.tag = TheoremTag::HalfRank;
    }
    return detail::reorder(cert, native, spec);
}

ApportionCertificate apportion_half_rank(const ComplexMatrix& A, double kappa) {
    require_square(A, "apportion_half_rank");
    require_finite(A, "apportion_half_rank");
    if (const auto spec = read_jordan_form(A)) return apportion_half_rank(*spec, kappa);
    if (A.rows() > 3)
        throw UnsupportedOrder("apportion_half_rank: raw input of order > 3 needs a Jordan spec");
    const EigenStructure es = eigenstructure_small(A);
    const ComplexMatrix P = jordan_basis_small(A, es.spec);
    const ComplexMatrix Pinv = P.partialPivLu().inverse();
    return transport(apportion_half_rank(es.spec, kappa), A, Pinv, P);
}

}  // namespace apportion
