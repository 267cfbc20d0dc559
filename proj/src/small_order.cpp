// Rank-one, perturbed-identity, 2x2 and 3x3 constructions.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "apportion/constructors.hpp"
#include "apportion/errors.hpp"

namespace apportion {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCaseTol = 1e-12;      // gamma = 0 and |gamma| = 1 detection
constexpr double kRealPartTol = 1e-9;   // Re(lambda) = 1 - n/2 for the perturbed identity

bool gamma_is_zero(Complex l1, Complex l2) {
    return std::abs(l1 + l2) <= kCaseTol * std::max(std::abs(l1), std::abs(l2));
}

// |gamma| = 1  <=>  Re(lambda2 conj(lambda1)) = 0  <=>  lambda1 / lambda2 is imaginary.
bool gamma_is_unit(Complex l1, Complex l2) {
    return std::abs(std::real(l2 * std::conj(l1))) <= kCaseTol * std::abs(l1) * std::abs(l2);
}

void require_distinct_nonzero(Complex l1, Complex l2, const char* what) {
    if (l1 == Complex(0.0, 0.0) || l2 == Complex(0.0, 0.0))
        throw InvalidInput(std::string(what) + ": eigenvalues must be nonzero");
    if (l1 == l2) throw InvalidInput(std::string(what) + ": eigenvalues must be distinct");
    if (!std::isfinite(std::abs(l1)) || !std::isfinite(std::abs(l2)))
        throw InvalidInput(std::string(what) + ": non-finite eigenvalue");
}

// Strict interior of the admissible region for mu = lambda2 / lambda1 = x + iy
// off the gamma = 0 and |gamma| = 1 cases: x < 0 and |mu| |x + 1| < |y|.
// Points within a relative 1e-12 of the boundary count as outside.
bool strictly_inside(Complex l1, Complex l2) {
    const Complex mu = l2 / l1;
    const double x = mu.real(), y = mu.imag();
    if (!(x < 0.0)) return false;
    const double lhs = std::norm(mu) * (x + 1.0) * (x + 1.0), rhs = y * y;
    return rhs - lhs > kCaseTol * (rhs + lhs);
}

double interior_factor(Complex gamma) {
    const double g2 = std::norm(gamma);
    const double g4 = g2 * g2;
    return (1.0 - g4) / (2.0 * (g4 - std::real(gamma * gamma)));
}

ClassificationReport base_report(const ComplexMatrix& A) {
    ClassificationReport rep;
    rep.trace_bound = trace_lower_bound(A);
    rep.hadamard_bound = hadamard_lower_bound(A);
    rep.jordan = read_jordan_form(A);
    return rep;
}

}  // namespace

SpiralSolution spiral_sum(int n, double r) {
    if (n < 2) throw InvalidInput("spiral_sum: n must be >= 2");
    if (!std::isfinite(r) || !(r > 0.0)) throw InvalidInput("spiral_sum: r must be positive");
    if (r * n < 1.0 - 1e-12)
        throw InvalidInput("spiral_sum: infeasible, |r * sum| <= r n < 1 for r < 1/n");

    auto sum = [n](double theta) {
        Complex s(0.0, 0.0);
        for (int j = 1; j <= n; ++j) s += std::polar(1.0, j * theta);
        return s;
    };
    const double target = 1.0 / r;
    SpiralSolution out;
    if (target >= n) {
        out.rho = 0.0;
    } else {
        // f(theta) = |sum| falls from n at 0 to 0 at 2 pi / n.
        const double end = 2.0 * kPi / n;
        constexpr int kScan = 64;
        double lo = 0.0, hi = end;
        for (int k = 1; k <= kScan; ++k) {
            const double t = end * k / kScan;
            if (std::abs(sum(t)) - target <= 0.0) {
                hi = t;
                lo = end * (k - 1) / kScan;
                break;
            }
        }
        for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double g = std::abs(sum(mid)) - target;
            if (std::abs(g) <= 1e-13) {
                lo = hi = mid;
                break;
            }
            (g > 0.0 ? lo : hi) = mid;
        }
        out.rho = 0.5 * (lo + hi);
    }
    out.alpha = std::arg(sum(out.rho));
    for (int j = 1; j <= n; ++j) out.thetas.push_back(j * out.rho - out.alpha);

    Complex check(0.0, 0.0);
    for (const double t : out.thetas) check += std::polar(r, t);
    if (!(std::abs(check - 1.0) <= 1e-10)) throw std::logic_error("spiral_sum: bisection did not converge");
    return out;
}

ApportionCertificate apportion_rank_one(Complex lambda, int n, double kappa) {
    if (lambda == Complex(0.0, 0.0)) throw InvalidInput("apportion_rank_one: lambda = 0 is the zero matrix");
    if (n < 2) throw InvalidInput("apportion_rank_one: n must be >= 2");
    const double lo = std::abs(lambda) / n;
    if (!std::isfinite(kappa) || kappa < lo * (1.0 - 1e-12))
        throw ConstantNotAchievable("apportion_rank_one: kappa below |lambda|/n",
                                    ConstantSet::closed_half_line(lo).symbolic());
    const double r = kappa / std::abs(lambda);
    const SpiralSolution sp = spiral_sum(n, r);

    const ComplexMatrix U = ComplexMatrix::Ones(n, 1);
    ComplexMatrix V(1, n);
    for (int j = 0; j < n; ++j) V(0, j) = std::polar(r, sp.thetas[static_cast<size_t>(j)]);
    const InversePair pair = complete_inverse_pair(U, V);
    ComplexMatrix A = ComplexMatrix::Zero(n, n);
    A(0, 0) = lambda;
    return make_certificate(A, pair.M, pair.Minv, TheoremTag::RankOne);
}

ConstantSet perturb_identity_constants(int n, Complex lambda) {
    const double y = lambda.imag();
    if (n % 2 == 0 && std::abs(y) <= kRealPartTol) return ConstantSet::closed_half_line(0.5);
    std::vector<double> values;
    for (int s = 0; s <= (n - 1) / 2; ++s) {
        const double q = y / (n - 2 * s);
        values.push_back(std::sqrt(q * q + 0.25));
    }
    return ConstantSet::finite(std::move(values));
}

ClassificationReport apportion_perturb_identity(int n, Complex lambda, std::optional<double> target) {
    if (n < 3) throw InvalidInput("apportion_perturb_identity: n must be >= 3");
    if (!std::isfinite(std::abs(lambda))) throw InvalidInput("apportion_perturb_identity: non-finite lambda");
    ComplexMatrix A = ComplexMatrix::Identity(n, n);
    A(n - 1, n - 1) = lambda;
    ClassificationReport rep = base_report(A);

    const double re_needed = 1.0 - n / 2.0;
    if (std::abs(lambda.real() - re_needed) > kRealPartTol) {
        rep.verdict = Verdict::NotApportionable;
        rep.constants = ConstantSet::empty();
        rep.theorem_tag = "rank-one perturbation of I: Re(lambda) != 1 - n/2";
        return rep;
    }
    rep.verdict = Verdict::Apportionable;
    rep.constants = perturb_identity_constants(n, lambda);
    rep.theorem_tag = "rank-one perturbation of I: I ⊕ [lambda] with Re(lambda) = 1 - n/2";

    if (!target) {
        const Complex w = std::polar(1.0, -2.0 * kPi / n);
        ComplexMatrix F(n, n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) F(j, k) = std::pow(w, j * k) / std::sqrt(static_cast<double>(n));
        rep.certificate = make_certificate(A, F, F.adjoint(), TheoremTag::PerturbIdentity);
        return rep;
    }

    const double kappa = *target;
    if (rep.constants.contains(kappa) != ConstantSet::Membership::Member)
        throw ConstantNotAchievable("apportion_perturb_identity: kappa not in K(A)", rep.constants.symbolic());

    int plus_count = n / 2;  // number of w_j taking the + sign
    double t = kappa;
    if (rep.constants.kind == ConstantSet::Kind::FiniteSet) {
        const double y = lambda.imag();
        int s_found = 0;
        double best = INFINITY;
        for (int s = 0; s <= (n - 1) / 2; ++s) {
            const double q = y / (n - 2 * s);
            const double ks = std::sqrt(q * q + 0.25);
            if (std::abs(ks - kappa) < best) {
                best = std::abs(ks - kappa);
                s_found = s;
                t = ks;
            }
        }
        plus_count = y >= 0.0 ? s_found : n - s_found;
    }

    const Complex snapped(re_needed, lambda.imag());
    const double q = std::sqrt(std::max(0.0, t * t - 0.25));
    ComplexMatrix M = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const Complex num = j < plus_count ? Complex(0.5, q) : Complex(0.5, -q);
        M(j, n - 1) = num / (1.0 - snapped);
    }
    for (int k = 0; k < n - 1; ++k) M(0, k) = -1.0;
    for (int i = 1; i < n; ++i) M(i, n - 1 - i) = 1.0;
    const ComplexMatrix Minv = M.partialPivLu().inverse();
    rep.certificate = make_certificate(A, M, Minv, TheoremTag::PerturbIdentity);
    return rep;
}

ConstantSet two_by_two_constants(Complex l1, Complex l2) {
    require_distinct_nonzero(l1, l2, "two_by_two_constants");
    if (gamma_is_zero(l1, l2)) return ConstantSet::closed_half_line(std::max(std::abs(l1), std::abs(l2)) / std::sqrt(2.0));
    const double half_sum = std::abs((l1 + l2) / 2.0);
    if (gamma_is_unit(l1, l2)) return ConstantSet::finite({half_sum});
    if (!strictly_inside(l1, l2)) return ConstantSet::empty();
    return ConstantSet::finite({half_sum * std::sqrt(1.0 + interior_factor((l2 + l1) / (l2 - l1)))});
}

std::optional<TwoByTwoPlan> plan_2x2(Complex l1, Complex l2, double kappa) {
    require_distinct_nonzero(l1, l2, "plan_2x2");
    TwoByTwoPlan plan;
    plan.gamma = (l2 + l1) / (l2 - l1);
    if (gamma_is_zero(l1, l2)) {
        plan.gamma = Complex(0.0, 0.0);
        const double t = kappa / std::max(std::abs(l1), std::abs(l2));
        plan.omega = Complex(std::sqrt(t * t / 2.0 + 0.25), std::sqrt(std::max(0.0, t * t / 2.0 - 0.25)));
    } else if (gamma_is_unit(l1, l2)) {
        plan.omega = Complex(0.0, 0.0);
    } else {
        if (!strictly_inside(l1, l2)) return std::nullopt;
        plan.omega = plan.gamma * std::sqrt(interior_factor(plan.gamma)) * Complex(0.0, 1.0);
    }
    plan.b = std::sqrt((plan.omega * plan.omega - 1.0) / 4.0);
    if (plan.b == Complex(0.0, 0.0)) throw std::logic_error("plan_2x2: b = 0 (omega^2 = 1)");
    plan.a = 1.0;
    plan.c = (plan.omega - 1.0) / (2.0 * plan.b);
    plan.d = (plan.omega + 1.0) / 2.0;
    return plan;
}

ClassificationReport apportion_2x2(Complex l1, Complex l2, std::optional<double> target) {
    require_distinct_nonzero(l1, l2, "apportion_2x2");
    ComplexMatrix A = ComplexMatrix::Zero(2, 2);
    A(0, 0) = l1;
    A(1, 1) = l2;
    ClassificationReport rep = base_report(A);
    rep.constants = two_by_two_constants(l1, l2);
    rep.theorem_tag = "2x2 distinct nonzero eigenvalues: gamma = 0 or Re(gamma^2) < |gamma|^4 <= 1";
    if (rep.constants.kind == ConstantSet::Kind::Empty) {
        rep.verdict = Verdict::NotApportionable;
        return rep;
    }
    rep.verdict = Verdict::Apportionable;
    const double kappa = target.value_or(rep.constants.infimum());
    if (target && rep.constants.contains(kappa) != ConstantSet::Membership::Member)
        throw ConstantNotAchievable("apportion_2x2: kappa not in K(A)", rep.constants.symbolic());

    const auto plan = plan_2x2(l1, l2, kappa);
    if (!plan) throw std::logic_error("apportion_2x2: plan missing for an apportionable pair");
    ComplexMatrix M(2, 2), Minv(2, 2);
    M << plan->a, plan->b, plan->c, plan->d;
    Minv << plan->d, -plan->b, -plan->c, plan->a;
    rep.certificate = make_certificate(A, M, Minv, TheoremTag::TwoByTwo);
    return rep;
}

bool polar_condition_2x2(Complex l1, Complex l2) {
    if (l1 == Complex(0.0, 0.0) || l2 == Complex(0.0, 0.0))
        throw InvalidInput("polar_condition_2x2: eigenvalues must be nonzero");
    if (l1 == l2) return false;
    if (gamma_is_zero(l1, l2) || gamma_is_unit(l1, l2)) return true;
    return strictly_inside(l1, l2);
}

ApportionCertificate apportion_3x3_template(TemplateKind kind, Complex lambda) {
    if (lambda == Complex(0.0, 0.0)) {
        const JordanSpec spec = kind == TemplateKind::LambdaJ2PlusZero
                                    ? JordanSpec{{{0.0, 2}, {0.0, 1}}}
                                    : JordanSpec{{{0.0, 1}, {0.0, 2}}};
        return apportion_nilpotent(spec, 1.0);
    }
    const Complex w3 = std::polar(1.0, 2.0 * kPi / 3.0);
    const Complex w6 = std::polar(1.0, kPi / 3.0);
    ComplexMatrix T(3, 3), Tinv(3, 3), A = ComplexMatrix::Zero(3, 3);
    ComplexVector scale = ComplexVector::Ones(3);
    if (kind == TemplateKind::LambdaJ2PlusZero) {
        T << 0.0, 1.0, 1.0, w3, 0.0, 1.0, 1.0, 0.0, 0.0;
        Tinv << 0.0, 0.0, 1.0, 1.0, -1.0, w3, 0.0, 1.0, -w3;
        scale(0) = lambda;
        A << lambda, 1.0, 0.0, 0.0, lambda, 0.0, 0.0, 0.0, 0.0;
    } else {
        T << 0.0, 1.0, w3, 1.0, 0.0, w6, 1.0, 1.0, 0.0;
        Tinv << -1.0, w6, 1.0, 1.0, -w6, w6, std::conj(w6), std::conj(w6), -std::conj(w6);
        Tinv /= (1.0 + w6);
        scale(1) = lambda;
        A << lambda, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0;
    }
    const ComplexMatrix M = T * scale.asDiagonal();
    const ComplexMatrix Minv = scale.cwiseInverse().asDiagonal() * Tinv;
    return make_certificate(A, M, Minv, TheoremTag::ThreeByThreeTemplate);
}

}  // namespace apportion
