#include "apportion/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "apportion/constructors.hpp"
#include "apportion/errors.hpp"
#include "internal.hpp"

namespace apportion {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Apportionable: return "Apportionable";
        case Verdict::NotApportionable: return "NotApportionable";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

namespace {

constexpr double kRealPartTol = 1e-9;
const Complex kZero(0.0, 0.0);

// A verdict plus, when the verdict is constructive, a builder for the
// certificate of build_jordan(spec) (nullopt = default constant).
struct Decision {
    ClassificationReport report;
    std::function<ApportionCertificate(std::optional<double>)> build;
};

JordanSpec ones(Complex lambda, int count) {
    JordanSpec s;
    for (int k = 0; k < count; ++k) s.blocks.push_back({lambda, 1});
    return s;
}

void set(Decision& d, Verdict v, ConstantSet k, std::string tag) {
    d.report.verdict = v;
    d.report.constants = std::move(k);
    d.report.theorem_tag = std::move(tag);
}

void refuse(Decision& d, std::string tag) { set(d, Verdict::NotApportionable, ConstantSet::empty(), std::move(tag)); }

// spec = c I + (rank one): either one J_2(c) with 1-blocks c, or n-1 blocks c and one mu.
bool perturbed_identity(Decision& d, const JordanSpec& spec) {
    const int n = spec.order();
    if (n < 3) return false;
    const JordanSpec c = canonical(spec);
    int twos = 0;
    for (const auto& b : c.blocks) {
        if (b.size > 2) return false;
        if (b.size == 2) ++twos;
    }
    if (twos == 1) {
        for (const auto& b : c.blocks)
            if (b.lambda != c.blocks.front().lambda) return false;
        refuse(d, "rank-one perturbation of identity similar to I + E12");
        return true;
    }
    if (twos != 0) return false;

    // Eigenvalue shared by n-1 of the 1-blocks.
    Complex common = kZero, other = kZero;
    bool found = false;
    for (const auto& cand : c.blocks) {
        int same = 0;
        for (const auto& b : c.blocks) same += b.lambda == cand.lambda;
        if (same == n - 1) {
            common = cand.lambda;
            found = true;
            break;
        }
    }
    if (!found || common == kZero) return false;
    for (const auto& b : c.blocks)
        if (b.lambda != common) other = b.lambda;

    const Complex lambda = other / common;
    const double scale = std::abs(common);
    if (std::abs(lambda.real() - (1.0 - n / 2.0)) > kRealPartTol) {
        refuse(d, "rank-one perturbation of identity: Re(lambda) != 1 - n/2");
        return true;
    }
    set(d, Verdict::Apportionable, perturb_identity_constants(n, lambda).scaled(scale),
        "rank-one perturbation of identity: I ⊕ [lambda] with Re(lambda) = 1 - n/2");
    JordanSpec native = ones(common, n - 1);
    native.blocks.push_back({other, 1});
    d.build = [=](std::optional<double> kappa) {
        std::optional<double> unit;
        if (kappa) unit = *kappa / scale;
        const ClassificationReport rep = apportion_perturb_identity(n, lambda, unit);
        const ApportionCertificate cert = make_certificate(build_jordan(native), rep.certificate->M,
                                                           rep.certificate->Minv, TheoremTag::PerturbIdentity);
        return detail::reorder(cert, native, spec);
    };
    return true;
}

void order_two(Decision& d, const JordanSpec& spec) {
    if (spec.blocks.size() == 1) {
        refuse(d, "single 2x2 Jordan block with nonzero eigenvalue");
        return;
    }
    const Complex l1 = spec.blocks[0].lambda, l2 = spec.blocks[1].lambda;
    const ConstantSet k = two_by_two_constants(l1, l2);
    if (k.kind == ConstantSet::Kind::Empty) {
        refuse(d, "2x2 distinct nonzero eigenvalues: gamma condition fails");
        return;
    }
    set(d, Verdict::Apportionable, k, "2x2 distinct nonzero eigenvalues");
    d.build = [=](std::optional<double> kappa) { return *apportion_2x2(l1, l2, kappa).certificate; };
}

bool order_three(Decision& d, const JordanSpec& spec, double floor) {
    const JordanSpec c = canonical(spec);
    if (c.blocks.size() == 2 && c.blocks[1].lambda == kZero && c.blocks[0].lambda != kZero) {
        const Complex lambda = c.blocks[0].lambda;
        const double m = std::abs(lambda);
        if (c.blocks[0].size == 2 && c.blocks[1].size == 1) {
            set(d, Verdict::Apportionable, ConstantSet::finite({m}).as_superset(floor),
                "3x3 template J2(lambda) ⊕ [0]");
            d.build = [=](std::optional<double>) {
                return detail::reorder(apportion_3x3_template(TemplateKind::LambdaJ2PlusZero, lambda), c, spec);
            };
            return true;
        }
        if (c.blocks[0].size == 1 && c.blocks[1].size == 2) {
            const JordanSpec native{{{lambda, 1}, {kZero, 2}}};
            set(d, Verdict::Apportionable, ConstantSet::finite({m / std::sqrt(3.0)}).as_superset(floor),
                "3x3 template [lambda] ⊕ J2(0)");
            d.build = [=](std::optional<double>) {
                return detail::reorder(apportion_3x3_template(TemplateKind::LambdaPlusN2, lambda), native, spec);
            };
            return true;
        }
    }
    if (c.blocks.size() == 3 && c.blocks[2].lambda == kZero && c.blocks[1].lambda != kZero &&
        c.blocks[0].lambda != c.blocks[1].lambda) {
        const Complex l1 = c.blocks[0].lambda, l2 = c.blocks[1].lambda;
        const ConstantSet k = two_by_two_constants(l1, l2);
        if (k.kind == ConstantSet::Kind::Empty) return false;
        set(d, Verdict::Apportionable, k.as_superset(floor), "diag(lambda1, lambda2) apportionable, padded by [0]");
        d.build = [=](std::optional<double> kappa) {
            return detail::reorder(pad_by_zero(*apportion_2x2(l1, l2, kappa).certificate), c, spec);
        };
        return true;
    }
    return false;
}

Decision decide(const JordanSpec& spec) {
    validate(spec);
    const ComplexMatrix J = build_jordan(spec);
    Decision d;
    d.report.trace_bound = trace_lower_bound(J);
    d.report.hadamard_bound = hadamard_lower_bound(J);
    d.report.jordan = spec;
    const double floor = std::max(d.report.trace_bound, d.report.hadamard_bound);
    const int n = spec.order();
    const double rho = spec.spectral_radius();

    if (spec.is_zero()) {
        set(d, Verdict::Apportionable, ConstantSet::zero_only(), "zero matrix");
        d.build = [J](std::optional<double>) { return trivial_certificate(J); };
        return d;
    }
    if (n == 1) {
        set(d, Verdict::Apportionable, ConstantSet::finite({rho}), "1x1 matrix");
        d.build = [J](std::optional<double>) { return trivial_certificate(J); };
        return d;
    }
    const bool scalar = std::all_of(spec.blocks.begin(), spec.blocks.end(), [&](const JordanBlock& b) {
        return b.size == 1 && b.lambda == spec.blocks.front().lambda;
    });
    if (scalar) {
        refuse(d, "nonzero scalar matrix lambda I");
        return d;
    }
    if (spec.is_nilpotent()) {
        set(d, Verdict::Apportionable, ConstantSet::open_half_line(0.0), "nilpotent");
        d.build = [spec](std::optional<double> kappa) { return apportion_nilpotent(spec, kappa.value_or(1.0)); };
        return d;
    }
    const int r = spec.rank();
    if (r == 1) {
        Complex lambda = kZero;
        for (const auto& b : spec.blocks)
            if (b.lambda != kZero) lambda = b.lambda;
        set(d, Verdict::Apportionable, ConstantSet::closed_half_line(rho / n), "rank one");
        JordanSpec native = ones(kZero, n - 1);
        native.blocks.insert(native.blocks.begin(), {lambda, 1});
        d.build = [=](std::optional<double> kappa) {
            return detail::reorder(apportion_rank_one(lambda, n, kappa.value_or(rho / n)), native, spec);
        };
        return d;
    }
    if (2 * r <= n) {
        set(d, Verdict::Apportionable, ConstantSet::open_half_line(rho / 2.0).as_superset(floor),
            "rank at most n/2");
        d.build = [=](std::optional<double> kappa) { return apportion_half_rank(spec, kappa.value_or(rho)); };
        return d;
    }
    if (perturbed_identity(d, spec)) return d;
    if (n == 2) {
        order_two(d, spec);
        return d;
    }
    if (n == 3 && order_three(d, spec, floor)) return d;
    set(d, Verdict::Unknown, ConstantSet::unknown(floor), "no rule covers this Jordan structure");
    return d;
}

// Decision for raw entries; P is the Jordan basis when A is not already a Jordan matrix.
struct Prepared {
    Decision d;
    ComplexMatrix A;
    std::optional<ComplexMatrix> P;
};

Prepared prepare(const ComplexMatrix& A) {
    require_square(A, "classify");
    require_finite(A, "classify");
    if (A.rows() == 0) throw InvalidInput("classify: empty matrix");
    if (const auto spec = read_jordan_form(A)) return {decide(*spec), A, std::nullopt};
    if (A.rows() > 3) throw UnsupportedOrder("classify: raw entries above order 3 need a Jordan spec");
    const EigenStructure es = eigenstructure_small(A);
    Prepared p{decide(es.spec), A, std::nullopt};
    p.d.report.approximate_eigen = es.approximate;
    p.d.report.trace_bound = trace_lower_bound(A);
    p.d.report.hadamard_bound = hadamard_lower_bound(A);
    if (p.d.build) {
        try {
            p.P = jordan_basis_small(A, es.spec);
        } catch (const Error&) {
            // An approximate eigenstructure can leave no usable Jordan basis;
            // the verdict stands but no certificate can be carried over.
            if (!es.approximate) throw;
            p.d.build = nullptr;
        }
    }
    return p;
}

ApportionCertificate build_for(const Prepared& p, std::optional<double> kappa) {
    const ApportionCertificate cert = p.d.build(kappa);
    if (!p.P) return cert;
    const ComplexMatrix Pinv = p.P->partialPivLu().inverse();
    return transport(cert, p.A, Pinv, *p.P);
}

ApportionCertificate certify_prepared(const Prepared& p, std::optional<double> kappa) {
    const ClassificationReport& rep = p.d.report;
    if (rep.verdict == Verdict::NotApportionable) throw NotApportionableError("not apportionable: " + rep.theorem_tag);
    if (rep.verdict == Verdict::Unknown || !p.d.build)
        throw UnknownVerdictError("apportionability undecided: " + rep.theorem_tag);
    if (kappa) {
        switch (rep.constants.contains(*kappa)) {
            case ConstantSet::Membership::Member: break;
            case ConstantSet::Membership::NotMember:
                throw ConstantNotAchievable("kappa is not in K(A)", rep.constants.symbolic());
            case ConstantSet::Membership::Undetermined:
                throw ConstantNotAchievable("kappa is not a proven member of K(A)", rep.constants.symbolic());
        }
    }
    return build_for(p, kappa);
}

}  // namespace

ClassificationReport classify(const JordanSpec& spec) {
    Decision d = decide(spec);
    if (d.build) d.report.certificate = d.build(std::nullopt);
    return d.report;
}

ClassificationReport classify(const ComplexMatrix& A) {
    Prepared p = prepare(A);
    if (p.d.build) {
        try {
            p.d.report.certificate = build_for(p, std::nullopt);
        } catch (const Error&) {
            if (!p.d.report.approximate_eigen) throw;
        }
    }
    return p.d.report;
}

ConstantSet constant_set(const ClassificationReport& detail) { return detail.constants; }

ApportionCertificate certify(const JordanSpec& spec, std::optional<double> kappa) {
    Prepared p{decide(spec), build_jordan(spec), std::nullopt};
    return certify_prepared(p, kappa);
}

ApportionCertificate certify(const ComplexMatrix& A, std::optional<double> kappa) {
    return certify_prepared(prepare(A), kappa);
}

}  // namespace apportion
