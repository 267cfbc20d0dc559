// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "apportion/classifier.hpp"
#include "apportion/constructors.hpp"
#include "apportion/errors.hpp"
#include "apportion/search.hpp"

using namespace apportion;
using Kind = ConstantSet::Kind;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
    bool pass = true;
    std::string detail;
};

// Certificates gathered for the bound check.
std::vector<ApportionCertificate> g_certificates;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double max_abs(const ComplexMatrix& A) { return A.cwiseAbs().maxCoeff(); }

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Defect of B recomputed from M and A, relative to the requested constant.
double measured_defect(const ApportionCertificate& c) {
    return is_uniform(similarity_image(c.M, c.A)).defect;
}

Complex random_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 2; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

// Independent statement of the 2x2 criterion in terms of gamma.
struct PairOracle {
    bool apportionable = false;
    bool gamma_zero = false;
    double kappa = 0.0;  // the single constant when gamma != 0
};

PairOracle pair_oracle(Complex l1, Complex l2) {
    PairOracle o;
    const Complex g = (l2 + l1) / (l2 - l1);
    const double g4 = std::norm(g) * std::norm(g);
    if (std::abs(g) <= 1e-14) {
        o.apportionable = o.gamma_zero = true;
        return o;
    }
    o.apportionable = std::real(g * g) < g4 && g4 <= 1.0 + 1e-12;
    if (o.apportionable) {
        const double ratio = std::abs(g4 - 1.0) <= 1e-12 ? 0.0 : (1.0 - g4) / (2.0 * (g4 - std::real(g * g)));
        o.kappa = std::abs((l1 + l2) / 2.0) * std::sqrt(1.0 + ratio);
    }
    return o;
}

Result criterion1() {
    Result r;
    const JordanSpec spec{{{0.0, 3}, {0.0, 2}}};
    const double kappa = 1.0 / std::sqrt(3.0);
    apportion_nilpotent(spec, kappa);  // warm-up
    const int reps = 100;
    const auto t0 = Clock::now();
    ApportionCertificate c;
    for (int k = 0; k < reps; ++k) c = apportion_nilpotent(spec, kappa);
    const double per_call = seconds_since(t0) / reps;
    const Complex w1 = std::polar(1.0, std::numbers::pi / 3.0), w2 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    ComplexMatrix E(5, 5);
    E << -1.0, 1.0, -w1, -w2, -w2,
         w2, -w2, -w2, -w1, -w1,
         w2, -w2, w1, -w1, -w1,
         1.0, -1.0, -w2, 1.0, 1.0,
         -1.0, 1.0, w2, -1.0, -1.0;
    E /= (1.0 - w2);
    const ComplexMatrix B = similarity_image(c.M, c.A);
    const double err = max_abs(B - E);
    const UniformityReport u = is_uniform(B);
    r.pass = err <= 1e-12 && u.is_uniform && std::abs(u.kappa - kappa) <= 1e-12 && per_call < 1e-3;
    r.detail = fmt("max|B - B_ref| %.2e, |kappa - 1/sqrt3| %.2e, %.3f ms/call", err, std::abs(u.kappa - kappa),
                   per_call * 1e3);
    g_certificates.push_back(c);
    return r;
}

Result criterion2() {
    Result r;
    std::vector<std::vector<int>> specs;
    for (int n = 2; n <= 8; ++n) {
        std::vector<int> cur;
        partitions(n, n, cur, specs);
    }
    double worst = 0.0;
    int count = 0;
    const auto t0 = Clock::now();
    for (const auto& parts : specs) {
        JordanSpec spec;
        for (const int p : parts) spec.blocks.push_back({0.0, p});
        for (const double kappa : {0.01, 1.0, 100.0}) {
            const ApportionCertificate c = apportion_nilpotent(spec, kappa);
            const double d = measured_defect(c) / kappa;
            worst = std::max(worst, d);
            if (!(d <= 1e-9) || !verify_certificate(c)) r.pass = false;
            g_certificates.push_back(c);
            ++count;
        }
    }
    const double t = seconds_since(t0);
    r.pass = r.pass && t < 1.0;
    r.detail = fmt("%.0f specs x 3 constants, worst defect/kappa %.2e, %.3f s", static_cast<double>(specs.size()),
                   worst, t);
    (void)count;
    return r;
}

JordanSpec random_half_rank_spec(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> order(1, 10), size(1, 4), coin(0, 9);
    for (;;) {
        const int n = order(rng);
        JordanSpec spec;
        std::vector<Complex> pool;
        int used = 0;
        while (used < n) {
            const int s = std::min(n - used, size(rng));
            Complex l = 0.0;
            const int c = coin(rng);
            if (c >= 5) l = (!pool.empty() && c == 9) ? pool[rng() % pool.size()] : random_disk(rng, 3.0);
            pool.push_back(l);
            spec.blocks.push_back({l, s});
            used += s;
        }
        if (2 * spec.rank() <= n && !spec.is_zero()) return spec;
    }
}

Result criterion3() {
    Result r;
    std::mt19937_64 rng(2024);
    const auto t0 = Clock::now();
    int failures = 0;
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const JordanSpec spec = random_half_rank_spec(rng);
        const double rho = spec.spectral_radius();
        for (const double eps : {1e-3, 1.0, 10.0}) {
            const double kappa = rho / 2.0 + eps;
            try {
                const ApportionCertificate c = apportion_half_rank(spec, kappa);
                const double d = measured_defect(c) / kappa;
                worst = std::max(worst, d);
                if (!verify_certificate(c) || std::abs(c.kappa - kappa) > 1e-9 * kappa) ++failures;
                g_certificates.push_back(c);
            } catch (const std::exception&) {
                ++failures;
            }
        }
    }
    const double t = seconds_since(t0);
    r.pass = failures == 0 && t < 10.0;
    r.detail = fmt("600 certificates, %.0f failures, worst defect/kappa %.2e, %.3f s", failures, worst, t);
    return r;
}

Result criterion4() {
    Result r;
    int ok = 0;
    for (int n = 1; n <= 4; ++n) {
        bool good = true;
        try {
            const ApportionCertificate c = apportion_I_oplus_O(n, 0.5);
            good = good && verify_certificate(c) && std::abs(c.kappa - 0.5) <= 1e-12;
            g_certificates.push_back(c);
        } catch (const std::exception&) {
            good = false;
        }
        bool refused = false;
        try {
            apportion_I_oplus_O(n, 0.5 - 1e-9);
        } catch (const Error&) {
            refused = true;
        }
        const ComplexMatrix A = direct_sum(ComplexMatrix::Identity(n, n), ComplexMatrix::Zero(n, n));
        good = good && refused && std::abs(trace_lower_bound(A) - 0.5) <= 1e-15;
        ok += good;
    }
    r.pass = ok == 4;
    r.detail = fmt("%.0f of 4 orders", ok);
    return r;
}

struct Row {
    std::string name;
    JordanSpec spec;
    Verdict verdict;
    Kind kind;
    std::vector<double> values;  // finite sets
    double lo = -1.0;            // half lines
};

Result criterion5() {
    Result r;
    const std::vector<Complex> lambdas{1.0, -2.0, Complex(1.0, 1.0)};
    const Complex z = 0.0;
    std::vector<Row> rows;
    const auto yes = Verdict::Apportionable, no = Verdict::NotApportionable;
    rows.push_back({"2x2 O", {{{z, 1}, {z, 1}}}, yes, Kind::ZeroOnly});
    rows.push_back({"2x2 J2(0)", {{{z, 2}}}, yes, Kind::OpenHalfLine, {}, 0.0});
    rows.push_back({"3x3 O", {{{z, 1}, {z, 1}, {z, 1}}}, yes, Kind::ZeroOnly});
    rows.push_back({"3x3 J2(0)+0", {{{z, 2}, {z, 1}}}, yes, Kind::OpenHalfLine, {}, 0.0});
    rows.push_back({"3x3 J3(0)", {{{z, 3}}}, yes, Kind::OpenHalfLine, {}, 0.0});
    for (const Complex l : lambdas) {
        const double a = std::abs(l);
        rows.push_back({"2x2 diag(l,0)", {{{l, 1}, {z, 1}}}, yes, Kind::ClosedHalfLine, {}, a / 2});
        rows.push_back({"2x2 lI", {{{l, 1}, {l, 1}}}, no, Kind::Empty});
        rows.push_back({"2x2 J2(l)", {{{l, 2}}}, no, Kind::Empty});
        rows.push_back({"3x3 lI", {{{l, 1}, {l, 1}, {l, 1}}}, no, Kind::Empty});
        rows.push_back({"3x3 diag(l,0,0)", {{{l, 1}, {z, 1}, {z, 1}}}, yes, Kind::ClosedHalfLine, {}, a / 3});
        rows.push_back({"3x3 J2(l)+l", {{{l, 2}, {l, 1}}}, no, Kind::Empty});
        rows.push_back({"3x3 diag(l,l,0)", {{{l, 1}, {l, 1}, {z, 1}}}, no, Kind::Empty});
        std::vector<Complex> partners;
        for (const Complex m : lambdas)
            if (m != l) partners.push_back(m);
        partners.push_back(-l);
        for (const Complex m : partners) {
            const PairOracle o = pair_oracle(l, m);
            Row two{"2x2 diag(l1,l2)", {{{l, 1}, {m, 1}}}, o.apportionable ? yes : no, Kind::Empty};
            if (o.gamma_zero) {
                two.kind = Kind::ClosedHalfLine;
                two.lo = std::abs(l) / std::sqrt(2.0);
            } else if (o.apportionable) {
                two.kind = Kind::FiniteSet;
                two.values = {o.kappa};
            }
            rows.push_back(two);
            const Complex q = m / l;
            Row three{"3x3 diag(l1,l1,l2)", {{{l, 1}, {l, 1}, {m, 1}}}, no, Kind::Empty};
            if (std::abs(q.real() + 0.5) <= 1e-12) {
                three.verdict = yes;
                three.kind = Kind::FiniteSet;
                for (const int s : {0, 1})
                    three.values.push_back(std::abs(l) * std::sqrt(q.imag() * q.imag() / ((3.0 - 2 * s) * (3.0 - 2 * s)) + 0.25));
                std::sort(three.values.begin(), three.values.end());
                // Im(l2 / l1) = 0 makes the two values coincide.
                three.values.erase(std::unique(three.values.begin(), three.values.end(),
                                               [](double a, double b) { return std::abs(a - b) <= 1e-12 * b; }),
                                   three.values.end());
            }
            rows.push_back(three);
        }
    }
    int agree = 0;
    std::string first_miss;
    for (const Row& row : rows) {
        const ClassificationReport rep = classify(row.spec);
        bool good = rep.verdict == row.verdict && rep.constants.kind == row.kind;
        if (good && row.lo >= 0.0) good = std::abs(rep.constants.lo - row.lo) <= 1e-12 * std::max(1.0, row.lo);
        if (good && !row.values.empty()) {
            good = rep.constants.values.size() == row.values.size();
            for (std::size_t k = 0; good && k < row.values.size(); ++k)
                good = rel_err(rep.constants.values[k], row.values[k]) <= 1e-12;
        }
        if (good && rep.verdict == yes) {
            try {
                const ApportionCertificate c = certify(row.spec);
                good = verify_certificate(c);
                g_certificates.push_back(c);
            } catch (const std::exception&) {
                good = false;
            }
        }
        agree += good;
        if (!good && first_miss.empty()) first_miss = row.name;
    }
    r.pass = agree == static_cast<int>(rows.size());
    r.detail = fmt("%.0f of %.0f rows agree", agree, static_cast<double>(rows.size()));
    if (!first_miss.empty()) r.detail += "; first miss: " + first_miss;
    return r;
}

Result criterion6() {
    Result r;
    std::mt19937_64 rng(6);
    int closed_form = 0, sharp = 0, failures = 0;
    double worst = 0.0;
    auto measure = [&](Complex l1, Complex l2, std::optional<double> kappa) {
        const ClassificationReport rep = apportion_2x2(l1, l2, kappa);
        if (!rep.certificate) throw std::runtime_error("no certificate");
        g_certificates.push_back(*rep.certificate);
        return is_uniform(similarity_image(rep.certificate->M, rep.certificate->A)).kappa;
    };
    // gamma != 0: random pairs, a fifth of them on the unit circle |gamma| = 1.
    while (closed_form < 500) {
        const Complex l1 = random_disk(rng, 3.0);
        Complex l2 = random_disk(rng, 3.0);
        if (closed_form % 5 == 4) l2 = l1 * Complex(0.0, std::uniform_real_distribution<double>(-3.0, 3.0)(rng));
        if (std::abs(l1) < 1e-3 || std::abs(l2) < 1e-3 || std::abs(l1 - l2) < 1e-3) continue;
        const PairOracle o = pair_oracle(l1, l2);
        if (!o.apportionable || o.gamma_zero) continue;
        ++closed_form;
        try {
            const double e = rel_err(measure(l1, l2, std::nullopt), o.kappa);
            worst = std::max(worst, e);
            if (!(e <= 1e-9)) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    // gamma = 0: the least constant is the determinant bound, and nothing below it is offered.
    while (sharp < 100) {
        const Complex l1 = random_disk(rng, 3.0);
        if (std::abs(l1) < 1e-3) continue;
        ++sharp;
        ComplexMatrix D = ComplexMatrix::Zero(2, 2);
        D(0, 0) = l1;
        D(1, 1) = -l1;
        const double h = hadamard_lower_bound(D);
        try {
            const ConstantSet k = two_by_two_constants(l1, -l1);
            const double least = measure(l1, -l1, k.lo);
            const double e = rel_err(least, h);
            worst = std::max(worst, e);
            bool below_refused = false;
            try {
                certify(JordanSpec{{{l1, 1}, {-l1, 1}}}, h * (1.0 - 1e-6));
            } catch (const ConstantNotAchievable&) {
                below_refused = true;
            }
            if (!(e <= 1e-9) || k.kind != Kind::ClosedHalfLine || !below_refused) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }
    r.pass = failures == 0;
    r.detail = fmt("500 closed-form pairs + 100 gamma = 0 pairs, %.0f failures, worst rel err %.2e", failures, worst);
    return r;
}

Result criterion7() {
    Result r;
    const RegionBox box;  // [-3,3]^2, 41 x 41
    const auto t0 = Clock::now();
    const std::vector<RegionSample> samples = admissible_region(1.0, box);
    SearchConfig cfg;
    cfg.seed = 1;
    cfg.restarts = 32;
    int admissible = 0, admissible_found = 0, inadmissible = 0, inadmissible_found = 0;
    std::vector<std::string> misses;
    double least_inadmissible = std::numeric_limits<double>::infinity();
    for (const RegionSample& s : samples) {
        if (s.mark == RegionMark::Degenerate) continue;
        ComplexMatrix A = ComplexMatrix::Zero(2, 2);
        A(0, 0) = 1.0;
        A(1, 1) = s.lambda2;
        const SearchOutcome o = find_apportioning(A, cfg);
        // Inadmissible points count any restart below 1e-6, certified or not.
        const bool hit = s.mark == RegionMark::Admissible ? o.found && o.best_defect < 1e-6 : o.best_defect < 1e-6;
        if (o.found && o.certificate) g_certificates.push_back(*o.certificate);
        if (s.mark == RegionMark::Admissible) {
            ++admissible;
            admissible_found += hit;
            if (!hit) misses.push_back(fmt("(%g,%g) best %.1e", s.lambda2.real(), s.lambda2.imag(), o.best_defect));
        } else {
            ++inadmissible;
            inadmissible_found += hit;
            least_inadmissible = std::min(least_inadmissible, o.best_defect);
            if (hit) misses.push_back(fmt("inadmissible hit (%g,%g)", s.lambda2.real(), s.lambda2.imag()));
        }
    }
    const double t = seconds_since(t0);
    const double rate = admissible ? static_cast<double>(admissible_found) / admissible : 0.0;
    r.pass = rate >= 0.99 && inadmissible_found == 0 && t < 300.0;
    r.detail = fmt("admissible found %.2f%% of ", 100.0 * rate) + std::to_string(admissible) +
               fmt(", inadmissible found %.0f of ", inadmissible_found) + std::to_string(inadmissible) +
               fmt(" (least best defect %.1e), %.1f s", least_inadmissible, t);
    for (std::size_t k = 0; k < misses.size() && k < 5; ++k) r.detail += "; " + misses[k];
    return r;
}

Result criterion8() {
    Result r;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> im(-3.0, 3.0);
    int failures = 0;
    double worst_unitary = 0.0, worst_value = 0.0;
    for (const int n : {3, 4, 5}) {
        for (int k = 0; k < 10; ++k) {
            const Complex lambda(1.0 - n / 2.0, im(rng));
            try {
                const ClassificationReport dft = apportion_perturb_identity(n, lambda);
                if (!dft.certificate) throw std::runtime_error("no DFT certificate");
                const ComplexMatrix& M = dft.certificate->M;
                const double u = max_abs(M * M.adjoint() - ComplexMatrix::Identity(n, n));
                worst_unitary = std::max(worst_unitary, u);
                if (!(u <= 1e-12) || !verify_certificate(*dft.certificate)) ++failures;
                g_certificates.push_back(*dft.certificate);

                std::vector<double> oracle;
                for (int s = 0; s <= (n - 1) / 2; ++s)
                    oracle.push_back(std::sqrt(lambda.imag() * lambda.imag() / ((n - 2.0 * s) * (n - 2.0 * s)) + 0.25));
                std::sort(oracle.begin(), oracle.end());
                const ConstantSet set = perturb_identity_constants(n, lambda);
                if (set.kind != Kind::FiniteSet || set.values.size() != oracle.size()) {
                    ++failures;
                    continue;
                }
                for (std::size_t j = 0; j < oracle.size(); ++j) {
                    const ClassificationReport rep = apportion_perturb_identity(n, lambda, set.values[j]);
                    if (!rep.certificate) throw std::runtime_error("no certificate at a listed constant");
                    g_certificates.push_back(*rep.certificate);
                    const double measured = is_uniform(similarity_image(rep.certificate->M, rep.certificate->A)).kappa;
                    const double e = std::max(rel_err(measured, oracle[j]), rel_err(set.values[j], oracle[j]));
                    worst_value = std::max(worst_value, e);
                    if (!(e <= 1e-9) || !verify_certificate(*rep.certificate)) ++failures;
                }
            } catch (const std::exception&) {
                ++failures;
            }
        }
    }
    r.pass = failures == 0;
    r.detail = fmt("%.0f failures, worst |MM* - I| %.2e, worst rel err %.2e", failures, worst_unitary, worst_value);
    return r;
}

Result criterion9() {
    Result r;
    std::mt19937_64 rng(9);
    int failures = 0;
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        Complex lambda = random_disk(rng, 3.0);
        if (std::abs(lambda) < 1e-3) lambda = 1.0;
        const std::pair<TemplateKind, double> cases[] = {{TemplateKind::LambdaJ2PlusZero, std::abs(lambda)},
                                                         {TemplateKind::LambdaPlusN2, std::abs(lambda) / std::sqrt(3.0)}};
        for (const auto& [kind, expected] : cases) {
            try {
                const ApportionCertificate c = apportion_3x3_template(kind, lambda);
                const UniformityReport u = is_uniform(similarity_image(c.M, c.A));
                const double e = rel_err(u.kappa, expected);
                worst = std::max(worst, e);
                if (!u.is_uniform || !(e <= 1e-9)) ++failures;
                g_certificates.push_back(c);
            } catch (const std::exception&) {
                ++failures;
            }
        }
    }
    r.pass = failures == 0;
    r.detail = fmt("20 certificates, %.0f failures, worst rel err %.2e", failures, worst);
    return r;
}

Result criterion10() {
    Result r;
    int violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const ApportionCertificate& c : g_certificates) {
        const double bound = std::max(trace_lower_bound(c.A), hadamard_lower_bound(c.A));
        const double kappa = is_uniform(similarity_image(c.M, c.A), {1.0, 1.0}).kappa;
        worst = std::min(worst, kappa - bound);
        if (kappa < bound - 1e-9) ++violations;
    }
    r.pass = violations == 0 && !g_certificates.empty();
    r.detail = std::to_string(g_certificates.size()) + fmt(" certificates, %.0f violations, least slack %.2e",
                                                           violations, worst);
    return r;
}

Result criterion11() {
    Result r;
    std::mt19937_64 rng(11);
    std::string notes;

    // Modulus identity on random triples.
    double worst_identity = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const Complex z1 = random_disk(rng, 10.0), z2 = random_disk(rng, 10.0), z3 = random_disk(rng, 10.0);
        const double lhs = (std::norm(z1 - z2) - std::norm(z3 - z2)) / 2.0;
        const double rhs = (std::norm(z1) - std::norm(z3)) / 2.0 - std::real(z1 * std::conj(z2)) +
                           std::real(z3 * std::conj(z2));
        const double scale = std::norm(z1) + std::norm(z2) + std::norm(z3);
        worst_identity = std::max(worst_identity, std::abs(lhs - rhs) / scale);
    }
    const bool identity_ok = worst_identity <= 16 * std::numeric_limits<double>::epsilon();

    // Inverse-pair completion block identities.
    std::normal_distribution<double> g(0.0, 1.0);
    auto gauss = [&](int rows, int cols) {
        ComplexMatrix X(rows, cols);
        for (Eigen::Index k = 0; k < X.size(); ++k) X(k) = Complex(g(rng), g(rng));
        return X;
    };
    double worst_pair = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = 2 + k % 7, m = 1 + k % (n - 1);
        const ComplexMatrix U = gauss(n, m);
        ComplexMatrix V = gauss(m, n);
        V = (V * U).inverse() * V;
        const InversePair p = complete_inverse_pair(U, V);
        const double scale = 1.0 + max_abs(U) * max_abs(V);
        const double e = std::max({max_abs(p.Minv * p.M - ComplexMatrix::Identity(n, n)),
                                   max_abs(p.Minv.bottomRows(n - m) * U), max_abs(V * p.M.rightCols(n - m))});
        worst_pair = std::max(worst_pair, e / scale);
    }
    const bool pair_ok = worst_pair <= 1e-10;

    // Search gradient against central differences.
    double worst_grad = 0.0;
    for (int k = 0; k < 20; ++k) {
        const int n = 2 + k % 3;
        const ComplexMatrix A = gauss(n, n), M = gauss(n, n);
        const double beta = 1e-3, h = 1e-6;
        const ObjectiveValue v = search_objective(A, M, beta, true);
        auto f = [&](const ComplexMatrix& X) {
            const ObjectiveValue w = search_objective(A, X, beta, false);
            return w.spread + beta * w.barrier;
        };
        ComplexMatrix fd(n, n);
        for (Eigen::Index j = 0; j < M.size(); ++j) {
            ComplexMatrix P = M, Q = M;
            P(j) += h;
            Q(j) -= h;
            const double dre = (f(P) - f(Q)) / (2 * h);
            P = M;
            Q = M;
            P(j) += Complex(0.0, h);
            Q(j) -= Complex(0.0, h);
            fd(j) = Complex(dre, (f(P) - f(Q)) / (2 * h));
        }
        worst_grad = std::max(worst_grad, (v.grad - fd).norm() / fd.norm());
    }
    const bool grad_ok = worst_grad <= 1e-4;

    // Padding the 2x2 identity.
    SearchConfig cfg;
    cfg.seed = 1;
    const SigmaReport s = sigma_estimate(ComplexMatrix::Identity(2, 2), 2, cfg);
    const bool sigma_ok = s.sigma_upper_empirical && *s.sigma_upper_empirical == 2;

    r.pass = identity_ok && pair_ok && grad_ok && sigma_ok;
    r.detail = fmt("identity %.1e, inverse pair %.1e, gradient %.1e", worst_identity, worst_pair, worst_grad) +
               ", sigma(I2) " + (s.sigma_upper_empirical ? std::to_string(*s.sigma_upper_empirical) : "none");
    return r;
}

}  // namespace

int main() {
    const std::vector<std::function<Result()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8,
                                                         criterion9, criterion10, criterion11};
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = Clock::now();
        Result res;
        try {
            res = criteria[k]();
        } catch (const std::exception& e) {
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        failed += !res.pass;
        std::printf("criterion %2zu: %s  %s  [%.2f s]\n", k + 1, res.pass ? "PASS" : "FAIL", res.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
