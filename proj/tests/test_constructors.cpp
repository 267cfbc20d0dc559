#include <cmath>
#include <numbers>

#include "apportion/constructors.hpp"
#include "apportion/errors.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace apportion;
using test::kI;

namespace {

void check_certificate(const ApportionCertificate& c, double kappa) {
    CHECK(verify_certificate(c));
    const UniformityReport u = is_uniform(similarity_image(c.M, c.A));
    CHECK(u.is_uniform);
    CHECK(u.kappa == doctest::Approx(kappa).epsilon(1e-10));
    CHECK(c.kappa == doctest::Approx(kappa).epsilon(1e-10));
}

}  // namespace

TEST_SUITE("constructors") {

TEST_CASE("nilpotent pair of blocks at 1/sqrt(3) matches the closed form") {
    const ApportionCertificate c = apportion_nilpotent(JordanSpec{{{0.0, 3}, {0.0, 2}}}, 1.0 / std::sqrt(3.0));
    const Complex w1 = std::polar(1.0, std::numbers::pi / 3.0), w2 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    ComplexMatrix E(5, 5);
    E << -1.0, 1.0, -w1, -w2, -w2,
         w2, -w2, -w2, -w1, -w1,
         w2, -w2, w1, -w1, -w1,
         1.0, -1.0, -w2, 1.0, 1.0,
         -1.0, 1.0, w2, -1.0, -1.0;
    E /= (1.0 - w2);
    CHECK(test::max_abs(c.B - E) < 1e-12);
    check_certificate(c, 1.0 / std::sqrt(3.0));
}

TEST_CASE("single nilpotent block at several constants") {
    for (const double kappa : {0.01, 1.0, 100.0}) {
        const ApportionCertificate c = apportion_nilpotent(JordanSpec{{{0.0, 2}}}, kappa);
        check_certificate(c, kappa);
    }
    CHECK_THROWS_AS(apportion_nilpotent(JordanSpec{{{0.0, 2}}}, 0.0), InvalidInput);
    CHECK_THROWS(apportion_nilpotent(JordanSpec{{{1.0, 2}}}, 1.0));
}

TEST_CASE("identity plus zero block") {
    const ApportionCertificate c = apportion_I_oplus_O(1, 0.5);
    ComplexMatrix E(2, 2);
    E << 0.5, -0.5, -0.5, 0.5;
    CHECK(test::max_abs(c.B - E) < 1e-12);
    for (int n = 1; n <= 4; ++n) {
        check_certificate(apportion_I_oplus_O(n, 0.5), 0.5);
        check_certificate(apportion_I_oplus_O(n, 3.0), 3.0);
        CHECK_THROWS(apportion_I_oplus_O(n, 0.5 - 1e-9));
    }
}

TEST_CASE("half-rank construction") {
    const JordanSpec s{{{Complex(2.0, 1.0), 1}, {-1.0, 1}, {0.0, 1}, {0.0, 2}, {0.0, 1}, {0.0, 1}}};
    const double rho = s.spectral_radius();
    for (const double eps : {1e-3, 1.0, 10.0}) check_certificate(apportion_half_rank(s, rho / 2 + eps), rho / 2 + eps);
    CHECK_THROWS(apportion_half_rank(s, rho / 2));
}

TEST_CASE("padding by zeros for rank above half") {
    const JordanSpec s{{{1.0, 2}, {2.0, 1}}};
    const PaddedCertificate p = apportion_A_oplus_zeros(s, 1.5);
    CHECK(p.padding == 3);
    check_certificate(p.cert, 1.5);
}

TEST_CASE("spiral sums") {
    for (const int n : {2, 3, 7}) {
        for (const double r : {1.0 / n, 0.5, 2.0}) {
            const SpiralSolution s = spiral_sum(n, r);
            Complex sum = 0.0;
            for (const double t : s.thetas) sum += std::polar(r, t);
            CHECK(std::abs(sum - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("rank one") {
    const Complex lambda(3.0, -4.0);
    check_certificate(apportion_rank_one(lambda, 4, 5.0 / 4.0), 5.0 / 4.0);
    check_certificate(apportion_rank_one(lambda, 2, 7.0), 7.0);
    CHECK_THROWS(apportion_rank_one(lambda, 4, 1.2));
}

TEST_CASE("perturbed identity") {
    const ClassificationReport no = apportion_perturb_identity(3, Complex(1.0, 0.0));
    CHECK(no.verdict == Verdict::NotApportionable);
    const Complex lambda(-0.5, 2.0);
    const ClassificationReport yes = apportion_perturb_identity(3, lambda);
    REQUIRE(yes.certificate.has_value());
    const ComplexMatrix& M = yes.certificate->M;
    CHECK(test::max_abs(M * M.adjoint() - ComplexMatrix::Identity(3, 3)) < 1e-12);
    const ConstantSet k = perturb_identity_constants(3, lambda);
    REQUIRE(k.kind == ConstantSet::Kind::FiniteSet);
    CHECK(k.values.size() == 2);
    for (const double v : k.values) {
        const ClassificationReport r = apportion_perturb_identity(3, lambda, v);
        REQUIRE(r.certificate.has_value());
        check_certificate(*r.certificate, v);
    }
    CHECK(perturb_identity_constants(4, -1.0).kind == ConstantSet::Kind::ClosedHalfLine);
}

TEST_CASE("2x2 diagonal matrices") {
    CHECK(polar_condition_2x2(1.0, -1.0));
    CHECK(polar_condition_2x2(1.0, kI));
    CHECK_FALSE(polar_condition_2x2(1.0, 2.0));
    CHECK(two_by_two_constants(1.0, 2.0).kind == ConstantSet::Kind::Empty);
    const ConstantSet k = two_by_two_constants(1.0, kI);
    REQUIRE(k.kind == ConstantSet::Kind::FiniteSet);
    CHECK(k.values[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    const ClassificationReport r = apportion_2x2(1.0, kI);
    REQUIRE(r.certificate.has_value());
    check_certificate(*r.certificate, std::sqrt(0.5));
    const ClassificationReport h = apportion_2x2(2.0, -2.0, 5.0);
    REQUIRE(h.certificate.has_value());
    check_certificate(*h.certificate, 5.0);
}

TEST_CASE("3x3 templates") {
    const Complex lambda(1.0, 2.0);
    check_certificate(apportion_3x3_template(TemplateKind::LambdaJ2PlusZero, lambda), std::abs(lambda));
    check_certificate(apportion_3x3_template(TemplateKind::LambdaPlusN2, lambda), std::abs(lambda) / std::sqrt(3.0));
}

TEST_CASE("padding a certificate by a zero") {
    const ApportionCertificate c = pad_by_zero(apportion_I_oplus_O(1, 0.5));
    CHECK(c.A.rows() == 3);
    check_certificate(c, 0.5);
}

}
