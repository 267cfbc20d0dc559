#include <cmath>

#include "apportion/classifier.hpp"
#include "apportion/errors.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace apportion;
using Kind = ConstantSet::Kind;
using test::kI;

TEST_SUITE("classifier") {

TEST_CASE("2x2 shapes") {
    const Complex l(1.0, 1.0);
    CHECK(classify(JordanSpec{{{0.0, 1}, {0.0, 1}}}).constants.kind == Kind::ZeroOnly);
    CHECK(classify(JordanSpec{{{0.0, 2}}}).constants.kind == Kind::OpenHalfLine);
    const ClassificationReport r1 = classify(JordanSpec{{{l, 1}, {0.0, 1}}});
    CHECK(r1.constants.kind == Kind::ClosedHalfLine);
    CHECK(r1.constants.lo == doctest::Approx(std::abs(l) / 2));
    CHECK(classify(JordanSpec{{{l, 1}, {l, 1}}}).verdict == Verdict::NotApportionable);
    CHECK(classify(JordanSpec{{{l, 2}}}).verdict == Verdict::NotApportionable);
    CHECK(classify(JordanSpec{{{l, 1}, {-l, 1}}}).constants.kind == Kind::ClosedHalfLine);
    CHECK(classify(JordanSpec{{{l, 1}, {2.0 * l, 1}}}).verdict == Verdict::NotApportionable);
}

TEST_CASE("3x3 shapes") {
    const Complex l(-2.0, 0.0);
    CHECK(classify(JordanSpec{{{0.0, 2}, {0.0, 1}}}).constants.kind == Kind::OpenHalfLine);
    CHECK(classify(JordanSpec{{{0.0, 3}}}).constants.kind == Kind::OpenHalfLine);
    const ClassificationReport r = classify(JordanSpec{{{l, 1}, {0.0, 1}, {0.0, 1}}});
    CHECK(r.constants.kind == Kind::ClosedHalfLine);
    CHECK(r.constants.lo == doctest::Approx(2.0 / 3.0));
    CHECK(classify(JordanSpec{{{l, 2}, {l, 1}}}).verdict == Verdict::NotApportionable);
    CHECK(classify(JordanSpec{{{l, 1}, {l, 1}, {0.0, 1}}}).verdict == Verdict::NotApportionable);
    const ClassificationReport p = classify(JordanSpec{{{l, 1}, {l, 1}, {1.0 + 3.0 * kI, 1}}});
    CHECK(p.verdict == Verdict::Apportionable);
    CHECK(p.constants.kind == Kind::FiniteSet);
    CHECK(classify(JordanSpec{{{l, 1}, {l, 1}, {1.0, 1}}}).verdict == Verdict::Apportionable);
    CHECK(classify(JordanSpec{{{l, 1}, {l, 1}, {2.0, 1}}}).verdict == Verdict::NotApportionable);
}

TEST_CASE("raw entries are reduced to Jordan form") {
    std::mt19937_64 rng(23);
    const ComplexMatrix P = test::random_matrix(rng, 2, 2);
    ComplexMatrix D = ComplexMatrix::Zero(2, 2);
    D(0, 0) = 1.0;
    D(1, 1) = kI;
    const ComplexMatrix A = P * D * P.inverse();
    const ClassificationReport r = classify(A);
    CHECK(r.verdict == Verdict::Apportionable);
    const ApportionCertificate c = certify(A);
    CHECK(test::max_abs(c.A - A) == 0.0);
    CHECK(verify_certificate(c));
    CHECK(c.kappa == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("certify at a requested constant") {
    const JordanSpec s{{{1.0, 1}, {0.0, 1}}};
    CHECK(certify(s, 0.75).kappa == doctest::Approx(0.75));
    CHECK_THROWS_AS(certify(s, 0.25), ConstantNotAchievable);
    CHECK_THROWS_AS(certify(JordanSpec{{{1.0, 2}}}), NotApportionableError);
}

TEST_CASE("orders above 3 need a Jordan form") {
    ComplexMatrix A = ComplexMatrix::Identity(4, 4);
    A(0, 3) = 0.5;
    A(2, 1) = 0.25;
    CHECK_THROWS_AS(classify(A), UnsupportedOrder);
    CHECK(classify(build_jordan(JordanSpec{{{0.0, 4}}})).constants.kind == Kind::OpenHalfLine);
}

TEST_CASE("undecided cases report their floor") {
    const JordanSpec s{{{1.0, 1}, {2.0, 1}, {3.0, 1}}};
    const ClassificationReport r = classify(s);
    CHECK(r.verdict == Verdict::Unknown);
    CHECK(r.constants.floor == doctest::Approx(std::max(r.trace_bound, r.hadamard_bound)));
    CHECK_THROWS_AS(certify(s), UnknownVerdictError);
}

TEST_CASE("admissible region") {
    RegionBox b;
    b.re_steps = b.im_steps = 3;
    b.re_min = b.im_min = -1.0;
    b.re_max = b.im_max = 1.0;
    const auto samples = admissible_region(1.0, b);
    REQUIRE(samples.size() == 9);
    CHECK(samples[4].mark == RegionMark::Degenerate);        // 0
    CHECK(samples[3].mark == RegionMark::Admissible);        // -1
    CHECK(samples[1].lambda2 == Complex(0.0, 1.0));
    const std::string csv = region_csv(samples);
    CHECK(csv.rfind("re,im,admissible\n", 0) == 0);
    CHECK(region_svg(samples, b).find("<svg") == 0);
    CHECK_THROWS_AS(admissible_region(0.0, b), InvalidInput);
}

}
