#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apportion/certificate.hpp"
#include "apportion/constant_set.hpp"
#include "apportion/jordan.hpp"
#include "apportion/report.hpp"

namespace apportion {

// Raw entries are accepted up to order 3; above that only exact Jordan
// matrices (otherwise UnsupportedOrder). The certificate, when present, is for
// the input as given, at a default constant.
ClassificationReport classify(const ComplexMatrix& A);
ClassificationReport classify(const JordanSpec& spec);

ConstantSet constant_set(const ClassificationReport& detail);

// Certificate at kappa (default constant when absent).
// NotApportionableError / UnknownVerdictError when no constructive path exists,
// ConstantNotAchievable when kappa is not a proven member of K(A).
ApportionCertificate certify(const ComplexMatrix& A, std::optional<double> kappa = std::nullopt);
ApportionCertificate certify(const JordanSpec& spec, std::optional<double> kappa = std::nullopt);

struct RegionBox {
    double re_min = -3.0, re_max = 3.0;
    double im_min = -3.0, im_max = 3.0;
    int re_steps = 41, im_steps = 41;  // grid points per axis, >= 2
};

enum class RegionMark { Inadmissible, Admissible, Degenerate };

struct RegionSample {
    Complex lambda2;
    RegionMark mark = RegionMark::Degenerate;
};

// Row-major from (re_min, im_max) to (re_max, im_min); points within 1e-9 of 0
// or lambda1 are Degenerate.
std::vector<RegionSample> admissible_region(Complex lambda1, const RegionBox& box);

std::string region_csv(const std::vector<RegionSample>& samples);
std::string region_svg(const std::vector<RegionSample>& samples, const RegionBox& box);

}  // namespace apportion
