#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "apportion/certificate.hpp"
#include "apportion/constant_set.hpp"
#include "apportion/jordan.hpp"

namespace apportion {

enum class Verdict { Apportionable, NotApportionable, Unknown };

std::string_view to_string(Verdict v);

struct ClassificationReport {
    Verdict verdict = Verdict::Unknown;
    ConstantSet constants = ConstantSet::unknown(0.0);
    std::string theorem_tag;  // short description of the rule that decided
    std::optional<ApportionCertificate> certificate;
    bool approximate_eigen = false;
    double trace_bound = 0.0;
    double hadamard_bound = 0.0;
    std::optional<JordanSpec> jordan;  // structure the verdict was based on
};

}  // namespace apportion
