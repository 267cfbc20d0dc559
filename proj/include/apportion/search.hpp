#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "apportion/certificate.hpp"
#include "apportion/jordan.hpp"
#include "apportion/report.hpp"

namespace apportion {

struct SearchConfig {
    int restarts = 32;
    int max_iters = 2000;  // per restart, shared by the barrier phases
    std::uint64_t seed = 0;
    double defect_target = 1e-8;  // max | |b_ij| - kappa | / kappa
    double barrier_start = 1e-6;  // barrier weight, geometric from start to end over the phases
    double barrier_end = 1e-6;
    int barrier_phases = 1;
    int history = 8;  // L-BFGS memory
    void validate() const;
};

struct SearchOutcome {
    bool found = false;
    double best_defect = 0.0;
    std::optional<ApportionCertificate> certificate;  // tag Search, present iff found
    int restarts_used = 0;
    std::vector<double> transcript;  // best relative defect of each restart run
};

// Multi-start minimization of the spread of |b_ij|^2 over nonsingular M.
// Order <= 16 (BudgetExceeded otherwise). "Not found" is evidence only.
SearchOutcome find_apportioning(const ComplexMatrix& A, const SearchConfig& cfg = {});

struct SigmaStep {
    int m = 0;
    Verdict verdict = Verdict::Unknown;  // classifier verdict for A ⊕ O_m
    bool searched = false;
    SearchOutcome outcome;
};

struct SigmaReport {
    std::vector<SigmaStep> steps;  // m = 0..m_max
    std::optional<int> sigma_upper_empirical;
    int sigma_theory_upper = 0;  // 2 rank - n clamped to [0, n]
};

// Smallest m with A ⊕ O_m apportionable, theory first and search on Unknown.
// order + m_max <= 16.
SigmaReport sigma_estimate(const ComplexMatrix& A, int m_max, const SearchConfig& cfg = {});
SigmaReport sigma_estimate(const JordanSpec& spec, int m_max, const SearchConfig& cfg = {});

struct ObjectiveValue {
    bool ok = false;       // false when M is numerically singular
    double spread = 0.0;   // variance of |b_ij|^2 over its squared mean
    double barrier = 0.0;  // -log|det M|^2 + n log ||M||_F^2
    double defect = 0.0;   // relative max-modulus defect of B
    ComplexMatrix grad;    // d/dRe + i d/dIm of spread + beta * barrier
};

ObjectiveValue search_objective(const ComplexMatrix& A, const ComplexMatrix& M, double beta,
                                bool with_gradient = true);

}  // namespace apportion
