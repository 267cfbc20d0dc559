#include "apportion/search.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include "apportion/classifier.hpp"
#include "apportion/errors.hpp"
#include "apportion/parallel.hpp"

namespace apportion {

void SearchConfig::validate() const {
    if (restarts < 1) throw InvalidInput("search: restarts must be >= 1");
    if (max_iters < 1) throw InvalidInput("search: max_iters must be >= 1");
    if (!(defect_target > 0.0) || !std::isfinite(defect_target)) throw InvalidInput("search: defect_target must be > 0");
    if (!(barrier_start > 0.0) || !(barrier_end > 0.0) || barrier_end > barrier_start)
        throw InvalidInput("search: barrier weights must satisfy 0 < end <= start");
    if (barrier_phases < 1) throw InvalidInput("search: barrier_phases must be >= 1");
    if (history < 1) throw InvalidInput("search: history must be >= 1");
}

namespace {

constexpr int kMaxOrder = 16;
constexpr int kBatch = 4;  // restarts per batch, fixed so results do not depend on the thread count
constexpr double kSingularCutoff = 1e-15;
constexpr double kPolishFrom = 1e-2;    // defect below which the final polish is tried
constexpr double kPolishSlack = 1.0;    // allowed barrier growth during the polish

double relative_defect(const ComplexMatrix& B) {
    const Eigen::MatrixXd mod = B.cwiseAbs();
    const double kappa = mod.mean();
    if (!(kappa > 0.0)) return std::numeric_limits<double>::infinity();
    return (mod.array() - kappa).abs().maxCoeff() / kappa;
}

Eigen::VectorXd pack(const ComplexMatrix& M) {
    const Eigen::Index n2 = M.size();
    Eigen::VectorXd x(2 * n2);
    for (Eigen::Index k = 0; k < n2; ++k) {
        x(k) = M(k).real();
        x(n2 + k) = M(k).imag();
    }
    return x;
}

ComplexMatrix unpack(const Eigen::VectorXd& x, Eigen::Index n) {
    ComplexMatrix M(n, n);
    const Eigen::Index n2 = n * n;
    for (Eigen::Index k = 0; k < n2; ++k) M(k) = Complex(x(k), x(n2 + k));
    return M;
}

struct RestartResult {
    double defect = std::numeric_limits<double>::infinity();
    ComplexMatrix M;
};

double barrier_value(const Eigen::PartialPivLU<ComplexMatrix>& lu, const ComplexMatrix& M) {
    double logdet = 0.0;
    for (Eigen::Index k = 0; k < M.rows(); ++k) logdet += std::log(std::abs(lu.matrixLU()(k, k)));
    return -2.0 * logdet + static_cast<double>(M.rows()) * std::log(M.squaredNorm());
}

// Levenberg-Marquardt on r_ij = |b_ij|^2 / mean - 1 with minimum-norm steps.
// Removes the bias the barrier leaves near a solution. The barrier may not
// grow by more than kPolishSlack: without the barrier, near-uniform images of
// non-apportionable matrices are reached by letting M degenerate.
void polish(const ComplexMatrix& A, RestartResult& best, double target) {
    const Eigen::Index n = A.rows(), n2 = n * n;
    ComplexMatrix M = best.M / best.M.norm();
    const Eigen::PartialPivLU<ComplexMatrix> lu0(M);
    if (!(lu0.rcond() >= kSingularCutoff)) return;
    const double barrier_cap = barrier_value(lu0, M) + kPolishSlack;
    double mu_lm = 1e-6;
    for (int it = 0; it < 30 && best.defect > 1e-3 * target; ++it) {
        const Eigen::PartialPivLU<ComplexMatrix> lu(M);
        if (!(lu.rcond() >= kSingularCutoff)) return;
        const ComplexMatrix Minv = lu.inverse(), AMinv = A * Minv, B = M * AMinv;
        const Eigen::ArrayXXd p = B.cwiseAbs2().array();
        const double mu = p.mean();
        if (!(mu > 0.0)) return;
        const Eigen::VectorXd r = (p / mu - 1.0).reshaped();

        // Column k of J: derivative along Re (k < n2) or Im of entry k of M.
        Eigen::MatrixXd J(n2, 2 * n2);
        for (Eigen::Index k = 0; k < 2 * n2; ++k) {
            const Eigen::Index e = k % n2, row = e % n, col = e / n;
            const Complex d = k < n2 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
            // dB = dM A Minv - B dM Minv with dM = d e_row e_col^T.
            ComplexMatrix dB = -d * B.col(row) * Minv.row(col);
            dB.row(row) += d * AMinv.row(col);
            const Eigen::ArrayXXd dp = 2.0 * (B.conjugate().array() * dB.array()).real();
            J.col(k) = (dp / mu - p * dp.mean() / (mu * mu)).reshaped();
        }
        const Eigen::MatrixXd JJt = J * J.transpose();
        const double r0 = r.squaredNorm();
        bool improved = false;
        for (int tries = 0; tries < 8 && !improved; ++tries, mu_lm *= 10.0) {
            Eigen::MatrixXd K = JJt;
            K.diagonal().array() += mu_lm * (1.0 + JJt.diagonal().maxCoeff());
            const Eigen::VectorXd step = -J.transpose() * K.ldlt().solve(r);
            ComplexMatrix trial = M;
            for (Eigen::Index k = 0; k < n2; ++k) trial(k) += Complex(step(k), step(n2 + k));
            const Eigen::PartialPivLU<ComplexMatrix> tlu(trial);
            if (!(tlu.rcond() >= kSingularCutoff) || !(barrier_value(tlu, trial) <= barrier_cap)) continue;
            const ComplexMatrix Bt = trial * A * tlu.inverse();
            const Eigen::ArrayXXd pt = Bt.cwiseAbs2().array();
            if (!(pt.mean() > 0.0) || !((pt / pt.mean() - 1.0).matrix().squaredNorm() < r0)) continue;
            improved = true;
            M = trial / trial.norm();
            const double d = relative_defect(Bt);
            if (d < best.defect) {
                best.defect = d;
                best.M = M;
            }
            mu_lm = std::max(mu_lm / 100.0, 1e-12);
        }
        if (!improved) return;
    }
}

// L-BFGS with Armijo backtracking on spread + beta (barrier - barrier at phase start),
// beta geometric over the phases. Only converged phase ends are judged: a
// transient iterate can dip toward the degenerate near-uniform images that the
// barrier exists to exclude.
RestartResult run_restart(const ComplexMatrix& A, const SearchConfig& cfg, int restart) {
    const Eigen::Index n = A.rows();
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix M(n, n);
    for (Eigen::Index k = 0; k < M.size(); ++k) M(k) = Complex(normal(rng), normal(rng));

    RestartResult best;
    const int per_phase = std::max(1, cfg.max_iters / cfg.barrier_phases);
    for (int phase = 0; phase < cfg.barrier_phases; ++phase) {
        const double t = cfg.barrier_phases == 1 ? 0.0 : static_cast<double>(phase) / (cfg.barrier_phases - 1);
        const double beta = cfg.barrier_start * std::pow(cfg.barrier_end / cfg.barrier_start, t);
        M /= M.norm();

        ObjectiveValue cur = search_objective(A, M, beta);
        if (!cur.ok) break;
        const double b0 = cur.barrier;
        auto loss = [&](const ObjectiveValue& v) { return v.spread + beta * (v.barrier - b0); };
        double L = loss(cur);
        Eigen::VectorXd x = pack(M), g = pack(cur.grad);
        std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> memory;
        int stall = 0;

        for (int it = 0; it < per_phase; ++it) {
            // Two-loop recursion.
            Eigen::VectorXd d = -g;
            std::vector<double> alpha(memory.size());
            for (size_t k = memory.size(); k-- > 0;) {
                const auto& [s, y] = memory[k];
                alpha[k] = s.dot(d) / y.dot(s);
                d -= alpha[k] * y;
            }
            if (!memory.empty()) {
                const auto& [s, y] = memory.back();
                d *= s.dot(y) / y.dot(y);
            } else {
                d *= std::min(1.0, 1.0 / std::max(g.norm(), 1e-300)) * 0.1;
            }
            for (size_t k = 0; k < memory.size(); ++k) {
                const auto& [s, y] = memory[k];
                const double b = y.dot(d) / y.dot(s);
                d += (alpha[k] - b) * s;
            }
            double slope = g.dot(d);
            if (!(slope < 0.0)) {
                memory.clear();
                d = -g * (0.1 / std::max(g.norm(), 1e-300));
                slope = g.dot(d);
                if (!(slope < 0.0)) break;
            }

            double step = 1.0;
            ObjectiveValue next;
            double L_next = 0.0;
            bool accepted = false;
            for (int bt = 0; bt < 50; ++bt, step *= 0.5) {
                next = search_objective(A, unpack(x + step * d, n), beta);
                if (!next.ok) continue;
                L_next = loss(next);
                if (L_next <= L + 1e-4 * step * slope) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;

            const Eigen::VectorXd x_next = x + step * d;
            const Eigen::VectorXd g_next = pack(next.grad);
            const Eigen::VectorXd s = x_next - x, y = g_next - g;
            if (s.dot(y) > 1e-12 * s.norm() * y.norm()) {
                memory.emplace_back(s, y);
                if (static_cast<int>(memory.size()) > cfg.history) memory.pop_front();
            }
            const double drop = L - L_next;
            stall = drop <= 1e-14 * std::abs(L) + 1e-300 ? stall + 1 : 0;
            x = x_next;
            g = g_next;
            L = L_next;
            cur = std::move(next);
            M = unpack(x, n);
            if (stall >= 10) break;
        }
        if (cur.ok && cur.defect < best.defect) {
            best.defect = cur.defect;
            best.M = M;
        }
        if (best.defect <= cfg.defect_target) return best;
    }
    if (best.defect < kPolishFrom) polish(A, best, cfg.defect_target);
    return best;
}

ComplexMatrix padded(const ComplexMatrix& A, int m) {
    return m == 0 ? A : direct_sum(A, ComplexMatrix::Zero(m, m));
}

SigmaReport sigma_common(const ComplexMatrix& A, const std::optional<JordanSpec>& spec, int rank, int m_max,
                         const SearchConfig& cfg) {
    const auto n = static_cast<int>(A.rows());
    if (m_max < 0) throw InvalidInput("sigma_estimate: m_max must be >= 0");
    if (n + m_max > kMaxOrder) throw BudgetExceeded("sigma_estimate: order + m_max exceeds 16");
    SigmaReport out;
    out.sigma_theory_upper = std::clamp(2 * rank - n, 0, n);
    for (int m = 0; m <= m_max; ++m) {
        SigmaStep step;
        step.m = m;
        try {
            if (spec) {
                JordanSpec s = *spec;
                for (int k = 0; k < m; ++k) s.blocks.push_back({Complex(0.0, 0.0), 1});
                step.verdict = classify(s).verdict;
            } else {
                step.verdict = classify(padded(A, m)).verdict;
            }
        } catch (const UnsupportedOrder&) {
            step.verdict = Verdict::Unknown;
        }
        if (step.verdict == Verdict::Unknown && !out.sigma_upper_empirical) {
            step.searched = true;
            step.outcome = find_apportioning(padded(A, m), cfg);
        }
        if (!out.sigma_upper_empirical && (step.verdict == Verdict::Apportionable || step.outcome.found))
            out.sigma_upper_empirical = m;
        out.steps.push_back(std::move(step));
    }
    return out;
}

}  // namespace

ObjectiveValue search_objective(const ComplexMatrix& A, const ComplexMatrix& M, double beta, bool with_gradient) {
    ObjectiveValue v;
    const Eigen::Index n = M.rows();
    const Eigen::PartialPivLU<ComplexMatrix> lu(M);
    const double rc = lu.rcond();
    if (!(rc >= kSingularCutoff) || !std::isfinite(rc)) return v;
    const ComplexMatrix Minv = lu.inverse();
    const ComplexMatrix B = M * A * Minv;

    const Eigen::ArrayXXd p = B.cwiseAbs2().array();
    const double N = static_cast<double>(p.size());
    const double mu = p.mean();
    if (!(mu > 0.0)) return v;
    const double var = (p - mu).square().mean();
    v.spread = var / (mu * mu);

    double logdet = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) logdet += std::log(std::abs(lu.matrixLU()(k, k)));
    const double frob2 = M.squaredNorm();
    v.barrier = -2.0 * logdet + static_cast<double>(n) * std::log(frob2);
    v.defect = relative_defect(B);
    v.ok = std::isfinite(v.spread) && std::isfinite(v.barrier);
    if (!with_gradient || !v.ok) return v;

    // G = d spread / d conj(B); the spread depends on B through p = |b|^2.
    const Eigen::ArrayXXd dp = 2.0 * (p - mu) / (N * mu * mu) - 2.0 * var / (N * mu * mu * mu);
    const ComplexMatrix G = (dp.cast<Complex>() * B.array()).matrix();
    const ComplexMatrix GH = G.adjoint();
    const ComplexMatrix H = A * Minv * GH - Minv * GH * B;
    v.grad = 2.0 * H.adjoint();
    v.grad += beta * (-2.0 * Minv.adjoint() + (2.0 * static_cast<double>(n) / frob2) * M);
    return v;
}

SearchOutcome find_apportioning(const ComplexMatrix& A, const SearchConfig& cfg) {
    cfg.validate();
    require_square(A, "find_apportioning");
    require_finite(A, "find_apportioning");
    if (A.rows() == 0) throw InvalidInput("find_apportioning: empty matrix");
    if (A.rows() > kMaxOrder) throw BudgetExceeded("find_apportioning: order exceeds 16");

    SearchOutcome out;
    if (is_zero_matrix(A)) {
        out.found = true;
        out.certificate = trivial_certificate(A);
        out.certificate->tag = TheoremTag::Search;
        return out;
    }

    out.best_defect = std::numeric_limits<double>::infinity();
    ComplexMatrix best_M;
    for (int start = 0; start < cfg.restarts && !out.found; start += kBatch) {
        const int count = std::min(kBatch, cfg.restarts - start);
        std::vector<RestartResult> results(static_cast<size_t>(count));
        parallel_for(static_cast<size_t>(count),
                     [&](size_t k) { results[k] = run_restart(A, cfg, start + static_cast<int>(k)); });
        out.restarts_used += count;
        // Merge in (defect, restart index) order.
        for (int k = 0; k < count; ++k) {
            const RestartResult& r = results[static_cast<size_t>(k)];
            out.transcript.push_back(r.defect);
            if (r.defect < out.best_defect) {
                out.best_defect = r.defect;
                best_M = r.M;
            }
            if (r.defect > cfg.defect_target || out.found) continue;
            try {
                Tolerance tol;
                tol.rel = cfg.defect_target;
                out.certificate = make_certificate(A, r.M, r.M.partialPivLu().inverse(), TheoremTag::Search, tol);
                out.found = true;
            } catch (const Error&) {
                // Too ill-conditioned to certify: stays "not found".
            }
        }
    }
    return out;
}

SigmaReport sigma_estimate(const ComplexMatrix& A, int m_max, const SearchConfig& cfg) {
    require_square(A, "sigma_estimate");
    require_finite(A, "sigma_estimate");
    const Eigen::JacobiSVD<ComplexMatrix> svd(A);
    const double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    int rank = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()(k) > 1e-10 * std::max(1.0, top)) ++rank;
    std::optional<JordanSpec> spec = read_jordan_form(A);
    return sigma_common(A, spec, spec ? spec->rank() : rank, m_max, cfg);
}

SigmaReport sigma_estimate(const JordanSpec& spec, int m_max, const SearchConfig& cfg) {
    validate(spec);
    return sigma_common(build_jordan(spec), spec, spec.rank(), m_max, cfg);
}

}  // namespace apportion
