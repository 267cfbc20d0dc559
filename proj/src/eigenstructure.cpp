// Eigenvalues and Jordan structure of raw matrices of order <= 3.
//
// Roots come from the characteristic polynomial (closed forms). Multiplicity
// is decided by backward error: a candidate grouping is accepted when the
// polynomial with the merged roots matches the computed coefficients to
// within kMergeTol (relative to max(1, rho)^k per coefficient). Block sizes
// come from the numerical rank of A - mu I.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "apportion/errors.hpp"
#include "apportion/jordan.hpp"

namespace apportion {
namespace {

constexpr double kMergeTol = 1e-11;
constexpr double kAmbiguity = 100.0;
constexpr double kZeroSnap = 1e-9;
constexpr double kRankTol = 1e-8;

bool strictly_upper(const ComplexMatrix& A) {
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = j + 1; i < A.rows(); ++i)
            if (A(i, j) != Complex(0.0, 0.0)) return false;
    return true;
}

// Monic coefficients c_0..c_{n-1} of prod (x - r_i), lowest degree first.
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex(1.0, 0.0)};
    for (const Complex r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex(0.0, 0.0));
        for (size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    c.pop_back();
    return c;
}

std::vector<Complex> char_poly(const ComplexMatrix& A) {
    const Eigen::Index n = A.rows();
    if (n == 1) return {-A(0, 0)};
    if (n == 2) return {A.determinant(), -A.trace()};
    const Complex minors = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0) + A(0, 0) * A(2, 2) -
                           A(0, 2) * A(2, 0) + A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
    return {-A.determinant(), minors, -A.trace()};
}

Complex eval_poly(const std::vector<Complex>& c, Complex x) {
    Complex v(1.0, 0.0);
    for (size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

Complex eval_deriv(const std::vector<Complex>& c, Complex x) {
    const size_t n = c.size();
    Complex v(static_cast<double>(n), 0.0);
    for (size_t k = n; k-- > 1;) v = v * x + static_cast<double>(k) * c[k];
    return v;
}

std::vector<Complex> quadratic_roots(Complex b, Complex c) {
    // x^2 + b x + c
    const Complex disc = std::sqrt(b * b - 4.0 * c);
    const Complex q = (std::real(std::conj(b) * disc) >= 0.0) ? -(b + disc) / 2.0 : -(b - disc) / 2.0;
    if (q == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
    return {q, c / q};
}

std::vector<Complex> cubic_roots(const std::vector<Complex>& c) {
    // x^3 + a x^2 + b x + d, depressed by x = y - a/3.
    const Complex a = c[2], b = c[1], d = c[0];
    const Complex p = b - a * a / 3.0;
    const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    const Complex s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Complex u3 = -q / 2.0 + s;
    const Complex alt = -q / 2.0 - s;
    if (std::abs(alt) > std::abs(u3)) u3 = alt;
    std::vector<Complex> roots;
    const Complex shift = -a / 3.0;
    if (u3 == Complex(0.0, 0.0)) {
        roots.assign(3, shift);
    } else {
        const Complex u = std::pow(u3, 1.0 / 3.0);
        const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
        Complex uk = u;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(uk - p / (3.0 * uk) + shift);
            uk *= w;
        }
    }
    for (auto& r : roots) {
        for (int it = 0; it < 3; ++it) {
            const Complex f = eval_poly(c, r);
            const Complex df = eval_deriv(c, r);
            if (df == Complex(0.0, 0.0)) break;
            const Complex cand = r - f / df;
            if (std::abs(eval_poly(c, cand)) < std::abs(f)) r = cand;
            else break;
        }
    }
    return roots;
}

double backward_error(const std::vector<Complex>& coeffs, const std::vector<Complex>& roots,
                      double scale) {
    const auto merged = poly_from_roots(roots);
    const size_t n = coeffs.size();
    double err = 0.0;
    for (size_t k = 0; k < n; ++k) {
        const double weight = std::pow(scale, static_cast<double>(n - k));
        err = std::max(err, std::abs(coeffs[k] - merged[k]) / weight);
    }
    return err;
}

struct Group {
    Complex mu;
    int multiplicity;
    double spread;  // max distance of a member root from mu
};

struct Grouping {
    std::vector<Group> groups;
    bool approximate = false;
};

Grouping group_roots(const std::vector<Complex>& roots, const std::vector<Complex>& coeffs,
                     double scale) {
    const size_t n = roots.size();
    Grouping out;
    auto singles = [&] {
        std::vector<Group> g;
        for (const Complex r : roots) g.push_back({r, 1, 0.0});
        return g;
    };
    if (n == 1) {
        out.groups = singles();
        return out;
    }

    // Fully merged candidate.
    Complex mean(0.0, 0.0);
    for (const Complex r : roots) mean += r;
    mean /= static_cast<double>(n);
    double spread_all = 0.0;
    for (const Complex r : roots) spread_all = std::max(spread_all, std::abs(r - mean));
    const double err_all = backward_error(coeffs, std::vector<Complex>(n, mean), scale);

    if (err_all <= kMergeTol) {
        out.groups = {{mean, static_cast<int>(n), spread_all}};
        return out;
    }
    if (err_all <= kAmbiguity * kMergeTol) out.approximate = true;

    if (n == 3) {
        double best_err = INFINITY;
        std::array<int, 3> best{};
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const int k = 3 - i - j;
                const Complex mu = (roots[i] + roots[j]) / 2.0;
                const double e = backward_error(coeffs, {mu, mu, roots[k]}, scale);
                if (e < best_err) {
                    best_err = e;
                    best = {i, j, k};
                }
            }
        }
        if (best_err <= kMergeTol) {
            const Complex mu = (roots[best[0]] + roots[best[1]]) / 2.0;
            out.groups = {{mu, 2, std::abs(roots[best[0]] - mu)}, {roots[best[2]], 1, 0.0}};
            return out;
        }
        if (best_err <= kAmbiguity * kMergeTol) out.approximate = true;
    }
    out.groups = singles();
    return out;
}

double numerical_rank_margin(const Eigen::VectorXd& sv, double tol, int& rank) {
    rank = 0;
    double margin = INFINITY;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol) ++rank;
        if (sv(i) > 0.0) margin = std::min(margin, std::abs(std::log10(sv(i) / tol)));
    }
    return margin;
}

}  // namespace

EigenStructure eigenstructure_small(const ComplexMatrix& A) {
    require_square(A, "eigenstructure_small");
    require_finite(A, "eigenstructure_small");
    const Eigen::Index n = A.rows();
    if (n > 3) throw UnsupportedOrder("eigenstructure_small: order " + std::to_string(n) + " > 3");

    std::vector<Complex> roots;
    std::vector<Complex> coeffs;
    if (strictly_upper(A)) {
        for (Eigen::Index i = 0; i < n; ++i) roots.push_back(A(i, i));
        coeffs = poly_from_roots(roots);
    } else {
        coeffs = char_poly(A);
        if (n == 1) roots = {A(0, 0)};
        else if (n == 2) roots = quadratic_roots(coeffs[1], coeffs[0]);
        else roots = cubic_roots(coeffs);
    }

    double rho = 0.0;
    for (const Complex r : roots) rho = std::max(rho, std::abs(r));
    const double scale = std::max(1.0, rho);

    Grouping grouping = group_roots(roots, coeffs, scale);
    EigenStructure out;
    out.approximate = grouping.approximate;

    for (size_t i = 0; i < grouping.groups.size(); ++i) {
        const Group& g = grouping.groups[i];
        if (g.spread > kZeroSnap * scale) out.approximate = true;
        for (size_t j = i + 1; j < grouping.groups.size(); ++j)
            if (std::abs(g.mu - grouping.groups[j].mu) < 10.0 * kZeroSnap * scale) out.approximate = true;
    }

    const double anorm = std::max(1.0, A.operatorNorm());
    for (auto& g : grouping.groups) {
        if (std::abs(g.mu) <= kZeroSnap * scale) {
            if (std::abs(g.mu) > 1e-12 * scale) out.approximate = true;
            g.mu = Complex(0.0, 0.0);
        }
        if (g.multiplicity == 1) {
            out.spec.blocks.push_back({g.mu, 1});
            continue;
        }
        const ComplexMatrix N = A - g.mu * ComplexMatrix::Identity(n, n);
        const Eigen::JacobiSVD<ComplexMatrix> svd(N);
        int rank = 0;
        const double margin = numerical_rank_margin(svd.singularValues(), kRankTol * anorm, rank);
        if (margin < 2.0) out.approximate = true;
        const int geometric = std::clamp(static_cast<int>(n) - rank, 1, g.multiplicity);
        // With multiplicity <= 3 the partition is fixed by the geometric multiplicity.
        const int largest = g.multiplicity - geometric + 1;
        out.spec.blocks.push_back({g.mu, largest});
        for (int k = 1; k < geometric; ++k) out.spec.blocks.push_back({g.mu, 1});
    }
    out.spec = canonical(out.spec);
    return out;
}

EigenStructure eigenstructure_2x2(const ComplexMatrix& A) {
    if (A.rows() != 2 || A.cols() != 2) throw InvalidInput("eigenstructure_2x2: expected a 2x2 matrix");
    return eigenstructure_small(A);
}

ComplexMatrix jordan_basis_small(const ComplexMatrix& A, const JordanSpec& spec) {
    require_square(A, "jordan_basis_small");
    validate(spec);
    const Eigen::Index n = A.rows();
    if (spec.order() != n) throw InvalidInput("jordan_basis_small: spec order differs from matrix order");
    if (n > 3) throw UnsupportedOrder("jordan_basis_small: order > 3");

    std::vector<int> offset;
    for (int pos = 0; const auto& b : spec.blocks) {
        offset.push_back(pos);
        pos += b.size;
    }
    ComplexMatrix P = ComplexMatrix::Zero(n, n);
    std::vector<bool> done(spec.blocks.size(), false);

    for (size_t first = 0; first < spec.blocks.size(); ++first) {
        if (done[first]) continue;
        const Complex mu = spec.blocks[first].lambda;
        std::vector<size_t> members;
        int multiplicity = 0;
        for (size_t i = first; i < spec.blocks.size(); ++i) {
            if (spec.blocks[i].lambda == mu) {
                members.push_back(i);
                multiplicity += spec.blocks[i].size;
            }
        }
        std::stable_sort(members.begin(), members.end(), [&](size_t x, size_t y) {
            return spec.blocks[x].size > spec.blocks[y].size;
        });
        for (size_t k = 1; k < members.size(); ++k)
            if (spec.blocks[members[k]].size > 1)
                throw UnsupportedOrder("jordan_basis_small: two nontrivial blocks for one eigenvalue");

        const ComplexMatrix N = A - mu * ComplexMatrix::Identity(n, n);
        std::vector<ComplexVector> eigvecs;
        for (const size_t idx : members) {
            const int size = spec.blocks[idx].size;
            if (size >= 2) {
                ComplexMatrix Nk = ComplexMatrix::Identity(n, n);
                for (int k = 0; k < size; ++k) Nk = Nk * N;
                const Eigen::JacobiSVD<ComplexMatrix> svd_k(Nk, Eigen::ComputeFullV);
                const ComplexMatrix G = svd_k.matrixV().rightCols(multiplicity);
                ComplexMatrix Nk1 = ComplexMatrix::Identity(n, n);
                for (int k = 0; k + 1 < size; ++k) Nk1 = Nk1 * N;
                const Eigen::JacobiSVD<ComplexMatrix> svd_w(Nk1 * G, Eigen::ComputeFullV);
                ComplexVector v = (G * svd_w.matrixV().col(0)).normalized();
                for (int k = size - 1; k >= 0; --k) {
                    P.col(offset[idx] + k) = v;
                    v = N * v;
                }
                eigvecs.push_back(P.col(offset[idx]));
            } else {
                const Eigen::JacobiSVD<ComplexMatrix> svd(N, Eigen::ComputeFullV);
                const int geometric = static_cast<int>(members.size());
                ComplexMatrix Z = svd.matrixV().rightCols(geometric);
                if (!eigvecs.empty()) {
                    ComplexMatrix E(n, static_cast<Eigen::Index>(eigvecs.size()));
                    for (size_t k = 0; k < eigvecs.size(); ++k) E.col(static_cast<Eigen::Index>(k)) = eigvecs[k];
                    const Eigen::HouseholderQR<ComplexMatrix> qr(E);
                    const ComplexMatrix Q = qr.householderQ() * ComplexMatrix::Identity(n, E.cols());
                    Z -= Q * (Q.adjoint() * Z);
                }
                Eigen::Index best = 0;
                Z.colwise().norm().maxCoeff(&best);
                const ComplexVector v = Z.col(best).normalized();
                P.col(offset[idx]) = v;
                eigvecs.push_back(v);
            }
            done[idx] = true;
        }
    }

    const double rc = equilibrated_rcond(P);
    if (!(rc >= kSingularRcond)) throw SingularMatrix("jordan_basis_small: basis is singular", rc);
    const ComplexMatrix J = build_jordan(spec);
    const double resid = (A * P - P * J).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff()) * P.cwiseAbs().maxCoeff();
    if (!(resid <= 1e-6 * scale))
        throw InvalidInput("jordan_basis_small: spec does not match the matrix (residual " +
                           std::to_string(resid) + ")");
    return P;
}

}  // namespace apportion
