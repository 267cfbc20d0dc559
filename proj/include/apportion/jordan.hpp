#pragma once

#include <optional>
#include <vector>

#include "apportion/core.hpp"

namespace apportion {

struct JordanBlock {
    Complex lambda;
    int size = 1;

    bool operator==(const JordanBlock&) const = default;
};

struct JordanSpec {
    std::vector<JordanBlock> blocks;

    int order() const;
    int rank() const;  // order minus the number of zero-eigenvalue blocks
    double spectral_radius() const;
    bool is_nilpotent() const;
    bool is_zero() const;  // every block is a 1x1 zero

    // Eigenvalue at each diagonal position, and the superdiagonal indicators
    // alpha_k (1 iff positions k and k+1 share a block).
    std::vector<Complex> diagonal() const;
    std::vector<int> superdiagonal() const;

    bool operator==(const JordanSpec&) const = default;
};

void validate(const JordanSpec& spec);

// Sorted by descending |lambda|, then descending size, then ascending arg in [0, 2pi).
JordanSpec canonical(JordanSpec spec);

// Permutation Q (Q e_j = e_{pi(j)}) with build_jordan(to) = Q build_jordan(from) Q^T.
// The two specs must hold the same multiset of blocks.
Eigen::MatrixXd block_permutation(const JordanSpec& from, const JordanSpec& to);

ComplexMatrix build_jordan(const JordanSpec& spec);

struct ScaledJordan {
    JordanSpec spec;  // same block order, eigenvalues multiplied by lambda
    ComplexMatrix S;  // S (lambda J) S^{-1} = build_jordan(spec)
    ComplexMatrix Sinv;
};

// S = diag(1, lambda, lambda^2, ...) restarting in each block.
ScaledJordan scale_jordan(const JordanSpec& spec, Complex lambda);

// The spec of A when A is exactly (bitwise) a Jordan matrix, else nullopt.
std::optional<JordanSpec> read_jordan_form(const ComplexMatrix& A);

struct InversePair {
    ComplexMatrix M;
    ComplexMatrix Minv;
};

// Completes V U = I_m to M = [U | U'], Minv = [V ; V'] with U' an orthonormal
// basis of col(V^*)^perp.
InversePair complete_inverse_pair(const ComplexMatrix& U, const ComplexMatrix& V);
// Same with a caller-chosen U' whose columns span col(V^*)^perp.
InversePair complete_inverse_pair(const ComplexMatrix& U, const ComplexMatrix& V,
                                  const ComplexMatrix& Uprime);

struct EigenStructure {
    JordanSpec spec;
    bool approximate = false;  // some grouping decision was close to its threshold
};

EigenStructure eigenstructure_2x2(const ComplexMatrix& A);
EigenStructure eigenstructure_small(const ComplexMatrix& A);

// P with A = P build_jordan(spec) P^{-1}, for order <= 3.
ComplexMatrix jordan_basis_small(const ComplexMatrix& A, const JordanSpec& spec);

}  // namespace apportion
