#pragma once

// Helpers shared by the constructor and classifier translation units.

#include "apportion/certificate.hpp"
#include "apportion/jordan.hpp"

namespace apportion::detail {

// Moves a certificate for build_jordan(native) to build_jordan(target); the
// two specs hold the same blocks in different orders.
inline ApportionCertificate reorder(const ApportionCertificate& cert, const JordanSpec& native,
                                    const JordanSpec& target) {
    if (native == target) return cert;
    const ComplexMatrix Q = block_permutation(native, target).cast<Complex>();
    return transport(cert, build_jordan(target), Q.transpose(), Q);
}

// Per-block diag(1, c, c^2, ...) for the block sizes of spec.
inline ComplexVector block_powers(const JordanSpec& spec, Complex c) {
    ComplexVector d(spec.order());
    int pos = 0;
    for (const auto& b : spec.blocks) {
        Complex p(1.0, 0.0);
        for (int k = 0; k < b.size; ++k, p *= c) d(pos + k) = p;
        pos += b.size;
    }
    return d;
}

}  // namespace apportion::detail
