#pragma once

#include <stdexcept>
#include <string>

namespace purity {

/// Dimensions (p, q), p <= q, of a bipartite system C^p (x) C^q.
///
/// The reduced state of the smaller factor is p x p, so the purity
/// R = tr(rho_A^2) of a pure state ranges over [1/p, 1].
struct BipartiteDims {
    int p;
    int q;

    BipartiteDims(int p_in, int q_in) : p(p_in), q(q_in) {
        if (p < 2)
            throw std::domain_error("BipartiteDims: p must be >= 2, got p=" + std::to_string(p));
        if (q < p)
            throw std::domain_error("BipartiteDims: need p <= q, got p=" + std::to_string(p) +
                                    ", q=" + std::to_string(q));
    }

    /// Dimension gap d = q - p >= 0.
    int d() const noexcept { return q - p; }

    /// Smallest attainable purity, 1/p (maximally entangled state).
    double support_lo() const noexcept { return 1.0 / p; }

    bool operator==(const BipartiteDims& other) const noexcept {
        return p == other.p && q == other.q;
    }
};

/// Linear entropy S_L = p/(p-1) * (1 - R).
/// Monotone decreasing in R; maps [1/p, 1] onto [0, 1].
/// Throws std::domain_error if R lies outside [1/p, 1] (1e-12 slack).
double linear_entropy_from_purity(const BipartiteDims& dims, double R);

/// Inverse map R = 1 - (p-1)/p * S_L for S_L in [0, 1] (1e-12 slack).
double purity_from_linear_entropy(const BipartiteDims& dims, double s_lin);

} // namespace purity
