#pragma once

#include <vector>

#include "slocc/flow.hpp"

namespace slocc {

/// Tangent space at [v] split into the SLOCC-orbit part and its complement.
/// Both parts are complex subspaces of v^perp; the real frames are {q, i q}.
struct TangentFrame {
    PureState base;
    std::vector<CVector> orbit_basis;       // complex-orthonormal
    std::vector<CVector> complement_basis;  // complex-orthonormal

    int orbit_real_dim() const { return 2 * static_cast<int>(orbit_basis.size()); }
    int complement_real_dim() const { return 2 * static_cast<int>(complement_basis.size()); }
    /// Real directions {u_1, i u_1, u_2, i u_2, ...} of the complement.
    std::vector<CVector> complement_real_directions() const;
};

inline constexpr double kRankThreshold = 1e-10;
inline constexpr double kNullBand = 1e-6;

TangentFrame orbit_tangent_frame(const PureState& state);

/// Twice the number of eigenvalues of mu*([v]) compressed to the complement that lie
/// below lambda - kNullBand. Zero when mu_norm_sq <= zero_threshold.
int morse_index(const PureState& state, double tol = 1e-6, double zero_threshold = 1e-8);

/// Eigenvalues of the compressed operator minus lambda (the second variations, up to a factor 2).
RVector complement_spectrum(const PureState& state, const TangentFrame& frame);

/// Central-difference Hessian of f(w) = <w|xi w>/<w|w>, xi = mu*([v0]), along the real
/// complement directions of `directions`.
RMatrix hessian_fd_oracle(const PureState& state, const TangentFrame& directions, double h = 1e-4,
                          double tol = 1e-6);

/// Number of Hessian eigenvalues below -band.
int negative_count(const RMatrix& hessian, double band = kNullBand);

}  // namespace slocc
