#pragma once

#include <vector>

#include "slocc/statespace.hpp"

namespace slocc {

/// mu([v]) as shifted reduced densities rho_p - I/N. One block per party, or a single
/// shared block for identical particles (counted with weight L in norms and mu*).
struct MomentumPoint {
    Sector sector;
    std::vector<CMatrix> blocks;
};

/// Ordered (weakly decreasing) spectra of the blocks of a MomentumPoint.
struct SpectrumPoint {
    Sector sector;
    std::vector<RVector> spectra;
};

/// Trace-orthonormal basis of traceless Hermitian N x N matrices (Gell-Mann / sqrt 2).
struct GeneratorFrame {
    int local_dim = 0;
    std::vector<CMatrix> generators;
};

const GeneratorFrame& generator_frame(int N);

/// One-particle reduced density. `party` is ignored for identical particles.
CMatrix reduced_density(const PureState& state, int party);

MomentumPoint momentum(const PureState& state);

/// sum_p (I x .. x A_p x .. x I) v, in sector coordinates.
CVector mu_star_apply(const MomentumPoint& point, const PureState& state);
/// Same with diagonal blocks diag(spectra_p).
CVector mu_star_apply(const SpectrumPoint& point, const PureState& state);

double mu_norm_sq(const MomentumPoint& point);
double mu_norm_sq(const SpectrumPoint& point);
double mu_norm_sq(const PureState& state);

/// Sum of variances of the local generator frame over all parties.
double total_variance(const PureState& state);

/// c with Var + ||mu||^2 = c on the whole sector: L (N^2 - 1) / N.
double casimir_constant(const Sector& sector);

/// <v x v| C2 |v x v> for the diagonal action on H x H, computed explicitly.
double casimir_vee_expectation(const PureState& state);

SpectrumPoint psi(const PureState& state);

struct PolygonalResult {
    bool satisfied = true;
    std::vector<int> violated;  // 0-based party indices
};

/// p_i = smallest eigenvalue of rho_i; checks p_i <= sum_{j != i} p_j.
PolygonalResult polygonal_check(const SpectrumPoint& spectra);
PolygonalResult polygonal_check(const std::vector<double>& min_eigenvalues);

/// Builds a SpectrumPoint after checking shapes, trace and ordering.
SpectrumPoint make_spectrum(const Sector& sector, std::vector<RVector> spectra);

}  // namespace slocc

namespace slocc {

/// Dense matrix of mu* (sector coordinates) for a fixed momentum or diagonal spectrum point.
CMatrix mu_star_matrix(const MomentumPoint& point);
CMatrix mu_star_matrix(const SpectrumPoint& point);

}  // namespace slocc
