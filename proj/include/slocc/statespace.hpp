#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slocc/types.hpp"

namespace slocc {

enum class SectorKind { distinguishable, bosonic, fermionic };

std::string_view to_string(SectorKind kind);
SectorKind sector_kind_from_string(std::string_view name);

/// Hilbert space of L particles with N local levels, together with its canonical basis.
///
/// Canonical basis orderings:
///  - distinguishable: digit strings (i1..iL), i1 most significant, lexicographic;
///  - bosonic: occupation vectors (n1..nN), sum L, lexicographically decreasing;
///  - fermionic: L-subsets of {0..N-1} in lexicographic order, ascending-index wedge sign.
/// Identical-particle basis vectors are the normalized (anti)symmetrized tensors.
class Sector {
public:
    Sector(SectorKind kind, int parties, int local_dim);

    static Sector distinguishable(int parties, int local_dim);
    static Sector bosonic(int parties, int local_dim);
    static Sector fermionic(int parties, int local_dim);

    SectorKind kind() const { return kind_; }
    int parties() const { return parties_; }
    int local_dim() const { return local_dim_; }
    bool identical() const { return kind_ != SectorKind::distinguishable; }

    std::size_t dim() const;
    std::size_t tensor_dim() const;

    /// Labels of the canonical basis (digits, occupations or 0-based subsets).
    const std::vector<std::vector<int>>& labels() const;
    std::size_t index_of(std::span<const int> label) const;

    /// Sector amplitudes -> full tensor amplitudes.
    CVector embed(const CVector& amplitudes) const;
    /// Orthogonal projection of a tensor onto the sector, in sector coordinates.
    CVector project(const CVector& tensor) const;
    /// Dense isometry (tensor_dim x dim) whose columns are the basis vectors.
    CMatrix isometry() const;

    /// Number of copies of the one-particle momentum block (L for identical particles, 1 otherwise).
    int block_weight() const { return identical() ? parties_ : 1; }
    /// Number of independent one-particle blocks in a MomentumPoint.
    int block_count() const { return identical() ? 1 : parties_; }
    /// Real dimension of the SLOCC group acting on the sector.
    int group_real_dim() const;

    std::string describe() const;

    friend bool operator==(const Sector& a, const Sector& b) {
        return a.kind_ == b.kind_ && a.parties_ == b.parties_ && a.local_dim_ == b.local_dim_;
    }

private:
    struct Basis;
    SectorKind kind_;
    int parties_;
    int local_dim_;
    std::shared_ptr<const Basis> basis_;
};

class PureState {
public:
    PureState(Sector sector, CVector amplitudes);

    const Sector& sector() const { return sector_; }
    const CVector& amplitudes() const { return amplitudes_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    double norm() const { return amplitudes_.norm(); }

    /// Full tensor-space amplitudes.
    CVector tensor() const { return sector_.embed(amplitudes_); }
    static PureState from_tensor(const Sector& sector, const CVector& tensor);

private:
    Sector sector_;
    CVector amplitudes_;
};

struct LocalOperator {
    int party = 0;  // ignored for identical particles
    CMatrix matrix;
};

inline constexpr double kZeroNorm = 1e-14;

PureState normalize(const PureState& state);
cplx inner(const PureState& a, const PureState& b);

/// Local (SLOCC) action. Distinguishable: one operator per party, in any order.
/// Identical particles: exactly one operator, applied diagonally.
PureState apply_local(std::span<const LocalOperator> ops, const PureState& state);
/// Convenience form: ops[p] acts on party p (or a single diagonal operator).
PureState apply_local(const std::vector<CMatrix>& ops, const PureState& state);

/// Symmetric two-level state with k excitations (|1> is the excited level).
PureState dicke(int k, int L);

/// Particle-hole dual on a fermionic sector: wedge^L(C^N) -> wedge^(N-L)(C^N).
PureState hodge_dual(const PureState& state);

// --- constructors used throughout tests and demos ---

PureState basis_state(const Sector& sector, std::span<const int> label);
/// Normalized distinguishable-qudit superposition from digit strings, e.g. {{"000", 1}, {"111", 1}}.
PureState from_kets(int local_dim, const std::vector<std::pair<std::string, cplx>>& terms);
PureState ghz_state(int parties);
PureState w_state(int parties);

/// Two-particle state from its coefficient matrix, psi = sum M_ij |i>|j>, normalized.
/// Bosonic sectors require symmetric M, fermionic ones antisymmetric M.
PureState from_coefficient_matrix(SectorKind kind, const CMatrix& M);
/// Tensor coefficients of a two-particle state as an N x N matrix.
CMatrix coefficient_matrix(const PureState& state);

using Rng = std::mt19937_64;

CVector random_gaussian(std::size_t n, Rng& rng);
PureState random_state(const Sector& sector, Rng& rng);
CMatrix random_unitary(int n, Rng& rng);
/// Random element of SL(n, C) of the form exp(scale * X), X a random traceless matrix.
CMatrix random_special_linear(int n, Rng& rng, double scale = 0.5);

}  // namespace slocc
