#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "slocc/morse.hpp"

namespace slocc {

enum class Stability { stable, semistable, nullcone };

std::string_view to_string(Stability s);
Stability stability_from_string(std::string_view name);

struct CriticalRecord {
    PureState state;  // terminal of the flow, a point of the critical K-orbit
    double lambda = 0.0;
    double d_value = 0.0;
    double variance = 0.0;
    std::optional<int> morse_index;
    Stability stability = Stability::nullcone;
    SpectrumPoint stratum;
    int orbit_dimension = 0;     // of the input state
    double gradient_norm = 0.0;  // at the terminal
    bool asymptotic = false;     // zero stratum reached only up to the threshold
};

struct CriticalCheck {
    bool critical = false;
    double lambda = 0.0;
};

CriticalCheck is_critical(const PureState& state, double tol = 1e-8);

struct EigenspaceReport {
    SpectrumPoint alpha;
    double eigenvalue = 0.0;
    int multiplicity = 0;
    std::vector<CVector> basis;  // sector basis vectors
};

/// Diagonal entries of alpha* in the sector basis (level 0 carries the largest entry).
RVector alpha_star_diagonal(const SpectrumPoint& alpha);

/// Eigenspaces of alpha*, grouped with relative gap 1e-9, eigenvalues decreasing.
std::vector<EigenspaceReport> alpha_star_eigenspaces(const SpectrumPoint& alpha);

struct SearchConfig {
    int restarts = 32;
    std::uint64_t seed = 1;
    double accept = 1e-16;  // on sum_p w ||mu_p(v) - alpha_p||^2
    int max_steps = 200;
    std::size_t max_representatives = 4;
};

/// States of the eigenspace with mu(v) = alpha, one per distinct |amplitude|^2 pattern.
std::vector<PureState> self_consistent_critical(const EigenspaceReport& report, double tol = 1e-8,
                                                const SearchConfig& search = {});

/// Real dimension of the SLOCC orbit through [v] in P(H).
int orbit_dimension(const PureState& state);

Stability stability_class(const PureState& state, const FlowConfig& config);

CriticalRecord classify(const PureState& state, const FlowConfig& config);
/// Same, reusing a finished flow of `state`.
CriticalRecord classify(const PureState& state, const FlowTrace& trace, const FlowConfig& config);
/// Record for a state that is already critical (no flow).
CriticalRecord describe_critical(const PureState& state, const FlowConfig& config);

// --- candidate scan over the Weyl chamber ---

struct ScanConfig {
    int max_denominator = 12;
    bool polygonal_filter = true;  // qubit sectors only
    SearchConfig search;
};

/// Rational grid of ordered one-particle spectra (entries m/d, d <= max_denominator), as alpha = spec - 1/N.
std::vector<RVector> spectrum_grid(int N, int max_denominator);

/// Grid points alpha for the sector (product over parties when distinguishable).
std::vector<SpectrumPoint> alpha_grid(const Sector& sector, const ScanConfig& config);

struct CriticalFamily {
    SpectrumPoint alpha;
    double lambda = 0.0;
    double d_value = 0.0;
    int multiplicity = 0;  // of the alpha* eigenspace
    int morse_index = 0;
    std::vector<PureState> representatives;
};

/// Critical families with alpha on the grid: eigenspaces of alpha* with eigenvalue w||alpha||^2
/// that contain a solution of mu(v) = alpha.
std::vector<CriticalFamily> critical_families(const Sector& sector, const ScanConfig& config = {});

/// The single family at alpha = 0, or nothing when mu^-1(0) is empty.
std::optional<CriticalFamily> zero_family(const Sector& sector, const SearchConfig& search = {});

/// Two-level bosons: candidates |k,L> along the ray alpha = diag(t, -t); kept when mu is
/// diagonal, ordered and critical.
std::vector<CriticalFamily> dicke_critical_families(int L);

}  // namespace slocc
