#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "slocc/statespace.hpp"

namespace slocc {

/// (U1 x U2) v = sum_i a_i |i,i>.
struct SchmidtForm {
    RVector coefficients;  // weakly decreasing, nonnegative
    CMatrix U1;
    CMatrix U2;
};

SchmidtForm schmidt(const PureState& state);

/// U M U^t = diag(a) (symmetric case) or a direct sum of a_i [[0,1],[-1,0]] blocks (antisymmetric case).
struct CongruenceForm {
    CMatrix U;
    RVector a;  // weakly decreasing, nonnegative; one entry per 2x2 block in the antisymmetric case
};

CongruenceForm takagi(const CMatrix& M);
CongruenceForm antisym_canonical(const CMatrix& M);

/// Block-diagonal target of antisym_canonical, for checks.
CMatrix antisym_block_matrix(const RVector& a, Eigen::Index n);

/// Two-boson / two-fermion canonical forms of a state's coefficient matrix.
CongruenceForm boson_pair_form(const PureState& state);
CongruenceForm fermion_pair_form(const PureState& state);

/// (U1 x U2 x U3) v = z|000> + p|011> + q|101> + r|110> + s|111>.
struct AcinForm {
    double p = 0.0, q = 0.0, r = 0.0, s = 0.0;
    cplx z = 0.0;
    std::array<CMatrix, 3> unitaries;
    double residual = 0.0;  // max |C001|, |C010|, |C100| after reduction
    bool non_unique = false;  // another restart reached a different normal form
};

AcinForm acin_form(const PureState& state, std::uint64_t seed = 1, int restarts = 64);
PureState acin_state(const AcinForm& form);

/// Span of |0000>+|1111>, |0011>+|1100>, |0101>+|1010>, |0110>+|1001>.
PureState gabcd(const std::array<cplx, 4>& alpha);
double distance_to_gabcd(const PureState& state);

enum class Family { L_abc2, L_a2b2, L_ab3, L_a4, L_a2_0 };

std::string_view to_string(Family f);
Family family_from_string(std::string_view name);
const std::vector<Family>& all_families();

struct FamilyState {
    CVector v;  // G_abcd part
    CVector w;  // part removed by the closure subgroup
    PureState state;  // normalize(v + w)
};

/// params: L_abc2 (a,b,c); L_a2b2, L_ab3 (a,b); L_a4, L_a2_0 (a).
FamilyState four_qubit_family_parts(Family f, const std::vector<double>& params);
PureState four_qubit_family(Family f, const std::vector<double>& params);
/// Default parameters used by demos and tests.
std::vector<double> default_family_params(Family f);

/// Diagonal generators diag(x_p, -x_p) per party whose flow exp(t xi) kills the w part.
std::vector<RVector> closure_generators(Family f);

}  // namespace slocc
