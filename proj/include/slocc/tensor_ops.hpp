#pragma once

// Low-level kernels on amplitude vectors of (C^N)^{⊗L}, index i1*N^{L-1} + ... + iL
// (party 0 is the most significant digit).

#include <cstddef>
#include <vector>

#include "slocc/types.hpp"

namespace slocc::tensor {

std::size_t ipow(std::size_t base, int exp);

/// out = (I ⊗ ... ⊗ A ⊗ ... ⊗ I) psi with A acting on `party`. `out` must not alias `psi`.
void apply_on_party(const CMatrix& A, int party, int N, int L, const CVector& psi, CVector& out);

CVector apply_on_party(const CMatrix& A, int party, int N, int L, const CVector& psi);

/// Applies A_p on every party p in place (A_p may differ per party).
void apply_product(const std::vector<CMatrix>& ops, int N, int L, CVector& psi, CVector& scratch);

/// Single-party reduced density matrix Tr_{all but party} |psi><psi|, written into rho (N x N).
void reduced_density(const CVector& psi, int party, int N, int L, CMatrix& rho);

CMatrix reduced_density(const CVector& psi, int party, int N, int L);

/// (A + A^dagger)/2 with the trace part set to `trace`/N * I.
CMatrix hermitian_with_trace(const CMatrix& A, double trace);

/// exp(s * H) for Hermitian H via its eigendecomposition.
CMatrix hermitian_exp(const CMatrix& H, double s);

}  // namespace slocc::tensor
