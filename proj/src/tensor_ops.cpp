#include "slocc/tensor_ops.hpp"

#include <Eigen/Eigenvalues>

namespace slocc::tensor {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void apply_on_party(const CMatrix& A, int party, int N, int L, const CVector& psi, CVector& out) {
    const std::size_t stride = ipow(N, L - 1 - party);
    const std::size_t block = stride * N;
    const std::size_t total = ipow(N, L);
    out.resize(static_cast<Eigen::Index>(total));
    for (std::size_t outer = 0; outer < total; outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t base = outer + inner;
            for (int i = 0; i < N; ++i) {
                cplx acc = 0.0;
                for (int j = 0; j < N; ++j) acc += A(i, j) * psi[base + j * stride];
                out[base + i * stride] = acc;
            }
        }
    }
}

CVector apply_on_party(const CMatrix& A, int party, int N, int L, const CVector& psi) {
    CVector out;
    apply_on_party(A, party, N, L, psi, out);
    return out;
}

void apply_product(const std::vector<CMatrix>& ops, int N, int L, CVector& psi, CVector& scratch) {
    for (int p = 0; p < L; ++p) {
        apply_on_party(ops[p], p, N, L, psi, scratch);
        psi.swap(scratch);
    }
}

void reduced_density(const CVector& psi, int party, int N, int L, CMatrix& rho) {
    const std::size_t stride = ipow(N, L - 1 - party);
    const std::size_t block = stride * N;
    const std::size_t total = ipow(N, L);
    rho.setZero(N, N);
    for (std::size_t outer = 0; outer < total; outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t base = outer + inner;
            for (int i = 0; i < N; ++i) {
                const cplx a = psi[base + i * stride];
                for (int j = 0; j < N; ++j) rho(i, j) += a * std::conj(psi[base + j * stride]);
            }
        }
    }
}

CMatrix reduced_density(const CVector& psi, int party, int N, int L) {
    CMatrix rho;
    reduced_density(psi, party, N, L, rho);
    return rho;
}

CMatrix hermitian_with_trace(const CMatrix& A, double trace) {
    CMatrix H = 0.5 * (A + A.adjoint());
    const auto n = H.rows();
    const cplx shift = (trace - H.trace().real()) / static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) H(i, i) = cplx(H(i, i).real(), 0.0) + shift;
    return H;
}

CMatrix hermitian_exp(const CMatrix& H, double s) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    const RVector w = (s * es.eigenvalues().array()).exp();
    return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace slocc::tensor
