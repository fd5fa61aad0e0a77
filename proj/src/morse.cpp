#include "slocc/morse.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace slocc {

namespace {

void require_critical(const PureState& v, double tol) {
    const double g = gradient_norm(v);
    if (g > tol) throw NotCritical("state is not critical (gradient norm " + std::to_string(g) + ")");
}

}  // namespace

std::vector<CVector> TangentFrame::complement_real_directions() const {
    std::vector<CVector> out;
    for (const auto& u : complement_basis) {
        out.push_back(u);
        out.push_back(cplx(0.0, 1.0) * u);
    }
    return out;
}

TangentFrame orbit_tangent_frame(const PureState& state) {
    const PureState v = normalize(state);
    const Sector& s = v.sector();
    const auto n = static_cast<Eigen::Index>(s.dim());
    const CVector& x = v.amplitudes();
    const auto& frame = generator_frame(s.local_dim());

    // fundamental vectors of a complex basis of the Lie algebra, projected onto v^perp
    std::vector<CVector> cols;
    for (int p = 0; p < s.block_count(); ++p) {
        for (const auto& X : frame.generators) {
            MomentumPoint g{s, std::vector<CMatrix>(s.block_count(), CMatrix::Zero(s.local_dim(), s.local_dim()))};
            g.blocks[p] = X;
            CVector u = mu_star_apply(g, v);
            u -= x.dot(u) * x;
            cols.push_back(u);
        }
    }
    TangentFrame tf{v, {}, {}};
    Eigen::Index r = 0;
    CMatrix U;
    if (!cols.empty() && n > 1) {
        CMatrix A(n, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j) A.col(static_cast<Eigen::Index>(j)) = cols[j];
        Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU);
        const RVector& sv = svd.singularValues();
        const double smax = sv.size() > 0 ? sv[0] : 0.0;
        if (smax > 1e-13)
            while (r < sv.size() && sv[r] > kRankThreshold * smax) ++r;
        U = svd.matrixU().leftCols(r);
        for (Eigen::Index j = 0; j < r; ++j) tf.orbit_basis.push_back(U.col(j));
    }
    CMatrix P = CMatrix::Identity(n, n) - x * x.adjoint();
    if (r > 0) P -= U * U.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (P + P.adjoint()));
    for (Eigen::Index j = 0; j < n; ++j)
        if (es.eigenvalues()[j] > 0.5) tf.complement_basis.push_back(es.eigenvectors().col(j));
    return tf;
}

RVector complement_spectrum(const PureState& state, const TangentFrame& frame) {
    const PureState v = normalize(state);
    const CMatrix M = mu_star_matrix(momentum(v));
    const double lambda = v.amplitudes().dot(M * v.amplitudes()).real();
    const auto m = static_cast<Eigen::Index>(frame.complement_basis.size());
    if (m == 0) return RVector(0);
    CMatrix Q(v.amplitudes().size(), m);
    for (Eigen::Index j = 0; j < m; ++j) Q.col(j) = frame.complement_basis[j];
    const CMatrix H = Q.adjoint() * M * Q;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (H + H.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().array() - lambda;
}

int morse_index(const PureState& state, double tol, double zero_threshold) {
    const PureState v = normalize(state);
    if (mu_norm_sq(v) <= zero_threshold) return 0;
    require_critical(v, tol);
    const RVector spec = complement_spectrum(v, orbit_tangent_frame(v));
    int count = 0;
    for (Eigen::Index i = 0; i < spec.size(); ++i)
        if (spec[i] < -kNullBand) ++count;
    return 2 * count;
}

RMatrix hessian_fd_oracle(const PureState& state, const TangentFrame& directions, double h, double tol) {
    const PureState v = normalize(state);
    require_critical(v, tol);
    const CMatrix xi = mu_star_matrix(momentum(v));
    const CVector& x = v.amplitudes();
    auto f = [&](const CVector& w) { return w.dot(xi * w).real() / w.squaredNorm(); };
    const auto dirs = directions.complement_real_directions();
    const auto m = static_cast<Eigen::Index>(dirs.size());
    RMatrix H(m, m);
    const double f0 = f(x);
    for (Eigen::Index a = 0; a < m; ++a) {
        H(a, a) = (f(x + h * dirs[a]) - 2.0 * f0 + f(x - h * dirs[a])) / (h * h);
        for (Eigen::Index b = a + 1; b < m; ++b) {
            const CVector& da = dirs[a];
            const CVector& db = dirs[b];
            const double val =
                (f(x + h * da + h * db) - f(x + h * da - h * db) - f(x - h * da + h * db) + f(x - h * da - h * db)) /
                (4.0 * h * h);
            H(a, b) = H(b, a) = val;
        }
    }
    return H;
}

int negative_count(const RMatrix& hessian, double band) {
    if (hessian.size() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(hessian, Eigen::EigenvaluesOnly);
    int count = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] < -band) ++count;
    return count;
}

}  // namespace slocc
