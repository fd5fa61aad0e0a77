#include "slocc/canonical.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "slocc/tensor_ops.hpp"

namespace slocc {

namespace {

const cplx kI(0.0, 1.0);

// Orthonormal basis of the complement of the given orthonormal columns.
CMatrix complement_basis(const CMatrix& cols, Eigen::Index n) {
    CMatrix P = CMatrix::Identity(n, n) - cols * cols.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (P + P.adjoint()));
    const Eigen::Index k = n - cols.cols();
    return es.eigenvectors().rightCols(k);
}

// Largest singular value of M with its left singular vector.
std::pair<double, CVector> top_singular(const CMatrix& M) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(M * M.adjoint());
    const Eigen::Index last = M.rows() - 1;
    return {std::sqrt(std::max(0.0, es.eigenvalues()[last])), es.eigenvectors().col(last)};
}

double scale_of(const CMatrix& M) { return std::max(1.0, M.norm()); }

}  // namespace

SchmidtForm schmidt(const PureState& state) {
    const Sector& s = state.sector();
    if (s.kind() != SectorKind::distinguishable || s.parties() != 2)
        throw SectorMismatch("Schmidt form needs a distinguishable bipartite state");
    const CMatrix C = coefficient_matrix(normalize(state));
    Eigen::JacobiSVD<CMatrix> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {svd.singularValues(), svd.matrixU().adjoint(), svd.matrixV().transpose()};
}

CongruenceForm takagi(const CMatrix& M) {
    if (M.rows() != M.cols()) throw ShapeMismatch("takagi needs a square matrix");
    if ((M - M.transpose()).norm() > 1e-10 * scale_of(M)) throw NotSymmetric("matrix is not symmetric");
    const Eigen::Index n = M.rows();
    const double tiny = 1e-14 * scale_of(M);
    CMatrix R(n, 0);  // columns r_k with M r_k = a_k conj(r_k)
    RVector a(n);
    CMatrix Q = CMatrix::Identity(n, n);
    CMatrix Mk = 0.5 * (M + M.transpose());
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto [sigma, u] = top_singular(Mk);
        CVector rk;
        if (sigma <= tiny) {
            rk = CVector::Unit(Mk.rows(), 0);
            a[k] = 0.0;
        } else {
            const CVector x = Mk.adjoint() * u / sigma;
            CVector r = u.conjugate() + x;
            if (r.norm() < 0.5) r = kI * (u.conjugate() - x);
            rk = r.normalized();
            a[k] = sigma;
        }
        const CVector full = Q * rk;
        R.conservativeResize(n, k + 1);
        R.col(k) = full;
        if (k + 1 == n) break;
        const CMatrix Qk = complement_basis(rk, Mk.rows());
        Mk = Qk.transpose() * Mk * Qk;
        Mk = 0.5 * (Mk + Mk.transpose());
        Q = Q * Qk;
    }
    return {R.transpose(), a};
}

CMatrix antisym_block_matrix(const RVector& a, Eigen::Index n) {
    CMatrix B = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        B(2 * k, 2 * k + 1) = a[k];
        B(2 * k + 1, 2 * k) = -a[k];
    }
    return B;
}

CongruenceForm antisym_canonical(const CMatrix& M) {
    if (M.rows() != M.cols()) throw ShapeMismatch("antisym_canonical needs a square matrix");
    if ((M + M.transpose()).norm() > 1e-10 * scale_of(M)) throw NotAntisymmetric("matrix is not antisymmetric");
    const Eigen::Index n = M.rows();
    const double tiny = 1e-14 * scale_of(M);
    CMatrix R(n, n);
    RVector a(n / 2);
    CMatrix Q = CMatrix::Identity(n, n);
    CMatrix Mk = 0.5 * (M - M.transpose());
    Eigen::Index filled = 0;
    for (Eigen::Index k = 0; k < n / 2; ++k) {
        const auto [sigma, u] = top_singular(Mk);
        CMatrix pair(Mk.rows(), 2);
        if (sigma <= tiny) {
            pair.col(0) = CVector::Unit(Mk.rows(), 0);
            pair.col(1) = CVector::Unit(Mk.rows(), 1);
            a[k] = 0.0;
        } else {
            pair.col(0) = u.conjugate();
            pair.col(1) = Mk.adjoint() * u / sigma;
            a[k] = sigma;
        }
        // re-orthonormalize against rounding
        Eigen::HouseholderQR<CMatrix> qr(pair);
        CMatrix Qp = qr.householderQ() * CMatrix::Identity(Mk.rows(), 2);
        const CMatrix Rp = qr.matrixQR().topLeftCorner(2, 2).triangularView<Eigen::Upper>();
        for (int j = 0; j < 2; ++j)
            if (std::abs(Rp(j, j)) > 0) Qp.col(j) *= Rp(j, j) / std::abs(Rp(j, j));
        R.col(filled++) = Q * Qp.col(0);
        R.col(filled++) = Q * Qp.col(1);
        if (Mk.rows() == 2) {
            Q.resize(n, 0);
            break;
        }
        const CMatrix Qk = complement_basis(Qp, Mk.rows());
        Mk = Qk.transpose() * Mk * Qk;
        Mk = 0.5 * (Mk - Mk.transpose());
        Q = Q * Qk;
    }
    if (filled < n) R.col(filled) = Q.col(0);
    return {R.transpose(), a};
}

CongruenceForm boson_pair_form(const PureState& state) {
    if (state.sector().kind() != SectorKind::bosonic || state.sector().parties() != 2)
        throw SectorMismatch("boson pair form needs a two-boson state");
    return takagi(coefficient_matrix(normalize(state)));
}

CongruenceForm fermion_pair_form(const PureState& state) {
    if (state.sector().kind() != SectorKind::fermionic || state.sector().parties() != 2)
        throw SectorMismatch("fermion pair form needs a two-fermion state");
    return antisym_canonical(coefficient_matrix(normalize(state)));
}

// --- three qubits ---

namespace {

const std::array<CMatrix, 3>& pauli() {
    static const std::array<CMatrix, 3> P = [] {
        std::array<CMatrix, 3> p;
        p[0] = CMatrix::Zero(2, 2);
        p[0](0, 1) = p[0](1, 0) = 1.0;
        p[1] = CMatrix::Zero(2, 2);
        p[1](0, 1) = -kI;
        p[1](1, 0) = kI;
        p[2] = CMatrix::Zero(2, 2);
        p[2](0, 0) = 1.0;
        p[2](1, 1) = -1.0;
        return p;
    }();
    return P;
}

CVector apply3(const std::array<CMatrix, 3>& U, const CVector& t) {
    CVector psi = t, scratch;
    std::vector<CMatrix> ops(U.begin(), U.end());
    tensor::apply_product(ops, 2, 3, psi, scratch);
    return psi;
}

RVector acin_residual(const CVector& c) {
    RVector r(6);
    r << c[1].real(), c[1].imag(), c[2].real(), c[2].imag(), c[4].real(), c[4].imag();
    return r;
}

std::array<CMatrix, 3> perturb(const std::array<CMatrix, 3>& U, const RVector& theta) {
    std::array<CMatrix, 3> out;
    for (int p = 0; p < 3; ++p) {
        CMatrix H = CMatrix::Zero(2, 2);
        for (int a = 0; a < 3; ++a) H += theta[3 * p + a] * pauli()[a];
        out[p] = (kI * H).exp() * U[p];
    }
    return out;
}

// Levenberg-Marquardt on U(2)^3 with the exponential retraction.
std::array<CMatrix, 3> minimize_acin(std::array<CMatrix, 3> U, const CVector& t, double& residual) {
    RVector r = acin_residual(apply3(U, t));
    double F = r.squaredNorm();
    double mu = 1e-3;
    const double h = 1e-6;
    for (int step = 0; step < 500 && F > 1e-30; ++step) {
        RMatrix J(6, 9);
        for (int j = 0; j < 9; ++j) {
            RVector e = RVector::Zero(9);
            e[j] = h;
            J.col(j) = (acin_residual(apply3(perturb(U, e), t)) - acin_residual(apply3(perturb(U, -e), t))) / (2 * h);
        }
        const RMatrix A = J.transpose() * J;
        const RVector g = J.transpose() * r;
        bool improved = false;
        while (mu < 1e12) {
            RMatrix Ad = A;
            Ad.diagonal().array() += mu;
            const RVector dx = Ad.ldlt().solve(-g);
            const auto Un = perturb(U, dx);
            const RVector rn = acin_residual(apply3(Un, t));
            if (rn.squaredNorm() < F) {
                U = Un;
                r = rn;
                F = rn.squaredNorm();
                mu = std::max(mu / 3.0, 1e-12);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if (!improved) break;
    }
    residual = r.cwiseAbs().maxCoeff();
    return U;
}

AcinForm fix_phases(std::array<CMatrix, 3> U, const CVector& t) {
    const CVector c = apply3(U, t);
    // phase of C_abc shifts by gamma + a phi1 + b phi2 + c phi3
    const int idx[4] = {3, 5, 6, 7};  // 011, 101, 110, 111
    Eigen::Matrix4d A;
    A << 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1;
    Eigen::Vector4d rhs;
    for (int i = 0; i < 4; ++i) rhs[i] = std::abs(c[idx[i]]) > 1e-13 ? -std::arg(c[idx[i]]) : 0.0;
    const Eigen::Vector4d sol = A.partialPivLu().solve(rhs);
    U[0] *= std::exp(kI * sol[0]);
    for (int p = 0; p < 3; ++p) {
        CMatrix D = CMatrix::Identity(2, 2);
        D(1, 1) = std::exp(kI * sol[1 + p]);
        U[p] = D * U[p];
    }
    const CVector f = apply3(U, t);
    AcinForm form;
    form.z = f[0];
    form.p = std::max(0.0, f[3].real());
    form.q = std::max(0.0, f[5].real());
    form.r = std::max(0.0, f[6].real());
    form.s = std::max(0.0, f[7].real());
    form.unitaries = U;
    form.residual = std::max({std::abs(f[1]), std::abs(f[2]), std::abs(f[4])});
    return form;
}

bool same_form(const AcinForm& a, const AcinForm& b) {
    RVector x(5), y(5);
    x << a.p, a.q, a.r, a.s, std::abs(a.z);
    y << b.p, b.q, b.r, b.s, std::abs(b.z);
    return (x - y).cwiseAbs().maxCoeff() < 1e-6;
}

}  // namespace

AcinForm acin_form(const PureState& state, std::uint64_t seed, int restarts) {
    const Sector& s = state.sector();
    if (s.kind() != SectorKind::distinguishable || s.parties() != 3 || s.local_dim() != 2)
        throw SectorMismatch("Acin form needs a three-qubit state");
    const CVector t = normalize(state).amplitudes();
    Rng rng(seed);
    std::vector<AcinForm> found;
    const int extra = 4;
    for (int attempt = 0; attempt < restarts && static_cast<int>(found.size()) < 1 + extra; ++attempt) {
        std::array<CMatrix, 3> U;
        for (auto& u : U) u = attempt == 0 ? CMatrix::Identity(2, 2) : random_unitary(2, rng);
        double res = 0.0;
        U = minimize_acin(U, t, res);
        if (res > 1e-10) {
            if (found.empty()) continue;
            break;
        }
        found.push_back(fix_phases(U, t));
    }
    if (found.empty()) throw ConvergenceFailure("Acin reduction did not reach the 1e-9 residual");
    AcinForm best = found.front();
    for (std::size_t i = 1; i < found.size(); ++i)
        if (!same_form(best, found[i])) best.non_unique = true;
    return best;
}

PureState acin_state(const AcinForm& f) {
    CVector c = CVector::Zero(8);
    c[0] = f.z;
    c[3] = f.p;
    c[5] = f.q;
    c[6] = f.r;
    c[7] = f.s;
    return PureState(Sector::distinguishable(3, 2), c);
}

// --- four qubits ---

namespace {

CVector kets4(const std::vector<std::pair<int, cplx>>& terms) {
    CVector c = CVector::Zero(16);
    for (const auto& [i, a] : terms) c[i] += a;
    return c;
}

// binary literal helper: "0110" -> 6
int b4(const char* s) {
    int v = 0;
    for (int i = 0; i < 4; ++i) v = 2 * v + (s[i] - '0');
    return v;
}

CVector gabcd_vec(int k) {
    static const char* pairs[4][2] = {{"0000", "1111"}, {"0011", "1100"}, {"0101", "1010"}, {"0110", "1001"}};
    return kets4({{b4(pairs[k][0]), 1.0}, {b4(pairs[k][1]), 1.0}});
}

void need(const std::vector<double>& params, std::size_t n, Family f) {
    if (params.size() != n)
        throw InvalidArgument(std::string(to_string(f)) + " takes " + std::to_string(n) + " parameters");
}

}  // namespace

PureState gabcd(const std::array<cplx, 4>& alpha) {
    CVector c = CVector::Zero(16);
    for (int k = 0; k < 4; ++k) c += alpha[k] * gabcd_vec(k);
    return normalize(PureState(Sector::distinguishable(4, 2), c));
}

double distance_to_gabcd(const PureState& state) {
    if (!(state.sector() == Sector::distinguishable(4, 2))) throw SectorMismatch("G_abcd lives in four qubits");
    const CVector x = normalize(state).amplitudes();
    CVector proj = CVector::Zero(16);
    for (int k = 0; k < 4; ++k) {
        const CVector e = gabcd_vec(k) / std::sqrt(2.0);
        proj += e.dot(x) * e;
    }
    return (x - proj).norm();
}

std::string_view to_string(Family f) {
    switch (f) {
        case Family::L_abc2: return "L_abc2";
        case Family::L_a2b2: return "L_a2b2";
        case Family::L_ab3: return "L_ab3";
        case Family::L_a4: return "L_a4";
        case Family::L_a2_0: return "L_a2_0";
    }
    return "unknown";
}

Family family_from_string(std::string_view name) {
    for (Family f : all_families())
        if (to_string(f) == name) return f;
    throw UnknownFamily("unknown four-qubit family '" + std::string(name) + "'");
}

const std::vector<Family>& all_families() {
    static const std::vector<Family> f{Family::L_abc2, Family::L_a2b2, Family::L_ab3, Family::L_a4, Family::L_a2_0};
    return f;
}

FamilyState four_qubit_family_parts(Family f, const std::vector<double>& params) {
    CVector v, w;
    switch (f) {
        case Family::L_abc2: {
            need(params, 3, f);
            const double a = params[0], b = params[1], c = params[2];
            v = (a + b) / 2 * gabcd_vec(0) + (a - b) / 2 * gabcd_vec(1) + c * gabcd_vec(2);
            w = kets4({{b4("0110"), 1.0}});
            break;
        }
        case Family::L_a2b2: {
            need(params, 2, f);
            v = params[0] * gabcd_vec(0) + params[1] * gabcd_vec(2);
            w = kets4({{b4("0110"), 1.0}, {b4("0011"), 1.0}});
            break;
        }
        case Family::L_ab3: {
            need(params, 2, f);
            const double a = params[0], b = params[1];
            v = a * gabcd_vec(0) + (a + b) / 2 * gabcd_vec(2) + (a - b) / 2 * gabcd_vec(3);
            const cplx c = kI / std::sqrt(2.0);
            w = kets4({{b4("0001"), c}, {b4("0010"), c}, {b4("0111"), c}, {b4("1011"), c}});
            break;
        }
        case Family::L_a4: {
            need(params, 1, f);
            v = params[0] * (gabcd_vec(0) + gabcd_vec(2));
            w = kets4({{b4("0001"), kI}, {b4("0110"), 1.0}, {b4("1011"), -kI}});
            break;
        }
        case Family::L_a2_0: {
            need(params, 1, f);
            v = params[0] * gabcd_vec(0);
            w = kets4({{b4("0011"), 1.0}, {b4("0101"), 1.0}, {b4("0110"), 1.0}});
            break;
        }
    }
    PureState st = normalize(PureState(Sector::distinguishable(4, 2), v + w));
    return {v, w, st};
}

PureState four_qubit_family(Family f, const std::vector<double>& params) {
    return four_qubit_family_parts(f, params).state;
}

std::vector<double> default_family_params(Family f) {
    switch (f) {
        case Family::L_abc2: return {1.0, 1.0, 1.0};
        case Family::L_a2b2: return {1.0, 1.0};
        case Family::L_ab3: return {1.0, 1.0};
        case Family::L_a4: return {1.0};
        case Family::L_a2_0: return {1.0};
    }
    return {};
}

std::vector<RVector> closure_generators(Family f) {
    std::array<double, 4> x{};
    switch (f) {
        case Family::L_abc2: x = {-1, 1, 1, -1}; break;
        case Family::L_a2b2: x = {-1, 0, 1, 0}; break;
        case Family::L_ab3: x = {-1, -1, 1, 1}; break;
        case Family::L_a4: x = {-2, -1, 2, 1}; break;
        case Family::L_a2_0: x = {-3, 1, 1, 1}; break;
    }
    std::vector<RVector> out;
    for (double xp : x) {
        RVector d(2);
        d << xp, -xp;
        out.push_back(d);
    }
    return out;
}

}  // namespace slocc
