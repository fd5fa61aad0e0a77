#include "slocc/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "slocc/tensor_ops.hpp"

namespace slocc {

namespace {

GeneratorFrame build_frame(int N) {
    GeneratorFrame f;
    f.local_dim = N;
    const double s = 1.0 / std::sqrt(2.0);
    const cplx I(0.0, 1.0);
    for (int j = 0; j < N; ++j) {
        for (int k = j + 1; k < N; ++k) {
            CMatrix sym = CMatrix::Zero(N, N);
            sym(j, k) = sym(k, j) = s;
            f.generators.push_back(sym);
            CMatrix asym = CMatrix::Zero(N, N);
            asym(j, k) = -I * s;
            asym(k, j) = I * s;
            f.generators.push_back(asym);
        }
    }
    for (int l = 1; l < N; ++l) {
        CMatrix d = CMatrix::Zero(N, N);
        const double c = std::sqrt(2.0 / (l * (l + 1.0))) * s;
        for (int j = 0; j < l; ++j) d(j, j) = c;
        d(l, l) = -l * c;
        f.generators.push_back(d);
    }
    return f;
}

CVector apply_block_sum(const std::vector<CMatrix>& blocks, const PureState& state) {
    const Sector& s = state.sector();
    const int N = s.local_dim();
    const int L = s.parties();
    if (static_cast<int>(blocks.size()) != s.block_count())
        throw ShapeMismatch("momentum point has the wrong number of blocks for " + s.describe());
    for (const auto& b : blocks)
        if (b.rows() != N || b.cols() != N) throw ShapeMismatch("momentum block has the wrong size");
    const CVector t = state.tensor();
    CVector out = CVector::Zero(t.size());
    CVector scratch;
    for (int p = 0; p < L; ++p) {
        tensor::apply_on_party(blocks[s.identical() ? 0 : p], p, N, L, t, scratch);
        out += scratch;
    }
    return s.project(out);
}

}  // namespace

const GeneratorFrame& generator_frame(int N) {
    static std::mutex m;
    static std::map<int, GeneratorFrame> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, build_frame(N)).first;
    return it->second;
}

CMatrix reduced_density(const PureState& state, int party) {
    const Sector& s = state.sector();
    if (s.identical()) party = 0;
    if (party < 0 || party >= s.parties()) throw PartyOutOfRange("party " + std::to_string(party) + " out of range");
    CMatrix rho = tensor::reduced_density(state.tensor(), party, s.local_dim(), s.parties());
    return tensor::hermitian_with_trace(rho / state.amplitudes().squaredNorm(), 1.0);
}

MomentumPoint momentum(const PureState& state) {
    const Sector& s = state.sector();
    const int N = s.local_dim();
    const CVector t = state.tensor();
    const double nrm = t.squaredNorm();
    MomentumPoint mp{s, {}};
    CMatrix rho;
    for (int p = 0; p < s.block_count(); ++p) {
        tensor::reduced_density(t, p, N, s.parties(), rho);
        mp.blocks.push_back(tensor::hermitian_with_trace(rho / nrm, 0.0));
    }
    return mp;
}

CVector mu_star_apply(const MomentumPoint& point, const PureState& state) {
    if (!(point.sector == state.sector())) throw ShapeMismatch("momentum point and state live in different sectors");
    return apply_block_sum(point.blocks, state);
}

CVector mu_star_apply(const SpectrumPoint& point, const PureState& state) {
    if (!(point.sector == state.sector())) throw ShapeMismatch("spectrum point and state live in different sectors");
    std::vector<CMatrix> blocks;
    for (const auto& sp : point.spectra) blocks.push_back(sp.cast<cplx>().asDiagonal());
    return apply_block_sum(blocks, state);
}

double mu_norm_sq(const MomentumPoint& point) {
    double acc = 0.0;
    for (const auto& b : point.blocks) acc += b.squaredNorm();  // tr(A^2) for Hermitian A
    return acc * point.sector.block_weight();
}

double mu_norm_sq(const SpectrumPoint& point) {
    double acc = 0.0;
    for (const auto& sp : point.spectra) acc += sp.squaredNorm();
    return acc * point.sector.block_weight();
}

double mu_norm_sq(const PureState& state) { return mu_norm_sq(momentum(state)); }

double total_variance(const PureState& state) {
    const Sector& s = state.sector();
    const auto& frame = generator_frame(s.local_dim());
    double var = 0.0;
    for (int p = 0; p < s.block_count(); ++p) {
        const CMatrix rho = reduced_density(state, p);
        double block = 0.0;
        for (const auto& xi : frame.generators) {
            const double mean = (rho * xi).trace().real();
            const double second = (rho * xi * xi).trace().real();
            block += second - mean * mean;
        }
        var += block * s.block_weight();
    }
    return var;
}

double casimir_constant(const Sector& sector) {
    const double N = sector.local_dim();
    return sector.parties() * (N * N - 1.0) / N;
}

double casimir_vee_expectation(const PureState& state) {
    const Sector& s = state.sector();
    const int N = s.local_dim();
    const int L = s.parties();
    const CVector t = state.tensor();
    const double n2 = t.squaredNorm();
    // v x v as a tensor with 2L parties, copy one occupying parties 0..L-1
    CVector vv(t.size() * t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) vv.segment(i * t.size(), t.size()) = t[i] * t;
    const auto& frame = generator_frame(N);
    double acc = 0.0;
    CVector a, b;
    for (int p = 0; p < L; ++p) {
        for (const auto& xi : frame.generators) {
            tensor::apply_on_party(xi, p, N, 2 * L, vv, a);
            tensor::apply_on_party(xi, L + p, N, 2 * L, vv, b);
            acc += (a + b).squaredNorm();
        }
    }
    return acc / (n2 * n2);
}

SpectrumPoint psi(const PureState& state) {
    const MomentumPoint mp = momentum(state);
    SpectrumPoint sp{state.sector(), {}};
    for (const auto& b : mp.blocks) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(b, Eigen::EigenvaluesOnly);
        RVector ev = es.eigenvalues().reverse();
        sp.spectra.push_back(ev);
    }
    return sp;
}

PolygonalResult polygonal_check(const std::vector<double>& p) {
    PolygonalResult r;
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > total - p[i] + 1e-12) {
            r.satisfied = false;
            r.violated.push_back(static_cast<int>(i));
        }
    }
    return r;
}

PolygonalResult polygonal_check(const SpectrumPoint& spectra) {
    if (spectra.sector.local_dim() != 2) throw NotQubitSector("polygonal inequalities apply to qubits only");
    std::vector<double> p;
    for (const auto& sp : spectra.spectra) p.push_back(sp.minCoeff() + 0.5);
    return polygonal_check(p);
}

SpectrumPoint make_spectrum(const Sector& sector, std::vector<RVector> spectra) {
    const int N = sector.local_dim();
    if (static_cast<int>(spectra.size()) != sector.block_count())
        throw ShapeMismatch("expected " + std::to_string(sector.block_count()) + " spectra");
    for (const auto& sp : spectra) {
        if (sp.size() != N) throw ShapeMismatch("spectrum has the wrong length");
        if (std::abs(sp.sum()) > 1e-9) throw NotInWeylChamber("spectrum is not traceless");
        for (int i = 0; i + 1 < N; ++i)
            if (sp[i] < sp[i + 1] - 1e-12) throw NotInWeylChamber("spectrum is not weakly decreasing");
    }
    return SpectrumPoint{sector, std::move(spectra)};
}

}  // namespace slocc

namespace slocc {

namespace {

template <class Point>
CMatrix dense_mu_star(const Point& point) {
    const Sector& s = point.sector;
    const auto n = static_cast<Eigen::Index>(s.dim());
    CMatrix M(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        CVector e = CVector::Zero(n);
        e[j] = 1.0;
        M.col(j) = mu_star_apply(point, PureState(s, e));
    }
    return 0.5 * (M + M.adjoint());
}

}  // namespace

CMatrix mu_star_matrix(const MomentumPoint& point) { return dense_mu_star(point); }
CMatrix mu_star_matrix(const SpectrumPoint& point) { return dense_mu_star(point); }

}  // namespace slocc
