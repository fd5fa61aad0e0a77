#include "slocc/critical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>

#include "slocc/tensor_ops.hpp"

namespace slocc {

namespace {

constexpr double kGroupGap = 1e-9;

bool same_value(double a, double b) { return std::abs(a - b) <= kGroupGap * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

// Residuals of rho_p(v) - |c|^2 (alpha_p + I/N) and |c|^2 - 1, homogeneous quadratic in x.
struct SelfConsistency {
    const Sector& sector;
    const CMatrix& basis;  // dim x m
    const std::vector<CMatrix>& targets;
    double weight;

    Eigen::Index params() const { return 2 * basis.cols(); }

    RVector residual(const RVector& x) const {
        const Eigen::Index m = basis.cols();
        const CVector c = x.head(m).cast<cplx>() + cplx(0.0, 1.0) * x.tail(m).cast<cplx>();
        const double n2 = c.squaredNorm();
        const CVector t = sector.embed(basis * c);
        const int N = sector.local_dim();
        const double sw = std::sqrt(weight);
        RVector r(static_cast<Eigen::Index>(targets.size()) * N * N + 1);
        Eigen::Index k = 0;
        CMatrix rho;
        for (std::size_t p = 0; p < targets.size(); ++p) {
            tensor::reduced_density(t, static_cast<int>(p), N, sector.parties(), rho);
            const CMatrix D = rho - n2 * targets[p];
            for (int i = 0; i < N; ++i) {
                r[k++] = sw * D(i, i).real();
                for (int j = i + 1; j < N; ++j) {
                    r[k++] = sw * std::sqrt(2.0) * D(i, j).real();
                    r[k++] = sw * std::sqrt(2.0) * D(i, j).imag();
                }
            }
        }
        r[k++] = n2 - 1.0;
        return r.head(k);
    }

    RMatrix jacobian(const RVector& x) const {
        // exact for quadratics up to rounding
        const double h = 1e-2;
        const RVector r0 = residual(x);
        RMatrix J(r0.size(), x.size());
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            RVector xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            J.col(j) = (residual(xp) - residual(xm)) / (2 * h);
        }
        return J;
    }
};

RVector levenberg_marquardt(const SelfConsistency& prob, RVector x, int max_steps) {
    RVector r = prob.residual(x);
    double F = r.squaredNorm();
    double mu = 1e-3;
    for (int step = 0; step < max_steps && F > 1e-32; ++step) {
        const RMatrix J = prob.jacobian(x);
        const RMatrix A = J.transpose() * J;
        const RVector g = J.transpose() * r;
        bool improved = false;
        while (mu < 1e16) {
            RMatrix Ad = A;
            Ad.diagonal().array() += mu * (1.0 + A.diagonal().array());
            const RVector dx = Ad.ldlt().solve(-g);
            const RVector xn = x + dx;
            const RVector rn = prob.residual(xn);
            const double Fn = rn.squaredNorm();
            if (Fn < F) {
                x = xn;
                r = rn;
                F = Fn;
                mu = std::max(mu / 3.0, 1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if (!improved) break;
    }
    return x;
}

double self_consistency_error(const PureState& v, const SpectrumPoint& alpha) {
    const MomentumPoint mp = momentum(v);
    double err = 0.0;
    for (std::size_t p = 0; p < mp.blocks.size(); ++p) {
        CMatrix D = mp.blocks[p];
        D.diagonal() -= alpha.spectra[p].cast<cplx>();
        err += D.squaredNorm();
    }
    return err * v.sector().block_weight();
}

RVector weight_pattern(const PureState& v) { return v.amplitudes().cwiseAbs2(); }

void add_unique(std::vector<PureState>& out, const PureState& v) {
    const RVector w = weight_pattern(v);
    for (const auto& u : out)
        if ((weight_pattern(u) - w).norm() < 1e-6) return;
    out.push_back(v);
}

std::vector<RVector> decreasing_tuples(int N, int d) {
    std::vector<RVector> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
        if (static_cast<int>(cur.size()) == N) {
            if (remaining != 0) return;
            int g = d;
            for (int m : cur) g = std::gcd(g, m);
            if (g != 1) return;  // the reduced tuple appears at a smaller denominator
            RVector p(N);
            for (int i = 0; i < N; ++i) p[i] = static_cast<double>(cur[i]) / d - 1.0 / N;
            out.push_back(p);
            return;
        }
        for (int m = std::min(remaining, maxpart); m >= 0; --m) {
            cur.push_back(m);
            self(self, remaining - m, m);
            cur.pop_back();
        }
    };
    rec(rec, d, d);
    return out;
}

CriticalRecord record_for(const PureState& input, const PureState& terminal, const FlowConfig& config,
                          bool gradient_converged) {
    const PureState v = normalize(terminal);
    const MomentumPoint mp = momentum(v);
    const double m2 = mu_norm_sq(mp);
    CriticalRecord rec{v, 0.0, 0.0, 0.0, std::nullopt, Stability::nullcone, psi(v), 0, 0.0, false};
    const CVector mv = mu_star_apply(mp, v);
    rec.lambda = v.amplitudes().dot(mv).real();
    rec.gradient_norm = (mv - rec.lambda * v.amplitudes()).norm();
    rec.d_value = std::sqrt(std::max(0.0, m2));
    rec.variance = total_variance(v);
    rec.orbit_dimension = orbit_dimension(input);
    const bool zero = m2 <= config.zero_threshold;
    if (zero) {
        for (auto& sp : rec.stratum.spectra) sp.setZero();
        rec.asymptotic = !gradient_converged;
        rec.stability = gradient_converged && rec.orbit_dimension == input.sector().group_real_dim()
                            ? Stability::stable
                            : Stability::semistable;
    }
    try {
        rec.morse_index = morse_index(v, std::max(1e-6, 10 * config.tolerance), config.zero_threshold);
    } catch (const NotCritical&) {
        rec.morse_index.reset();
    }
    return rec;
}

}  // namespace

std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::semistable: return "semistable";
        case Stability::nullcone: return "nullcone";
    }
    return "unknown";
}

Stability stability_from_string(std::string_view name) {
    if (name == "stable") return Stability::stable;
    if (name == "semistable") return Stability::semistable;
    if (name == "nullcone") return Stability::nullcone;
    throw ParseError("unknown stability class '" + std::string(name) + "'");
}

CriticalCheck is_critical(const PureState& state, double tol) {
    const PureState v = normalize(state);
    const CVector mv = mu_star_apply(momentum(v), v);
    const double lambda = v.amplitudes().dot(mv).real();
    return {(mv - lambda * v.amplitudes()).norm() <= tol, lambda};
}

RVector alpha_star_diagonal(const SpectrumPoint& alpha) {
    const Sector& s = alpha.sector;
    const auto& labels = s.labels();
    RVector d(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t b = 0; b < labels.size(); ++b) {
        double acc = 0.0;
        switch (s.kind()) {
            case SectorKind::distinguishable:
                for (int p = 0; p < s.parties(); ++p) acc += alpha.spectra[p][labels[b][p]];
                break;
            case SectorKind::bosonic:
                for (int j = 0; j < s.local_dim(); ++j) acc += labels[b][j] * alpha.spectra[0][j];
                break;
            case SectorKind::fermionic:
                for (int j : labels[b]) acc += alpha.spectra[0][j];
                break;
        }
        d[static_cast<Eigen::Index>(b)] = acc;
    }
    return d;
}

std::vector<EigenspaceReport> alpha_star_eigenspaces(const SpectrumPoint& alpha) {
    const SpectrumPoint a = make_spectrum(alpha.sector, alpha.spectra);  // validates the chamber
    const RVector d = alpha_star_diagonal(a);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return d[i] > d[j]; });
    std::vector<EigenspaceReport> out;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && same_value(d[order[i]], d[order[j]])) ++j;
        EigenspaceReport rep{a, 0.0, static_cast<int>(j - i), {}};
        double sum = 0.0;
        std::vector<Eigen::Index> members(order.begin() + static_cast<long>(i), order.begin() + static_cast<long>(j));
        std::sort(members.begin(), members.end());
        for (auto b : members) {
            CVector e = CVector::Zero(d.size());
            e[b] = 1.0;
            rep.basis.push_back(e);
            sum += d[b];
        }
        rep.eigenvalue = sum / rep.multiplicity;
        out.push_back(std::move(rep));
        i = j;
    }
    return out;
}

std::vector<PureState> self_consistent_critical(const EigenspaceReport& report, double tol, const SearchConfig& search) {
    const Sector& s = report.alpha.sector;
    const auto m = static_cast<Eigen::Index>(report.basis.size());
    std::vector<PureState> out;
    if (m == 0) return out;
    CMatrix B(static_cast<Eigen::Index>(s.dim()), m);
    for (Eigen::Index j = 0; j < m; ++j) B.col(j) = report.basis[j];
    std::vector<CMatrix> targets;
    for (const auto& sp : report.alpha.spectra)
        targets.push_back((sp.array() + 1.0 / s.local_dim()).matrix().cast<cplx>().asDiagonal());
    const SelfConsistency prob{s, B, targets, static_cast<double>(s.block_weight())};
    Rng rng(search.seed);
    for (int restart = 0; restart < search.restarts; ++restart) {
        CVector c = random_gaussian(static_cast<std::size_t>(m), rng);
        c.normalize();
        RVector x(2 * m);
        x << c.real(), c.imag();
        x = levenberg_marquardt(prob, x, search.max_steps);
        const CVector cf = x.head(m).cast<cplx>() + cplx(0.0, 1.0) * x.tail(m).cast<cplx>();
        if (cf.norm() < kZeroNorm) continue;
        const PureState v(s, (B * cf).normalized());
        if (self_consistency_error(v, report.alpha) > search.accept) continue;
        if (!is_critical(v, tol).critical) continue;
        add_unique(out, v);
        if (out.size() >= search.max_representatives) break;
    }
    return out;
}

int orbit_dimension(const PureState& state) { return orbit_tangent_frame(state).orbit_real_dim(); }

Stability stability_class(const PureState& state, const FlowConfig& config) {
    const FlowTrace trace = flow_to_critical(state, config);
    if (mu_norm_sq(trace.terminal) > config.zero_threshold) return Stability::nullcone;
    if (!trace.asymptotic && orbit_dimension(state) == state.sector().group_real_dim()) return Stability::stable;
    return Stability::semistable;
}

CriticalRecord classify(const PureState& state, const FlowConfig& config) {
    return classify(state, flow_to_critical(state, config), config);
}

CriticalRecord classify(const PureState& state, const FlowTrace& trace, const FlowConfig& config) {
    return record_for(normalize(state), trace.terminal, config, !trace.asymptotic);
}

CriticalRecord describe_critical(const PureState& state, const FlowConfig& config) {
    return record_for(normalize(state), state, config, is_critical(state, config.tolerance).critical);
}

std::vector<RVector> spectrum_grid(int N, int max_denominator) {
    if (N < 1 || max_denominator < 1) throw InvalidArgument("grid needs N >= 1 and a positive denominator bound");
    std::vector<RVector> out;
    for (int d = 1; d <= max_denominator; ++d) {
        auto part = decreasing_tuples(N, d);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<SpectrumPoint> alpha_grid(const Sector& sector, const ScanConfig& config) {
    const auto grid = spectrum_grid(sector.local_dim(), config.max_denominator);
    std::vector<SpectrumPoint> out;
    if (sector.identical()) {
        for (const auto& a : grid) out.push_back(SpectrumPoint{sector, {a}});
        return out;
    }
    const int L = sector.parties();
    const bool filter = config.polygonal_filter && sector.local_dim() == 2;
    std::vector<std::size_t> idx(static_cast<std::size_t>(L), 0);
    while (true) {
        SpectrumPoint sp{sector, {}};
        for (int p = 0; p < L; ++p) sp.spectra.push_back(grid[idx[p]]);
        if (!filter || polygonal_check(sp).satisfied) out.push_back(std::move(sp));
        int p = L - 1;
        while (p >= 0 && ++idx[p] == grid.size()) idx[p--] = 0;
        if (p < 0) break;
    }
    return out;
}

namespace {

std::optional<CriticalFamily> family_at(const SpectrumPoint& alpha, const SearchConfig& search) {
    const double target = mu_norm_sq(alpha);
    const RVector d = alpha_star_diagonal(alpha);
    bool hit = false;
    for (Eigen::Index i = 0; i < d.size() && !hit; ++i) hit = same_value(d[i], target);
    if (!hit) return std::nullopt;
    for (auto& rep : alpha_star_eigenspaces(alpha)) {
        if (!same_value(rep.eigenvalue, target)) continue;
        auto sols = self_consistent_critical(rep, 1e-8, search);
        if (sols.empty()) return std::nullopt;
        CriticalFamily fam{alpha, target, std::sqrt(target), rep.multiplicity, 0, std::move(sols)};
        fam.morse_index = morse_index(fam.representatives.front());
        return fam;
    }
    return std::nullopt;
}

}  // namespace

std::vector<CriticalFamily> critical_families(const Sector& sector, const ScanConfig& config) {
    std::vector<CriticalFamily> out;
    for (const auto& alpha : alpha_grid(sector, config))
        if (auto fam = family_at(alpha, config.search)) out.push_back(std::move(*fam));
    return out;
}

std::optional<CriticalFamily> zero_family(const Sector& sector, const SearchConfig& search) {
    SpectrumPoint zero{sector, std::vector<RVector>(static_cast<std::size_t>(sector.block_count()),
                                                    RVector::Zero(sector.local_dim()))};
    return family_at(zero, search);
}

std::vector<CriticalFamily> dicke_critical_families(int L) {
    std::vector<CriticalFamily> out;
    for (int k = 0; k <= L; ++k) {
        const PureState v = dicke(k, L);
        const CMatrix A = momentum(v).blocks[0];
        if (std::abs(A(0, 1)) > 1e-12) continue;
        if (A(0, 0).real() < A(1, 1).real() - 1e-12) continue;
        const auto check = is_critical(v, 1e-10);
        if (!check.critical) continue;
        SpectrumPoint alpha{v.sector(), {A.diagonal().real()}};
        int mult = 0;
        for (const auto& rep : alpha_star_eigenspaces(alpha))
            if (same_value(rep.eigenvalue, check.lambda)) mult = rep.multiplicity;
        out.push_back(CriticalFamily{alpha, check.lambda, std::sqrt(std::max(0.0, mu_norm_sq(v))), mult, morse_index(v),
                                     {v}});
    }
    return out;
}

}  // namespace slocc
