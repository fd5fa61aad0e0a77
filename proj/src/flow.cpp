#include "slocc/flow.hpp"

#include <cmath>

#include "slocc/tensor_ops.hpp"

namespace slocc {

void validate(const FlowConfig& config) {
    if (!(config.step_size > 0)) throw InvalidArgument("step size must be positive");
    if (!(config.tolerance > 0)) throw InvalidArgument("tolerance must be positive");
    if (config.max_iterations < 1) throw InvalidArgument("max_iterations must be positive");
    if (config.record_every < 1) throw InvalidArgument("record_every must be positive");
    if (!(config.zero_threshold >= 0)) throw InvalidArgument("zero threshold must be nonnegative");
}

std::vector<CMatrix> flow_step_operators(const PureState& state, double step) {
    const MomentumPoint mp = momentum(state);
    std::vector<CMatrix> ops;
    for (const auto& b : mp.blocks) ops.push_back(tensor::hermitian_exp(b, -step));
    return ops;
}

PureState flow_step(const PureState& state, double step) {
    return normalize(apply_local(flow_step_operators(state, step), state));
}

double gradient_norm(const PureState& state) {
    const PureState v = normalize(state);
    const CVector mv = mu_star_apply(momentum(v), v);
    const cplx lambda = v.amplitudes().dot(mv);
    return (mv - lambda.real() * v.amplitudes()).norm();
}

namespace {

// exp(-step * A) for a traceless Hermitian block; closed form for qubits.
void block_exp(const CMatrix& A, double step, CMatrix& out) {
    if (A.rows() == 2) {
        const double z = A(0, 0).real();
        const cplx x = A(0, 1);
        const double b = std::sqrt(z * z + std::norm(x));
        out.resize(2, 2);
        if (b < 1e-300) {
            out.setIdentity();
            return;
        }
        const double c = std::cosh(step * b);
        const double s = std::sinh(step * b) / b;
        out(0, 0) = c - s * z;
        out(1, 1) = c + s * z;
        out(0, 1) = -s * x;
        out(1, 0) = -s * std::conj(x);
        return;
    }
    out = tensor::hermitian_exp(A, -step);
}

}  // namespace

FlowTrace integrate_flow(const PureState& state, const FlowConfig& config) {
    validate(config);
    const PureState v0 = normalize(state);
    const Sector& s = v0.sector();
    const int N = s.local_dim();
    const int L = s.parties();
    const int blocks = s.block_count();
    const double w = s.block_weight();
    // work in the tensor space; the diagonal action keeps identical-particle tensors in the sector
    CVector t = v0.tensor();
    CVector mv(t.size()), scratch(t.size());
    std::vector<CMatrix> mu(blocks), ops(blocks);
    CMatrix rho;
    FlowTrace trace{{}, v0, false, false, 0};
    for (long it = 0;; ++it) {
        double m2 = 0.0;
        for (int p = 0; p < blocks; ++p) {
            tensor::reduced_density(t, p, N, L, rho);
            mu[p] = tensor::hermitian_with_trace(rho, 0.0);
            m2 += w * mu[p].squaredNorm();
        }
        mv.setZero();
        for (int p = 0; p < L; ++p) {
            tensor::apply_on_party(mu[s.identical() ? 0 : p], p, N, L, t, scratch);
            mv += scratch;
        }
        const double lambda = t.dot(mv).real();
        const double grad = (mv - lambda * t).norm();
        const bool done = grad <= config.tolerance;
        const bool last = it == config.max_iterations;
        if (it % config.record_every == 0 || done || last) trace.samples.push_back({it, m2, grad});
        if (done || last) {
            trace.terminal = normalize(PureState::from_tensor(s, t));
            trace.iterations = it;
            trace.converged = done || m2 <= config.zero_threshold;
            trace.asymptotic = !done && trace.converged;
            return trace;
        }
        for (int p = 0; p < blocks; ++p) block_exp(mu[p], config.step_size, ops[p]);
        for (int p = 0; p < L; ++p) {
            tensor::apply_on_party(ops[s.identical() ? 0 : p], p, N, L, t, scratch);
            t.swap(scratch);
        }
        t /= t.norm();
    }
}

FlowTrace flow_to_critical(const PureState& state, const FlowConfig& config) {
    FlowTrace trace = integrate_flow(state, config);
    if (!trace.converged) {
        const auto& s = trace.samples.back();
        throw NotConverged("flow did not converge in " + std::to_string(config.max_iterations) +
                               " iterations (gradient " + std::to_string(s.grad_norm) + ", mu_norm_sq " +
                               std::to_string(s.mu_norm_sq) + ")",
                           std::move(trace));
    }
    return trace;
}

double slocc_distance(const PureState& state, const FlowConfig& config) {
    const FlowTrace trace = flow_to_critical(state, config);
    return std::sqrt(std::max(0.0, mu_norm_sq(trace.terminal)));
}

SpectrumPoint stratum_label(const PureState& state, const FlowConfig& config) {
    const FlowTrace trace = flow_to_critical(state, config);
    SpectrumPoint label = psi(trace.terminal);
    if (mu_norm_sq(label) <= config.zero_threshold)
        for (auto& sp : label.spectra) sp.setZero();
    return label;
}

double projective_distance(const PureState& a, const PureState& b) {
    if (!(a.sector() == b.sector())) throw SectorMismatch("distance across different sectors");
    const cplx overlap = b.amplitudes().dot(a.amplitudes());
    const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0);
    return (a.amplitudes() - phase * b.amplitudes()).norm();
}

LimitResult one_param_limit(const PureState& state, const std::vector<RVector>& exponents, double t_max,
                            int samples) {
    const Sector& s = state.sector();
    if (!(t_max > 0) || samples < 2) throw InvalidArgument("one_param_limit needs t_max > 0 and samples >= 2");
    if (static_cast<int>(exponents.size()) != s.block_count())
        throw ShapeMismatch("expected one generator per party");
    for (const auto& x : exponents) {
        if (x.size() != s.local_dim()) throw ShapeMismatch("generator diagonal has the wrong length");
        if (std::abs(x.sum()) > 1e-12) throw InvalidArgument("generator must be traceless");
    }
    const PureState v = normalize(state);
    std::vector<PureState> states;
    LimitResult r{v, {}, {}, 0.0, false};
    const double t0 = 1e-3 * t_max;
    for (int i = 0; i < samples; ++i) {
        const double t = t0 * std::pow(t_max / t0, static_cast<double>(i) / (samples - 1));
        std::vector<CMatrix> ops;
        for (const auto& x : exponents) ops.push_back((t * x.array()).exp().matrix().cast<cplx>().asDiagonal());
        const PureState w = apply_local(ops, v);
        const double n = w.norm();
        if (!std::isfinite(n) || n < kZeroNorm) throw Divergent("one-parameter image vanishes or overflows");
        states.emplace_back(s, w.amplitudes() / n);
        r.times.push_back(t);
    }
    r.limit = states.back();
    for (const auto& w : states) r.residuals.push_back(projective_distance(w, r.limit));
    r.final_step = projective_distance(states[samples - 1], states[samples - 2]);
    r.converged = r.final_step < 1e-10;
    return r;
}

}  // namespace slocc
