#pragma once

#include <vector>

#include "slocc/momentum.hpp"

namespace slocc {

struct FlowConfig {
    double step_size = 0.05;
    double tolerance = 1e-9;  // on gradient_norm
    long max_iterations = 500000;
    long record_every = 100;
    double zero_threshold = 1e-8;  // on mu_norm_sq; below it the terminal is the zero stratum
};

struct FlowSample {
    long iteration = 0;
    double mu_norm_sq = 0.0;
    double grad_norm = 0.0;
};

struct FlowTrace {
    std::vector<FlowSample> samples;
    PureState terminal;
    bool converged = false;
    /// Converged only in the sense that mu_norm_sq fell below the zero threshold
    /// (semistable orbit that approaches mu^-1(0) without reaching it).
    bool asymptotic = false;
    long iterations = 0;
};

class NotConverged : public ConvergenceFailure {
public:
    NotConverged(const std::string& what, FlowTrace trace) : ConvergenceFailure(what), trace_(std::move(trace)) {}
    const FlowTrace& trace() const { return trace_; }

private:
    FlowTrace trace_;
};

void validate(const FlowConfig& config);

/// normalize(exp(-step mu*([v])) v), the exponential factorized per party.
PureState flow_step(const PureState& state, double step);

/// The determinant-one local operators used by flow_step (one per block).
std::vector<CMatrix> flow_step_operators(const PureState& state, double step);

/// ||mu*([v]) v - lambda v||, lambda = <v|mu*([v]) v>.
double gradient_norm(const PureState& state);

/// Runs the flow and never throws on non-convergence; inspect trace.converged.
FlowTrace integrate_flow(const PureState& state, const FlowConfig& config);

/// As integrate_flow, but throws NotConverged (carrying the trace) on failure.
FlowTrace flow_to_critical(const PureState& state, const FlowConfig& config);

double slocc_distance(const PureState& state, const FlowConfig& config);
SpectrumPoint stratum_label(const PureState& state, const FlowConfig& config);

struct LimitResult {
    PureState limit;
    std::vector<double> times;
    std::vector<double> residuals;  // phase-aligned distance of each sample to the limit
    double final_step = 0.0;        // distance between the last two samples
    bool converged = false;
};

/// Phase-insensitive distance min_theta ||a - e^{i theta} b|| of normalized states.
double projective_distance(const PureState& a, const PureState& b);

/// Applies diag(exp(t xi_p)) per party on a geometric t grid ending at t_max.
/// `exponents` holds the diagonal of each traceless xi_p.
LimitResult one_param_limit(const PureState& state, const std::vector<RVector>& exponents, double t_max = 20.0,
                            int samples = 64);

}  // namespace slocc
