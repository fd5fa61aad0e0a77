#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "slocc/canonical.hpp"
#include "slocc/critical.hpp"

namespace slocc {

inline constexpr const char* kVersion = "0.1.0";

using json = nlohmann::json;

json to_json(cplx z);
cplx complex_from_json(const json& j);
json to_json(const CMatrix& M);
CMatrix matrix_from_json(const json& j);
json to_json(const RVector& v);
RVector rvector_from_json(const json& j);

/// {"sector", "parties", "local_dim", "amplitudes": [[re, im], ...]}; loading normalizes.
json to_json(const PureState& state);
PureState state_from_json(const json& j);
PureState load_state(const std::string& path);
void save_state(const std::string& path, const PureState& state);

json to_json(const MomentumPoint& point);
json to_json(const SpectrumPoint& point);
SpectrumPoint spectrum_from_json(const json& j);

json to_json(const FlowConfig& config);
FlowConfig flow_config_from_json(const json& j);

/// One JSON object per line: {"iteration", "mu_norm_sq", "grad_norm"}.
void write_trace_jsonl(std::ostream& os, const FlowTrace& trace);

json to_json(const CriticalRecord& record);
CriticalRecord critical_record_from_json(const json& j);

struct FlowSummary {
    long iterations = 0;
    bool converged = false;
    bool asymptotic = false;
    double final_mu_norm_sq = 0.0;
    double final_grad_norm = 0.0;
};

FlowSummary summarize(const FlowTrace& trace);

struct Report {
    std::string input;
    CriticalRecord record;
    FlowSummary flow;
    std::string version = kVersion;
    FlowConfig config;
    RVector hessian_spectrum;  // complement second variations (eigenvalue - lambda)
};

json to_json(const Report& report);
Report report_from_json(const json& j);

void write_eigenspaces_csv(std::ostream& os, const std::vector<EigenspaceReport>& reports);
void write_matrix_csv(std::ostream& os, const RMatrix& M);

json to_json(const SchmidtForm& form);
json to_json(const CongruenceForm& form);
json to_json(const AcinForm& form);

}  // namespace slocc
