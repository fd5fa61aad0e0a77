#include "slocc/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace slocc {

namespace {

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad field '") + key + "': " + e.what());
    }
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const CMatrix& M) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < M.cols(); ++k) row.push_back(to_json(M(i, k)));
        rows.push_back(row);
    }
    return rows;
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    const auto m = n > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
    CMatrix M(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != m) throw ParseError("ragged matrix");
        for (Eigen::Index k = 0; k < m; ++k) M(i, k) = complex_from_json(j[i][k]);
    }
    return M;
}

json to_json(const RVector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

RVector rvector_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of reals");
    RVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ParseError("expected an array of reals");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

json to_json(const PureState& state) {
    const Sector& s = state.sector();
    json amps = json::array();
    for (const auto& a : state.amplitudes()) amps.push_back(to_json(a));
    return {{"sector", std::string(to_string(s.kind()))},
            {"parties", s.parties()},
            {"local_dim", s.local_dim()},
            {"amplitudes", amps}};
}

PureState state_from_json(const json& j) {
    try {
        const auto kind = sector_kind_from_string(field<std::string>(j, "sector"));
        const Sector s(kind, field<int>(j, "parties"), field<int>(j, "local_dim"));
        const json& amps = j.at("amplitudes");
        if (!amps.is_array()) throw ParseError("amplitudes must be an array");
        CVector v(static_cast<Eigen::Index>(amps.size()));
        for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(amps[i]);
        return normalize(PureState(s, v));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("invalid state: ") + e.what());
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid state: ") + e.what());
    }
}

PureState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    return state_from_json(j);
}

void save_state(const std::string& path, const PureState& state) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << std::setprecision(17) << to_json(state).dump(2) << '\n';
}

json to_json(const MomentumPoint& point) {
    json blocks = json::array();
    for (const auto& b : point.blocks) blocks.push_back(to_json(b));
    return {{"sector", std::string(to_string(point.sector.kind()))},
            {"parties", point.sector.parties()},
            {"local_dim", point.sector.local_dim()},
            {"blocks", blocks}};
}

json to_json(const SpectrumPoint& point) {
    json spectra = json::array();
    for (const auto& sp : point.spectra) spectra.push_back(to_json(sp));
    return {{"sector", std::string(to_string(point.sector.kind()))},
            {"parties", point.sector.parties()},
            {"local_dim", point.sector.local_dim()},
            {"spectra", spectra}};
}

SpectrumPoint spectrum_from_json(const json& j) {
    try {
        const Sector s(sector_kind_from_string(field<std::string>(j, "sector")), field<int>(j, "parties"),
                       field<int>(j, "local_dim"));
        std::vector<RVector> spectra;
        for (const auto& sp : j.at("spectra")) spectra.push_back(rvector_from_json(sp));
        if (static_cast<int>(spectra.size()) != s.block_count()) throw ParseError("wrong number of spectra");
        return SpectrumPoint{s, std::move(spectra)};
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid spectrum: ") + e.what());
    }
}

json to_json(const FlowConfig& c) {
    return {{"step_size", c.step_size},
            {"tolerance", c.tolerance},
            {"max_iterations", c.max_iterations},
            {"record_every", c.record_every},
            {"zero_threshold", c.zero_threshold}};
}

FlowConfig flow_config_from_json(const json& j) {
    FlowConfig c;
    c.step_size = field<double>(j, "step_size");
    c.tolerance = field<double>(j, "tolerance");
    c.max_iterations = field<long>(j, "max_iterations");
    c.record_every = field<long>(j, "record_every");
    c.zero_threshold = field<double>(j, "zero_threshold");
    return c;
}

void write_trace_jsonl(std::ostream& os, const FlowTrace& trace) {
    for (const auto& s : trace.samples) {
        const json line = {{"iteration", s.iteration}, {"mu_norm_sq", s.mu_norm_sq}, {"grad_norm", s.grad_norm}};
        os << line.dump() << '\n';
    }
}

json to_json(const CriticalRecord& r) {
    return {{"lambda", r.lambda},
            {"d", r.d_value},
            {"variance", r.variance},
            {"morse_index", r.morse_index ? json(*r.morse_index) : json(nullptr)},
            {"stability", std::string(to_string(r.stability))},
            {"stratum", to_json(r.stratum)},
            {"orbit_dimension", r.orbit_dimension},
            {"gradient_norm", r.gradient_norm},
            {"asymptotic", r.asymptotic},
            {"terminal_state", to_json(r.state)}};
}

CriticalRecord critical_record_from_json(const json& j) {
    CriticalRecord r{state_from_json(j.at("terminal_state")), 0.0, 0.0, 0.0, std::nullopt, Stability::nullcone,
                     spectrum_from_json(j.at("stratum")), 0, 0.0, false};
    r.lambda = field<double>(j, "lambda");
    r.d_value = field<double>(j, "d");
    r.variance = field<double>(j, "variance");
    if (!j.at("morse_index").is_null()) r.morse_index = field<int>(j, "morse_index");
    r.stability = stability_from_string(field<std::string>(j, "stability"));
    r.orbit_dimension = field<int>(j, "orbit_dimension");
    r.gradient_norm = field<double>(j, "gradient_norm");
    r.asymptotic = field<bool>(j, "asymptotic");
    return r;
}

FlowSummary summarize(const FlowTrace& trace) {
    FlowSummary s;
    s.iterations = trace.iterations;
    s.converged = trace.converged;
    s.asymptotic = trace.asymptotic;
    if (!trace.samples.empty()) {
        s.final_mu_norm_sq = trace.samples.back().mu_norm_sq;
        s.final_grad_norm = trace.samples.back().grad_norm;
    }
    return s;
}

json to_json(const Report& r) {
    return {{"input", r.input},
            {"version", r.version},
            {"config", to_json(r.config)},
            {"flow",
             {{"iterations", r.flow.iterations},
              {"converged", r.flow.converged},
              {"asymptotic", r.flow.asymptotic},
              {"final_mu_norm_sq", r.flow.final_mu_norm_sq},
              {"final_grad_norm", r.flow.final_grad_norm}}},
            {"record", to_json(r.record)},
            {"hessian_spectrum", to_json(r.hessian_spectrum)}};
}

Report report_from_json(const json& j) {
    Report r{field<std::string>(j, "input"), critical_record_from_json(j.at("record")), {}, field<std::string>(j, "version"),
             flow_config_from_json(j.at("config")), rvector_from_json(j.at("hessian_spectrum"))};
    const json& f = j.at("flow");
    r.flow.iterations = field<long>(f, "iterations");
    r.flow.converged = field<bool>(f, "converged");
    r.flow.asymptotic = field<bool>(f, "asymptotic");
    r.flow.final_mu_norm_sq = field<double>(f, "final_mu_norm_sq");
    r.flow.final_grad_norm = field<double>(f, "final_grad_norm");
    return r;
}

void write_eigenspaces_csv(std::ostream& os, const std::vector<EigenspaceReport>& reports) {
    os << "eigenvalue,multiplicity,basis\n";
    os << std::setprecision(17);
    for (const auto& rep : reports) {
        os << rep.eigenvalue << ',' << rep.multiplicity << ',';
        const auto& labels = rep.alpha.sector.labels();
        for (std::size_t k = 0; k < rep.basis.size(); ++k) {
            Eigen::Index b = 0;
            rep.basis[k].cwiseAbs().maxCoeff(&b);
            if (k) os << ' ';
            for (int d : labels[static_cast<std::size_t>(b)]) os << d;
        }
        os << '\n';
    }
}

void write_matrix_csv(std::ostream& os, const RMatrix& M) {
    os << std::setprecision(17);
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index k = 0; k < M.cols(); ++k) os << (k ? "," : "") << M(i, k);
        os << '\n';
    }
}

json to_json(const SchmidtForm& f) {
    return {{"coefficients", to_json(f.coefficients)}, {"U1", to_json(f.U1)}, {"U2", to_json(f.U2)}};
}

json to_json(const CongruenceForm& f) { return {{"coefficients", to_json(f.a)}, {"U", to_json(f.U)}}; }

json to_json(const AcinForm& f) {
    json us = json::array();
    for (const auto& u : f.unitaries) us.push_back(to_json(u));
    return {{"p", f.p}, {"q", f.q},         {"r", f.r},
            {"s", f.s}, {"z", to_json(f.z)}, {"unitaries", us},
            {"residual", f.residual}, {"non_unique", f.non_unique}};
}

}  // namespace slocc
