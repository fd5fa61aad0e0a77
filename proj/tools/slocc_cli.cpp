#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slocc/demos.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kConvergenceError = 3;

struct Common {
    double tol = slocc::FlowConfig{}.tolerance;
    double step = slocc::FlowConfig{}.step_size;
    long max_iter = slocc::FlowConfig{}.max_iterations;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";

    slocc::FlowConfig config() const {
        slocc::FlowConfig c;
        c.tolerance = tol;
        c.step_size = step;
        c.max_iterations = max_iter;
        return c;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--tol", c.tol, "Gradient-norm tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--step", c.step, "Flow step size")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", c.max_iter, "Maximum flow iterations")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "Seed for restart-based searches");
    cmd->add_option("--out", c.out, "Write output to this file instead of stdout");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

// stdout unless a path is given
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw slocc::InvalidArgument("cannot write '" + path + "'");
        }
    }
    std::ostream& get() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void write_report_csv(std::ostream& os, const slocc::Report& r) {
    const auto& rec = r.record;
    os << "field,value\n";
    os << "input," << r.input << '\n';
    os.precision(17);
    os << "lambda," << rec.lambda << '\n';
    os << "d," << rec.d_value << '\n';
    os << "variance," << rec.variance << '\n';
    os << "morse_index," << (rec.morse_index ? std::to_string(*rec.morse_index) : "") << '\n';
    os << "stability," << slocc::to_string(rec.stability) << '\n';
    os << "orbit_dimension," << rec.orbit_dimension << '\n';
    os << "asymptotic," << (rec.asymptotic ? "true" : "false") << '\n';
    os << "iterations," << r.flow.iterations << '\n';
}

int cmd_classify(const std::string& path, const Common& c) {
    const slocc::PureState state = slocc::load_state(path);
    const slocc::FlowConfig config = c.config();
    slocc::validate(config);
    const slocc::FlowTrace trace = slocc::flow_to_critical(state, config);
    slocc::Report report{path, slocc::classify(state, trace, config), slocc::summarize(trace), slocc::kVersion, config,
                         {}};
    try {
        const auto& terminal = report.record.state;
        report.hessian_spectrum = slocc::complement_spectrum(terminal, slocc::orbit_tangent_frame(terminal));
    } catch (const slocc::Error&) {
    }
    Output out(c.out);
    if (c.format == "csv")
        write_report_csv(out.get(), report);
    else
        out.get() << slocc::to_json(report).dump(2) << '\n';
    return 0;
}

int cmd_flow(const std::string& path, const Common& c, const std::string& save_terminal, long record_every) {
    const slocc::PureState state = slocc::load_state(path);
    slocc::FlowConfig config = c.config();
    config.record_every = record_every;
    const slocc::FlowTrace trace = slocc::integrate_flow(state, config);
    for (std::size_t i = 1; i < trace.samples.size(); ++i) {
        if (trace.samples[i].mu_norm_sq > trace.samples[i - 1].mu_norm_sq + 1e-12) {
            std::cerr << "warning: mu_norm_sq increased at iteration " << trace.samples[i].iteration
                      << "; the step size is too large\n";
            break;
        }
    }
    Output out(c.out);
    if (c.format == "csv") {
        out.get() << "iteration,mu_norm_sq,grad_norm\n";
        out.get().precision(17);
        for (const auto& s : trace.samples) out.get() << s.iteration << ',' << s.mu_norm_sq << ',' << s.grad_norm << '\n';
    } else {
        slocc::write_trace_jsonl(out.get(), trace);
    }
    if (!save_terminal.empty()) slocc::save_state(save_terminal, trace.terminal);
    if (!trace.converged) {
        std::cerr << "error: flow did not converge in " << config.max_iterations << " iterations\n";
        return kConvergenceError;
    }
    return 0;
}

int cmd_demo(const std::vector<std::string>& words, const Common& c) {
    if (words.empty()) throw slocc::UnknownDemo("missing demo name");
    std::vector<int> args;
    for (std::size_t i = 1; i < words.size(); ++i) {
        try {
            std::size_t used = 0;
            args.push_back(std::stoi(words[i], &used));
            if (used != words[i].size()) throw std::invalid_argument(words[i]);
        } catch (const std::exception&) {
            throw slocc::InvalidArgument("demo arguments must be integers, got '" + words[i] + "'");
        }
    }
    slocc::DemoOptions opt;
    opt.flow = c.config();
    opt.seed = c.seed;
    const slocc::DemoResult result = slocc::run_demo(words.front(), args, opt);
    Output out(c.out);
    if (c.format == "csv") {
        slocc::write_demo_csv(out.get(), result);
    } else {
        slocc::print_demo_table(std::cout, result);
        if (!c.out.empty()) {
            slocc::json rows = slocc::json::array();
            for (const auto& r : result.rows)
                rows.push_back({{"item", r.item},
                                {"quantity", r.quantity},
                                {"computed", r.computed},
                                {"expected", r.expected},
                                {"pass", r.pass}});
            out.get() << slocc::json{{"demo", result.name}, {"rows", rows}, {"details", result.details}}.dump(2) << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SLOCC family classification via the momentum map"};
    app.set_version_flag("--version", std::string(slocc::kVersion));
    app.require_subcommand(1);

    Common common;
    std::string path;
    std::string save_terminal;
    long record_every = 1;
    std::vector<std::string> demo_words;

    auto* classify = app.add_subcommand("classify", "Flow a state to its critical orbit and report the invariants");
    classify->add_option("state", path, "State JSON file")->required();
    add_common(classify, common);

    auto* flow = app.add_subcommand("flow", "Emit the gradient-flow trace as JSON lines");
    flow->add_option("state", path, "State JSON file")->required();
    flow->add_option("--save-terminal", save_terminal, "Write the terminal state to this file");
    flow->add_option("--record-every", record_every, "Sample spacing in iterations")->check(CLI::PositiveNumber);
    add_common(flow, common);

    std::string usage = "Reproduce a worked example:";
    for (const auto& u : slocc::demo_usage()) usage += "\n  " + u;
    auto* demo = app.add_subcommand("demo", usage);
    demo->add_option("name", demo_words, "Demo name followed by its integer arguments")->required();
    add_common(demo, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*classify) return cmd_classify(path, common);
        if (*flow) return cmd_flow(path, common, save_terminal, record_every);
        if (*demo) return cmd_demo(demo_words, common);
    } catch (const slocc::NotConverged& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConvergenceError;
    } catch (const slocc::ConvergenceFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConvergenceError;
    } catch (const slocc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return 0;
}
