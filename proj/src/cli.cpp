#include "seirkit/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "seirkit/bifurcation.hpp"
#include "seirkit/csv.hpp"
#include "seirkit/equilibria.hpp"
#include "seirkit/errors.hpp"
#include "seirkit/integrate.hpp"
#include "seirkit/scenario.hpp"
#include "seirkit/sensitivity.hpp"
#include "seirkit/stability.hpp"

namespace seirkit {

namespace {

std::string resolve_out_path(const std::string& path) {
    const char* dir = std::getenv("SEIRKIT_OUT_DIR");
    if (dir && *dir && !path.empty() && path.front() != '/')
        return std::string(dir) + "/" + path;
    return path;
}

// Routes report text to stdout or, when --out was given, to that file.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            const std::string resolved = resolve_out_path(path);
            file_.open(resolved);
            if (!file_)
                throw std::invalid_argument("cannot open output file '" + resolved + "'");
        } else {
            fallback_ = &fallback;
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : *fallback_; }

private:
    std::ofstream file_;
    std::ostream* fallback_ = nullptr;
};

std::string matrix2(const Matrix& m) {
    return "[[" + format_double(m(0, 0)) + ", " + format_double(m(0, 1)) + "], [" +
           format_double(m(1, 0)) + ", " + format_double(m(1, 1)) + "]]";
}

std::string vec_text(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v[i]);
    }
    return s + ")";
}

void cmd_simulate(const Scenario& scenario, int stride, Sink& sink) {
    const DynamicalSystem system = scenario.make_system();
    const Trajectory traj = simulate(system, scenario.require_initial(), scenario.require_step());

    CsvTable table;
    table.comments.push_back("seirkit simulate: fixed-step rk4 trajectory");
    table.comments.push_back(
        "model=" + std::string(to_string(scenario.model)) +
        " dt=" + format_double(scenario.require_step().dt) +
        " t_end=" + format_double(scenario.require_step().t_end) +
        " stride=" + std::to_string(stride));
    if (traj.clamp_count > 0)
        table.comments.push_back("warning: clamped " + std::to_string(traj.clamp_count) +
                                 " slightly negative entries to zero");
    table.header.push_back("t");
    for (const std::string& name : scenario.state_names()) table.header.push_back(name);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (i % static_cast<std::size_t>(stride) != 0 && i + 1 != traj.times.size()) continue;
        std::vector<double> row{traj.times[i]};
        row.insert(row.end(), traj.states[i].begin(), traj.states[i].end());
        table.rows.push_back(std::move(row));
    }
    write_csv(table, sink.stream());
}

void cmd_r0(const Scenario& scenario, double s0_flag, bool s0_given, Sink& sink) {
    const ModifiedSeirParams params = scenario.modified_params();
    const double s0 = s0_given ? s0_flag : params.tau / params.mu;
    const ReproductionNumber rn = next_generation_matrix(params, s0);
    std::ostream& os = sink.stream();
    os << "# seirkit r0: basic reproduction number via the next-generation matrix\n";
    os << "s0 = " << format_double(rn.s0) << "\n";
    os << "r0 = " << format_double(rn.value) << "\n";
    os << "spectral_radius = " << format_double(rn.spectral_radius) << "\n";
    os << "r0_demographic = " << format_double(r0(params)) << "\n";
    os << "F = " << matrix2(rn.f_matrix) << "\n";
    os << "V = " << matrix2(rn.v_matrix) << "\n";
    os << "FVinv = " << matrix2(rn.ngm) << "\n";
}

void cmd_equilibria(const Scenario& scenario, Sink& sink) {
    const ModifiedSeirParams params = scenario.modified_params();
    CsvTable table;
    table.comments.push_back("seirkit equilibria: fixed points of the demographic seir model");
    table.comments.push_back("kind: 0=disease-free, 1=endemic");
    table.comments.push_back("r0 = " + format_double(r0(params)));
    table.header = {"kind", "S", "E", "I", "R", "residual"};
    const EquilibriumPoint d = dfe(params);
    table.rows.push_back({0.0, d.state[0], d.state[1], d.state[2], d.state[3], d.residual});
    if (const auto ee = endemic_equilibrium(params)) {
        table.rows.push_back(
            {1.0, ee->state[0], ee->state[1], ee->state[2], ee->state[3], ee->residual});
    } else {
        table.comments.push_back(r0(params) == 1.0
                                     ? "endemic equilibrium: absent (threshold, r0 = 1)"
                                     : "endemic equilibrium: absent (r0 <= 1)");
    }
    write_csv(table, sink.stream());
}

void print_report(const StabilityReport& report, const char* label, std::ostream& os) {
    os << "[" << label << "]\n";
    os << "state = " << vec_text(report.equilibrium.state) << "\n";
    os << "residual = " << format_double(report.equilibrium.residual) << "\n";
    for (const auto& z : report.eigenvalues)
        os << "eigenvalue = " << format_double(z.real()) << " " << format_double(z.imag())
           << "\n";
    os << "verdict = " << to_string(report.verdict) << "\n";
    std::string factor = "factor =";
    for (double c : report.factor.coefficients) factor += " " + format_double(c);
    os << factor << "\n";
    for (const auto& [name, ok] : report.criteria)
        os << "criterion." << name << " = " << (ok ? "true" : "false") << "\n";
}

void cmd_stability(const Scenario& scenario, const std::string& which, Sink& sink) {
    const ModifiedSeirParams params = scenario.modified_params();
    std::ostream& os = sink.stream();
    os << "# seirkit stability: eigenvalue and coefficient-criterion verdicts\n";
    os << "r0 = " << format_double(r0(params)) << "\n";
    if (which == "dfe" || which == "both") print_report(dfe_stability_report(params), "dfe", os);
    if (which == "ee" || which == "both") {
        if (r0(params) > 1.0) {
            print_report(ee_stability_report(params), "ee", os);
        } else if (which == "ee") {
            throw std::invalid_argument("no endemic equilibrium: r0 <= 1");
        } else {
            os << "[ee]\nabsent (r0 <= 1)\n";
        }
    }
}

void cmd_lyapunov(const Scenario& scenario, long samples, double radius,
                  unsigned long long seed, Sink& sink) {
    const ModifiedSeirParams params = scenario.modified_params();
    const LyapunovCertificate cert = lyapunov_dfe_certificate(params, samples, radius, seed);
    std::ostream& os = sink.stream();
    os << "# seirkit lyapunov: sampled certificate for V = x+y+z+w at the shifted dfe\n";
    os << "# seed=" << cert.seed << "\n";
    os << "samples = " << cert.sample_count << "\n";
    os << "radius = " << format_double(cert.region_radius) << "\n";
    os << "max_v_violation = " << format_double(cert.max_v_violation) << "\n";
    os << "max_dvdt = " << format_double(cert.max_dvdt) << "\n";
    os << "identity_residual = " << format_double(cert.identity_residual) << "\n";
    os << "verdict = " << (cert.verdict ? "pass" : "fail") << "\n";
}

void cmd_sensitivity(const Scenario& scenario, bool include_tau, double rel_step, Sink& sink) {
    const ModifiedSeirParams params = scenario.modified_params();
    const R0Convention convention =
        include_tau ? R0Convention::Demographic : R0Convention::SusceptibleUnit;
    std::ostream& os = sink.stream();
    os << "# seirkit sensitivity: normalized indices of the reproduction number\n";
    os << "# convention=" << (include_tau ? "demographic" : "susceptible-unit")
       << " rel_step=" << format_double(rel_step) << "\n";
    os << "parameter,analytic,finite_difference,abs_rel_gap\n";
    for (const std::string& name : sensitivity_parameters(convention)) {
        const double a = sensitivity_analytic(params, name, convention).value;
        const double f = sensitivity_fd(params, name, rel_step, convention).value;
        const double gap = std::abs(a - f) / std::max(1e-300, std::abs(a));
        os << name << "," << format_double(a) << "," << format_double(f) << ","
           << format_double(gap) << "\n";
    }
}

NormalForm parse_form(const std::string& name) {
    NormalForm form;
    if (name == "saddle-node") form.kind = NormalFormKind::SaddleNode;
    else if (name == "transcritical") form.kind = NormalFormKind::Transcritical;
    else if (name == "pitchfork") form.kind = NormalFormKind::Pitchfork;
    else if (name == "hopf") form.kind = NormalFormKind::HopfPolar;
    else throw std::invalid_argument("unknown normal form '" + name + "'");
    return form;
}

void cmd_bifurcate_sweep(const NormalForm& form, const std::string& form_name,
                         const std::string& range, int n, Sink& sink) {
    const std::size_t colon = range.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--range expects 'min:max', got '" + range + "'");
    double lo = 0.0, hi = 0.0;
    try {
        lo = std::stod(range.substr(0, colon));
        hi = std::stod(range.substr(colon + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("--range expects numbers 'min:max', got '" + range + "'");
    }
    const std::vector<BranchPoint> points = sweep_diagram(form, lo, hi, n);
    CsvTable table;
    table.comments.push_back("seirkit bifurcate: equilibrium branches of the " + form_name +
                             " normal form");
    table.comments.push_back("stability: 1=stable, 0=unstable");
    table.header = {"param", "x", "stability"};
    for (const BranchPoint& bp : points)
        table.rows.push_back(
            {bp.param, bp.x, bp.stability == BranchStability::Stable ? 1.0 : 0.0});
    write_csv(table, sink.stream());
}

void cmd_bifurcate_hopf(double a, double initial_r, double dt, double t_end, Sink& sink) {
    const HopfCycleReport report = hopf_limit_cycle_check(a, initial_r, StepConfig(dt, 0.0, t_end));
    std::ostream& os = sink.stream();
    os << "# seirkit bifurcate: hopf limit-cycle check on the planar normal form\n";
    os << "a = " << format_double(report.a) << "\n";
    os << "predicted_radius = " << format_double(report.predicted_radius) << "\n";
    os << "observed_radius = " << format_double(report.observed_radius) << "\n";
    os << "period_observed = " << format_double(report.period_observed) << "\n";
    os << "final_radius = " << format_double(report.final_radius) << "\n";
    os << "converged = " << (report.converged ? "true" : "false") << "\n";
}

void cmd_center_manifold(const Scenario& scenario, const std::string& system_name, double s0,
                         Sink& sink) {
    CenterManifoldCoefficients cm;
    if (system_name == "seir3") {
        cm = seir3_center_manifold(scenario.modified_params());
    } else if (system_name == "backward4") {
        cm = backward_model_center_manifold(scenario.backward_params(), s0);
    } else {
        throw std::invalid_argument("unknown built-in system '" + system_name +
                                    "' (expected seir3 or backward4)");
    }
    std::ostream& os = sink.stream();
    os << "# seirkit center-manifold: bifurcation coefficients at criticality\n";
    os << "system = " << system_name << "\n";
    os << "critical_param = " << format_double(cm.critical_param) << "\n";
    os << "zero_eigenvalue = " << format_double(cm.zero_eigenvalue) << "\n";
    os << "w = " << vec_text(cm.right_vec) << "\n";
    os << "v = " << vec_text(cm.left_vec) << "\n";
    os << "v_dot_w = " << format_double(cm.v_dot_w) << "\n";
    os << "a = " << format_double(cm.a) << "\n";
    os << "b = " << format_double(cm.b) << "\n";
    os << "classification = " << to_string(cm.classification) << "\n";
}

} // namespace

int run_command(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    // CLI11 will not gobble option values that start with '-' unless they are
    // plain numbers, so fold such values into --opt=value form.
    std::vector<std::string> args;
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
        if (raw_args[i] == "--range" && i + 1 < raw_args.size()) {
            args.push_back("--range=" + raw_args[i + 1]);
            ++i;
        } else {
            args.push_back(raw_args[i]);
        }
    }

    CLI::App app{"seirkit: analysis toolkit for small compartmental epidemic models"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, which = "both", form_name, range, system_name;
    int stride = 1, sweep_n = 201;
    double s0 = 1.0, radius = 1.0, rel_step = 1e-6, form_b = 1.0;
    double hopf_a = 0.25, hopf_r = 0.01, hopf_dt = 0.01, hopf_t_end = 100.0;
    long samples = 10000;
    unsigned long long seed = 12345ULL;
    bool include_tau = false;

    CLI::App* sim = app.add_subcommand("simulate", "integrate a scenario and emit t,state CSV");
    sim->add_option("--scenario", scenario_path, "scenario file")->required();
    sim->add_option("--out", out_path, "output CSV path (default: stdout)");
    sim->add_option("--stride", stride, "keep every k-th step")->check(CLI::PositiveNumber);

    CLI::App* r0cmd = app.add_subcommand("r0", "basic reproduction number and NGM matrices");
    r0cmd->add_option("--scenario", scenario_path, "scenario file (seir-modified)")->required();
    CLI::Option* s0_opt = r0cmd->add_option("--s0", s0, "susceptible level (default tau/mu)");
    r0cmd->add_option("--out", out_path, "write the report to a file");

    CLI::App* eq = app.add_subcommand("equilibria", "closed-form equilibria with residuals");
    eq->add_option("--scenario", scenario_path, "scenario file (seir-modified)")->required();
    eq->add_option("--out", out_path, "output CSV path (default: stdout)");

    CLI::App* st = app.add_subcommand("stability", "eigenvalue and criterion verdicts");
    st->add_option("--scenario", scenario_path, "scenario file (seir-modified)")->required();
    st->add_option("--which", which, "dfe, ee, or both")
        ->check(CLI::IsMember({"dfe", "ee", "both"}));
    st->add_option("--out", out_path, "write the report to a file");

    CLI::App* ly = app.add_subcommand("lyapunov", "sampled global-stability certificate");
    ly->add_option("--scenario", scenario_path, "scenario file (seir-modified)")->required();
    ly->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
    ly->add_option("--radius", radius, "sampling box radius")->check(CLI::PositiveNumber);
    ly->add_option("--seed", seed, "sampling seed");
    ly->add_option("--out", out_path, "write the certificate to a file");

    CLI::App* se = app.add_subcommand("sensitivity", "normalized sensitivity indices of r0");
    se->add_option("--scenario", scenario_path, "scenario file (seir-modified)")->required();
    se->add_flag("--include-tau", include_tau, "use the tau-inclusive r0 convention");
    se->add_option("--rel-step", rel_step, "relative step of the finite-difference oracle");
    se->add_option("--out", out_path, "output CSV path (default: stdout)");

    CLI::App* bi = app.add_subcommand("bifurcate", "normal-form sweeps and hopf cycle check");
    bi->add_option("--form", form_name, "saddle-node, transcritical, pitchfork, or hopf")
        ->required();
    bi->add_option("--range", range, "parameter range min:max (sweep mode)");
    bi->add_option("--n", sweep_n, "number of sweep points")->check(CLI::PositiveNumber);
    bi->add_option("--b", form_b, "quadratic coefficient of the transcritical form");
    bi->add_option("--a", hopf_a, "hopf parameter (cycle-check mode)");
    bi->add_option("--initial-r", hopf_r, "hopf initial radius");
    bi->add_option("--dt", hopf_dt, "hopf integration step");
    bi->add_option("--t-end", hopf_t_end, "hopf integration horizon");
    bi->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* cm = app.add_subcommand("center-manifold", "bifurcation coefficients a, b");
    cm->add_option("--system", system_name, "seir3 or backward4")->required();
    cm->add_option("--scenario", scenario_path, "scenario file matching the system")->required();
    cm->add_option("--s0", s0, "susceptible level of the backward4 equilibrium");
    cm->add_option("--out", out_path, "write the report to a file");

    try {
        std::vector<const char*> argv{"seirkit"};
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (sim->parsed()) {
            const Scenario scenario = load_scenario_file(scenario_path);
            // The scenario's [outputs] section supplies the default sink.
            std::string path = out_path;
            const auto it = scenario.outputs.find("trajectory");
            if (path.empty() && it != scenario.outputs.end()) path = it->second;
            Sink sink(path, out);
            cmd_simulate(scenario, stride, sink);
            return 0;
        }
        Sink sink(out_path, out);
        if (r0cmd->parsed()) {
            cmd_r0(load_scenario_file(scenario_path), s0, s0_opt->count() > 0, sink);
        } else if (eq->parsed()) {
            cmd_equilibria(load_scenario_file(scenario_path), sink);
        } else if (st->parsed()) {
            cmd_stability(load_scenario_file(scenario_path), which, sink);
        } else if (ly->parsed()) {
            cmd_lyapunov(load_scenario_file(scenario_path), samples, radius, seed, sink);
        } else if (se->parsed()) {
            cmd_sensitivity(load_scenario_file(scenario_path), include_tau, rel_step, sink);
        } else if (bi->parsed()) {
            NormalForm form = parse_form(form_name);
            form.b = form_b;
            if (form.kind == NormalFormKind::HopfPolar && range.empty())
                cmd_bifurcate_hopf(hopf_a, hopf_r, hopf_dt, hopf_t_end, sink);
            else
                cmd_bifurcate_sweep(form, form_name, range, sweep_n, sink);
        } else if (cm->parsed()) {
            cmd_center_manifold(load_scenario_file(scenario_path), system_name, s0, sink);
        }
        return 0;
    } catch (const ScenarioError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace seirkit
