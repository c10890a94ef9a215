// Command-line front end. Links the C API only; all file formats are
// produced here. Exit codes: 0 success, 2 configuration error, 3 runtime
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vdprg.h"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int exit_code_for(vdprg_status status)
{
    switch (status) {
    case VDPRG_OK:
        return 0;
    case VDPRG_ERR_INVALID_ARGUMENT:
    case VDPRG_ERR_MANIFOLD_VIOLATION:
    case VDPRG_ERR_RESONANT_DENOMINATOR:
    case VDPRG_ERR_NONREAL_STATE:
    case VDPRG_ERR_BAD_BRACKET:
        return kExitConfig;
    default:
        return kExitRuntime;
    }
}

[[noreturn]] void fail(vdprg_status status, const std::string& what)
{
    std::cerr << "vdprg: " << what << ": " << vdprg_status_name(status) << "\n";
    std::exit(exit_code_for(status));
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "vdprg: cannot open output file " << path << "\n";
        std::exit(kExitRuntime);
    }
    out << content;
}

struct TrajectoryRows {
    std::vector<vdprg_state> states;
};

std::string trajectory_csv(const TrajectoryRows& rows)
{
    std::string out = "t,re_x,im_x,re_y,im_y,re_vx,im_vx,re_vy,im_vy\n";
    for (const auto& s : rows.states) {
        out += fmt(s.t) + ',' + fmt(s.x.re) + ',' + fmt(s.x.im) + ','
               + fmt(s.y.re) + ',' + fmt(s.y.im) + ',' + fmt(s.vx.re) + ','
               + fmt(s.vx.im) + ',' + fmt(s.vy.re) + ',' + fmt(s.vy.im) + '\n';
    }
    return out;
}

std::string trajectory_json(const TrajectoryRows& rows)
{
    json arr = json::array();
    for (const auto& s : rows.states) {
        arr.push_back({{"t", s.t},
                       {"re_x", s.x.re},
                       {"im_x", s.x.im},
                       {"re_y", s.y.re},
                       {"im_y", s.y.im},
                       {"re_vx", s.vx.re},
                       {"im_vx", s.vx.im},
                       {"re_vy", s.vy.re},
                       {"im_vy", s.vy.im}});
    }
    return arr.dump(2) + "\n";
}

std::string render_trajectory(const TrajectoryRows& rows, const std::string& format)
{
    return format == "json" ? trajectory_json(rows) : trajectory_csv(rows);
}

TrajectoryRows load_trajectory_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "vdprg: cannot open " << path << "\n";
        std::exit(kExitConfig);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    TrajectoryRows rows;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
        json arr = json::parse(text, nullptr, false);
        if (arr.is_discarded() || !arr.is_array()) {
            std::cerr << "vdprg: " << path << " is not a trajectory file\n";
            std::exit(kExitConfig);
        }
        for (const auto& row : arr) {
            vdprg_state s{};
            s.t = row.at("t").get<double>();
            s.x = {row.at("re_x").get<double>(), row.at("im_x").get<double>()};
            s.y = {row.at("re_y").get<double>(), row.at("im_y").get<double>()};
            s.vx = {row.at("re_vx").get<double>(), row.at("im_vx").get<double>()};
            s.vy = {row.at("re_vy").get<double>(), row.at("im_vy").get<double>()};
            rows.states.push_back(s);
        }
        return rows;
    }

    std::istringstream lines(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("t,", 0) == 0)
                continue; // header row
        }
        std::istringstream fields(line);
        std::string field;
        std::vector<double> vals;
        while (std::getline(fields, field, ','))
            vals.push_back(std::strtod(field.c_str(), nullptr));
        if (vals.size() != 9) {
            std::cerr << "vdprg: malformed row in " << path << "\n";
            std::exit(kExitConfig);
        }
        vdprg_state s{};
        s.t = vals[0];
        s.x = {vals[1], vals[2]};
        s.y = {vals[3], vals[4]};
        s.vx = {vals[5], vals[6]};
        s.vy = {vals[7], vals[8]};
        rows.states.push_back(s);
    }
    return rows;
}

struct ModelFlags {
    double omega = 1.0;
    double mu1 = 0.01;
    double mu2 = 0.02;
    double t0 = 0.0;
    double a0 = 1.0;
    double b0 = 1.0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& m, bool with_initial = true)
{
    cmd->add_option("--omega", m.omega, "angular frequency (> 0)");
    cmd->add_option("--mu1", m.mu1, "first non-Hermiticity coupling");
    cmd->add_option("--mu2", m.mu2, "second non-Hermiticity coupling");
    if (with_initial) {
        cmd->add_option("--t0", m.t0, "initial time");
        cmd->add_option("--a0", m.a0, "initial amplitude of x");
        cmd->add_option("--b0", m.b0, "initial amplitude of y");
    }
}

vdprg_params params_of(const ModelFlags& m)
{
    return {m.omega, m.mu1, m.mu2};
}

vdprg_initial initial_of(const ModelFlags& m)
{
    return {m.t0, m.a0, m.b0};
}

std::vector<double> grid(double lo, double hi, std::size_t n)
{
    std::vector<double> out;
    out.reserve(n);
    if (n == 1) {
        out.push_back(lo);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i)
                              / static_cast<double>(n - 1));
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"2d non-Hermitian van der Pol oscillator toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", vdprg_version());

    std::string out_path;
    std::string format = "csv";
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // simulate
    auto* simulate = app.add_subcommand("simulate", "integrate the equations of motion");
    ModelFlags sim_model;
    vdprg_integrator_config sim_cfg;
    vdprg_integrator_config_default(&sim_cfg);
    bool sim_rk4 = false;
    add_model_flags(simulate, sim_model);
    simulate->add_option("--t-end", sim_cfg.t_end, "final time");
    simulate->add_option("--rel-tol", sim_cfg.rel_tol, "relative tolerance");
    simulate->add_option("--abs-tol", sim_cfg.abs_tol, "absolute tolerance");
    simulate->add_option("--max-step", sim_cfg.max_step, "maximum step size");
    simulate->add_option("--initial-step", sim_cfg.initial_step, "initial step (0 = auto)");
    simulate->add_flag("--rk4", sim_rk4, "fixed-step RK4 debug integrator");
    simulate->add_option("--fixed-step", sim_cfg.fixed_step, "RK4 step size");

    // rg / perturb
    auto* rg = app.add_subcommand("rg", "sample a resummed closed-form solution");
    ModelFlags rg_model;
    std::string rg_branch = "limit";
    std::string rg_sign = "+";
    double rg_t_end = 100.0;
    std::size_t rg_samples = 4001;
    bool rg_manifold_b0 = false;
    add_model_flags(rg, rg_model);
    rg->add_option("--t-end", rg_t_end, "final time");
    rg->add_option("--samples", rg_samples, "number of grid points");
    rg->add_option("--branch", rg_branch, "center or limit")
        ->check(CLI::IsMember({"center", "limit"}));
    rg->add_option("--sign", rg_sign, "manifold branch sign (+ or -)")
        ->check(CLI::IsMember({"+", "-"}));
    rg->add_flag("--b0-on-manifold", rg_manifold_b0,
                 "set b0 = sign*sqrt(mu1/mu2)*a0");

    auto* perturb = app.add_subcommand("perturb", "sample the first-order perturbative solution");
    ModelFlags pert_model;
    double pert_t_end = 100.0;
    std::size_t pert_samples = 4001;
    add_model_flags(perturb, pert_model);
    perturb->add_option("--t-end", pert_t_end, "final time");
    perturb->add_option("--samples", pert_samples, "number of grid points");

    // compare
    auto* compare = app.add_subcommand("compare", "error norms and orbit classes of two trajectory files");
    std::string file_a, file_b;
    double cmp_t_start = 0.0, cmp_t_end = 0.0;
    bool cmp_have_start = false, cmp_have_end = false;
    std::size_t cmp_samples = 2001;
    double cmp_center_tol = 1e-3;
    std::string cmp_component = "x";
    compare->add_option("file_a", file_a, "first trajectory file")->required();
    compare->add_option("file_b", file_b, "second trajectory file")->required();
    compare->add_option("--t-start", cmp_t_start, "window start (default overlap)")
        ->each([&](const std::string&) { cmp_have_start = true; });
    compare->add_option("--t-end", cmp_t_end, "window end (default overlap)")
        ->each([&](const std::string&) { cmp_have_end = true; });
    compare->add_option("--samples", cmp_samples, "comparison grid size");
    compare->add_option("--center-tol", cmp_center_tol, "center classification tolerance");
    compare->add_option("--component", cmp_component, "component for classification")
        ->check(CLI::IsMember({"x", "y"}));

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the Weyl-ordered Hamiltonian");
    ModelFlags spec_model;
    int spec_n_max = 12;
    add_model_flags(spectrum, spec_model, false);
    spectrum->add_option("--n-max", spec_n_max, "basis levels per coordinate");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "fraction of complex eigenvalues along a coupling grid");
    std::string sweep_mode = "mu";
    double sweep_omega = 1.0;
    int sweep_n_max = 12;
    double sweep_im_tol = 1e-6;
    double sweep_interior = 0.5;
    double mu_min = 0.0, mu_max = 2.0;
    double ratio_min = 0.25, ratio_max = 4.0;
    double sweep_mu1 = 0.1;
    std::size_t sweep_steps = 21;
    sweep->add_option("--mode", sweep_mode, "mu (mu1=mu2) or ratio (mu1 fixed)")
        ->check(CLI::IsMember({"mu", "ratio"}));
    sweep->add_option("--omega", sweep_omega, "angular frequency");
    sweep->add_option("--n-max", sweep_n_max, "basis levels per coordinate");
    sweep->add_option("--im-tol", sweep_im_tol, "complex-classification tolerance");
    sweep->add_option("--interior-fraction", sweep_interior,
                      "fraction of smallest-|E| eigenvalues retained");
    sweep->add_option("--mu-min", mu_min, "first coupling (mu mode)");
    sweep->add_option("--mu-max", mu_max, "last coupling (mu mode)");
    sweep->add_option("--ratio-min", ratio_min, "first ratio (ratio mode)");
    sweep->add_option("--ratio-max", ratio_max, "last ratio (ratio mode)");
    sweep->add_option("--mu1", sweep_mu1, "fixed mu1 (ratio mode)");
    sweep->add_option("--steps", sweep_steps, "number of grid points");

    // toy
    auto* toy = app.add_subcommand("toy", "single-variable resummation example");
    double toy_eps = 0.1, toy_a = 1.0, toy_t0 = 0.0, toy_t_end = 50.0;
    std::size_t toy_samples = 501;
    toy->add_option("--eps", toy_eps, "decay parameter");
    toy->add_option("--a0", toy_a, "initial amplitude");
    toy->add_option("--t0", toy_t0, "initial time");
    toy->add_option("--t-end", toy_t_end, "final time");
    toy->add_option("--samples", toy_samples, "number of grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::exit(app.exit(e));
        }
        std::cerr << "vdprg: " << e.what() << "\n";
        return kExitConfig;
    }

    if (simulate->parsed()) {
        sim_cfg.fixed_rk4 = sim_rk4 ? 1 : 0;
        const vdprg_params p = params_of(sim_model);
        const vdprg_initial init = initial_of(sim_model);
        vdprg_trajectory* traj = nullptr;
        if (auto st = vdprg_integrate(&p, &init, &sim_cfg, &traj); st != VDPRG_OK)
            fail(st, "integration failed");
        TrajectoryRows rows;
        rows.states.resize(vdprg_trajectory_sample_count(traj));
        for (std::size_t i = 0; i < rows.states.size(); ++i)
            vdprg_trajectory_sample(traj, i, &rows.states[i]);
        vdprg_trajectory_free(traj);
        write_output(out_path, render_trajectory(rows, format));
        return 0;
    }

    if (rg->parsed() || perturb->parsed()) {
        const bool is_rg = rg->parsed();
        ModelFlags& m = is_rg ? rg_model : pert_model;
        const double t_end = is_rg ? rg_t_end : pert_t_end;
        const std::size_t n = std::max<std::size_t>(is_rg ? rg_samples : pert_samples, 2);
        const int sign = (rg_sign == "-") ? -1 : +1;

        if (is_rg && rg_manifold_b0) {
            if (m.mu2 == 0.0 || m.mu1 / m.mu2 < 0.0)
                fail(VDPRG_ERR_INVALID_ARGUMENT, "cannot place b0 on manifold");
            m.b0 = sign * std::sqrt(m.mu1 / m.mu2) * m.a0;
        }

        const vdprg_params p = params_of(m);
        const vdprg_initial init = initial_of(m);
        TrajectoryRows rows;
        rows.states.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = m.t0 + (t_end - m.t0) * static_cast<double>(i)
                                        / static_cast<double>(n - 1);
            vdprg_state s{};
            vdprg_status st;
            if (!is_rg)
                st = vdprg_perturbative(&p, &init, t, &s);
            else if (rg_branch == "center")
                st = vdprg_rg_center(&p, &init, t, &s);
            else
                st = vdprg_rg_limit(&p, &init, sign, t, &s);
            if (st != VDPRG_OK)
                fail(st, "closed-form evaluation failed");
            rows.states.push_back(s);
        }
        write_output(out_path, render_trajectory(rows, format));
        return 0;
    }

    if (compare->parsed()) {
        const TrajectoryRows rows_a = load_trajectory_file(file_a);
        const TrajectoryRows rows_b = load_trajectory_file(file_b);

        vdprg_trajectory* ta = nullptr;
        vdprg_trajectory* tb = nullptr;
        if (auto st = vdprg_trajectory_from_samples(rows_a.states.data(),
                                                    rows_a.states.size(), &ta);
            st != VDPRG_OK)
            fail(st, "invalid trajectory in " + file_a);
        if (auto st = vdprg_trajectory_from_samples(rows_b.states.data(),
                                                    rows_b.states.size(), &tb);
            st != VDPRG_OK)
            fail(st, "invalid trajectory in " + file_b);

        double a0 = 0, a1 = 0, b0 = 0, b1 = 0;
        vdprg_trajectory_span(ta, &a0, &a1);
        vdprg_trajectory_span(tb, &b0, &b1);
        const double lo = cmp_have_start ? cmp_t_start : std::max(a0, b0);
        const double hi = cmp_have_end ? cmp_t_end : std::min(a1, b1);

        vdprg_error_report report{};
        if (auto st = vdprg_trajectory_error(ta, tb, lo, hi, cmp_samples, &report);
            st != VDPRG_OK)
            fail(st, "comparison failed");

        const vdprg_component comp =
            cmp_component == "y" ? VDPRG_COMPONENT_Y : VDPRG_COMPONENT_X;
        vdprg_orbit_class cls_a{}, cls_b{};
        double drift_a = 0, drift_b = 0;
        if (auto st = vdprg_classify_orbit(ta, comp, cmp_center_tol, &cls_a, &drift_a);
            st != VDPRG_OK)
            fail(st, "classification failed for " + file_a);
        if (auto st = vdprg_classify_orbit(tb, comp, cmp_center_tol, &cls_b, &drift_b);
            st != VDPRG_OK)
            fail(st, "classification failed for " + file_b);

        vdprg_trajectory_free(ta);
        vdprg_trajectory_free(tb);

        json report_json = {{"sup_error", report.sup_error},
                            {"l2_error", report.l2_error},
                            {"orbit_class_a", vdprg_orbit_class_name(cls_a)},
                            {"orbit_class_b", vdprg_orbit_class_name(cls_b)},
                            {"envelope_drift_a", drift_a},
                            {"envelope_drift_b", drift_b},
                            {"window", {report.t_start, report.t_end}}};
        write_output(out_path, report_json.dump(2) + "\n");
        return 0;
    }

    if (spectrum->parsed()) {
        const vdprg_params p = params_of(spec_model);
        vdprg_spectrum* spec = nullptr;
        if (auto st = vdprg_spectrum_compute(&p, spec_n_max, &spec); st != VDPRG_OK)
            fail(st, "eigensolve failed");
        const std::size_t n = vdprg_spectrum_size(spec);
        std::string csv = "index,re_E,im_E\n";
        json arr = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            vdprg_complex e{};
            vdprg_spectrum_get(spec, i, &e);
            if (format == "json")
                arr.push_back({{"index", i}, {"re_E", e.re}, {"im_E", e.im}});
            else
                csv += std::to_string(i) + ',' + fmt(e.re) + ',' + fmt(e.im) + '\n';
        }
        vdprg_spectrum_free(spec);
        write_output(out_path, format == "json" ? arr.dump(2) + "\n" : csv);
        return 0;
    }

    if (sweep->parsed()) {
        const std::vector<double> couplings =
            sweep_mode == "mu" ? grid(mu_min, mu_max, sweep_steps)
                               : grid(ratio_min, ratio_max, sweep_steps);
        std::vector<double> f(couplings.size()), f_raw(couplings.size());
        vdprg_status st;
        if (sweep_mode == "mu") {
            const vdprg_params tmpl{sweep_omega, 0.0, 0.0};
            st = vdprg_sweep_mu(&tmpl, sweep_n_max, couplings.data(),
                                couplings.size(), sweep_im_tol, sweep_interior,
                                f.data(), f_raw.data());
        } else {
            st = vdprg_sweep_ratio(sweep_mu1, sweep_omega, sweep_n_max,
                                   couplings.data(), couplings.size(),
                                   sweep_im_tol, sweep_interior, f.data(),
                                   f_raw.data());
        }
        if (st != VDPRG_OK)
            fail(st, "sweep failed");

        if (format == "json") {
            json arr = json::array();
            for (std::size_t i = 0; i < couplings.size(); ++i)
                arr.push_back({{"coupling", couplings[i]},
                               {"F", f[i]},
                               {"F_unfiltered", f_raw[i]}});
            write_output(out_path, arr.dump(2) + "\n");
        } else {
            std::string csv = "coupling,F,F_unfiltered\n";
            for (std::size_t i = 0; i < couplings.size(); ++i)
                csv += fmt(couplings[i]) + ',' + fmt(f[i]) + ',' + fmt(f_raw[i]) + '\n';
            write_output(out_path, csv);
        }
        return 0;
    }

    if (toy->parsed()) {
        const std::size_t n = std::max<std::size_t>(toy_samples, 2);
        std::string csv = "t,exact,perturbative,rg\n";
        json arr = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            const double t = toy_t0 + (toy_t_end - toy_t0) * static_cast<double>(i)
                                          / static_cast<double>(n - 1);
            double exact = 0, pert = 0, resummed = 0;
            if (auto st = vdprg_toy_rg(t, toy_t0, toy_a, toy_eps, &exact, &pert,
                                       &resummed);
                st != VDPRG_OK)
                fail(st, "toy evaluation failed");
            if (format == "json")
                arr.push_back({{"t", t},
                               {"exact", exact},
                               {"perturbative", pert},
                               {"rg", resummed}});
            else
                csv += fmt(t) + ',' + fmt(exact) + ',' + fmt(pert) + ','
                       + fmt(resummed) + '\n';
        }
        write_output(out_path, format == "json" ? arr.dump(2) + "\n" : csv);
        return 0;
    }

    return kExitConfig;
}
