#include "petallab/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "petallab/config.hpp"
#include "petallab/energy.hpp"
#include "petallab/hypgeom.hpp"
#include "petallab/oracles.hpp"
#include "petallab/report.hpp"
#include "petallab/rng.hpp"

namespace petallab::cli {

namespace {

Complex parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError("expected a complex value re,im: " + s);
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ConfigError("expected a complex value re,im: " + s);
    }
}

nlohmann::json estimate_json(const Estimate& e) {
    return {{"value", e.value},   {"std_err", e.std_err},     {"n_samples", e.n_samples},
            {"n_truncated", e.n_truncated}, {"seed", e.seed}, {"flags", e.flags}};
}

void print_json(const nlohmann::json& j) { std::cout << j.dump() << "\n"; }

struct EstimateArgs {
    std::string config_path;
    std::optional<double> t;
    std::optional<long> walks;
    std::optional<uint64_t> seed;
    std::optional<int> m;
    std::optional<int> n;

    RunConfig load() const {
        RunConfig run = load_run_config(config_path);
        if (walks) run.sweep.wos.n_walks = *walks;
        if (seed) run.sweep.wos.seed = *seed;
        if (m) run.sweep.m = *m;
        if (n) run.sweep.diameter_n = *n;
        run.sweep.fekete.wos = run.sweep.wos;
        run.sweep.wos.validate();
        return run;
    }
    double flow_time() const { return t.value_or(0.0); }
};

void add_estimate_options(CLI::App* cmd, EstimateArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config file")->required();
    cmd->add_option("--t", args.t, "flow time (default 0)");
    cmd->add_option("--walks", args.walks, "walk count override");
    cmd->add_option("--seed", args.seed, "seed override");
    cmd->add_option("--m", args.m, "discretization count override");
    cmd->add_option("--n", args.n, "tuple size override");
}

int run_oracle(const std::string& which, Complex z, Complex w, double y0, double y1,
               const std::string& side, double z_abs, double r, double a, double b) {
    if (which == "disk-metrics" || which == "halfplane-metrics" || which == "strip-metrics") {
        MetricTriple m{};
        if (which == "disk-metrics")
            m = disk_metrics(z, w);
        else if (which == "halfplane-metrics")
            m = halfplane_metrics(z, w);
        else
            m = strip_metrics(z, w, y0, y1);
        print_json({{"density", m.density}, {"distance", m.distance}, {"green", m.green}});
        return kExitOk;
    }
    if (which == "strip-harmonic") {
        const double v = strip_harmonic_measure(z, y0, y1,
                                                side == "lower" ? StripSide::Lower
                                                                : StripSide::Upper);
        print_json({{"harmonic_measure", v}});
        return kExitOk;
    }
    if (which == "disk-concentric") {
        const auto [omega, cap] = disk_concentric(z_abs, r);
        print_json({{"harmonic_measure", omega}, {"capacity", cap}});
        return kExitOk;
    }
    if (which == "segment-measure") {
        print_json({{"harmonic_measure", halfplane_segment_measure(z, a, b)}});
        return kExitOk;
    }
    throw ConfigError("unknown oracle: " + which);
}

int run_estimate(const std::string& which, const EstimateArgs& args) {
    const RunConfig run = args.load();
    const SweepConfig& s = run.sweep;
    const double t = args.flow_time();
    if (which == "harmonic-measure") {
        print_json(estimate_json(harmonic_measure_mc(s.z, s.compact, s.domain, t, s.wos)));
    } else if (which == "green") {
        print_json(estimate_json(green_mc(s.z, s.w, s.domain, t, s.wos)));
    } else if (which == "robin-density") {
        print_json(estimate_json(robin_density_mc(s.z, s.domain, t, s.wos)));
    } else if (which == "hyp-distance") {
        print_json(estimate_json(hyp_distance_mc(s.z, s.w, s.domain, t, s.wos)));
    } else if (which == "hyp-area") {
        const AreaResult ar = hyp_area(s.compact, s.domain, t, s.m, s.wos);
        print_json({{"value", ar.value},
                    {"std_err", ar.std_err},
                    {"n_nodes", ar.n_nodes},
                    {"refinement_error", ar.refinement_error},
                    {"density_source", ar.density_source},
                    {"flags", ar.flags}});
    } else if (which == "bounds") {
        print_json({{"quasi_density", quasi_density(s.z, s.domain, t)},
                    {"distance_lower_bound", distance_lower_bound(s.z, s.w, s.domain, t)},
                    {"green_upper_bound", green_upper_bound(s.z, s.w, s.domain, t)}});
    } else if (which == "n-diameter") {
        FeketeConfig fc = s.fekete;
        fc.wos = s.wos;
        const FeketeResult r =
            n_diameter(s.compact, s.diameter_n, FeketeMetric::hyperbolic(s.domain, t), fc);
        nlohmann::json tuple = nlohmann::json::array();
        for (const auto& p : r.tuple) tuple.push_back({p.real(), p.imag()});
        print_json({{"n", r.n},
                    {"diameter", r.diameter},
                    {"std_err", r.std_err},
                    {"tuple", tuple},
                    {"n_restarts", r.n_restarts},
                    {"kernel_source", r.kernel_source},
                    {"flags", r.flags}});
    } else if (which == "capacity") {
        const EquilibriumResult e = condenser_capacity(s.compact, s.domain, t, s.m, s.wos);
        print_json({{"energy", e.energy},
                    {"capacity", e.capacity},
                    {"energy_std_err", e.energy_std_err},
                    {"capacity_std_err", e.capacity_std_err},
                    {"weights", e.weights},
                    {"kernel_source", e.kernel_source},
                    {"iterations", e.iterations},
                    {"converged", e.converged},
                    {"flags", e.flags}});
    } else {
        throw ConfigError("unknown estimate: " + which);
    }
    return kExitOk;
}

int finish_report(const SweepReport& report, const std::string& out_dir,
                  const std::vector<std::string>& formats) {
    render_report(report, formats, out_dir);
    const Outcome outcome = worst_outcome(report);
    std::ostringstream line;
    if (report.verdicts.empty()) {
        line << "sweep: " << report.rows.size() << " rows";
    } else {
        line << outcome_name(outcome) << ":";
        for (const auto& v : report.verdicts)
            line << ' ' << v.check << '=' << outcome_name(v.outcome);
    }
    line << " -> " << out_dir;
    std::cout << line.str() << "\n";
    if (outcome == Outcome::Fail) return kExitCheckFailed;
    if (outcome == Outcome::Inconclusive) return kExitInconclusive;
    return kExitOk;
}

int dispatch(const std::vector<std::string>& argv) {
    CLI::App app{"potential-theory laboratory over translation-flow domains"};
    app.require_subcommand(1);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "closed-form reference values");
    oracle->require_subcommand(1);
    std::string o_z = "0,0", o_w = "0,0", o_side = "upper";
    double o_y0 = 0.0, o_y1 = kPi, o_zabs = 0.8, o_r = 0.5, o_a = -1.0, o_b = 1.0;
    std::string oracle_name;
    for (const char* name : {"disk-metrics", "halfplane-metrics", "strip-metrics",
                             "strip-harmonic", "disk-concentric", "segment-measure"}) {
        auto* sub = oracle->add_subcommand(name);
        sub->add_option("--z", o_z, "point re,im");
        sub->add_option("--w", o_w, "point re,im");
        sub->add_option("--y0", o_y0, "strip lower edge");
        sub->add_option("--y1", o_y1, "strip upper edge");
        sub->add_option("--side", o_side, "upper|lower");
        sub->add_option("--z-abs", o_zabs, "|z| for the concentric oracle");
        sub->add_option("--r", o_r, "inner radius");
        sub->add_option("--a", o_a, "segment start");
        sub->add_option("--b", o_b, "segment end");
        sub->callback([&, name] { oracle_name = name; });
    }

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo / quadrature estimators");
    estimate->require_subcommand(1);
    EstimateArgs e_args;
    std::string estimate_name;
    for (const char* name : {"harmonic-measure", "green", "robin-density", "hyp-distance",
                             "hyp-area", "bounds", "n-diameter", "capacity"}) {
        auto* sub = estimate->add_subcommand(name);
        add_estimate_options(sub, e_args);
        sub->callback([&, name] { estimate_name = name; });
    }

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run the full t-grid sweep");
    std::string s_config, s_out, s_emit;
    std::vector<std::string> s_formats;
    std::optional<uint64_t> s_seed;
    sweep_cmd->add_option("--config", s_config, "experiment config file")->required();
    sweep_cmd->add_option("--out", s_out, "output directory");
    sweep_cmd->add_option("--formats", s_formats, "csv,json,svg subset")->delimiter(',');
    sweep_cmd->add_option("--seed", s_seed, "seed override");
    sweep_cmd->add_option("--emit-config", s_emit, "write the normalized config and exit");

    // check
    auto* check_cmd = app.add_subcommand("check", "run one named checker");
    std::string c_name, c_config, c_out;
    std::optional<uint64_t> c_seed;
    check_cmd->add_option("--name", c_name, "T1..T7, SM-H, SM-G, MINDA")->required();
    check_cmd->add_option("--config", c_config, "experiment config file")->required();
    check_cmd->add_option("--out", c_out, "output directory");
    check_cmd->add_option("--seed", c_seed, "seed override");

    // report
    auto* report_cmd = app.add_subcommand("report", "re-render a stored report.json");
    std::string r_in, r_out;
    std::vector<std::string> r_formats{"csv", "svg"};
    report_cmd->add_option("--in", r_in, "report.json path")->required();
    report_cmd->add_option("--out", r_out, "output directory")->required();
    report_cmd->add_option("--formats", r_formats, "csv,json,svg subset")->delimiter(',');

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);

    if (oracle->parsed())
        return run_oracle(oracle_name, parse_complex(o_z), parse_complex(o_w), o_y0, o_y1, o_side,
                          o_zabs, o_r, o_a, o_b);
    if (estimate->parsed()) return run_estimate(estimate_name, e_args);
    if (sweep_cmd->parsed()) {
        RunConfig run = load_run_config(s_config);
        if (s_seed) {
            run.sweep.wos.seed = *s_seed;
            run.sweep.fekete.wos.seed = *s_seed;
            run.sweep.fekete.seed = mix_seed(*s_seed, 0x46454b54ull);
        }
        if (!s_out.empty()) run.out_dir = s_out;
        if (!s_formats.empty()) run.formats = s_formats;
        if (!s_emit.empty()) {
            std::ofstream out(s_emit, std::ios::binary);
            if (!out) throw ConfigError("cannot write " + s_emit);
            out << emit_config(run);
            std::cout << "config -> " << s_emit << "\n";
            return kExitOk;
        }
        if (run.sweep.quantities.empty())
            run.sweep.quantities = {"harmonic", "density", "distance", "green",
                                    "area",     "n_diameter", "capacity"};
        const SweepReport report = t_sweep(run.sweep);
        return finish_report(report, run.out_dir, run.formats);
    }
    if (check_cmd->parsed()) {
        RunConfig run = load_run_config(c_config);
        if (c_seed) {
            run.sweep.wos.seed = *c_seed;
            run.sweep.fekete.wos.seed = *c_seed;
            run.sweep.fekete.seed = mix_seed(*c_seed, 0x46454b54ull);
        }
        if (!c_out.empty()) run.out_dir = c_out;
        const SweepReport report = check(c_name, run.sweep);
        return finish_report(report, run.out_dir, run.formats);
    }
    if (report_cmd->parsed()) {
        std::ifstream in(r_in, std::ios::binary);
        if (!in) throw ConfigError("cannot open " + r_in);
        std::ostringstream ss;
        ss << in.rdbuf();
        const SweepReport report = report_from_json(ss.str());
        const auto files = render_report(report, r_formats, r_out);
        std::cout << "report: " << files.size() << " file(s) -> " << r_out << "\n";
        return kExitOk;
    }
    return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& argv) {
    try {
        return dispatch(argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << "usage: petallab {oracle|estimate|sweep|check|report} ...\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PreconditionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace petallab::cli
