// Command-line front end: energy | ansatz | phase-scan | optimize | verify.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dipolar/ansatz.hpp"
#include "dipolar/energy.hpp"
#include "dipolar/geometry.hpp"
#include "dipolar/io.hpp"
#include "dipolar/kernels.hpp"
#include "dipolar/numeric.hpp"
#include "dipolar/optimize.hpp"
#include "dipolar/phase.hpp"
#include "dipolar/verify.hpp"

using nlohmann::json;
namespace geom = dipolar::geometry;
namespace nrg = dipolar::energy;
using dipolar::kernels::KernelParams;
using dipolar::kernels::LayerSep;

namespace {

struct Cli {
  // shared
  std::string config_path;
  unsigned workers = 0;
  std::uint64_t seed = 20240817;

  // energy / optimize
  std::string shape;
  double lambda = 1.0;
  double delta = -1.0;  // required for cutoff evaluators
  std::string ell = "inf";
  std::string evaluator = "boundary";
  int nodes = 0;
  double h = -1.0;
  std::string out;

  // phase-scan
  std::string l_grid;
  bool with_mass_threshold = false;
  double plot_l = -1.0;
  std::string svg;

  // optimize
  int max_steps = 20000;
  double tol = 1e-3;
  double dt0 = 0.0;
  std::string trace;
  std::string final_out;
  std::string frames_dir;
  int frame_every = 0;

  // verify
  bool quick = false;
};

LayerSep parse_ell(const std::string& s) {
  if (s == "inf" || s == "infinity" || s.empty()) return LayerSep::infinite();
  return LayerSep::finite(std::stod(s));
}

geom::ShapeConfig parse_shape(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("missing --shape");
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t next = rest.find(',', pos);
      if (next == std::string::npos) next = rest.size();
      args.push_back(std::stod(rest.substr(pos, next - pos)));
      pos = next + 1;
    }
  }
  if (kind == "disk") {
    if (args.size() != 1) throw std::invalid_argument("disk:R expects one value");
    return geom::ShapeConfig::single(geom::make_disk(args[0]));
  }
  if (kind == "ellipse") {
    if (args.size() == 1) {  // aspect ratio at unit-disk mass pi
      const double aspect = args[0];
      return geom::ShapeConfig::single(geom::make_ellipse(std::sqrt(aspect), 1.0 / std::sqrt(aspect)));
    }
    if (args.size() == 2) return geom::ShapeConfig::single(geom::make_ellipse(args[0], args[1]));
    throw std::invalid_argument("ellipse:ASPECT or ellipse:A,B");
  }
  if (kind == "stripe") {
    if (args.size() < 2 || args.size() > 3)
      throw std::invalid_argument("stripe:A,M[,RHO] expects two or three values");
    const double a = args[0], m = args[1];
    const double rho = args.size() == 3 ? args[2] : 0.1 * std::min(a * m, 1.0 / a);
    return geom::ShapeConfig::single(geom::make_stripe(a, m, rho));
  }
  // otherwise treat as a curve file in the exchange format
  return dipolar::io::load_config(spec);
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double lo, hi, step;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0)
      throw std::invalid_argument("--l expects lo:hi:step or a comma list");
    for (double v = lo; v <= hi + 1e-12 * step; v += step) grid.push_back(v);
    return grid;
  }
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t next = spec.find(',', pos);
    if (next == std::string::npos) next = spec.size();
    grid.push_back(std::stod(spec.substr(pos, next - pos)));
    pos = next + 1;
  }
  return grid;
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << j.dump(2) << "\n";
  }
}

// Defaults < config file < explicit flags; prints the effective values.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  for (auto& [key, value] : j.items()) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr || opt->count() > 0) continue;  // flags win over config
    if (value.is_boolean()) {
      if (value.get<bool>()) opt->add_result("true");
    } else if (value.is_string()) {
      opt->add_result(value.get<std::string>());
    } else {
      opt->add_result(value.dump());
    }
    opt->run_callback();
  }
}

json effective_config(const CLI::App* cmd) {
  json j;
  j["command"] = cmd->get_name();
  for (const CLI::Option* opt : cmd->get_options()) {
    const std::string name = opt->get_name();
    if (name.rfind("--", 0) != 0) continue;
    const auto results = opt->results();
    if (results.empty()) continue;
    j["options"][name.substr(2)] = results.size() == 1 ? json(results[0]) : json(results);
  }
  return j;
}

void announce_config(const CLI::App* cmd, const Cli& cli) {
  json j = effective_config(cmd);
  j["seed"] = cli.seed;
  j["workers"] = dipolar::numeric::worker_count();
  std::cerr << "config " << j.dump() << "\n";
}

int run_energy(CLI::App* cmd, Cli& cli) {
  announce_config(cmd, cli);
  const geom::ShapeConfig config = parse_shape(cli.shape);
  const LayerSep ell = parse_ell(cli.ell);

  auto need_delta = [&]() {
    if (cli.delta <= 0.0)
      throw std::invalid_argument("evaluator '" + cli.evaluator + "' requires --delta");
    return KernelParams{cli.lambda, cli.delta, ell};
  };
  auto run_grid = [&](const KernelParams& params) {
    const double h = cli.h > 0.0 ? cli.h : params.delta / 4.0;
    const auto raster = geom::rasterize(config, h);
    double perimeter = 0.0;
    for (const auto& comp : config.components)
      perimeter += geom::sample_arclength(comp.curve, 512).perimeter;
    return nrg::energy_grid(raster, perimeter, params);
  };

  json out;
  out["config"] = effective_config(cmd);
  if (cli.evaluator == "all") {
    json list = json::array();
    const auto gamma = nrg::gamma_limit_energy(config, cli.nodes);
    list.push_back(dipolar::io::breakdown_to_json(gamma, std::nullopt));
    if (ell.is_finite())
      list.push_back(dipolar::io::breakdown_to_json(
          nrg::gamma_limit_energy_modified(config, ell, cli.nodes), std::nullopt));
    if (cli.delta > 0.0) {
      const KernelParams params = need_delta();
      const auto boundary = nrg::energy_boundary(config, params, cli.nodes);
      list.push_back(dipolar::io::breakdown_to_json(boundary, params));
      json consistency;
      consistency["log_delta_times_boundary_minus_gamma"] =
          params.log_delta() * boundary.total - gamma.total;
      if (cli.h > 0.0) {
        const auto grid = run_grid(params);
        list.push_back(dipolar::io::breakdown_to_json(grid, params));
        consistency["grid_vs_boundary_relative"] =
            std::abs(grid.total - boundary.total) / std::max(1e-300, std::abs(boundary.total));
      }
      out["consistency"] = consistency;
    }
    out["results"] = list;
    emit(out, cli.out);
    return 0;
  }

  nrg::EnergyBreakdown breakdown;
  std::optional<KernelParams> params;
  if (cli.evaluator == "boundary") {
    params = need_delta();
    breakdown = nrg::energy_boundary(config, *params, cli.nodes);
  } else if (cli.evaluator == "grid") {
    params = need_delta();
    breakdown = run_grid(*params);
  } else if (cli.evaluator == "gamma") {
    breakdown = nrg::gamma_limit_energy(config, cli.nodes);
  } else if (cli.evaluator == "gamma-modified") {
    if (!ell.is_finite())
      throw std::invalid_argument("evaluator 'gamma-modified' requires a finite --ell");
    breakdown = nrg::gamma_limit_energy_modified(config, ell, cli.nodes);
  } else {
    throw std::invalid_argument("unknown evaluator: " + cli.evaluator);
  }
  out["result"] = dipolar::io::breakdown_to_json(breakdown, params);
  emit(out, cli.out);
  return 0;
}

int run_ansatz(CLI::App* cmd, Cli& cli, const std::string& kind, double r, double a, double m) {
  announce_config(cmd, cli);
  const LayerSep ell = parse_ell(cli.ell);
  json out;
  out["config"] = effective_config(cmd);
  if (kind == "disk") {
    out["result"] = dipolar::io::ansatz_to_json(dipolar::ansatz::disk_result(r, ell));
  } else if (kind == "stripe") {
    out["result"] = dipolar::io::ansatz_to_json(dipolar::ansatz::stripe_result(a, m, ell));
  } else {
    throw std::invalid_argument("--kind must be disk or stripe");
  }
  emit(out, cli.out);
  return 0;
}

int run_phase_scan(CLI::App* cmd, Cli& cli) {
  announce_config(cmd, cli);
  const auto grid = parse_grid(cli.l_grid);
  const auto rows = dipolar::phase::crossover_scan(grid, cli.with_mass_threshold);
  const std::string out = cli.out.empty() ? "phase_scan.csv" : cli.out;
  dipolar::io::write_phase_csv(out, rows);
  std::cerr << "wrote " << out << " (" << rows.size() << " rows)\n";

  if (cli.plot_l > 0.0 && !cli.svg.empty()) {
    dipolar::io::Series disk{"f_disk", "#1f77b4", {}, {}};
    dipolar::io::Series stripe{"f_stripe", "#d62728", {}, {}};
    for (int i = 1; i <= 400; ++i) {
      const double a = 1.5 * i / 400.0;
      disk.x.push_back(a);
      disk.y.push_back(dipolar::ansatz::f_disk(a, cli.plot_l));
      stripe.x.push_back(a);
      stripe.y.push_back(dipolar::ansatz::f_stripe(a, cli.plot_l));
    }
    dipolar::io::svg_chart(cli.svg, {disk, stripe}, "a", "energy per mass");
    std::cerr << "wrote " << cli.svg << "\n";
  }
  return 0;
}

int run_optimize(CLI::App* cmd, Cli& cli) {
  announce_config(cmd, cli);
  if (cli.delta <= 0.0) throw std::invalid_argument("optimize requires --delta");
  const geom::ShapeConfig start = parse_shape(cli.shape);
  const KernelParams params{cli.lambda, cli.delta, parse_ell(cli.ell)};

  dipolar::optimize::FlowOptions options;
  options.nodes = cli.nodes > 0 ? cli.nodes : 256;
  options.max_steps = cli.max_steps;
  options.tol = cli.tol;
  options.dt0 = cli.dt0;

  const auto state = dipolar::optimize::gradient_flow(start, params, options);

  const std::string trace_path = cli.trace.empty() ? "flow_trace.csv" : cli.trace;
  {
    dipolar::io::CsvWriter csv(trace_path);
    csv.row({"step", "energy", "residual", "area"});
    for (const auto& rec : state.trace)
      csv.row({std::to_string(rec.step), dipolar::io::format_double(rec.energy),
               dipolar::io::format_double(rec.residual), dipolar::io::format_double(rec.area)});
  }
  std::cerr << "wrote " << trace_path << "\n";

  if (!cli.frames_dir.empty()) {
    std::filesystem::create_directories(cli.frames_dir);
    dipolar::io::svg_curves(cli.frames_dir + "/final.svg", {state.curve.points});
    std::cerr << "wrote " << cli.frames_dir << "/final.svg\n";
  }

  json out;
  out["config"] = effective_config(cmd);
  out["steps"] = state.steps;
  out["converged"] = state.converged;
  out["aborted"] = state.aborted;
  if (state.aborted) out["abort_reason"] = state.abort_reason;
  out["mu"] = state.mu;
  out["final_energy"] = state.trace.back().energy;
  out["final_residual"] = state.trace.back().residual;
  out["osc_curvature"] = dipolar::optimize::osc_curvature(state.curve);
  if (!cli.final_out.empty()) {
    dipolar::io::save_config(
        geom::ShapeConfig::single(geom::fit_fourier(state.curve.points,
                                                    std::min(64, options.nodes / 4))),
        cli.final_out);
    out["final_curve"] = cli.final_out;
  }
  emit(out, cli.out);
  return state.aborted ? 1 : 0;
}

int run_verify(CLI::App* cmd, Cli& cli) {
  announce_config(cmd, cli);
  dipolar::verify::VerifyOptions options;
  options.quick = cli.quick;
  options.seed = cli.seed;
  const auto results = dipolar::verify::run_all(options);
  bool all_ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "[ok]   " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
    all_ok = all_ok && r.passed;
  }
  std::cout << (all_ok ? "verify: all checks passed\n" : "verify: FAILURES\n");
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  CLI::App app{"dipolar isoperimetric energies: evaluators, ansatz curves, phase scan, flow"};
  app.require_subcommand(1);
  app.add_option("--workers", cli.workers, "worker threads (default: cores)");
  app.add_option("--seed", cli.seed, "seed for randomized checks");
  app.add_option("--config", cli.config_path, "JSON config file (flags override it)");

  auto add_shape_opts = [&](CLI::App* cmd, bool start) {
    cmd->add_option(start ? "--start" : "--shape", cli.shape,
                    "disk:R | ellipse:ASPECT | ellipse:A,B | stripe:A,M[,RHO] | curve.json");
    cmd->add_option("--lambda", cli.lambda, "dipolar strength (default 1)");
    cmd->add_option("--delta", cli.delta, "cutoff length in (0, 1/2)");
    cmd->add_option("--ell", cli.ell, "layer separation, number or 'inf' (default inf)");
    cmd->add_option("--n", cli.nodes, "boundary nodes per curve (0 = automatic)");
    cmd->add_option("--out", cli.out, "output JSON path (default stdout)");
  };

  CLI::App* energy_cmd = app.add_subcommand("energy", "evaluate one shape's energy");
  add_shape_opts(energy_cmd, false);
  energy_cmd->add_option("--evaluator", cli.evaluator,
                         "boundary | grid | gamma | gamma-modified | all");
  energy_cmd->add_option("--h", cli.h, "grid spacing for the grid evaluator (default delta/4)");

  CLI::App* ansatz_cmd = app.add_subcommand("ansatz", "closed-form disk/stripe energies");
  std::string kind = "disk";
  double r = 1.0, a = 1.0, m = 1.0;
  ansatz_cmd->add_option("--kind", kind, "disk | stripe");
  ansatz_cmd->add_option("--r", r, "disk radius");
  ansatz_cmd->add_option("--a", a, "stripe inverse width");
  ansatz_cmd->add_option("--m", m, "stripe mass");
  ansatz_cmd->add_option("--ell", cli.ell, "layer separation, number or 'inf'");
  ansatz_cmd->add_option("--out", cli.out, "output JSON path (default stdout)");

  CLI::App* phase_cmd = app.add_subcommand("phase-scan", "tabulate disk/stripe crossover");
  phase_cmd->add_option("--l", cli.l_grid, "grid: lo:hi:step or comma list")->required();
  phase_cmd->add_flag("--mass-threshold", cli.with_mass_threshold,
                      "estimate the stripe mass threshold per stripe row");
  phase_cmd->add_option("--out", cli.out, "CSV output path (default phase_scan.csv)");
  phase_cmd->add_option("--plot-l", cli.plot_l, "emit f_disk/f_stripe curves for this l");
  phase_cmd->add_option("--svg", cli.svg, "SVG path for --plot-l");

  CLI::App* optimize_cmd = app.add_subcommand("optimize", "area-preserving shape gradient flow");
  add_shape_opts(optimize_cmd, true);
  optimize_cmd->add_option("--max-steps", cli.max_steps, "accepted step limit");
  optimize_cmd->add_option("--tol", cli.tol, "stationarity tolerance on kappa + 2v - mu");
  optimize_cmd->add_option("--dt0", cli.dt0, "initial time step (default 0.2 ds^2)");
  optimize_cmd->add_option("--trace", cli.trace, "trace CSV path (default flow_trace.csv)");
  optimize_cmd->add_option("--final", cli.final_out, "write the final curve (exchange JSON)");
  optimize_cmd->add_option("--svg-frames", cli.frames_dir, "directory for SVG snapshots");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the property suite");
  verify_cmd->add_flag("--quick", cli.quick, "reduced sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  dipolar::numeric::set_worker_count(cli.workers);
  try {
    CLI::App* active = app.get_subcommands().front();
    apply_config_file(active, cli.config_path);
    if (active == energy_cmd) return run_energy(energy_cmd, cli);
    if (active == ansatz_cmd) return run_ansatz(ansatz_cmd, cli, kind, r, a, m);
    if (active == phase_cmd) return run_phase_scan(phase_cmd, cli);
    if (active == optimize_cmd) return run_optimize(optimize_cmd, cli);
    if (active == verify_cmd) return run_verify(verify_cmd, cli);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
