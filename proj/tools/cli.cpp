#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "ltc/errors.hpp"
#include "ltc/field_expr.hpp"
#include "ltc/network_io.hpp"
#include "ltc/trajectory_io.hpp"
#include "ltc/verification.hpp"

namespace ltc::cli {
namespace {

// Raised for bad flag values that CLI11 itself cannot see.
struct UsageError : Error {
  using Error::Error;
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    double v = 0.0;
    const char* first = text.data() + start;
    const char* last = text.data() + end;
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (start == end || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      throw ParseError(std::string(flag) + ": malformed number at column " + std::to_string(start + 1), 1,
                       start + 1);
    }
    out.push_back(v);
    if (end == text.size()) return out;
    start = end + 1;
  }
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << contents;
  if (!f) throw IoError("error while writing '" + path + "'");
}

std::string pass_fail(const ConditionCheck& c) {
  return std::string(c.ok ? "PASS" : "FAIL") + " margin " + format_double(c.margin);
}

struct SimulateArgs {
  std::string net;
  std::string init;
  double dt = 0.0;
  double t_end = 0.0;
  std::string method = "rk4";
  std::size_t record_every = 1;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const LtcNetwork net = load_network(a.net);
  const std::vector<double> init = parse_list(a.init, "--init");
  if (init.size() != net.size()) {
    throw UsageError("--init has " + std::to_string(init.size()) + " values, network has " +
                     std::to_string(net.size()) + " neurons");
  }
  SolverConfig cfg{parse_method(a.method), a.dt, a.t_end, a.record_every};
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Trajectory traj = simulate(net, to_vector(init), cfg);
  save_trajectory(traj, a.out);
  out << "wrote " << traj.samples() << " samples of " << traj.dimension() << " neurons to " << a.out << '\n';
  return kOk;
}

int cmd_bounds(const std::string& net_path, std::ostream& out) {
  const LtcNetwork net = load_network(net_path);
  const auto taus = tau_bounds(net);
  std::vector<StateBox> boxes;
  const bool have_boxes = !net.has_gap_junctions();
  if (have_boxes) boxes = state_bounds(net);

  out << std::left << std::setw(8) << "neuron" << std::setw(8) << "role" << std::setw(26) << "tau_min"
      << std::setw(26) << "tau_max" << std::setw(26) << "v_lo" << "v_hi" << '\n';
  for (std::size_t i = 0; i < net.size(); ++i) {
    out << std::setw(8) << i << std::setw(8) << (net.is_output(i) ? "output" : "hidden") << std::setw(26)
        << format_double(taus[i].tau_min) << std::setw(26) << format_double(taus[i].tau_max);
    if (have_boxes) {
      out << std::setw(26) << format_double(boxes[i].lo) << format_double(boxes[i].hi);
    } else {
      out << std::setw(26) << "n/a" << "n/a";
    }
    out << '\n';
  }
  if (!have_boxes) out << "# state boxes unavailable: network has gap junctions\n";
  for (const auto& t : taus) {
    out << "TAU " << t.neuron << ' ' << format_double(t.tau_min) << ' ' << format_double(t.tau_max) << '\n';
  }
  for (const auto& b : boxes) {
    out << "BOX " << b.neuron << ' ' << format_double(b.lo) << ' ' << format_double(b.hi) << '\n';
  }
  return kOk;
}

int cmd_verify(const std::string& net_path, const std::string& traj_path, double tolerance, std::ostream& out) {
  const LtcNetwork net = load_network(net_path);
  const Trajectory traj = load_trajectory(traj_path);
  if (traj.dimension() != net.size()) {
    throw UsageError("trajectory has " + std::to_string(traj.dimension()) + " columns, network has " +
                     std::to_string(net.size()) + " neurons");
  }
  const ViolationReport report = monitor_trajectory(traj, net, tolerance);
  out << "samples " << traj.samples() << '\n';
  out << "tolerance " << format_double(report.tolerance) << '\n';
  out << "state_checked " << (report.state_checked ? "yes" : "no (gap junctions present)") << '\n';
  out << "violations " << report.entries.size() << '\n';
  for (const auto& v : report.entries) {
    out << "VIOLATION " << format_double(v.time) << ' ' << v.neuron << ' ' << violation_kind_name(v.kind) << ' '
        << format_double(v.value) << ' ' << format_double(v.bound) << '\n';
  }
  return report.empty() ? kOk : kViolations;
}

struct ApproximateArgs {
  std::string field;
  std::string domain;
  std::string x0;
  double horizon = 0.0;
  PipelineConfig config;
  std::string out_net;
  std::string out_traj;
  std::string report;
};

int cmd_approximate(const ApproximateArgs& a, std::ostream& out) {
  const VectorField field = parse_field(split_field_list(a.field), parse_box(a.domain));
  const std::vector<double> x0 = parse_list(a.x0, "--x0");
  if (x0.size() != field.dim) {
    throw UsageError("--x0 has " + std::to_string(x0.size()) + " values, field has dimension " +
                     std::to_string(field.dim));
  }
  const Eigen::VectorXd x0v = to_vector(x0);
  const ApproximationReport report = approximate_trajectory(field, x0v, a.horizon, a.config);

  const std::string text = format_report(report, a.field, a.domain, x0v, a.horizon, a.config);
  if (!a.out_net.empty()) save_network(report.network, a.out_net);
  if (!a.out_traj.empty()) write_file(a.out_traj, format_paired_csv(report));
  if (!a.report.empty()) write_file(a.report, text);
  out << text;
  return kOk;
}

}  // namespace

std::string format_report(const ApproximationReport& r, const std::string& field_text, const std::string& domain_text,
                          const Eigen::VectorXd& x0, double horizon, const PipelineConfig& config) {
  std::ostringstream s;
  s << "# LTC approximation report\n";
  s << "field " << field_text << '\n';
  s << "domain " << domain_text << '\n';
  s << "x0";
  for (Eigen::Index i = 0; i < x0.size(); ++i) s << (i == 0 ? " " : ",") << format_double(x0[i]);
  s << '\n';
  s << "horizon " << format_double(horizon) << '\n';
  s << "features " << config.n_features << '\n';
  s << "samples " << config.n_samples << '\n';
  s << "ridge " << format_double(config.ridge) << '\n';
  s << "seed " << config.seed << '\n';
  s << "tau " << format_double(r.system.tau_base) << (config.tau ? "" : " (chosen)") << '\n';
  s << "w_l " << format_double(r.system.w_l) << (config.w_l ? "" : " (chosen)") << '\n';
  s << "dt " << format_double(config.dt) << '\n';
  s << "method " << method_name(config.method) << '\n';
  s << "network_neurons " << r.network.size() << '\n';
  s << "network_synapses " << r.network.chemical_synapses().size() << '\n';
  s << "sup_traj_error " << format_double(r.sup_traj_error) << '\n';
  s << "fit_sup_error " << format_double(r.fitted.sup_error) << '\n';
  s << "lipschitz_f_estimate " << format_double(r.lipschitz_f) << '\n';
  s << "epsilon " << format_double(r.epsilon) << '\n';
  s << "eta " << format_double(r.eta) << '\n';
  s << "epsilon_l " << format_double(r.epsilon_l) << '\n';
  s << "l_gtilde " << format_double(r.l_gtilde) << '\n';
  s << "tau_sys_min " << format_double(r.conditions.tau_sys_min) << '\n';
  s << "tau_sys_max " << format_double(r.conditions.tau_sys_max) << '\n';
  s << "condition_a " << pass_fail(r.conditions.a) << '\n';
  s << "condition_b_bias " << pass_fail(r.conditions.b_bias) << '\n';
  s << "condition_b_rate " << pass_fail(r.conditions.b_rate) << '\n';
  s << "condition_tau_wl " << pass_fail(r.conditions.tau_coupling) << '\n';
  return s.str();
}

std::string format_paired_csv(const ApproximationReport& r) {
  const std::size_t n = r.system.n;
  const auto offset = static_cast<Eigen::Index>(r.system.n_hidden);
  std::ostringstream s;
  s << 't';
  for (std::size_t i = 1; i <= n; ++i) s << ",ref_x" << i;
  for (std::size_t i = 1; i <= n; ++i) s << ",ltc_x" << i;
  s << '\n';
  for (std::size_t k = 0; k < r.reference.samples(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    s << format_double(r.reference.times[k]);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) s << ',' << format_double(r.reference.states(row, i));
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) s << ',' << format_double(r.ltc.states(row, offset + i));
    s << '\n';
  }
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Liquid time-constant network simulation and verification toolkit", "ltc"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate a network and write its trajectory CSV");
  simulate_cmd->add_option("--net", sim.net, "Network document (JSON)")->required();
  simulate_cmd->add_option("--init", sim.init, "Initial potentials, comma-separated")->required();
  simulate_cmd->add_option("--dt", sim.dt, "Step size")->required();
  simulate_cmd->add_option("--t-end", sim.t_end, "Horizon")->required();
  simulate_cmd->add_option("--method", sim.method, "euler | rk4 | semi-implicit")->capture_default_str();
  simulate_cmd->add_option("--record-every", sim.record_every, "Record every K steps")->capture_default_str();
  simulate_cmd->add_option("--out", sim.out, "Output trajectory CSV")->required();

  std::string bounds_net;
  auto* bounds_cmd = app.add_subcommand("bounds", "Print time-constant intervals and state boxes");
  bounds_cmd->add_option("--net", bounds_net, "Network document (JSON)")->required();

  std::string verify_net;
  std::string verify_traj;
  double tolerance = 1e-6;
  auto* verify_cmd = app.add_subcommand("verify", "Check a trajectory against the network's bounds");
  verify_cmd->add_option("--net", verify_net, "Network document (JSON)")->required();
  verify_cmd->add_option("--traj", verify_traj, "Trajectory CSV")->required();
  verify_cmd->add_option("--tolerance", tolerance, "State-box tolerance")->capture_default_str();

  ApproximateArgs ap;
  std::string ap_method = "rk4";
  auto* approx_cmd = app.add_subcommand("approximate", "Build an LTC network that tracks a vector field");
  approx_cmd->add_option("--field", ap.field, "Coordinate expressions separated by ';', e.g. \"x2;-x1\"")->required();
  approx_cmd->add_option("--domain", ap.domain, "Box lo:hi per axis, comma-separated")->required();
  approx_cmd->add_option("--x0", ap.x0, "Initial point, comma-separated")->required();
  approx_cmd->add_option("--horizon", ap.horizon, "Trajectory length T")->required();
  approx_cmd->add_option("--features", ap.config.n_features, "Hidden units N")->capture_default_str();
  approx_cmd->add_option("--seed", ap.config.seed, "Random-feature seed")->capture_default_str();
  approx_cmd->add_option("--tau", ap.config.tau, "Base time constant (default: chosen from condition (a))");
  approx_cmd->add_option("--wl", ap.config.w_l, "Synaptic coupling W_l (default: chosen with tau)");
  approx_cmd->add_option("--samples", ap.config.n_samples, "Training points")->capture_default_str();
  approx_cmd->add_option("--ridge", ap.config.ridge, "Ridge parameter")->capture_default_str();
  approx_cmd->add_option("--dt", ap.config.dt, "Network integration step")->capture_default_str();
  approx_cmd->add_option("--method", ap_method, "euler | rk4 | semi-implicit")->capture_default_str();
  approx_cmd->add_option("--epsilon", ap.config.epsilon, "Target accuracy used for eta")->capture_default_str();
  approx_cmd->add_option("--out-net", ap.out_net, "Write the realized network (JSON)");
  approx_cmd->add_option("--out-traj", ap.out_traj, "Write paired reference/network trajectories (CSV)");
  approx_cmd->add_option("--report", ap.report, "Write the report to this file as well");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ERROR usage: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*simulate_cmd) return cmd_simulate(sim, out);
    if (*bounds_cmd) return cmd_bounds(bounds_net, out);
    if (*verify_cmd) return cmd_verify(verify_net, verify_traj, tolerance, out);
    if (*approx_cmd) {
      ap.config.method = parse_method(ap_method);
      return cmd_approximate(ap, out);
    }
  } catch (const UsageError& e) {
    err << "ERROR usage: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "ERROR io: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "ERROR parse: " << e.what() << '\n';
    return kParse;
  } catch (const InvalidModel& e) {
    err << "ERROR parse: " << e.what() << '\n';
    return kParse;
  } catch (const std::invalid_argument& e) {
    err << "ERROR usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "ERROR numeric: " << e.what() << '\n';
    return kNumeric;
  }
  err << "ERROR usage: no subcommand\n";
  return kUsage;
}

}  // namespace ltc::cli
