#include "ltc/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace ltc {
namespace {

void require_finite(const StateVector& s, const char* stepper) {
  if (!s.allFinite()) throw IntegrationDiverged(std::string(stepper) + ": state became non-finite");
}

void require_positive_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be finite and > 0");
}

// Step schedule: `full` steps of dt, then optionally one step of `last`.
struct Schedule {
  std::size_t full = 0;
  double last = 0.0;
  std::size_t total() const { return full + (last > 0.0 ? 1 : 0); }
};

Schedule make_schedule(double dt, double t_end) {
  const double ratio = t_end / dt;
  const double nearest = std::round(ratio);
  Schedule s;
  // Treat t_end as a multiple of dt when it is within rounding noise.
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    s.full = static_cast<std::size_t>(nearest);
    return s;
  }
  s.full = static_cast<std::size_t>(std::floor(ratio));
  s.last = t_end - static_cast<double>(s.full) * dt;
  return s;
}

template <typename Step>
Trajectory run(const Eigen::VectorXd& x0, const SolverConfig& config, Step&& step) {
  config.validate();
  const Schedule sched = make_schedule(config.dt, config.t_end);
  const std::size_t n_steps = sched.total();
  const std::size_t stride = config.record_every;
  std::size_t n_samples = 1 + n_steps / stride;
  const bool tail = n_steps % stride != 0;
  if (tail) ++n_samples;

  Trajectory traj;
  traj.times.reserve(n_samples);
  traj.states.resize(static_cast<Eigen::Index>(n_samples), x0.size());
  traj.times.push_back(0.0);
  traj.states.row(0) = x0.transpose();

  Eigen::VectorXd x = x0;
  Eigen::Index row = 1;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const bool shortened = k > sched.full;
    const double h = shortened ? sched.last : config.dt;
    try {
      x = step(x, h);
    } catch (const IntegrationDiverged& e) {
      Trajectory partial;
      partial.times = traj.times;
      partial.states = traj.states.topRows(row);
      throw IntegrationDiverged(std::string(e.what()) + " at step " + std::to_string(k), std::move(partial));
    }
    if (k % stride == 0 || k == n_steps) {
      traj.times.push_back(k == n_steps ? config.t_end : static_cast<double>(k) * config.dt);
      traj.states.row(row++) = x.transpose();
    }
  }
  return traj;
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::kEuler: return "euler";
    case Method::kRk4: return "rk4";
    case Method::kSemiImplicit: return "semi-implicit";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "euler") return Method::kEuler;
  if (name == "rk4") return Method::kRk4;
  if (name == "semi-implicit") return Method::kSemiImplicit;
  throw ParseError("unknown integration method '" + std::string(name) + "' (expected euler|rk4|semi-implicit)");
}

void SolverConfig::validate() const {
  require_positive_dt(dt);
  if (!std::isfinite(t_end) || t_end < dt) throw std::invalid_argument("t_end must be finite and >= dt");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
}

StateVector step_euler(const StateVector& state, const LtcNetwork& net, double dt) {
  require_positive_dt(dt);
  StateVector next = state + dt * network_derivative(state, net);
  require_finite(next, "euler");
  return next;
}

StateVector step_rk4(const StateVector& state, const LtcNetwork& net, double dt) {
  require_positive_dt(dt);
  const StateVector k1 = network_derivative(state, net);
  const StateVector k2 = network_derivative(state + 0.5 * dt * k1, net);
  const StateVector k3 = network_derivative(state + 0.5 * dt * k2, net);
  const StateVector k4 = network_derivative(state + dt * k3, net);
  StateVector next = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  require_finite(next, "rk4");
  return next;
}

StateVector step_semi_implicit(const StateVector& state, const LtcNetwork& net, double dt) {
  require_positive_dt(dt);
  require_state_size(state, net);
  const auto& chem = net.chemical_synapses();
  const auto& gaps = net.gap_junctions();

  StateVector next(state.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    const NeuronParams& p = net.neuron(i);
    double drive = p.g_leak * p.v_leak;  // A
    double conductance = p.g_leak;       // B
    for (std::size_t k : net.incoming(i)) {
      const auto& s = chem[k];
      const double g = s.w * sigmoid_activation(state[static_cast<Eigen::Index>(s.src)], s.gamma, s.mu);
      drive += g * s.e_rev;
      conductance += g;
    }
    for (const auto& link : net.gap_links(i)) {
      const double w = gaps[link.junction].w_hat;
      drive += w * state[static_cast<Eigen::Index>(link.other)];
      conductance += w;
    }
    const double scale = dt / p.c_m;
    const auto ii = static_cast<Eigen::Index>(i);
    next[ii] = (state[ii] + scale * drive) / (1.0 + scale * conductance);
  }
  require_finite(next, "semi-implicit");
  return next;
}

Trajectory simulate(const LtcNetwork& net, const StateVector& u0, const SolverConfig& config) {
  require_state_size(u0, net);
  if (!u0.allFinite()) throw std::invalid_argument("initial state has non-finite entries");
  switch (config.method) {
    case Method::kEuler:
      return run(u0, config, [&](const StateVector& x, double h) { return step_euler(x, net, h); });
    case Method::kRk4:
      return run(u0, config, [&](const StateVector& x, double h) { return step_rk4(x, net, h); });
    case Method::kSemiImplicit:
      return run(u0, config, [&](const StateVector& x, double h) { return step_semi_implicit(x, net, h); });
  }
  throw std::invalid_argument("unknown method");
}

Eigen::VectorXd euler_step(const RhsFunction& rhs, const Eigen::VectorXd& x, double dt) {
  Eigen::VectorXd next = x + dt * rhs(x);
  require_finite(next, "euler");
  return next;
}

Eigen::VectorXd rk4_step(const RhsFunction& rhs, const Eigen::VectorXd& x, double dt) {
  const Eigen::VectorXd k1 = rhs(x);
  const Eigen::VectorXd k2 = rhs(x + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = rhs(x + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = rhs(x + dt * k3);
  Eigen::VectorXd next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  require_finite(next, "rk4");
  return next;
}

Trajectory integrate(const RhsFunction& rhs, const Eigen::VectorXd& x0, const SolverConfig& config) {
  switch (config.method) {
    case Method::kEuler:
      return run(x0, config, [&](const Eigen::VectorXd& x, double h) { return euler_step(rhs, x, h); });
    case Method::kRk4:
      return run(x0, config, [&](const Eigen::VectorXd& x, double h) { return rk4_step(rhs, x, h); });
    case Method::kSemiImplicit:
      throw std::invalid_argument("semi-implicit stepping needs an LTC network, not a generic field");
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace ltc
