#include "ltc/verification.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ltc/errors.hpp"

namespace ltc {

std::string_view violation_kind_name(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::kTauLow: return "TAU_LOW";
    case ViolationKind::kTauHigh: return "TAU_HIGH";
    case ViolationKind::kStateLow: return "STATE_LOW";
    case ViolationKind::kStateHigh: return "STATE_HIGH";
  }
  return "UNKNOWN";
}

TauInterval tau_bounds(std::size_t i, const LtcNetwork& net) {
  const NeuronParams& p = net.neuron(i);
  const auto& chem = net.chemical_synapses();
  const auto& gaps = net.gap_junctions();

  // Summation order matches effective_time_constant so that membership is
  // exact under rounding, not only algebraically.
  double all = p.g_leak;
  for (std::size_t k : net.incoming(i)) all += chem[k].w;
  double gap_only = p.g_leak;
  for (const auto& link : net.gap_links(i)) {
    all += gaps[link.junction].w_hat;
    gap_only += gaps[link.junction].w_hat;
  }
  return {i, p.c_m / all, p.c_m / gap_only};
}

std::vector<TauInterval> tau_bounds(const LtcNetwork& net) {
  std::vector<TauInterval> out;
  out.reserve(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) out.push_back(tau_bounds(i, net));
  return out;
}

std::vector<StateBox> state_bounds(const LtcNetwork& net) {
  if (net.has_gap_junctions()) {
    throw UnsupportedTopology("state bounds are only defined for networks without gap junctions");
  }
  const auto& chem = net.chemical_synapses();
  std::vector<StateBox> out;
  out.reserve(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    const double v_leak = net.neuron(i).v_leak;
    StateBox box{i, v_leak, v_leak};
    for (std::size_t k : net.incoming(i)) {
      box.lo = std::min(box.lo, chem[k].e_rev);
      box.hi = std::max(box.hi, chem[k].e_rev);
    }
    out.push_back(box);
  }
  return out;
}

ViolationReport monitor_trajectory(const Trajectory& traj, const LtcNetwork& net, double tolerance) {
  if (traj.dimension() != net.size() || static_cast<std::size_t>(traj.states.rows()) != traj.samples()) {
    throw DimensionMismatch("trajectory has " + std::to_string(traj.dimension()) + " columns, network has " +
                            std::to_string(net.size()) + " neurons");
  }
  ViolationReport report;
  report.tolerance = tolerance;
  report.state_checked = !net.has_gap_junctions();

  const std::vector<TauInterval> taus = tau_bounds(net);
  std::vector<StateBox> boxes;
  if (report.state_checked) boxes = state_bounds(net);

  for (std::size_t k = 0; k < traj.samples(); ++k) {
    const StateVector s = traj.state(k);
    const double t = traj.times[k];
    for (std::size_t i = 0; i < net.size(); ++i) {
      const double tau = effective_time_constant(i, s, net);
      if (tau < taus[i].tau_min) report.entries.push_back({t, i, ViolationKind::kTauLow, tau, taus[i].tau_min});
      if (tau > taus[i].tau_max) report.entries.push_back({t, i, ViolationKind::kTauHigh, tau, taus[i].tau_max});
      if (!report.state_checked) continue;
      const double v = s[static_cast<Eigen::Index>(i)];
      if (v < boxes[i].lo - tolerance) report.entries.push_back({t, i, ViolationKind::kStateLow, v, boxes[i].lo});
      if (v > boxes[i].hi + tolerance) report.entries.push_back({t, i, ViolationKind::kStateHigh, v, boxes[i].hi});
    }
  }
  return report;
}

double conservation_check(const Trajectory& traj, const LtcNetwork& net) {
  if (!net.chemical_synapses().empty()) {
    throw UnsupportedTopology("conservation check needs a gap-only network (found chemical synapses)");
  }
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (net.neuron(i).g_leak != 0.0) {
      throw UnsupportedTopology("conservation check needs a leakless network (neuron " + std::to_string(i) +
                                " has g_leak != 0)");
    }
  }
  if (traj.dimension() != net.size()) {
    throw DimensionMismatch("trajectory and network dimensions differ");
  }
  if (traj.samples() == 0) return 0.0;

  Eigen::VectorXd cm(static_cast<Eigen::Index>(net.size()));
  for (std::size_t i = 0; i < net.size(); ++i) cm[static_cast<Eigen::Index>(i)] = net.neuron(i).c_m;
  const double charge0 = traj.states.row(0).dot(cm);
  double drift = 0.0;
  for (Eigen::Index k = 0; k < traj.states.rows(); ++k) {
    drift = std::max(drift, std::abs(traj.states.row(k).dot(cm) - charge0));
  }
  return drift;
}

}  // namespace ltc
