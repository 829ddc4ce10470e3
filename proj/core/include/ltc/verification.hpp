#ifndef LTC_VERIFICATION_HPP
#define LTC_VERIFICATION_HPP

#include <cstddef>
#include <string_view>
#include <vector>

#include "ltc/model.hpp"
#include "ltc/solver.hpp"

namespace ltc {

/// Range of the effective time constant of one neuron over all states.
/// tau_max is +inf for a leakless neuron without gap junctions.
struct TauInterval {
  std::size_t neuron = 0;
  double tau_min = 0.0;
  double tau_max = 0.0;
};

/// Forward-invariant potential range of one neuron (chemical-only networks).
struct StateBox {
  std::size_t neuron = 0;
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v, double tolerance = 0.0) const { return v >= lo - tolerance && v <= hi + tolerance; }
};

enum class ViolationKind { kTauLow, kTauHigh, kStateLow, kStateHigh };

std::string_view violation_kind_name(ViolationKind k) noexcept;

struct Violation {
  double time = 0.0;
  std::size_t neuron = 0;
  ViolationKind kind = ViolationKind::kTauLow;
  double value = 0.0;
  double bound = 0.0;
};

struct ViolationReport {
  std::vector<Violation> entries;
  double tolerance = 0.0;
  bool state_checked = true;  // false when the network has gap junctions

  bool empty() const noexcept { return entries.empty(); }
};

/// tau_min = c_m / (g_leak + sum incoming w + sum gap w_hat),
/// tau_max = c_m / (g_leak + sum gap w_hat).
TauInterval tau_bounds(std::size_t i, const LtcNetwork& net);
std::vector<TauInterval> tau_bounds(const LtcNetwork& net);

/// lo = min(v_leak, min incoming e_rev), hi = max(v_leak, max incoming e_rev).
/// Throws UnsupportedTopology when the network has gap junctions: the box
/// argument only covers chemical synapses.
std::vector<StateBox> state_bounds(const LtcNetwork& net);

/// Checks every recorded state: the effective time constant against its
/// interval with no tolerance, each potential against its box +- tolerance.
ViolationReport monitor_trajectory(const Trajectory& traj, const LtcNetwork& net, double tolerance);

/// max_t |sum c_m v(t) - sum c_m v(0)| for a leakless, gap-only network.
/// Throws UnsupportedTopology for anything else.
double conservation_check(const Trajectory& traj, const LtcNetwork& net);

}  // namespace ltc

#endif  // LTC_VERIFICATION_HPP
