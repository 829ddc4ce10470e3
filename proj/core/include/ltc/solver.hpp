#ifndef LTC_SOLVER_HPP
#define LTC_SOLVER_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ltc/errors.hpp"
#include "ltc/model.hpp"

namespace ltc {

enum class Method { kEuler, kRk4, kSemiImplicit };

std::string_view method_name(Method m) noexcept;
/// Accepts "euler", "rk4", "semi-implicit". Throws ParseError otherwise.
Method parse_method(std::string_view name);

struct SolverConfig {
  Method method = Method::kRk4;
  double dt = 1e-3;
  double t_end = 1.0;
  std::size_t record_every = 1;

  /// Throws std::invalid_argument unless dt > 0, t_end >= dt, record_every >= 1.
  void validate() const;
};

/// Recorded samples of a simulation. Row k of `states` is the state at
/// times[k]; times start at 0 and are strictly increasing.
struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd states;  // rows = samples, cols = neurons

  std::size_t samples() const noexcept { return times.size(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(states.cols()); }
  StateVector state(std::size_t k) const { return states.row(static_cast<Eigen::Index>(k)).transpose(); }

  bool operator==(const Trajectory& other) const {
    return times == other.times && states.rows() == other.states.rows() &&
           states.cols() == other.states.cols() && states == other.states;
  }
};

/// A state became non-finite. `partial()` holds every sample recorded
/// before the failing step.
class IntegrationDiverged : public NumericError {
 public:
  IntegrationDiverged(const std::string& what, Trajectory partial = {})
      : NumericError(what), partial_(std::move(partial)) {}

  const Trajectory& partial() const noexcept { return partial_; }

 private:
  Trajectory partial_;
};

StateVector step_euler(const StateVector& state, const LtcNetwork& net, double dt);
StateVector step_rk4(const StateVector& state, const LtcNetwork& net, double dt);

/// Freezes presynaptic potentials over the step so each neuron obeys
/// c dv/dt = A - B v, and takes the implicit update
/// v <- (v + dt A / c) / (1 + dt B / c). The result is a convex combination
/// of v and A/B, so for chemical-only networks the state box is preserved
/// for any dt.
StateVector step_semi_implicit(const StateVector& state, const LtcNetwork& net, double dt);

/// Fixed-step integration from t = 0 to config.t_end. The first sample is
/// u0 exactly; if t_end is not a multiple of dt a shortened last step lands
/// on t_end, and the final state is always recorded.
Trajectory simulate(const LtcNetwork& net, const StateVector& u0, const SolverConfig& config);

// Generic fixed-step integration of an arbitrary autonomous vector field,
// used for reference trajectories and direct augmented-system integration.
using RhsFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

Eigen::VectorXd rk4_step(const RhsFunction& rhs, const Eigen::VectorXd& x, double dt);
Eigen::VectorXd euler_step(const RhsFunction& rhs, const Eigen::VectorXd& x, double dt);

Trajectory integrate(const RhsFunction& rhs, const Eigen::VectorXd& x0, const SolverConfig& config);

}  // namespace ltc

#endif  // LTC_SOLVER_HPP
