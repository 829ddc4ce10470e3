#ifndef LTC_APPROXIMATION_HPP
#define LTC_APPROXIMATION_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>

#include <Eigen/Core>

#include "ltc/model.hpp"
#include "ltc/solver.hpp"
#include "ltc/vector_field.hpp"

namespace ltc {

/// One-hidden-layer sigmoid approximator x -> readout * sigma(projection x + bias).
struct FeedForwardApprox {
  Eigen::MatrixXd readout;     // n x N
  Eigen::MatrixXd projection;  // N x n
  Eigen::VectorXd bias;        // N
  double sup_error = 0.0;      // max |F(x) - approx(x)| on the validation grid

  std::size_t n() const noexcept { return static_cast<std::size_t>(readout.rows()); }
  std::size_t n_features() const noexcept { return static_cast<std::size_t>(readout.cols()); }

  Eigen::VectorXd hidden(const Eigen::VectorXd& x) const;  // projection x + bias
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
};

/// Logistic sigmoid, elementwise.
Eigen::VectorXd logistic(const Eigen::VectorXd& z);

/// Random features plus ridge regression. Projection rows are uniform in
/// [-s, s] with s = 2 gamma_scale / domain radius; each bias puts its
/// sigmoid centre inside the domain. The readout solves the ridge problem
/// on n_samples Halton points of the domain. Throws RankDeficient when
/// ridge == 0 and the feature matrix is singular.
FeedForwardApprox fit_feedforward(const VectorField& field, std::size_t n_features, std::size_t n_samples,
                                  double ridge, std::uint64_t seed, double gamma_scale = 1.0);

/// Regularised training objective |Phi B^T - Y|^2 + ridge |B|^2 on the same
/// sample set fit_feedforward uses. Exposed for optimality checks.
double ridge_loss(const VectorField& field, const FeedForwardApprox& fit, std::size_t n_samples, double ridge);

/// Empirical Lipschitz constant of the field on its domain: a lower bound
/// on the true constant. Grid pairs for dim <= 3, random local pairs above.
double estimate_lipschitz(const VectorField& field, std::size_t grid_points_per_axis = 33);

inline constexpr double kMaxTauCoupling = 0.01;  // tau * W_l bound

/// The (n + N)-dimensional system z = [x; y] with y = C x + mu.
///
///   z' = -(1/tau + W_l s_i(z)) (z - mu_1) + W sigma(z) + A
///
/// where W = [[0, readout], [0, E]], E = C readout, and s_i sums sigma over
/// the hidden coordinates with a nonzero entry in row i of W. Every nonzero
/// entry of W is one synapse of weight W_l; its reversal is the entry over W_l.
struct AugmentedSystem {
  std::size_t n = 0;
  std::size_t n_hidden = 0;
  Eigen::MatrixXd block_w;  // (n+N) x (n+N)
  Eigen::VectorXd bias_aug;  // mu_1 = [0; mu]
  Eigen::VectorXd resting_aug;  // A = [A1; A2]
  double tau_base = 1.0;
  double w_l = 0.0;

  std::size_t size() const noexcept { return n + n_hidden; }
  Eigen::MatrixXd coupling() const;  // E block

  /// Initial augmented state [x0; C x0 + mu].
  Eigen::VectorXd initial_state(const Eigen::VectorXd& x0, const FeedForwardApprox& fit) const;
  /// Right-hand side of the augmented ODE in [x; y] order.
  Eigen::VectorXd derivative(const Eigen::VectorXd& z) const;
  /// Largest number of nonzero hidden entries in any row of block_w.
  std::size_t max_row_fan_in() const;
};

/// Throws ConditionsViolated if tau_base * w_l > kMaxTauCoupling and
/// std::invalid_argument on shape mismatches or non-positive parameters.
AugmentedSystem assemble_augmented_system(const FeedForwardApprox& fit, double tau_base, double w_l,
                                          const Eigen::VectorXd& resting_a1, const Eigen::VectorXd& resting_a2);

struct ConditionCheck {
  bool ok = false;
  double margin = 0.0;  // bound - value; positive when satisfied
};

struct TauConditions {
  ConditionCheck a;              // max |x| / tau_sys_min < eps_l / 2 on D_eta
  ConditionCheck b_bias;         // |mu| / tau_sys_min < eta L / (2 (exp(L T) - 1))
  ConditionCheck b_rate;         // 1 / tau_sys_min < L / 2
  ConditionCheck tau_coupling;   // tau W_l <= kMaxTauCoupling
  double tau_sys_min = 0.0;
  double tau_sys_max = 0.0;

  bool all() const noexcept { return a.ok && b_bias.ok && b_rate.ok && tau_coupling.ok; }
};

/// Worst-case check over sigma in [0, 1]: tau_sys_min = 1/(1/tau + W_l k)
/// with k = max_row_fan_in(), tau_sys_max = tau.
TauConditions check_tau_conditions(const AugmentedSystem& system, const Box& domain, double epsilon_l, double eta,
                                   double l_gtilde, double horizon);

/// Lipschitz constant of z -> W sigma(z) + A doubled: |W|_2 * sup sigma' * 2.
double gtilde_lipschitz(const AugmentedSystem& system);

/// LTC network realizing the augmented system. Hidden neurons come first
/// (network index k is y_k), outputs last (network index N + i is x_i).
/// Throws RealizationError naming the entry when a parameter is not finite.
LtcNetwork realize_as_ltc(const AugmentedSystem& system);

/// Maps an augmented state [x; y] to network order [y; x] and back.
StateVector augmented_to_network(const AugmentedSystem& system, const Eigen::VectorXd& z);
Eigen::VectorXd network_to_augmented(const AugmentedSystem& system, const StateVector& u);

struct PipelineConfig {
  std::size_t n_features = 64;
  std::size_t n_samples = 2000;
  double ridge = 1e-8;
  std::uint64_t seed = 7;
  double gamma_scale = 1.0;
  // Unset values are chosen from condition (a); see choose_time_constants.
  std::optional<double> tau;
  std::optional<double> w_l;
  Eigen::VectorXd resting_a1;  // empty = zeros
  Eigen::VectorXd resting_a2;  // empty = zeros
  double dt = 1e-3;            // LTC integration step
  Method method = Method::kRk4;
  double reference_dt = 1e-4;  // must divide dt
  double epsilon = 0.1;
  double lambda_dist = std::numeric_limits<double>::infinity();  // distance from D to the boundary of S
  std::size_t lipschitz_grid = 33;
};

struct ApproximationReport {
  double sup_traj_error = 0.0;
  FeedForwardApprox fitted;
  AugmentedSystem system;
  LtcNetwork network;
  TauConditions conditions;
  double lipschitz_f = 0.0;
  double l_gtilde = 0.0;
  double epsilon = 0.0;
  double eta = 0.0;
  double epsilon_l = 0.0;
  Trajectory reference;  // x(t) on the common grid
  Trajectory ltc;        // full network trajectory on the common grid
};

inline constexpr double kAutoTauCoupling = 0.5 * kMaxTauCoupling;

/// Picks (tau, W_l) so that condition (a) holds with a factor-2 margin:
/// max|x| over D_eta times (1/tau + W_l fan_in) = eps_l / 4, with
/// tau W_l = kAutoTauCoupling. A given tau or W_l is kept and the other
/// one follows from the coupling ratio.
struct TimeConstants {
  double tau = 0.0;
  double w_l = 0.0;
};
TimeConstants choose_time_constants(const Box& domain, double epsilon_l, double eta, std::size_t fan_in,
                                    std::optional<double> tau, std::optional<double> w_l);

/// Reference trajectory by RK4 at reference_dt, fit, assemble, realize,
/// start from u(0) = x0 and h(0) = C x0 + mu, simulate, and measure the
/// sup-norm error over the output coordinates on the common time grid.
/// Throws DomainError when x0 lies outside the field's domain.
ApproximationReport approximate_trajectory(const VectorField& field, const Eigen::VectorXd& x0, double horizon,
                                           const PipelineConfig& config);

}  // namespace ltc

#endif  // LTC_APPROXIMATION_HPP
