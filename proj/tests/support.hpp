#ifndef LTC_TESTS_SUPPORT_HPP
#define LTC_TESTS_SUPPORT_HPP

#include <cmath>
#include <filesystem>
#include <string>

#include <random>

#include "ltc/approximation.hpp"
#include "ltc/model.hpp"
#include "ltc/solver.hpp"

namespace ltc::test {

inline LtcNetwork leak_only(double cm, double g, double v_leak) {
  return LtcNetwork({{cm, g, v_leak}}, {}, {}, 1);
}

// Neuron 0 drives neuron 1 through one synapse.
inline LtcNetwork chain(const ChemicalSynapse& s, NeuronParams pre, NeuronParams post) {
  ChemicalSynapse syn = s;
  syn.src = 0;
  syn.dst = 1;
  return LtcNetwork({pre, post}, {syn}, {}, 1);
}

// Leakless ring of three gap junctions.
inline LtcNetwork gap_ring(double w_hat) {
  std::vector<NeuronParams> n = {{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, {0.5, 0.0, 0.0}};
  std::vector<GapJunction> g = {{0, 1, w_hat}, {1, 2, w_hat}, {2, 0, w_hat}};
  return LtcNetwork(n, {}, g, 0);
}

// Post neuron driven by a frozen presynaptic neuron (g_leak = 0, no inputs),
// with its closed-form relaxation.
struct ConstantDrive {
  double v_pre = 0.6;
  double cm = 0.8, g = 0.6, v_leak = -0.2;
  double w = 1.4, gamma = 1.5, mu = -0.1, e_rev = 0.9;
  double v0 = 0.5;

  LtcNetwork network() const {
    return chain({0, 1, w, gamma, mu, e_rev}, {1.0, 0.0, v_pre}, {cm, g, v_leak});
  }
  double sigma() const { return 1.0 / (1.0 + std::exp(-gamma * (v_pre + mu))); }
  double v_inf() const { return (g * v_leak + w * sigma() * e_rev) / (g + w * sigma()); }
  double tau() const { return cm / (g + w * sigma()); }
  double exact(double t) const { return v_inf() + (v0 - v_inf()) * std::exp(-t / tau()); }
};

// Random fit-shaped system, no regression involved.
inline AugmentedSystem random_augmented_system(std::mt19937_64& rng, std::size_t n, std::size_t hidden,
                                               FeedForwardApprox* fit_out = nullptr) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto fill = [&](Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  };
  FeedForwardApprox fit;
  fit.readout.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(hidden));
  fit.projection.resize(static_cast<Eigen::Index>(hidden), static_cast<Eigen::Index>(n));
  fill(fit.readout);
  fill(fit.projection);
  fit.bias = Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(hidden), [&] { return u(rng); });
  Eigen::VectorXd a1 = Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(n), [&] { return 0.1 * u(rng); });
  Eigen::VectorXd a2 = Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(hidden), [&] { return 0.1 * u(rng); });
  const double tau = 2.0 + 8.0 * (u(rng) + 1.0);
  const double w_l = 1e-3 / tau * (1.5 + u(rng));
  if (fit_out) *fit_out = fit;
  return assemble_augmented_system(fit, tau, w_l, a1, a2);
}

// Sup-norm gap between the realized network and the augmented ODE.
inline double dual_path_error(const AugmentedSystem& sys, const Eigen::VectorXd& z0, double dt, double t_end) {
  const SolverConfig cfg{Method::kRk4, dt, t_end, 1};
  const Trajectory direct = integrate([&sys](const Eigen::VectorXd& z) { return sys.derivative(z); }, z0, cfg);
  const Trajectory realized = simulate(realize_as_ltc(sys), augmented_to_network(sys, z0), cfg);
  double worst = 0.0;
  for (std::size_t k = 0; k < direct.samples(); ++k) {
    const Eigen::VectorXd z = network_to_augmented(sys, realized.state(k));
    worst = std::max(worst, (z - direct.state(k)).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ltc_test_" + name);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace ltc::test

#endif  // LTC_TESTS_SUPPORT_HPP
