#ifndef LTC_MODEL_HPP
#define LTC_MODEL_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace ltc {

// Membrane potentials of every neuron, hidden neurons first, outputs last.
using StateVector = Eigen::VectorXd;

// Leaky membrane integrator: c_m dv/dt = g_leak (v_leak - v) + currents.
struct NeuronParams {
  double c_m = 1.0;
  double g_leak = 1.0;
  double v_leak = 0.0;

  bool operator==(const NeuronParams&) const = default;
};

// Sigmoid-gated conductance from src onto dst with reversal potential e_rev.
struct ChemicalSynapse {
  std::size_t src = 0;
  std::size_t dst = 0;
  double w = 0.0;
  double gamma = 1.0;
  double mu = 0.0;
  double e_rev = 0.0;

  bool operator==(const ChemicalSynapse&) const = default;
};

// Ohmic, bidirectional coupling between a and b.
struct GapJunction {
  std::size_t a = 0;
  std::size_t b = 0;
  double w_hat = 0.0;

  bool operator==(const GapJunction&) const = default;
};

/// An immutable liquid time-constant network.
///
/// Neurons [0, n_hidden) are interneurons, [n_hidden, size) are outputs.
/// Construction validates parameters and the feed-forward output rule:
/// no chemical synapse may leave an output neuron and no gap junction may
/// touch one, so information only flows hidden -> output.
class LtcNetwork {
 public:
  struct GapLink {
    std::size_t junction;  // index into gaps()
    std::size_t other;     // the neuron on the far side
  };

  LtcNetwork() = default;

  /// Throws InvalidModel naming the offending entry.
  LtcNetwork(std::vector<NeuronParams> neurons, std::vector<ChemicalSynapse> chem,
             std::vector<GapJunction> gaps, std::size_t n_output);

  std::size_t size() const noexcept { return neurons_.size(); }
  std::size_t n_hidden() const noexcept { return neurons_.size() - n_output_; }
  std::size_t n_output() const noexcept { return n_output_; }
  bool is_output(std::size_t i) const noexcept { return i >= n_hidden(); }

  const std::vector<NeuronParams>& neurons() const noexcept { return neurons_; }
  const std::vector<ChemicalSynapse>& chemical_synapses() const noexcept { return chem_; }
  const std::vector<GapJunction>& gap_junctions() const noexcept { return gaps_; }

  const NeuronParams& neuron(std::size_t i) const;

  // Indices into chemical_synapses() with dst == i, in declaration order.
  const std::vector<std::size_t>& incoming(std::size_t i) const;
  // Gap junctions touching i, in declaration order.
  const std::vector<GapLink>& gap_links(std::size_t i) const;

  bool has_gap_junctions() const noexcept { return !gaps_.empty(); }

  bool operator==(const LtcNetwork& other) const;

 private:
  std::vector<NeuronParams> neurons_;
  std::vector<ChemicalSynapse> chem_;
  std::vector<GapJunction> gaps_;
  std::size_t n_output_ = 0;
  std::vector<std::vector<std::size_t>> incoming_;
  std::vector<std::vector<GapLink>> gap_links_;
};

/// Logistic gate 1 / (1 + exp(-gamma (v_pre + mu))). Note the +mu: the
/// offset shifts the presynaptic potential, not the threshold.
/// The result is kept inside the open interval (0, 1) even where the exact
/// value rounds to 0 or 1.
double sigmoid_activation(double v_pre, double gamma, double mu) noexcept;

/// w * sigma(v_pre) * (e_rev - v_post)
double chemical_current(const ChemicalSynapse& syn, double v_pre, double v_post) noexcept;

/// w_hat * (v_other - v_self)
double gap_current(const GapJunction& gj, double v_self, double v_other) noexcept;

/// dv_i/dt: leak, incoming chemical currents and gap currents over c_m.
double neuron_derivative(std::size_t i, const StateVector& state, const LtcNetwork& net);

StateVector network_derivative(const StateVector& state, const LtcNetwork& net);

/// State-dependent time constant c_m / (g_leak + sum w sigma + sum w_hat).
double effective_time_constant(std::size_t i, const StateVector& state, const LtcNetwork& net);

// Throws DimensionMismatch unless state.size() == net.size().
void require_state_size(const StateVector& state, const LtcNetwork& net);

}  // namespace ltc

#endif  // LTC_MODEL_HPP
