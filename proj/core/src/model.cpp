#include "ltc/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ltc/errors.hpp"

namespace ltc {
namespace {

bool finite(double x) { return std::isfinite(x); }

std::string at(const char* list, std::size_t k, const char* field) {
  return std::string(list) + "[" + std::to_string(k) + "]." + field;
}

void check_index(std::size_t i, std::size_t size) {
  if (i >= size) {
    throw std::out_of_range("neuron index " + std::to_string(i) + " out of range (size " +
                            std::to_string(size) + ")");
  }
}

}  // namespace

LtcNetwork::LtcNetwork(std::vector<NeuronParams> neurons, std::vector<ChemicalSynapse> chem,
                       std::vector<GapJunction> gaps, std::size_t n_output)
    : neurons_(std::move(neurons)),
      chem_(std::move(chem)),
      gaps_(std::move(gaps)),
      n_output_(n_output) {
  const std::size_t n = neurons_.size();
  if (n_output_ > n) {
    throw InvalidModel("n_output: " + std::to_string(n_output_) + " exceeds neuron count " +
                       std::to_string(n));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = neurons_[k];
    if (!finite(p.c_m) || p.c_m <= 0.0) throw InvalidModel(at("neurons", k, "cm") + ": must be finite and > 0");
    if (!finite(p.g_leak) || p.g_leak < 0.0) {
      throw InvalidModel(at("neurons", k, "g_leak") + ": must be finite and >= 0");
    }
    if (!finite(p.v_leak)) throw InvalidModel(at("neurons", k, "v_leak") + ": must be finite");
  }

  const std::size_t hidden = n - n_output_;
  incoming_.assign(n, {});
  gap_links_.assign(n, {});

  for (std::size_t k = 0; k < chem_.size(); ++k) {
    const auto& s = chem_[k];
    if (s.src >= n) throw InvalidModel(at("chemical_synapses", k, "src") + ": index out of range");
    if (s.dst >= n) throw InvalidModel(at("chemical_synapses", k, "dst") + ": index out of range");
    if (!finite(s.w) || s.w < 0.0) throw InvalidModel(at("chemical_synapses", k, "w") + ": must be finite and >= 0");
    if (!finite(s.gamma) || s.gamma <= 0.0) {
      throw InvalidModel(at("chemical_synapses", k, "gamma") + ": must be finite and > 0");
    }
    if (!finite(s.mu)) throw InvalidModel(at("chemical_synapses", k, "mu") + ": must be finite");
    if (!finite(s.e_rev)) throw InvalidModel(at("chemical_synapses", k, "e_rev") + ": must be finite");
    if (s.src >= hidden) {
      throw InvalidModel("chemical_synapses[" + std::to_string(k) + "]: source " + std::to_string(s.src) +
                         " is an output neuron; outputs may not project to any neuron");
    }
    incoming_[s.dst].push_back(k);
  }

  for (std::size_t k = 0; k < gaps_.size(); ++k) {
    const auto& g = gaps_[k];
    if (g.a >= n) throw InvalidModel(at("gap_junctions", k, "a") + ": index out of range");
    if (g.b >= n) throw InvalidModel(at("gap_junctions", k, "b") + ": index out of range");
    if (g.a == g.b) throw InvalidModel("gap_junctions[" + std::to_string(k) + "]: endpoints must differ");
    if (!finite(g.w_hat) || g.w_hat < 0.0) {
      throw InvalidModel(at("gap_junctions", k, "w_hat") + ": must be finite and >= 0");
    }
    if (g.a >= hidden || g.b >= hidden) {
      throw InvalidModel("gap_junctions[" + std::to_string(k) +
                         "]: touches an output neuron; gap junctions are bidirectional and outputs "
                         "may not feed back");
    }
    gap_links_[g.a].push_back({k, g.b});
    gap_links_[g.b].push_back({k, g.a});
  }
}

const NeuronParams& LtcNetwork::neuron(std::size_t i) const {
  check_index(i, neurons_.size());
  return neurons_[i];
}

const std::vector<std::size_t>& LtcNetwork::incoming(std::size_t i) const {
  check_index(i, neurons_.size());
  return incoming_[i];
}

const std::vector<LtcNetwork::GapLink>& LtcNetwork::gap_links(std::size_t i) const {
  check_index(i, neurons_.size());
  return gap_links_[i];
}

bool LtcNetwork::operator==(const LtcNetwork& other) const {
  return n_output_ == other.n_output_ && neurons_ == other.neurons_ && chem_ == other.chem_ &&
         gaps_ == other.gaps_;
}

double sigmoid_activation(double v_pre, double gamma, double mu) noexcept {
  constexpr double kUpper = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  constexpr double kLower = std::numeric_limits<double>::denorm_min();
  const double x = gamma * (v_pre + mu);
  double s;
  if (x >= 0.0) {
    s = 1.0 / (1.0 + std::exp(-x));
  } else {
    const double e = std::exp(x);
    s = e / (1.0 + e);
  }
  if (s > kUpper) return kUpper;
  if (!(s >= kLower)) return kLower;
  return s;
}

double chemical_current(const ChemicalSynapse& syn, double v_pre, double v_post) noexcept {
  return syn.w * sigmoid_activation(v_pre, syn.gamma, syn.mu) * (syn.e_rev - v_post);
}

double gap_current(const GapJunction& gj, double v_self, double v_other) noexcept {
  return gj.w_hat * (v_other - v_self);
}

void require_state_size(const StateVector& state, const LtcNetwork& net) {
  if (static_cast<std::size_t>(state.size()) != net.size()) {
    throw DimensionMismatch("state has " + std::to_string(state.size()) + " entries, network has " +
                            std::to_string(net.size()) + " neurons");
  }
}

double neuron_derivative(std::size_t i, const StateVector& state, const LtcNetwork& net) {
  require_state_size(state, net);
  const NeuronParams& p = net.neuron(i);
  const auto& chem = net.chemical_synapses();
  const auto& gaps = net.gap_junctions();
  const double v = state[static_cast<Eigen::Index>(i)];

  double current = p.g_leak * (p.v_leak - v);
  for (std::size_t k : net.incoming(i)) {
    const auto& s = chem[k];
    current += chemical_current(s, state[static_cast<Eigen::Index>(s.src)], v);
  }
  for (const auto& link : net.gap_links(i)) {
    current += gap_current(gaps[link.junction], v, state[static_cast<Eigen::Index>(link.other)]);
  }
  return current / p.c_m;
}

StateVector network_derivative(const StateVector& state, const LtcNetwork& net) {
  require_state_size(state, net);
  StateVector out(state.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = neuron_derivative(i, state, net);
  }
  return out;
}

double effective_time_constant(std::size_t i, const StateVector& state, const LtcNetwork& net) {
  require_state_size(state, net);
  const NeuronParams& p = net.neuron(i);
  const auto& chem = net.chemical_synapses();
  const auto& gaps = net.gap_junctions();

  // Same summation order as tau_bounds: leak, chemical, gap.
  double conductance = p.g_leak;
  for (std::size_t k : net.incoming(i)) {
    const auto& s = chem[k];
    conductance += s.w * sigmoid_activation(state[static_cast<Eigen::Index>(s.src)], s.gamma, s.mu);
  }
  for (const auto& link : net.gap_links(i)) conductance += gaps[link.junction].w_hat;
  return p.c_m / conductance;
}

}  // namespace ltc
