#include "ltc/random_network.hpp"

#include <algorithm>

namespace ltc {
namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

}  // namespace

LtcNetwork random_network(std::mt19937_64& rng, const RandomNetworkOptions& o) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(o.min_neurons, o.max_neurons)(rng);
  const std::size_t max_out = n == 0 ? 0 : std::min(o.max_outputs, n - 1);
  const std::size_t n_output = std::uniform_int_distribution<std::size_t>(0, max_out)(rng);
  const std::size_t hidden = n - n_output;

  std::vector<NeuronParams> neurons(n);
  for (auto& p : neurons) {
    p.c_m = uniform(rng, o.cm_lo, o.cm_hi);
    p.g_leak = uniform(rng, o.g_leak_lo, o.g_leak_hi);
    p.v_leak = uniform(rng, o.v_leak_lo, o.v_leak_hi);
  }

  std::vector<ChemicalSynapse> chem;
  for (std::size_t src = 0; src < hidden; ++src) {
    for (std::size_t dst = 0; dst < n; ++dst) {
      if (!coin(rng, o.chemical_density)) continue;
      ChemicalSynapse s;
      s.src = src;
      s.dst = dst;
      s.w = uniform(rng, o.w_lo, o.w_hi);
      s.gamma = uniform(rng, o.gamma_lo, o.gamma_hi);
      s.mu = uniform(rng, o.mu_lo, o.mu_hi);
      s.e_rev = uniform(rng, o.e_rev_lo, o.e_rev_hi);
      chem.push_back(s);
    }
  }

  std::vector<GapJunction> gaps;
  for (std::size_t a = 0; a < hidden; ++a) {
    for (std::size_t b = a + 1; b < hidden; ++b) {
      if (coin(rng, o.gap_density)) gaps.push_back({a, b, uniform(rng, o.w_hat_lo, o.w_hat_hi)});
    }
  }
  return LtcNetwork(std::move(neurons), std::move(chem), std::move(gaps), n_output);
}

StateVector random_state(std::mt19937_64& rng, std::size_t size, double lo, double hi) {
  StateVector s(static_cast<Eigen::Index>(size));
  for (Eigen::Index i = 0; i < s.size(); ++i) s[i] = uniform(rng, lo, hi);
  return s;
}

StateVector random_state_in_boxes(std::mt19937_64& rng, const std::vector<StateBox>& boxes) {
  StateVector s(static_cast<Eigen::Index>(boxes.size()));
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    s[static_cast<Eigen::Index>(i)] = uniform(rng, boxes[i].lo, boxes[i].hi);
  }
  return s;
}

}  // namespace ltc
