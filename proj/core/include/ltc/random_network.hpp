#ifndef LTC_RANDOM_NETWORK_HPP
#define LTC_RANDOM_NETWORK_HPP

#include <cstddef>
#include <random>
#include <vector>

#include "ltc/model.hpp"
#include "ltc/verification.hpp"

namespace ltc {

// Seeded generator for property suites and benchmarks. Parameter ranges
// cover both saturation regimes of the synaptic sigmoid.
struct RandomNetworkOptions {
  std::size_t min_neurons = 2;
  std::size_t max_neurons = 8;
  double chemical_density = 0.5;  // probability of each hidden->any edge
  double gap_density = 0.0;       // probability of each hidden-hidden pair
  std::size_t max_outputs = 2;

  double w_lo = 0.0, w_hi = 2.0;
  double gamma_lo = 0.5, gamma_hi = 2.0;
  double mu_lo = -1.0, mu_hi = 1.0;
  double e_rev_lo = -1.0, e_rev_hi = 1.0;
  double v_leak_lo = -0.5, v_leak_hi = 0.5;
  double cm_lo = 0.5, cm_hi = 2.0;
  double g_leak_lo = 0.5, g_leak_hi = 2.0;
  double w_hat_lo = 0.0, w_hat_hi = 2.0;
};

LtcNetwork random_network(std::mt19937_64& rng, const RandomNetworkOptions& options = {});

StateVector random_state(std::mt19937_64& rng, std::size_t size, double lo, double hi);

StateVector random_state_in_boxes(std::mt19937_64& rng, const std::vector<StateBox>& boxes);

}  // namespace ltc

#endif  // LTC_RANDOM_NETWORK_HPP
