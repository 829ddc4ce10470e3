#ifndef LTC_NETWORK_IO_HPP
#define LTC_NETWORK_IO_HPP

#include <string>
#include <string_view>

#include "ltc/model.hpp"

namespace ltc {

/*
 * Network documents are JSON:
 *
 *   {
 *     "neurons": [{"cm": 1, "g_leak": 0.5, "v_leak": 0}, ...],
 *     "chemical_synapses": [{"src": 0, "dst": 1, "w": 1, "gamma": 1, "mu": 0, "e_rev": 1}, ...],
 *     "gap_junctions": [{"a": 0, "b": 1, "w_hat": 0.5}, ...],
 *     "n_output": 1
 *   }
 *
 * Output neurons are the last n_output entries of "neurons".
 */

/// Throws ParseError for malformed JSON (with line and column), missing or
/// mistyped keys, and model invariant violations; the message names the
/// offending key path, e.g. "neurons[0].cm".
LtcNetwork parse_network(std::string_view text);

/// Doubles are written with round-trip precision, so
/// parse_network(serialize_network(net)) == net.
std::string serialize_network(const LtcNetwork& net);

LtcNetwork load_network(const std::string& path);
void save_network(const LtcNetwork& net, const std::string& path);

}  // namespace ltc

#endif  // LTC_NETWORK_IO_HPP
