#include "ltc/network_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ltc/errors.hpp"

namespace ltc {
namespace {

using nlohmann::json;

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
};

Location locate(std::string_view text, std::size_t byte) {
  Location loc;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key + ": missing key");
  return *it;
}

double number(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) throw ParseError(path + "." + key + ": expected a number");
  return v.get<double>();
}

std::size_t index(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer()) throw ParseError(path + "." + key + ": index must be >= 0");
  throw ParseError(path + "." + key + ": expected a non-negative integer");
}

const json& list(const json& doc, const char* key) {
  const json& v = require(doc, key, "document");
  if (!v.is_array()) throw ParseError(std::string(key) + ": expected a list");
  return v;
}

std::string item(const char* key, std::size_t k) { return std::string(key) + "[" + std::to_string(k) + "]"; }

}  // namespace

LtcNetwork parse_network(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const Location loc = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) +
                         ": malformed network document",
                     loc.line, loc.column);
  }
  if (!doc.is_object()) throw ParseError("network document must be a JSON object", 1, 1);

  std::vector<NeuronParams> neurons;
  const json& jn = list(doc, "neurons");
  for (std::size_t k = 0; k < jn.size(); ++k) {
    const std::string path = item("neurons", k);
    neurons.push_back({number(jn[k], "cm", path), number(jn[k], "g_leak", path), number(jn[k], "v_leak", path)});
  }

  std::vector<ChemicalSynapse> chem;
  const json& jc = list(doc, "chemical_synapses");
  for (std::size_t k = 0; k < jc.size(); ++k) {
    const std::string path = item("chemical_synapses", k);
    ChemicalSynapse s;
    s.src = index(jc[k], "src", path);
    s.dst = index(jc[k], "dst", path);
    s.w = number(jc[k], "w", path);
    s.gamma = number(jc[k], "gamma", path);
    s.mu = number(jc[k], "mu", path);
    s.e_rev = number(jc[k], "e_rev", path);
    chem.push_back(s);
  }

  std::vector<GapJunction> gaps;
  const json& jg = list(doc, "gap_junctions");
  for (std::size_t k = 0; k < jg.size(); ++k) {
    const std::string path = item("gap_junctions", k);
    gaps.push_back({index(jg[k], "a", path), index(jg[k], "b", path), number(jg[k], "w_hat", path)});
  }

  const std::size_t n_output = index(doc, "n_output", "document");

  try {
    return LtcNetwork(std::move(neurons), std::move(chem), std::move(gaps), n_output);
  } catch (const InvalidModel& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_network(const LtcNetwork& net) {
  json doc;
  doc["neurons"] = json::array();
  for (const auto& p : net.neurons()) {
    doc["neurons"].push_back({{"cm", p.c_m}, {"g_leak", p.g_leak}, {"v_leak", p.v_leak}});
  }
  doc["chemical_synapses"] = json::array();
  for (const auto& s : net.chemical_synapses()) {
    doc["chemical_synapses"].push_back(
        {{"src", s.src}, {"dst", s.dst}, {"w", s.w}, {"gamma", s.gamma}, {"mu", s.mu}, {"e_rev", s.e_rev}});
  }
  doc["gap_junctions"] = json::array();
  for (const auto& g : net.gap_junctions()) {
    doc["gap_junctions"].push_back({{"a", g.a}, {"b", g.b}, {"w_hat", g.w_hat}});
  }
  doc["n_output"] = net.n_output();
  return doc.dump(2) + "\n";
}

LtcNetwork load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read network file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_network(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

void save_network(const LtcNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write network file '" + path + "'");
  out << serialize_network(net);
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace ltc
