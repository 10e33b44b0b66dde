#include "nxent/state_io.hpp"

#include <fstream>
#include <sstream>

#include "nxent/error.hpp"

namespace nxent {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key, const char* where) {
  if (!doc.is_object() || !doc.contains(key))
    throw ParseError(std::string(where) + ": missing field '" + key + "'");
  return doc.at(key);
}

int get_int(const json& doc, const char* key, const char* where) {
  const json& v = field(doc, key, where);
  if (!v.is_number_integer())
    throw ParseError(std::string(where) + ": '" + key + "' must be an integer");
  return v.get<int>();
}

double get_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError(what + " must be a number");
  return v.get<double>();
}

cplx get_complex(const json& v, const std::string& what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2) throw ParseError(what + " must be an [re, im] pair");
  return {get_number(v[0], what), get_number(v[1], what)};
}

std::vector<double> get_edges(const json& v, const char* key) {
  if (!v.is_array()) throw ParseError(std::string("partition: '") + key + "' must be an array");
  std::vector<double> out;
  for (const json& e : v) out.push_back(get_number(e, std::string("partition: ") + key));
  return out;
}

FockVector parse_pure(const json& doc) {
  const json& kind_field = field(doc, "kind", "state");
  if (!kind_field.is_string()) throw ParseError("state: 'kind' must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "fock") return fock_state(get_int(doc, "n", "fock"), get_int(doc, "N", "fock"));
  if (kind == "coherent")
    return coherent_state(get_complex(field(doc, "alpha", "coherent"), "coherent: alpha"),
                          get_int(doc, "N", "coherent"));
  if (kind == "random") {
    const json& seed = field(doc, "seed", "random");
    if (!seed.is_number_integer() || seed.get<long long>() < 0)
      throw ParseError("random: 'seed' must be a non-negative integer");
    return random_state(seed.get<std::uint64_t>(), get_int(doc, "N", "random"));
  }
  if (kind == "superposition") {
    const json& coeffs = field(doc, "coeffs", "superposition");
    if (!coeffs.is_array() || coeffs.empty())
      throw ParseError("superposition: 'coeffs' must be a non-empty array");
    std::vector<cplx> c;
    for (const json& z : coeffs) c.push_back(get_complex(z, "superposition: coefficient"));
    return FockVector::normalized(std::move(c));
  }
  throw ParseError("state: unknown kind '" + kind + "'");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

MixedState parse_state(const json& doc) {
  if (!doc.is_object()) throw ParseError("state: expected an object");
  const json& kind = field(doc, "kind", "state");
  if (kind.is_string() && kind.get<std::string>() == "mixture") {
    const json& comps = field(doc, "components", "mixture");
    if (!comps.is_array() || comps.empty())
      throw ParseError("mixture: 'components' must be a non-empty array");
    std::vector<MixtureComponent> parts;
    for (const json& c : comps) {
      const double weight = get_number(field(c, "weight", "mixture component"), "mixture: weight");
      const MixedState inner = parse_state(field(c, "state", "mixture component"));
      for (const MixtureComponent& sub : inner.components())
        parts.push_back({weight * sub.weight, sub.state});
    }
    return mixed(std::move(parts));
  }
  return parse_pure(doc);
}

MixedState load_state(const std::filesystem::path& path) { return parse_state(read_json_file(path)); }

json state_to_json(const MixedState& state) {
  auto pure = [](const FockVector& f) {
    json coeffs = json::array();
    for (const cplx& z : f.coeffs()) coeffs.push_back(complex_json(z));
    return json{{"kind", "superposition"}, {"coeffs", coeffs}};
  };
  if (state.is_pure()) return pure(state.components()[0].state);
  json comps = json::array();
  for (const MixtureComponent& c : state.components())
    comps.push_back({{"weight", c.weight}, {"state", pure(c.state)}});
  return json{{"kind", "mixture"}, {"components", comps}};
}

BinPartition parse_partition(const json& doc) {
  if (!doc.is_object()) throw ParseError("partition: expected an object");
  BinPartition part;
  if (doc.contains("uniform")) {
    const json& u = doc.at("uniform");
    part = BinPartition::uniform(get_number(field(u, "dxi", "uniform"), "uniform: dxi"),
                                 get_number(field(u, "dk", "uniform"), "uniform: dk"),
                                 get_number(field(u, "extent", "uniform"), "uniform: extent"));
  } else {
    part.xi_edges = get_edges(field(doc, "xi_edges", "partition"), "xi_edges");
    part.k_edges = get_edges(field(doc, "k_edges", "partition"), "k_edges");
  }
  part.validate();
  return part;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace nxent
