#include "nxent/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <system_error>

#include <unistd.h>

#include "nxent/error.hpp"

namespace nxent {
namespace {

using nlohmann::json;

void dump(const json& v, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        dump(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          dump(v[i], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump(v[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = v.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

const char* sense_name(Sense s) {
  switch (s) {
    case Sense::AtLeast:
      return ">=";
    case Sense::AtMost:
      return "<=";
    case Sense::Equal:
      return "==";
  }
  return "?";
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const json& doc) {
  std::string out;
  dump(doc, out, 0);
  out += "\n";
  return out;
}

json report_to_json(const RelationReport& r) {
  json terms = json::object();
  for (const auto& [name, value] : r.lhs_terms) terms[name] = value;
  json j{{"relation", r.relation},
         {"assignment", r.assignment},
         {"alpha", r.alpha},
         {"beta", r.beta},
         {"mu", r.mu},
         {"n0", r.n0},
         {"lhs_terms", terms},
         {"lhs", r.lhs},
         {"sense", sense_name(r.sense)},
         {"bound", r.bound},
         {"margin", r.margin},
         {"pass", r.pass},
         {"trivial", r.trivial},
         {"tolerances", {{"margin", r.tolerance}}}};
  if (r.eta) j["eta"] = *r.eta;
  if (r.bin_size) j["bin_size"] = {{"dxi", r.bin_size->first}, {"dk", r.bin_size->second}};
  return j;
}

json moments_to_json(const MomentSet& m) {
  return {{"mean_q", m.mean_q},
          {"mean_p", m.mean_p},
          {"var_q", m.var_q},
          {"var_p", m.var_p},
          {"mean_a", json::array({m.mean_a.real(), m.mean_a.imag()})},
          {"varL_a", m.varL_a},
          {"varR_a", m.varR_a},
          {"mean_n", m.mean_n},
          {"var_n", m.var_n},
          {"truncation_warning", m.truncation_warning}};
}

json density_moments_to_json(const DensityMoments& d) {
  return {{"mean_Q", d.mean_Q},
          {"mean_P", d.mean_P},
          {"var_Q", d.var_Q},
          {"var_P", d.var_P},
          {"mean_A", json::array({d.mean_A.real(), d.mean_A.imag()})},
          {"var_A", d.var_A}};
}

json eta_to_json(const EtaEstimate& e) {
  return {{"eta", e.eta},
          {"argmax", {{"n", e.n}, {"xi", e.xi}, {"k", e.k}}},
          {"universal_bound", e.universal_bound}};
}

std::string density_csv(const PhaseDensity& w) {
  std::string out = "xi,k,w\n";
  out.reserve(w.grid.size() * 64);
  for (std::size_t i = 0; i < w.grid.n_xi; ++i) {
    const std::string xi = format_double(w.grid.xi(i));
    for (std::size_t j = 0; j < w.grid.n_k; ++j) {
      out += xi;
      out += ',';
      out += format_double(w.grid.k(j));
      out += ',';
      out += format_double(w.at(i, j));
      out += '\n';
    }
  }
  return out;
}

json density_json(const PhaseDensity& w) {
  const PhaseGrid& g = w.grid;
  return {{"grid",
           {{"xi_min", g.xi_min},
            {"xi_max", g.xi_max},
            {"k_min", g.k_min},
            {"k_max", g.k_max},
            {"n_xi", g.n_xi},
            {"n_k", g.n_k}}},
          {"n0", w.n0},
          {"layout", "row-major, xi outer"},
          {"w", w.w}};
}

std::string number_dist_csv(const DiscreteDist& s) {
  std::string out = "n,s\n";
  for (std::size_t n = 0; n < s.size(); ++n)
    out += std::to_string(n) + "," + format_double(s[n]) + "\n";
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot rename into " + path.string());
  }
}

}  // namespace nxent
