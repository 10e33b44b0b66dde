#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nxent/error.hpp"
#include "nxent/moments.hpp"
#include "nxent/relations.hpp"
#include "nxent/report_io.hpp"
#include "nxent/state_io.hpp"

namespace nxent::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GridSpec {
  bool auto_extent = true;
  double extent = 0.0;
  std::size_t points = 512;
  std::optional<PhaseGrid> explicit_grid;
};

struct Tolerances {
  double relation = kRelationTolerance;
  double tracing = kTracingTolerance;
  double eta = 1e-9;
};

struct RunConfig {
  std::optional<MixedState> state;
  int n0 = 0;
  GridSpec grid;
  std::vector<double> alphas;
  std::optional<json> alpha_range;
  std::optional<BinPartition> partition;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  int nmax = -1;
  int truncation = -1;
  MinimizeOptions minimize;
  bool eta_estimate = true;
  bool tracing = true;
  bool density_json = false;
  fs::path out = ".";
};

// Raw options from the command line.
struct Invocation {
  std::string command;
  std::string config;
  std::string out;
  std::optional<long long> seed;
};

const json* find(const json& doc, const char* key) {
  auto it = doc.find(key);
  return it == doc.end() ? nullptr : &*it;
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError("config: '" + what + "' must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ParseError("config: '" + what + "' must be an integer");
  return v.get<int>();
}

double checked_alpha(double a) {
  conjugate(a);
  return a;
}

GridSpec parse_grid(const json& v) {
  GridSpec g;
  if (v.is_string()) {
    if (v.get<std::string>() != "auto") throw ParseError("config: grid must be \"auto\" or an object");
    return g;
  }
  if (!v.is_object()) throw ParseError("config: grid must be \"auto\" or an object");
  if (find(v, "xi_min")) {
    PhaseGrid pg;
    pg.xi_min = number(v.at("xi_min"), "grid.xi_min");
    pg.xi_max = number(v.value("xi_max", json()), "grid.xi_max");
    pg.k_min = number(v.value("k_min", json()), "grid.k_min");
    pg.k_max = number(v.value("k_max", json()), "grid.k_max");
    pg.n_xi = static_cast<std::size_t>(integer(v.value("n_xi", json()), "grid.n_xi"));
    pg.n_k = static_cast<std::size_t>(integer(v.value("n_k", json()), "grid.n_k"));
    pg.validate();
    g.explicit_grid = pg;
    g.auto_extent = false;
    return g;
  }
  if (const json* p = find(v, "points")) {
    const int points = integer(*p, "grid.points");
    if (points < 2) throw ParseError("config: grid.points must be at least 2");
    g.points = static_cast<std::size_t>(points);
  }
  if (const json* e = find(v, "extent")) {
    if (e->is_string() && e->get<std::string>() == "auto") return g;
    g.extent = number(*e, "grid.extent");
    if (!(g.extent > 0.0) || !std::isfinite(g.extent))
      throw ParseError("config: grid.extent must be positive");
    g.auto_extent = false;
  }
  return g;
}

RunConfig load_config(const Invocation& inv) {
  const json doc = read_json_file(inv.config);
  if (!doc.is_object()) throw ParseError("config: expected an object");
  RunConfig cfg;
  const fs::path base = fs::path(inv.config).parent_path();

  if (const json* s = find(doc, "seed")) {
    if (!s->is_number_integer() || s->get<long long>() < 0)
      throw ParseError("config: 'seed' must be a non-negative integer");
    cfg.seed = s->get<std::uint64_t>();
  }
  if (inv.seed) {
    if (*inv.seed < 0) throw ParseError("--seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(*inv.seed);
  }

  if (const json* s = find(doc, "state")) {
    json spec = s->is_string() ? read_json_file(base / s->get<std::string>()) : *s;
    if (spec.is_object() && spec.value("kind", json()) == "random" && !spec.contains("seed"))
      spec["seed"] = cfg.seed;
    cfg.state = parse_state(spec);
  }
  if (const json* v = find(doc, "n0")) {
    cfg.n0 = integer(*v, "n0");
    if (cfg.n0 < 0) throw ParseError("config: n0 must be non-negative");
  }
  if (const json* v = find(doc, "grid")) cfg.grid = parse_grid(*v);
  if (const json* v = find(doc, "alpha")) {
    if (v->is_number()) {
      cfg.alphas.push_back(checked_alpha(v->get<double>()));
    } else if (v->is_array()) {
      for (const json& a : *v) cfg.alphas.push_back(checked_alpha(number(a, "alpha")));
    } else {
      throw ParseError("config: 'alpha' must be a number or an array");
    }
  }
  if (const json* v = find(doc, "alpha_range")) {
    if (!v->is_object()) throw ParseError("config: 'alpha_range' must be an object");
    checked_alpha(number(v->value("min", json()), "alpha_range.min"));
    checked_alpha(number(v->value("max", json()), "alpha_range.max"));
    integer(v->value("points", json()), "alpha_range.points");
    cfg.alpha_range = *v;
  }
  if (const json* v = find(doc, "partition")) {
    const json spec = v->is_string() ? read_json_file(base / v->get<std::string>()) : *v;
    cfg.partition = parse_partition(spec);
  }
  if (const json* v = find(doc, "tolerances")) {
    if (!v->is_object()) throw ParseError("config: 'tolerances' must be an object");
    if (const json* t = find(*v, "relation")) cfg.tolerances.relation = number(*t, "tolerances.relation");
    if (const json* t = find(*v, "tracing")) cfg.tolerances.tracing = number(*t, "tolerances.tracing");
    if (const json* t = find(*v, "eta")) cfg.tolerances.eta = number(*t, "tolerances.eta");
    const Tolerances& t = cfg.tolerances;
    if (!(t.relation >= 0.0) || !(t.tracing >= 0.0) || !(t.eta >= 0.0))
      throw ParseError("config: tolerances must be non-negative");
  }
  if (const json* v = find(doc, "nmax")) cfg.nmax = integer(*v, "nmax");
  if (const json* v = find(doc, "N")) cfg.truncation = integer(*v, "N");
  if (const json* v = find(doc, "eta")) {
    if (!v->is_string() || (*v != "estimate" && *v != "universal"))
      throw ParseError("config: 'eta' must be \"estimate\" or \"universal\"");
    cfg.eta_estimate = *v == "estimate";
  }
  if (const json* v = find(doc, "tracing")) {
    if (!v->is_boolean()) throw ParseError("config: 'tracing' must be a boolean");
    cfg.tracing = v->get<bool>();
  }
  if (const json* v = find(doc, "density_json")) {
    if (!v->is_boolean()) throw ParseError("config: 'density_json' must be a boolean");
    cfg.density_json = v->get<bool>();
  }
  if (const json* v = find(doc, "minimize")) {
    if (!v->is_object()) throw ParseError("config: 'minimize' must be an object");
    MinimizeOptions& m = cfg.minimize;
    if (const json* t = find(*v, "starts")) m.starts = integer(*t, "minimize.starts");
    if (const json* t = find(*v, "max_sweeps")) m.max_sweeps = integer(*t, "minimize.max_sweeps");
    if (const json* t = find(*v, "initial_step")) m.initial_step = number(*t, "minimize.initial_step");
    if (const json* t = find(*v, "min_step")) m.min_step = number(*t, "minimize.min_step");
    if (const json* t = find(*v, "search_points"))
      m.search_points = static_cast<std::size_t>(integer(*t, "minimize.search_points"));
    if (const json* t = find(*v, "report_points"))
      m.report_points = static_cast<std::size_t>(integer(*t, "minimize.report_points"));
    if (m.starts < 0 || m.max_sweeps < 1 || m.search_points < 2 || m.report_points < 2 ||
        !(m.initial_step > 0.0) || !(m.min_step > 0.0))
      throw ParseError("config: invalid minimize options");
  }
  cfg.minimize.tolerance = cfg.tolerances.relation;
  if (const json* v = find(doc, "out")) {
    if (!v->is_string()) throw ParseError("config: 'out' must be a string");
    cfg.out = base / v->get<std::string>();
  }
  if (!inv.out.empty()) cfg.out = inv.out;
  return cfg;
}

const MixedState& require_state(const RunConfig& cfg) {
  if (!cfg.state) throw ParseError("config: 'state' is required");
  return *cfg.state;
}

// Smallest order any entropy or norm will take on w.
double lowest_order(const std::vector<double>& alphas) {
  double low = 1.0;
  for (double a : alphas) low = std::min(low, conjugate(a).low());
  return low;
}

PhaseGrid resolve_grid(const RunConfig& cfg, const MixedState& state, double lowest,
                       bool moments) {
  if (cfg.grid.explicit_grid) return *cfg.grid.explicit_grid;
  if (!cfg.grid.auto_extent) return PhaseGrid::symmetric(cfg.grid.extent, cfg.grid.points);
  double extent = required_extent(state.support(), cfg.n0);
  const TailEnvelope envelope(state, cfg.n0);
  if (lowest < 1.0) extent = std::max(extent, envelope.suggested_extent(lowest, kTailThreshold));
  if (moments) extent = std::max(extent, envelope.suggested_extent(1.0, 1e-8, 2));
  return PhaseGrid::symmetric(extent, cfg.grid.points);
}

json grid_json(const PhaseGrid& g) {
  return {{"xi_min", g.xi_min}, {"xi_max", g.xi_max}, {"k_min", g.k_min},
          {"k_max", g.k_max},   {"n_xi", g.n_xi},     {"n_k", g.n_k}};
}

struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;
  void add(std::string name, std::string content) {
    files.emplace_back(std::move(name), std::move(content));
  }
};

void write_outputs(const RunConfig& cfg, const Outputs& outputs) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw Error("cannot create output directory " + cfg.out.string());
  for (const auto& [name, content] : outputs.files) write_file_atomic(cfg.out / name, content);
}

std::string summary_line(const RelationReport& r) {
  std::ostringstream line;
  line << std::setprecision(6);
  line << (r.pass ? "PASS " : "FAIL ") << r.relation;
  if (!r.assignment.empty())
    line << '[' << r.assignment << "] alpha=" << r.alpha << " beta=" << r.beta;
  line << " lhs=" << r.lhs << " bound=" << r.bound
       << " margin=" << r.margin;
  if (r.trivial) line << " (trivial)";
  return line.str();
}

int finish(const std::vector<RelationReport>& reports, std::ostream& out) {
  bool all = true;
  for (const RelationReport& r : reports) {
    out << summary_line(r) << '\n';
    all = all && r.pass;
  }
  return all ? kExitPass : kExitFail;
}

json reports_json(const std::vector<RelationReport>& reports) {
  json arr = json::array();
  for (const RelationReport& r : reports) arr.push_back(report_to_json(r));
  return arr;
}

bool all_pass(const std::vector<RelationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const RelationReport& r) { return r.pass; });
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const MixedState& state = require_state(cfg);
  std::vector<double> alphas = cfg.alphas;
  if (alphas.empty()) alphas = {2.0};
  const PhaseGrid grid = resolve_grid(cfg, state, lowest_order(alphas), cfg.tracing);
  const PhaseDensity w = density(state, cfg.n0, grid);
  const DiscreteDist s = number_dist(state);

  const double universal = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  std::optional<EtaEstimate> estimate;
  if (cfg.eta_estimate) estimate = eta_estimate(cfg.n0, state.support(), grid);
  const double eta = estimate ? estimate->eta : universal;

  std::vector<RelationReport> reports;
  const double tol = cfg.tolerances.relation;
  for (double a : alphas) {
    for (const auto& r : check_renyi_relation(w, s, a, tol)) reports.push_back(r);
    for (const auto& r : check_tsallis_relation(w, s, a, tol)) reports.push_back(r);
    if (a != 1.0)
      for (const auto& r : check_riesz(w, s, conjugate(a), eta, tol)) reports.push_back(r);
  }
  json moments = json::object();
  if (cfg.tracing) {
    for (const auto& r : check_tracing(state, w, cfg.tolerances.tracing)) reports.push_back(r);
    moments = {{"fock", moments_to_json(fock_moments(state))},
               {"density", density_moments_to_json(density_moments(w))}};
  }

  json eta_doc{{"value", eta}, {"universal_bound", universal}, {"source", cfg.eta_estimate ? "estimate" : "universal"}};
  if (estimate) eta_doc["estimate"] = eta_to_json(*estimate);
  json doc{{"command", "check"},
           {"n0", cfg.n0},
           {"grid", grid_json(grid)},
           {"density_integral", w.integral()},
           {"state", state_to_json(state)},
           {"eta", eta_doc},
           {"moments", moments},
           {"reports", reports_json(reports)},
           {"all_pass", all_pass(reports)}};
  Outputs outputs;
  outputs.add("report.json", dump_json(doc));
  outputs.add("density.csv", density_csv(w));
  outputs.add("number_dist.csv", number_dist_csv(s));
  if (cfg.density_json) outputs.add("density.json", dump_json(density_json(w)));
  write_outputs(cfg, outputs);
  return finish(reports, out);
}

std::vector<double> scan_alphas(const RunConfig& cfg) {
  std::vector<double> alphas;
  if (cfg.alpha_range) {
    const json& r = *cfg.alpha_range;
    const double lo = r.at("min").get<double>(), hi = r.at("max").get<double>();
    const int points = r.at("points").get<int>();
    if (points < 2 || !(hi > lo)) throw ParseError("scan-alpha: alpha_range needs max > min and at least 2 points");
    for (int i = 0; i < points; ++i) alphas.push_back(lo + (hi - lo) * i / (points - 1));
    alphas.back() = hi;
  } else {
    alphas = cfg.alphas;
  }
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  if (alphas.size() < 2) throw ParseError("scan-alpha: at least 2 distinct orders are required");
  if (!std::binary_search(alphas.begin(), alphas.end(), 1.0))
    alphas.insert(std::upper_bound(alphas.begin(), alphas.end(), 1.0), 1.0);
  return alphas;
}

int cmd_scan_alpha(const RunConfig& cfg, std::ostream& out) {
  const MixedState& state = require_state(cfg);
  const std::vector<double> alphas = scan_alphas(cfg);
  const PhaseGrid grid = resolve_grid(cfg, state, lowest_order(alphas), false);
  const PhaseDensity w = density(state, cfg.n0, grid);
  const DiscreteDist s = number_dist(state);
  const double tol = cfg.tolerances.relation;

  std::string csv = "alpha,beta,renyi_lhs,renyi_bound,tsallis_lhs,tsallis_bound,margin_r,margin_t\n";
  std::vector<RelationReport> reports;
  for (double a : alphas) {
    const auto renyi = check_renyi_relation(w, s, a, tol);
    const auto tsallis = check_tsallis_relation(w, s, a, tol);
    const RelationReport& r = renyi[0];
    const RelationReport& t = tsallis[0];
    for (double v : {r.alpha, r.beta, r.lhs, r.bound, t.lhs, t.bound, r.margin}) csv += format_double(v) + ",";
    csv += format_double(t.margin) + "\n";
    reports.insert(reports.end(), renyi.begin(), renyi.end());
    reports.insert(reports.end(), tsallis.begin(), tsallis.end());
  }
  json doc{{"command", "scan-alpha"},
           {"n0", cfg.n0},
           {"grid", grid_json(grid)},
           {"alphas", alphas},
           {"reports", reports_json(reports)},
           {"all_pass", all_pass(reports)}};
  Outputs outputs;
  outputs.add("scan_alpha.csv", csv);
  outputs.add("report.json", dump_json(doc));
  write_outputs(cfg, outputs);
  return finish(reports, out);
}

int cmd_bins(const RunConfig& cfg, std::ostream& out) {
  const MixedState& state = require_state(cfg);
  if (!cfg.partition) throw ParseError("config: 'partition' is required for bins");
  std::vector<double> alphas = cfg.alphas;
  if (alphas.empty()) alphas = {2.0};
  const PhaseGrid grid = resolve_grid(cfg, state, 1.0, false);
  const PhaseDensity w = density(state, cfg.n0, grid);
  const BinnedDist r = bin_probs(w, *cfg.partition);
  const DiscreteDist s = number_dist(state);

  std::vector<RelationReport> reports;
  for (double a : alphas)
    for (const auto& rep : check_binned_relations(r, s, a, cfg.n0, cfg.tolerances.relation))
      reports.push_back(rep);

  const BinPartition& part = *cfg.partition;
  std::string csv = "l,m,xi_lo,xi_hi,k_lo,k_hi,r\n";
  const std::size_t lk = part.k_edges.size() - 1;
  const std::size_t inner = (part.xi_edges.size() - 1) * lk;
  for (std::size_t idx = 0; idx < inner; ++idx) {
    const std::size_t l = idx / lk, m = idx % lk;
    csv += std::to_string(l) + "," + std::to_string(m) + "," + format_double(part.xi_edges[l]) + "," +
           format_double(part.xi_edges[l + 1]) + "," + format_double(part.k_edges[m]) + "," +
           format_double(part.k_edges[m + 1]) + "," + format_double(r.probs[idx]) + "\n";
  }
  if (r.has_outer_bin) csv += "outer,outer,,,,," + format_double(r.probs[inner]) + "\n";

  json doc{{"command", "bins"},
           {"n0", cfg.n0},
           {"grid", grid_json(grid)},
           {"bins", {{"count", r.probs.size()},
                     {"max_dxi", r.max_dxi},
                     {"max_dk", r.max_dk},
                     {"cell_area", r.max_dxi * r.max_dk},
                     {"trivial", !reports.empty() && reports.front().trivial},
                     {"has_outer_bin", r.has_outer_bin},
                     {"outer_mass", r.outer_mass}}},
           {"reports", reports_json(reports)},
           {"all_pass", all_pass(reports)}};
  Outputs outputs;
  outputs.add("bins.csv", csv);
  outputs.add("report.json", dump_json(doc));
  outputs.add("number_dist.csv", number_dist_csv(s));
  write_outputs(cfg, outputs);
  return finish(reports, out);
}

int cmd_eta(const RunConfig& cfg, std::ostream& out) {
  if (cfg.nmax < 0) throw ParseError("config: 'nmax' (>= 0) is required for eta");
  PhaseGrid grid;
  if (cfg.grid.explicit_grid) {
    grid = *cfg.grid.explicit_grid;
  } else {
    const double extent = cfg.grid.auto_extent ? required_extent(cfg.nmax, cfg.n0) : cfg.grid.extent;
    grid = PhaseGrid::symmetric(extent, cfg.grid.points);
  }
  const EtaEstimate e = eta_estimate(cfg.n0, cfg.nmax, grid);
  RelationReport bound;
  bound.relation = "eta_bound";
  bound.n0 = cfg.n0;
  bound.lhs_terms = {{"eta", e.eta}};
  bound.lhs = e.eta;
  bound.bound = e.universal_bound;
  bound.sense = Sense::AtMost;
  bound.tolerance = cfg.tolerances.eta;
  bound.eta = e.eta;
  settle(bound);

  json doc{{"command", "eta"},
           {"n0", cfg.n0},
           {"nmax", cfg.nmax},
           {"grid", grid_json(grid)},
           {"estimate", eta_to_json(e)},
           {"reports", json::array({report_to_json(bound)})},
           {"all_pass", bound.pass}};
  Outputs outputs;
  outputs.add("eta.json", dump_json(doc));
  write_outputs(cfg, outputs);
  out << "eta = " << format_double(e.eta) << " at n = " << e.n << ", xi = " << format_double(e.xi)
      << ", k = " << format_double(e.k) << "\n";
  out << "universal bound (2 pi)^(-1/2) = " << format_double(e.universal_bound) << "\n";
  return finish({bound}, out);
}

int cmd_minimize(const RunConfig& cfg, std::ostream& out) {
  if (cfg.truncation < 0) throw ParseError("config: 'N' (>= 0) is required for minimize");
  if (cfg.alphas.empty()) throw ParseError("config: 'alpha' is required for minimize");
  const double alpha = cfg.alphas.front();
  const MinimizeResult res = minimize_entropy_sum(alpha, cfg.n0, cfg.truncation, cfg.seed, cfg.minimize);
  const std::vector<RelationReport> reports(res.reports.begin(), res.reports.end());
  json doc{{"command", "minimize"},
           {"alpha", alpha},
           {"n0", cfg.n0},
           {"N", cfg.truncation},
           {"seed", cfg.seed},
           {"objective", res.objective},
           {"gap", res.objective - std::log(2.0 * std::numbers::pi)},
           {"converged", res.converged},
           {"evaluations", res.evaluations},
           {"state", state_to_json(res.state)},
           {"reports", reports_json(reports)},
           {"all_pass", all_pass(reports)}};
  Outputs outputs;
  outputs.add("minimize.json", dump_json(doc));
  outputs.add("best_state.json", dump_json(state_to_json(res.state)));
  write_outputs(cfg, outputs);
  out << "objective = " << format_double(res.objective) << (res.converged ? "" : " (not converged)")
      << "\n";
  return finish(reports, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropic uncertainty relations for the number-annihilation measurement", "nxent"};
  app.require_subcommand(1);
  Invocation inv;
  long long seed = 0;
  const std::vector<std::pair<const char*, const char*>> commands{
      {"check", "Check every relation for one state"},
      {"scan-alpha", "Sweep the Renyi and Tsallis relations over alpha"},
      {"bins", "Binned relations for a partition"},
      {"eta", "Estimate eta for n0 and nmax"},
      {"minimize", "Search for states with a small entropy sum"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config, "Run configuration (JSON)")->required();
    sub->add_option("--out", inv.out, "Output directory");
    sub->add_option("--seed", seed, "Seed for random states and the minimizer");
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "nxent: " << e.what() << "\n";
    return kExitUsage;
  }
  for (CLI::App* sub : subs) {
    if (sub->parsed()) {
      inv.command = sub->get_name();
      if (sub->count("--seed")) inv.seed = seed;
    }
  }

  try {
    const RunConfig cfg = load_config(inv);
    if (inv.command == "check") return cmd_check(cfg, out);
    if (inv.command == "scan-alpha") return cmd_scan_alpha(cfg, out);
    if (inv.command == "bins") return cmd_bins(cfg, out);
    if (inv.command == "eta") return cmd_eta(cfg, out);
    return cmd_minimize(cfg, out);
  } catch (const std::exception& e) {
    err << "nxent " << inv.command << ": " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace nxent::cli
