#include "cvrob/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "cvrob/coherence_solver.hpp"
#include "cvrob/entanglement_coherence.hpp"
#include "cvrob/nonclassicality.hpp"
#include "cvrob/nongaussianity.hpp"
#include "cvrob/verify.hpp"

namespace cvrob {

using ojson = nlohmann::ordered_json;

void RunConfig::validate() const {
  if (cutoff < 16) throw InvalidArgument("config: cutoff must be >= 16");
  for (const auto& [k, v] : tolerances)
    if (!(v > 0.0)) throw InvalidArgument("config: tolerance '" + k + "' must be positive");
  for (const auto& [k, v] : budgets)
    if (v <= 0) throw InvalidArgument("config: budget '" + k + "' must be positive");
  if (format != "json" && format != "csv") throw InvalidArgument("config: format must be json or csv");
}

void RunConfig::merge_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  try {
    if (j.contains("cutoff")) cutoff = j["cutoff"].get<int>();
    if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
    if (j.contains("format")) format = j["format"].get<std::string>();
    if (j.contains("tolerances"))
      for (auto& [k, v] : j["tolerances"].items()) tolerances[k] = v.get<double>();
    if (j.contains("budgets"))
      for (auto& [k, v] : j["budgets"].items()) budgets[k] = v.get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

std::string RunConfig::canonical_json() const {
  nlohmann::json j;  // std::map keys: sorted, so the dump is canonical
  j["cutoff"] = cutoff;
  j["seed"] = seed;
  j["format"] = format;
  j["tolerances"] = tolerances;
  j["budgets"] = budgets;
  return j.dump();
}

std::string RunConfig::digest() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_json()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

struct UsageError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

ojson num(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " from '" + s + "'");
  }
}

int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != std::floor(v)) throw UsageError(what + " must be an integer");
  return static_cast<int>(v);
}

// a:b:step, inclusive of b up to rounding.
std::vector<double> parse_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() == 1) return {to_double(parts[0], "range")};
  if (parts.size() != 3) throw UsageError("range must be a:b:step, got '" + s + "'");
  const double a = to_double(parts[0], "range start"), b = to_double(parts[1], "range end"),
               h = to_double(parts[2], "range step");
  if (!(h > 0.0) || b < a) throw UsageError("range needs step > 0 and end >= start");
  const int n = static_cast<int>(std::floor((b - a) / h + 1e-9)) + 1;
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(a + i * h);
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& p : split(s, ',')) out.push_back(to_int(p, "list entry"));
  return out;
}

struct StateSpec {
  std::string kind;
  std::vector<std::string> params;
  std::string text;
};

StateSpec parse_state(const std::string& text) {
  StateSpec s;
  s.text = text;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("state spec must look like kind:params, got '" + text + "'");
  s.kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (s.kind == "ket" || s.kind == "schmidt")
    s.params = {rest};
  else
    s.params = split(rest, ':');
  return s;
}

// JSON array of reals or of [re, im] pairs.
Vector parse_amplitudes(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception&) {
    throw UsageError("amplitudes must be a JSON array, got '" + text + "'");
  }
  if (!j.is_array() || j.empty()) throw UsageError("amplitudes must be a nonempty JSON array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_number())
      v(i) = j[i].get<double>();
    else if (j[i].is_array() && j[i].size() == 2 && j[i][0].is_number() && j[i][1].is_number())
      v(i) = cd(j[i][0].get<double>(), j[i][1].get<double>());
    else
      throw UsageError("amplitude entries must be numbers or [re, im] pairs");
  }
  if (!(v.norm() > 0.0)) throw UsageError("amplitudes must not all vanish");
  return v;
}

Parity parse_parity(const std::string& s) {
  if (s == "+" || s == "even") return Parity::kEven;
  if (s == "-" || s == "odd") return Parity::kOdd;
  throw UsageError("parity must be + or -");
}

Sign parse_sign(const std::string& s) {
  if (s == "+") return Sign::kPlus;
  if (s == "-") return Sign::kMinus;
  throw UsageError("sign must be + or -");
}

void need(const StateSpec& s, std::size_t n) {
  if (s.params.size() != n)
    throw UsageError("state '" + s.text + "' expects " + std::to_string(n) + " parameter(s)");
}

ojson estimate_json(const RobustnessEstimate& e) {
  ojson j;
  j["interval"] = {{"lower", num(e.lower)}, {"upper", num(e.upper)}};
  j["upper_infinite"] = e.upper_infinite();
  j["closed_form"] = e.closed_form ? num(*e.closed_form) : ojson(nullptr);
  j["methods"] = {{"lower", e.lower_method}, {"upper", e.upper_method}, {"all", e.methods}};
  j["tail_mass"] = e.tail_mass;
  j["converged"] = e.converged;
  return j;
}

ojson value_json(double v, const std::string& method, double tail = 0.0) {
  ojson j;
  j["value"] = num(v);
  j["closed_form"] = num(v);
  j["methods"] = {{"value", method}};
  j["tail_mass"] = tail;
  j["converged"] = true;
  return j;
}

TruncationPolicy policy(const RunConfig& c) { return {c.tolerances.at("tail"), false}; }

GridSpec grid(const RunConfig& c) {
  GridSpec g;
  g.inflation = c.tolerances.at("grid_inflation");
  return g;
}

ojson compute_nonclassicality(const StateSpec& s, const RunConfig& c) {
  if (s.kind == "fock") {
    need(s, 1);
    return estimate_json(fock_estimate(to_int(s.params[0], "n"), c.cutoff));
  }
  if (s.kind == "squeezed") {
    need(s, 1);
    const auto cert = squeezed_robustness(to_double(s.params[0], "r"));
    ojson j = estimate_json(cert.estimate);
    j["extra"] = {{"s0", cert.s0}, {"s_numeric", cert.s_numeric}, {"q", cert.q}};
    return j;
  }
  if (s.kind == "cat") {
    need(s, 2);
    CatSearch search;
    search.budget = c.budgets.at("cat_budget");
    const auto rep = cat_bounds(to_double(s.params[1], "alpha"), parse_parity(s.params[0]), search);
    ojson j;
    j["interval"] = {{"lower", num(rep.lower)}, {"upper", num(rep.upper)}};
    j["upper_infinite"] = false;
    j["closed_form"] = nullptr;
    j["methods"] = {{"lower", rep.lower_method}, {"upper", rep.upper_method}};
    j["tail_mass"] = 0.0;
    j["converged"] = rep.converged;
    j["extra"] = {{"self_witness", rep.self_witness},
                  {"fixed_witness", rep.fixed_witness},
                  {"optimized_witness", rep.optimized_witness},
                  {"gamma_opt", rep.gamma_opt}};
    return j;
  }
  if (s.kind == "photon-added") {
    need(s, 1);
    const auto rep = photon_added_bounds(to_double(s.params[0], "r"));
    ojson j = estimate_json(rep.estimate);
    j["extra"] = {{"lower_general", rep.lower_general},
                  {"lower_regime", rep.lower_regime},
                  {"lower_optimized", rep.lower_optimized},
                  {"q_optimized", rep.q_optimized},
                  {"upper_closed", rep.upper_closed}};
    return j;
  }
  GenericNcOptions opts;
  opts.grid = grid(c);
  opts.starts = c.budgets.at("nc_starts");
  if (s.kind == "coherent") {
    if (s.params.empty() || s.params.size() > 2) need(s, 1);
    const cd a(to_double(s.params[0], "alpha"),
               s.params.size() == 2 ? to_double(s.params[1], "alpha imaginary part") : 0.0);
    return estimate_json(nonclassicality_estimate(coherent_state(a, c.cutoff, policy(c)), opts));
  }
  if (s.kind == "ket") {
    const Vector v = parse_amplitudes(s.params[0]);
    if (v.size() > c.cutoff) throw UsageError("ket longer than the cutoff");
    Vector padded = Vector::Zero(c.cutoff);
    padded.head(v.size()) = v;
    return estimate_json(nonclassicality_estimate(KetVector(padded), opts));
  }
  throw UsageError("state kind '" + s.kind + "' is not supported for nonclassicality");
}

ojson compute_coherence(const StateSpec& s, const RunConfig& c) {
  SolverOptions so;
  so.rel_gap = c.tolerances.at("rel_gap");
  if (s.kind == "ket") {
    const KetVector psi(parse_amplitudes(s.params[0]));
    const double cf = coherence_robustness_pure(psi);
    if (psi.cutoff() > 64) return value_json(cf, "l1 formula (sum |psi_i|)^2");
    const auto sol = finite_dim_robustness(DensityOperator::from_ket(psi), {}, so);
    ojson j = estimate_json(sol.estimate);
    j["value"] = cf;
    j["closed_form"] = cf;
    j["methods"]["value"] = "l1 formula (sum |psi_i|)^2";
    return j;
  }
  if (s.kind == "hilbert") {
    need(s, 2);
    const auto rep = hilbert_example(to_int(s.params[1], "N"), parse_sign(s.params[0]));
    ojson j;
    double lower = 1.0;
    std::string lm = "trivial: R >= 1";
    if (rep.state.N <= 64) {
      const auto sol = finite_dim_robustness(DensityOperator(rep.state.omega), {}, so);
      lower = sol.estimate.lower;
      lm = sol.estimate.lower_method;
    }
    j["interval"] = {{"lower", lower}, {"upper", 2.0}};
    j["upper_infinite"] = false;
    j["closed_form"] = nullptr;
    j["methods"] = {{"lower", lm}, {"upper", "2 diag(omega) - omega >= 0"}};
    j["tail_mass"] = 0.0;
    j["converged"] = true;
    j["extra"] = {{"l1", rep.l1}, {"certificate_min_eig", rep.certificate_min_eig}};
    return j;
  }
  throw UsageError("state kind '" + s.kind + "' is not supported for coherence");
}

ojson compute_entanglement(const StateSpec& s, const RunConfig&, const std::string& dims) {
  if (s.kind == "ket" || s.kind == "schmidt") {
    Vector v = parse_amplitudes(s.params[0]);
    BipartiteIndex idx;
    if (s.kind == "schmidt") {
      const int d = static_cast<int>(v.size());
      Vector full = Vector::Zero(d * d);
      idx = {d, d};
      for (int i = 0; i < d; ++i) full(idx.flat(i, i)) = v(i);
      v = full;
    } else if (!dims.empty()) {
      const auto p = parse_int_list(dims);
      if (p.size() != 2) throw UsageError("--dims expects dA,dB");
      idx = {p[0], p[1]};
    } else {
      const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v.size()))));
      if (d * d != v.size()) throw UsageError("ket length is not a square; pass --dims=dA,dB");
      idx = {d, d};
    }
    if (idx.dim() != v.size()) throw UsageError("--dims does not match the ket length");
    const KetVector psi(v);
    const double cf = pure_entanglement_robustness(psi, idx);
    std::vector<Endpoint> ends;
    if (schmidt_spectrum(psi, idx).size() > 1 || idx.dA > 1) {
      const auto w = shimony_witness(psi, idx, 1.0 - 1e-6);
      ends.push_back({Side::kLower, witness_lower(psi, w), "Schmidt-basis witness, xi = 1 - 1e-6"});
    }
    if (idx.dA == idx.dB && idx.dA <= 6) {
      const auto vt = vidal_tarrach_decomposition(psi, idx);
      ends.push_back({Side::kUpper, vt.mu2, "separable decomposition psi + (mu^2-1) sigma = mu^2 omega"});
    } else {
      ends.push_back({Side::kUpper, cf, "Schmidt formula (sum mu)^2"});
    }
    ojson j = estimate_json(assemble_estimate(ends, cf));
    j["value"] = cf;
    j["methods"]["value"] = "Schmidt formula (sum mu)^2";
    return j;
  }
  if (s.kind == "hilbert") {
    need(s, 2);
    const auto rep = hilbert_example(to_int(s.params[1], "N"), parse_sign(s.params[0]));
    ojson j;
    j["interval"] = {{"lower", 1.0}, {"upper", 2.0}};
    j["upper_infinite"] = false;
    j["closed_form"] = nullptr;
    j["methods"] = {{"lower", "trivial: R >= 1"},
                    {"upper", "2 sigma_N - rho >= 0 with sigma_N separable"}};
    j["tail_mass"] = 0.0;
    j["converged"] = true;
    j["extra"] = {{"negativity", rep.negativity},
                  {"l1", rep.l1},
                  {"hilbert_norm", rep.hilbert_norm},
                  {"certificate_min_eig", rep.certificate_min_eig}};
    return j;
  }
  throw UsageError("state kind '" + s.kind + "' is not supported for entanglement");
}

ojson compute_nongaussianity(const StateSpec& s, const RunConfig& c) {
  if (s.kind == "fock") {
    need(s, 1);
    NgSearch search;
    search.starts = c.budgets.at("ng_starts");
    const auto rep = fock_ng_robustness(to_int(s.params[0], "n"), search);
    ojson j = estimate_json(rep.estimate);
    j["extra"] = {{"abs_alpha", rep.abs_alpha},
                  {"r", rep.r},
                  {"theta", rep.theta},
                  {"conjecture_residual", rep.conjecture_residual},
                  {"multimodal", rep.multimodal}};
    return j;
  }
  if (s.kind == "photon-added") {
    need(s, 1);
    return value_json(photon_added_ng_robustness(to_double(s.params[0], "r")),
                      "S(r)|1> reduction to the single-photon value 4e/(3 sqrt 3)");
  }
  if (s.kind == "squeezed" || s.kind == "coherent")
    return value_json(1.0, "pure Gaussian state is free");
  throw UsageError("state kind '" + s.kind + "' is not supported for nongaussianity");
}

std::string csv_field(const ojson& v) {
  std::string s;
  if (v.is_string())
    s = v.get<std::string>();
  else if (v.is_null())
    s = "";
  else
    s = v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return s;
}

void write_csv(std::ostream& os, const std::vector<std::string>& cols,
               const std::vector<std::vector<ojson>>& rows) {
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
    os << "\n";
  }
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ojson>> rows;
  ojson methods;
};

Table scan_cat(const std::string& parity, const std::string& range, const RunConfig& c) {
  Table t;
  t.columns = {"alpha", "lower", "upper", "self_witness", "fixed_witness", "optimized_witness"};
  CatSearch search;
  search.budget = c.budgets.at("cat_budget");
  const Parity p = parse_parity(parity);
  std::vector<std::string> lm, um;
  for (double a : parse_range(range)) {
    const auto rep = cat_bounds(a, p, search);
    t.rows.push_back({a, rep.lower, rep.upper, rep.self_witness, rep.fixed_witness, rep.optimized_witness});
    lm.push_back(rep.lower_method);
    um.push_back(rep.upper_method);
  }
  t.methods = {{"lower", lm}, {"upper", um}};
  return t;
}

Table scan_ng(int nmax, const RunConfig&) {
  Table t;
  t.columns = {"n", "R_G", "R_C", "conjecture_residual", "theta"};
  for (const auto& r : ng_vs_nc_table(nmax))
    t.rows.push_back({r.n, r.r_g, r.r_c, r.conjecture_residual, r.theta});
  t.methods = {{"R_G", "1/sup P_n, multi-start search (witness = phase-randomized ansatz)"},
               {"R_C", "closed form e^n n!/n^n"}};
  return t;
}

Table scan_hilbert(const std::string& ns, const std::string& sign) {
  Table t;
  t.columns = {"N", "negativity", "l1", "upper_bound", "certificate_min_eig", "hilbert_norm"};
  const Sign sg = parse_sign(sign);
  for (int n : parse_int_list(ns)) {
    const auto rep = hilbert_example(n, sg);
    t.rows.push_back({n, rep.negativity, rep.l1, rep.robustness_upper, rep.certificate_min_eig,
                      rep.hilbert_norm});
  }
  t.methods = {{"negativity", "(||omega||_l1 - 1)/2 from the 2x2 block structure of rho^Gamma"},
               {"upper_bound", "2 sigma_N - rho >= 0 with sigma_N separable"}};
  return t;
}

Table scan_photon_added(const std::string& range) {
  Table t;
  t.columns = {"r", "lower", "upper", "lower_general", "lower_regime", "lower_optimized", "q_optimized"};
  for (double r : parse_range(range)) {
    const auto rep = photon_added_bounds(r);
    t.rows.push_back({r, rep.estimate.lower, rep.estimate.upper, rep.lower_general,
                      rep.lower_regime, rep.lower_optimized, rep.q_optimized});
  }
  t.methods = {{"lower", "max of witness bounds at q = r, regime q, optimized q"},
               {"upper", "squeezed thermal ansatz at s = ln(4e^{2r}-3)/4"}};
  return t;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot open output file " + path);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cvrob: certified robustness of continuous-variable resources"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<int> cutoff;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::string out_path;
  app.add_option("--cutoff", cutoff, "Fock cutoff D (>= 16)");
  app.add_option("--seed", seed, "seed for randomized suites");
  app.add_option("--format", format, "json or csv");
  app.add_option("--out", out_path, "write the report to PATH");

  std::string resource, state, dims;
  auto* compute = app.add_subcommand("compute", "robustness estimate for one state");
  compute->add_option("resource", resource, "nonclassicality|entanglement|coherence|nongaussianity")
      ->required();
  compute->add_option("state", state, "state spec, e.g. fock:3, squeezed:0.5, cat:+:1.2, ket:[..]")
      ->required();
  compute->add_option("--dims", dims, "dA,dB for entanglement kets");

  std::string target, parity = "+", alpha = "0.1:2.0:0.05", nlist = "25,50,100,200,400",
                      sign = "+", rrange = "0.1:2.0:0.1";
  int nmax = 10;
  auto* scan = app.add_subcommand("scan", "figure and table data series");
  scan->add_option("target", target, "cat-bounds|ng-table|hilbert-growth|photon-added")->required();
  scan->add_option("--parity", parity, "+ or - (cat-bounds)");
  scan->add_option("--alpha", alpha, "a:b:step (cat-bounds)");
  scan->add_option("--nmax", nmax, "largest n (ng-table)");
  scan->add_option("--N", nlist, "comma-separated truncations (hilbert-growth)");
  scan->add_option("--sign", sign, "+ or - (hilbert-growth)");
  scan->add_option("--r", rrange, "a:b:step (photon-added)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "property suites");
  verify->add_option("suite", suite, "duality|monotonicity|multiplicativity|discrimination|faithfulness|convexity|all")
      ->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (const char* path = std::getenv("CVROB_CONFIG"); path && *path) {
      std::ifstream f(path);
      if (!f) throw UsageError(std::string("CVROB_CONFIG: cannot read ") + path);
      std::stringstream ss;
      ss << f.rdbuf();
      cfg.merge_json(ss.str());
    }
    if (cutoff) cfg.cutoff = *cutoff;
    if (seed) cfg.seed = *seed;
    if (format) cfg.format = *format;
    cfg.validate();

    std::ostringstream text;
    int code = kExitOk;
    if (*compute) {
      const StateSpec s = parse_state(state);
      ojson body;
      if (resource == "nonclassicality")
        body = compute_nonclassicality(s, cfg);
      else if (resource == "coherence")
        body = compute_coherence(s, cfg);
      else if (resource == "entanglement")
        body = compute_entanglement(s, cfg, dims);
      else if (resource == "nongaussianity")
        body = compute_nongaussianity(s, cfg);
      else
        throw UsageError("unknown resource '" + resource + "'");
      ojson j;
      j["command"] = "compute";
      j["resource"] = resource;
      j["state"] = state;
      for (auto& [k, v] : body.items()) j[k] = v;
      j["config_digest"] = cfg.digest();
      if (cfg.format == "json") {
        text << j.dump(2) << "\n";
      } else {
        const bool has_interval = j.contains("interval");
        write_csv(text,
                  {"resource", "state", "lower", "upper", "value", "closed_form", "lower_method",
                   "upper_method", "tail_mass", "converged", "config_digest"},
                  {{resource, state, has_interval ? j["interval"]["lower"] : ojson(nullptr),
                    has_interval ? j["interval"]["upper"] : ojson(nullptr),
                    j.contains("value") ? j["value"] : ojson(nullptr), j["closed_form"],
                    j["methods"].value("lower", j["methods"].value("value", "")),
                    j["methods"].value("upper", j["methods"].value("value", "")), j["tail_mass"],
                    j["converged"], j["config_digest"]}});
      }
    } else if (*scan) {
      Table t;
      if (target == "cat-bounds")
        t = scan_cat(parity, alpha, cfg);
      else if (target == "ng-table")
        t = scan_ng(nmax, cfg);
      else if (target == "hilbert-growth")
        t = scan_hilbert(nlist, sign);
      else if (target == "photon-added")
        t = scan_photon_added(rrange);
      else
        throw UsageError("unknown scan target '" + target + "'");
      if (cfg.format == "json") {
        ojson j;
        j["command"] = "scan";
        j["target"] = target;
        j["columns"] = t.columns;
        j["rows"] = t.rows;
        j["methods"] = t.methods;
        j["config_digest"] = cfg.digest();
        text << j.dump(2) << "\n";
      } else {
        write_csv(text, t.columns, t.rows);
      }
    } else if (*verify) {
      VerifyOptions vo;
      vo.seed = cfg.seed;
      vo.cutoff = cfg.cutoff;
      const auto results = run_suites(suite, vo);
      bool ok = true;
      ojson suites = ojson::array();
      ojson indeterminate = ojson::array();
      std::vector<std::vector<ojson>> rows;
      for (const auto& r : results) {
        ok = ok && r.passed();
        ojson checks = ojson::array();
        for (const auto& c : r.checks) {
          checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
          if (c.status == CheckStatus::kIndeterminate) indeterminate.push_back(r.suite + ": " + c.name);
          rows.push_back({r.suite, c.name, to_string(c.status), c.detail});
        }
        suites.push_back({{"suite", r.suite},
                          {"pass", r.count(CheckStatus::kPass)},
                          {"fail", r.count(CheckStatus::kFail)},
                          {"indeterminate", r.count(CheckStatus::kIndeterminate)},
                          {"checks", checks}});
      }
      if (cfg.format == "json") {
        ojson j;
        j["command"] = "verify";
        j["suite"] = suite;
        j["seed"] = cfg.seed;
        j["passed"] = ok;
        j["suites"] = suites;
        j["indeterminate"] = indeterminate;
        j["config_digest"] = cfg.digest();
        text << j.dump(2) << "\n";
      } else {
        write_csv(text, {"suite", "check", "status", "detail"}, rows);
      }
      if (!ok) code = kExitVerify;
    }
    emit(out, out_path, text.str());
    return code;
  } catch (const TruncationError& e) {
    err << "truncation error: " << e.what() << "\n";
    return kExitTruncation;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace cvrob
