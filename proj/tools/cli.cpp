#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "morlab/bvp.hpp"
#include "morlab/corpus.hpp"
#include "morlab/grid_io.hpp"
#include "morlab/lorentz.hpp"
#include "morlab/maximal.hpp"
#include "morlab/morrey.hpp"
#include "morlab/oracles.hpp"
#include "morlab/potential.hpp"
#include "morlab/sharpness.hpp"
#include "morlab/spectral.hpp"

namespace morlab::cli {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// JSON has no infinity.
json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double parse_exponent(const std::string& name, const std::string& text) {
  if (text == "inf" || text == "infinity") return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("--" + name + ": not a number: '" + text + "'");
}

std::vector<double> parse_list(const std::string& name, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_exponent(name, trim(item)));
  if (out.empty()) throw ConfigError("--" + name + ": empty list");
  return out;
}

json grid_json(const GridSpec& g) {
  return {{"dim", g.dim}, {"half_width", g.half_width}, {"points_per_axis", g.points_per_axis},
          {"periodic", g.periodic}};
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

SampledFunction read_grid(const std::string& path) {
  try {
    return ends_with(path, ".csv") ? read_csv_file(path) : read_dump_file(path);
  } catch (const DomainError& e) {
    throw ConfigError("cannot read '" + path + "': " + e.what());
  }
}

void write_grid(const std::string& path, const SampledFunction& f) {
  if (ends_with(path, ".csv")) {
    write_csv_file(path, f);
  } else {
    write_dump_file(path, f);
  }
}

// Input shared by norm, maximal and riesz: a grid file or a corpus entry.
struct Input {
  std::string path;
  std::string corpus;
  int dim = 2;
  int points = 64;
  double half_width = 1.0;
  bool periodic = false;

  void attach(CLI::App* app) {
    app->add_option("--input", path, "grid dump or CSV file");
    app->add_option("--corpus", corpus, "corpus entry name");
    app->add_option("--dim", dim, "corpus dimension")->check(CLI::Range(1, 3));
    app->add_option("--m", points, "corpus points per axis");
    app->add_option("--half-width", half_width, "corpus box half width");
    app->add_flag("--periodic", periodic, "read the corpus entry on a periodic grid");
  }

  std::pair<SampledFunction, json> load() const {
    if (path.empty() == corpus.empty()) throw ConfigError("give exactly one of --input and --corpus");
    if (!path.empty()) return {read_grid(path), json{{"file", path}}};
    CorpusEntry e = load_corpus_entry(corpus, {dim, points, half_width});
    e.f.grid.periodic = periodic;
    return {e.f, json{{"corpus", e.name}, {"hash", hash_hex(e.hash)}}};
  }
};

CubeFamily family_for(const GridSpec& g, int scales, int translations) {
  if (translations < 0) throw ConfigError("--translations must be >= 0");
  return scales <= 0 ? enumerate_all_scales(g, translations) : enumerate_cubes(g, scales, translations);
}

json cube_json(const Cube& q, const GridSpec& g) {
  json lo = json::array();
  for (int a = 0; a < g.dim; ++a) lo.push_back(q.lo[a]);
  return {{"lo", lo}, {"side", q.side}};
}

// Boundary data for solve: a grid file or one of
//   zero | const:<c> | gauss:<amp>,<sigma> | invdist:<c>
SampledFunction boundary_data(const std::string& name, const std::string& spec, const GridSpec& g) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : parse_list(name, spec.substr(colon + 1));
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw ConfigError("--" + name + " " + kind + " takes " + std::to_string(k) + " values");
  };
  if (kind == "zero") {
    need(0);
    return zeros(g);
  }
  if (kind == "const") {
    need(1);
    return sample([c = args[0]](const Point&) { return c; }, g);
  }
  if (kind == "gauss") {
    need(2);
    const double a = args[0], s = args[1];
    return sample([=](const Point& x) { return a * std::exp(-(x[0] * x[0] + x[1] * x[1]) / (2 * s * s)); }, g);
  }
  if (kind == "invdist") {
    need(1);
    return inverse_distance_potential(g, args[0]);
  }
  SampledFunction f = read_grid(spec);
  if (!(f.grid == g)) throw ConfigError("--" + name + ": grid in '" + spec + "' does not match --m/--half-width");
  return f;
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  os << j.dump(2) << "\n";
}

double max_diff(const SampledFunction& a, const SampledFunction& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

// verify ---------------------------------------------------------------------

struct Row {
  std::string name;
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

std::vector<Row> oracle_suite(int m) {
  std::vector<Row> rows;
  const double tol = 1e-8;

  const BubbleOracle bub(3, 1.0, {0.2, -0.1, 0.7});
  double bnd = 0.0, inner = 0.0;
  for (const Point& x : collocation_points(3, 20, 2.0, 0.0, 0.0, true, 12)) {
    bnd = std::max(bnd, bub.boundary_relative_residual(x));
  }
  for (const Point& x : collocation_points(3, 20, 2.0, 0.1, 2.0, false, 13)) {
    inner = std::max(inner, bub.interior_relative_residual(x, 2e-3));
  }
  rows.push_back({"bubble", bnd < 1e-6 && inner < 1e-6, "boundary " + fmt(bnd) + ", interior " + fmt(inner)});

  const LinearOracle lin(2.0, -0.5, 3.0);
  double lw = lin.boundary_residual();
  for (const Point& x : collocation_points(3, 20, 2.0, 0.5, 3.0, false, 11)) {
    lw = std::max(lw, std::abs(lin.fd_laplacian(x, 3, 0.1)));
  }
  rows.push_back({"linear", lw < 1e-8, "residual " + fmt(lw)});

  const GridSpec g = make_grid(2, 4.0, m, false);
  auto gauss = [&](double a, double s) {
    return sample([=](const Point& x) { return a * std::exp(-(x[0] * x[0] + x[1] * x[1]) / (2 * s * s)); }, g);
  };
  const auto model = make_layer(LayerKind::free_space, g);
  const BVProblem pb = make_problem(3.0, 3.5, gauss(0.05, 0.5), gauss(0.3, 0.7), gauss(1.0, 1.0));
  PicardOptions opt;
  opt.tol = tol;
  const PicardResult run = picard_solve(pb, *model, opt);
  const double sym = symmetry_check(run.trace, BoundaryMap::rotate90).symmetric;
  BVProblem odd = pb;
  odd.f = sample([](const Point& x) { return 0.2 * x[0] * x[1] * std::exp(-(x[0] * x[0] + x[1] * x[1]) / 0.5); }, g);
  const double anti = symmetry_check(picard_solve(odd, *model, opt).trace, BoundaryMap::rotate90).antisymmetric;
  rows.push_back({"symmetry", sym < 5 * tol && anti < 5 * tol, "symmetric " + fmt(sym) + ", antisymmetric " + fmt(anti)});

  const PositivityReport pos = positivity_check(pb, *model, run, tol);
  rows.push_back({"positivity", pos.iterates_ok, "min iterate " + fmt(pos.min_iterate)});

  // Same construction as the energy-scaling acceptance check, u_2(x) =
  // 2^{1/(rho-1)} u(2x).
  auto ratio = [&](double rho) {
    auto profile = [&](double scale, double amp) {
      return sample([=](const Point& x) {
        return amp * std::exp(-scale * scale * (x[0] * x[0] + x[1] * x[1]) / 0.5);
      }, g);
    };
    const SampledFunction z = zeros(g);
    const SampledFunction b = sample([](const Point&) { return 0.2; }, g);
    const double e1 = energy(*model, profile(1, 1), z, b, z, rho).total;
    const double e2 = energy(*model, profile(2, std::pow(2.0, 1 / (rho - 1) + 1)), z, b, z, rho).total;
    return e2 / e1;
  };
  const double r3 = ratio(3.0), x4 = std::log2(ratio(4.0)), want = energy_scaling_exponent(3, 4.0);
  rows.push_back({"energy", std::abs(r3 - 1) <= 0.02 && std::abs(x4 - want) <= 0.05 * std::abs(want),
                  "rho=3 ratio " + fmt(r3) + ", rho=4 exponent " + fmt(x4)});
  return rows;
}

std::vector<Row> layer_suite() {
  std::vector<Row> rows;
  const GridSpec g = make_grid(2, 0.5, 32, true);
  SampledFunction f = sample([](const Point& x) {
    return std::cos(2 * std::numbers::pi * (x[0] + 2 * x[1])) + 0.5 * std::sin(2 * std::numbers::pi * 3 * x[0]);
  }, g);
  f = subtract_mean(f);
  const double t = 0.1;
  const auto grad = grad_N(f, {t});
  const SampledFunction d = single_layer_D(f, {t}).materialize(0);
  double normal = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) normal = std::max(normal, std::abs(grad[2].materialize(0).values[i] + d.values[i]));
  rows.push_back({"dn_N_plus_D", normal < 1e-12, fmt(normal)});
  double commute = 0.0;
  for (int j : {1, 2}) {
    commute = std::max(commute, max_diff(single_layer_D(riesz_transform_spectral(f, j), {t}).materialize(0),
                                         riesz_transform_spectral(d, j)));
  }
  rows.push_back({"D_S_commute", commute < 1e-12, fmt(commute)});
  const double rec = max_diff(neumann_data_of_N(f), f);
  rows.push_back({"neumann_recovery", rec < 1e-12, fmt(rec)});
  return rows;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int no = 0;
  while (std::getline(is, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(no) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(no) + ": empty key");
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"morlab: Morrey-Lorentz norms, fractional operators, layer potentials and the Neumann solver", "morlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Expand all help");
  std::string config_path;
  app.add_option("--config", config_path, "key = value file; command-line values win");
  std::string json_path;
  app.add_option("--json", json_path, "write the JSON summary here instead of stdout");

  // norm ------------------------------------------------------------------
  auto* norm = app.add_subcommand("norm", "Lorentz and Morrey-Lorentz norms of a sampled function");
  Input norm_in;
  norm_in.attach(norm);
  std::string norm_kind = "lorentz", p_s = "2", d_s = "inf", lambda_s = "4";
  int scales = 0, translations = 1;
  norm->add_option("--kind", norm_kind, "lorentz | morrey | weak-morrey")
      ->check(CLI::IsMember({"lorentz", "morrey", "weak-morrey"}));
  norm->add_option("--p", p_s, "local exponent");
  norm->add_option("--d,--kappa", d_s, "second Lorentz exponent (inf allowed)");
  norm->add_option("--lambda", lambda_s, "global Morrey exponent");
  norm->add_option("--scales", scales, "dyadic scales (0: down to single cells)");
  norm->add_option("--translations", translations, "extra shifted copies per scale");

  // maximal ---------------------------------------------------------------
  auto* maximal = app.add_subcommand("maximal", "fractional or sharp maximal function");
  Input max_in;
  max_in.attach(maximal);
  double alpha = 0.0;
  std::string max_kind = "fractional", out_path;
  maximal->add_option("--alpha", alpha, "order, 0 <= alpha < n");
  maximal->add_option("--kind", max_kind, "fractional | sharp")->check(CLI::IsMember({"fractional", "sharp"}));
  maximal->add_option("--scales", scales);
  maximal->add_option("--translations", translations);
  maximal->add_option("--out", out_path, "grid dump of the result (.csv for CSV)");

  // riesz -----------------------------------------------------------------
  auto* riesz = app.add_subcommand("riesz", "Riesz potential I_alpha or Riesz transform S_j");
  Input riesz_in;
  riesz_in.attach(riesz);
  double riesz_alpha = 1.0;
  int transform_j = 0;
  std::string method;
  riesz->add_option("--alpha", riesz_alpha, "order of I_alpha");
  riesz->add_option("--transform", transform_j, "compute S_j instead, j >= 1");
  riesz->add_option("--method", method, "quadrature | hedberg (potential), spectral | pv (transform)");
  riesz->add_option("--out", out_path);

  // layer -----------------------------------------------------------------
  auto* layer = app.add_subcommand("layer", "double layer D and Neumann layer N on a periodic boundary");
  std::string layer_input, op = "N", heights_s = "0.1", policy = "strict", out_prefix;
  layer->add_option("--input", layer_input, "periodic 2D boundary grid file")->required();
  layer->add_option("--op", op, "D | N | gradN")->check(CLI::IsMember({"D", "N", "gradN"}));
  layer->add_option("--heights", heights_s, "comma-separated x_n values");
  layer->add_option("--policy", policy, "zero mode of N: strict | drop")->check(CLI::IsMember({"strict", "drop"}));
  layer->add_option("--out-prefix", out_prefix, "dump each height to <prefix>_<op>_<k>.grid");

  // solve -----------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Picard solve of the nonlinear Neumann problem, n = 3");
  std::string f_s = "gauss:0.05,0.5", v_s = "gauss:0.3,0.7", b_s = "gauss:1,1", layer_kind = "free", cert = "auto";
  std::string trace_out, slab_prefix, slab_s;
  double rho = 3.0, mu = 3.5, tol = 1e-8, solve_w = 4.0;
  int max_iter = 100, solve_m = 64;
  solve->add_option("--rho", rho);
  solve->add_option("--mu", mu);
  solve->add_option("--f", f_s, "file | zero | const:c | gauss:amp,sigma | invdist:c");
  solve->add_option("--V", v_s);
  solve->add_option("--b", b_s);
  solve->add_option("--m", solve_m, "boundary points per axis");
  solve->add_option("--half-width", solve_w);
  solve->add_option("--layer", layer_kind)->check(CLI::IsMember({"free", "periodic"}));
  solve->add_option("--tol", tol);
  solve->add_option("--max-iter", max_iter);
  solve->add_option("--certificate", cert)->check(CLI::IsMember({"auto", "off"}));
  solve->add_option("--out-trace", trace_out, "grid dump of u(x', 0)");
  solve->add_option("--slab-heights", slab_s, "comma-separated heights to dump");
  solve->add_option("--slab-prefix", slab_prefix, "dump u at each slab height to <prefix>_<k>.grid");

  // sharpness -------------------------------------------------------------
  auto* sharp = app.add_subcommand("sharpness", "Cantor-cube divergence table (CSV)");
  double r = 2, smu = 4, sp = 2, slambda = 8, expect_ratio = 0.0;
  int depth = 4, depth_lo = 1;
  std::uint64_t seed = 1;
  std::string placement = "middle", csv_path;
  sharp->add_option("--r", r);
  sharp->add_option("--mu", smu);
  sharp->add_option("--p", sp);
  sharp->add_option("--lambda", slambda);
  sharp->add_option("--depth", depth);
  sharp->add_option("--depth-lo", depth_lo);
  sharp->add_option("--seed", seed);
  sharp->add_option("--placement", placement)->check(CLI::IsMember({"middle", "random"}));
  sharp->add_option("--csv", csv_path, "write the table here instead of stdout");
  sharp->add_option("--expect-ratio", expect_ratio, "exit 1 unless ratios increase and the last one reaches this");

  // verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run a check suite and print a pass/fail table");
  std::string suite = "oracles";
  int verify_m = 32;
  verify->add_option("--suite", suite)->check(CLI::IsMember({"oracles", "layer", "all"}));
  verify->add_option("--m", verify_m, "boundary points per axis for the solver checks");

  // corpus ----------------------------------------------------------------
  auto* corpus = app.add_subcommand("corpus", "frozen test-function corpus");
  corpus->require_subcommand(1);
  int version = kCorpusVersion, cdim = 2, cm = 64;
  double cw = 1.0;
  std::string load_name;
  auto* list = corpus->add_subcommand("list", "list entries with hashes");
  auto* load = corpus->add_subcommand("load", "write one entry as a grid file");
  auto* cverify = corpus->add_subcommand("verify", "check the default corpus against its frozen hashes");
  for (auto* c : {list, load, cverify}) c->add_option("--version", version);
  for (auto* c : {list, load}) {
    c->add_option("--dim", cdim)->check(CLI::Range(1, 3));
    c->add_option("--m", cm);
    c->add_option("--half-width", cw);
  }
  load->add_option("name", load_name)->required();
  load->add_option("--out", out_path);

  // Config file values fill in whatever the command line leaves unset.
  std::vector<std::string> args = raw_args;
  for (std::size_t i = 0; i + 1 < raw_args.size(); ++i) {
    if (raw_args[i] == "--config") config_path = raw_args[i + 1];
  }
  try {
    if (!config_path.empty()) {
      std::set<std::string> given;
      for (const auto& a : raw_args) {
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
      }
      bool has_command = false;
      for (const auto& a : raw_args) has_command = has_command || app.get_subcommand_no_throw(a) != nullptr;
      std::vector<std::string> extra;
      for (const auto& [key, value] : read_config(config_path)) {
        if (key == "command") {
          if (!has_command) {
            std::stringstream ss(value);
            std::vector<std::string> words;
            for (std::string w; ss >> w;) words.push_back(w);
            // Global options go before the subcommand words.
            std::vector<std::string> head, tail;
            for (std::size_t i = 0; i < args.size(); ++i) {
              if (args[i] == "--config" || args[i] == "--json") {
                head.push_back(args[i]);
                if (i + 1 < args.size()) head.push_back(args[++i]);
              } else {
                tail.push_back(args[i]);
              }
            }
            args = head;
            args.insert(args.end(), words.begin(), words.end());
            args.insert(args.end(), tail.begin(), tail.end());
            has_command = true;
          }
          continue;
        }
        if (given.count(key) || value == "false") continue;
        extra.push_back("--" + key);
        if (value != "true") extra.push_back(value);
      }
      args.insert(args.end(), extra.begin(), extra.end());
    }
  } catch (const ConfigError& e) {
    err << "morlab: " << e.what() << "\n";
    return kConfigError;
  }

  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" || args[i] == "--json") {
      ++i;
      continue;
    }
    if (args[i].rfind("-", 0) == 0) break;
    if (app.get_subcommand_no_throw(args[i]) == nullptr) {
      err << "morlab: unknown subcommand '" << args[i] << "'\n";
      return kConfigError;
    }
    break;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "morlab: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    json j;
    if (*norm) {
      auto [f, src] = norm_in.load();
      const double p = parse_exponent("p", p_s), d = parse_exponent("d", d_s);
      j = {{"command", "norm"}, {"kind", norm_kind}, {"source", src}, {"grid", grid_json(f.grid)}};
      if (norm_kind == "lorentz") {
        j["params"] = {{"p", number(p)}, {"d", number(d)}};
        j["value"] = number(lorentz_quasinorm(f, {p, d}));
        if (p > 1.0 && std::isfinite(p)) j["natural"] = number(lorentz_norm_natural(f, {p, d}));
      } else {
        const double lambda = parse_exponent("lambda", lambda_s);
        const CubeFamily fam = family_for(f.grid, scales, translations);
        const MorreyResult res = norm_kind == "morrey" ? morrey_lorentz_norm(f, {p, d, lambda}, fam)
                                                       : weak_morrey_norm(f, p, lambda, fam);
        j["params"] = {{"p", number(p)}, {"kappa", number(norm_kind == "morrey" ? d : kInf)}, {"lambda", number(lambda)}};
        j["family"] = {{"cubes", fam.size()}, {"scales", fam.scales}};
        j["value"] = number(res.value);
        j["argmax"] = cube_json(res.argmax, f.grid);
      }
    } else if (*maximal) {
      auto [f, src] = max_in.load();
      const CubeFamily fam = family_for(f.grid, scales, translations);
      j = {{"command", "maximal"}, {"kind", max_kind}, {"source", src}, {"grid", grid_json(f.grid)}};
      SampledFunction res;
      if (max_kind == "fractional") {
        res = fractional_maximal(f, alpha, fam).values;
        j["alpha"] = alpha;
      } else {
        res = sharp_maximal(f, fam).values;
        j["bmo"] = number(res.max_abs());
      }
      j["sup"] = number(res.max_abs());
      if (!out_path.empty()) {
        write_grid(out_path, res);
        j["output"] = out_path;
      }
    } else if (*riesz) {
      auto [f, src] = riesz_in.load();
      j = {{"command", "riesz"}, {"source", src}, {"grid", grid_json(f.grid)}};
      SampledFunction res;
      if (transform_j != 0) {
        if (method.empty()) method = f.grid.periodic ? "spectral" : "pv";
        if (method != "spectral" && method != "pv") throw ConfigError("--method for a transform: spectral | pv");
        res = riesz_transform(f, transform_j, method == "spectral" ? TransformMethod::spectral : TransformMethod::pv_quadrature);
        j["transform"] = transform_j;
      } else {
        if (method.empty()) method = "quadrature";
        if (method != "quadrature" && method != "hedberg") throw ConfigError("--method for a potential: quadrature | hedberg");
        res = riesz_potential(f, riesz_alpha,
                              {method == "quadrature" ? RieszMethod::quadrature : RieszMethod::hedberg_split, 0.0});
        j["alpha"] = riesz_alpha;
        j["constant"] = riesz_constant(f.grid.dim, riesz_alpha).c;
      }
      j["method"] = method;
      j["max_abs"] = number(res.max_abs());
      if (!out_path.empty()) {
        write_grid(out_path, res);
        j["output"] = out_path;
      }
    } else if (*layer) {
      const SampledFunction f = read_grid(layer_input);
      const std::vector<double> heights = parse_list("heights", heights_s);
      const ZeroModePolicy pol = policy == "strict" ? ZeroModePolicy::strict_reject : ZeroModePolicy::drop;
      j = {{"command", "layer"}, {"op", op}, {"source", {{"file", layer_input}}}, {"grid", grid_json(f.grid)},
           {"heights", heights}};
      std::vector<std::pair<std::string, SpectralField>> fields;
      if (op == "D") {
        fields.emplace_back("D", single_layer_D(f, heights));
      } else if (op == "N") {
        fields.emplace_back("N", neumann_layer_N(f, heights, pol));
      } else {
        const auto g = grad_N(f, heights, pol);
        for (int a = 0; a < 3; ++a) fields.emplace_back("dN" + std::to_string(a + 1), g[a]);
      }
      json maxes = json::object();
      for (const auto& [name, field] : fields) {
        json per = json::array();
        for (std::size_t k = 0; k < heights.size(); ++k) {
          const SampledFunction u = field.materialize(k);
          per.push_back(number(u.max_abs()));
          if (!out_prefix.empty()) write_grid(out_prefix + "_" + name + "_" + std::to_string(k) + ".grid", u);
        }
        maxes[name] = per;
      }
      j["max_abs"] = maxes;
      if (op != "D") j["neumann_recovery_defect"] = number(max_diff(neumann_data_of_N(f, pol), pol == ZeroModePolicy::drop ? subtract_mean(f) : f));
    } else if (*solve) {
      const GridSpec g = make_grid(2, solve_w, solve_m, layer_kind == "periodic");
      const BVProblem pb = make_problem(rho, mu, boundary_data("f", f_s, g), boundary_data("V", v_s, g),
                                        boundary_data("b", b_s, g));
      const auto model = make_layer(layer_kind == "free" ? LayerKind::free_space : LayerKind::periodic, g);
      const auto& e = pb.exponents;
      j = {{"command", "solve"},
           {"grid", grid_json(g)},
           {"layer", layer_kind},
           {"data", {{"f", f_s}, {"V", v_s}, {"b", b_s}}},
           {"exponents", {{"n", e.n}, {"rho", e.rho}, {"omega", e.omega}, {"lambda", e.lambda}, {"mu", e.mu},
                          {"r", e.r}, {"p", e.p}, {"q", e.q}}}};
      std::optional<Certificate> certificate;
      if (cert == "auto") {
        const Calibration cal = calibrate(pb, *model, a_norm_geometry(g));
        certificate = cal.certificate;
        j["certificate"] = {{"L", cal.L}, {"M", cal.M}, {"eps", cal.eps}, {"eps_max", number(cal.certificate.eps_max)},
                            {"feasible", cal.certificate.feasible}, {"factor", cal.certificate.factor()},
                            {"holds", cal.certificate.feasible && cal.eps < cal.certificate.eps_max}};
        if (!(cal.certificate.feasible && cal.eps < cal.certificate.eps_max)) {
          err << "morlab: warning: data outside the certified ball; iterating anyway\n";
        }
      }
      PicardOptions opt;
      opt.tol = tol;
      opt.max_iter = max_iter;
      PicardResult res;
      try {
        res = picard_solve(pb, *model, opt);
      } catch (const PicardDivergence& d) {
        j["converged"] = false;
        j["iterations"] = d.state().iterations;
        j["differences"] = d.state().differences;
        j["error"] = d.what();
        emit(j, json_path, out);
        err << "morlab: " << d.what() << "\n";
        return kCheckFailed;
      }
      const Residual rs = residual(pb, *model, res.data);
      j["converged"] = res.state.converged;
      j["iterations"] = res.state.iterations;
      j["a_norms"] = res.state.a_norms;
      j["differences"] = res.state.differences;
      double theta = 0.0;
      for (std::size_t k = 1; k < res.state.differences.size(); ++k) {
        theta = std::max(theta, res.state.differences[k] / res.state.differences[k - 1]);
      }
      j["max_step_ratio"] = theta;
      j["residual"] = {{"interior", rs.interior}, {"boundary", rs.boundary}};
      if (!trace_out.empty()) {
        write_grid(trace_out, res.trace);
        j["trace_output"] = trace_out;
      }
      if (!slab_s.empty()) {
        if (slab_prefix.empty()) throw ConfigError("--slab-heights needs --slab-prefix");
        const std::vector<double> hs = parse_list("slab-heights", slab_s);
        json files = json::array();
        for (std::size_t k = 0; k < hs.size(); ++k) {
          const std::string path = slab_prefix + "_" + std::to_string(k) + ".grid";
          write_grid(path, model->at_height(res.data, hs[k]));
          files.push_back({{"height", hs[k]}, {"file", path}});
        }
        j["slabs"] = files;
      }
      bool ok = res.state.converged;
      if (certificate && certificate->feasible) ok = ok && theta <= certificate->factor() + 1e-6;
      emit(j, json_path, out);
      return ok ? kPass : kCheckFailed;
    } else if (*sharp) {
      DivergenceOptions opt;
      opt.seed = seed;
      opt.placement = placement == "middle" ? CantorPlacement::middle : CantorPlacement::random_slot;
      const auto rows = divergence_report(r, smu, sp, slambda, depth_lo, depth, opt);
      std::ostringstream csv;
      csv << std::setprecision(10) << "N,g_norm,measured,lower_bound,ratio\n";
      for (const auto& row : rows) {
        csv << row.depth << "," << row.g_norm << "," << row.measured << "," << row.lower_bound << "," << row.ratio << "\n";
      }
      if (csv_path.empty()) {
        out << csv.str();
      } else {
        std::ofstream os(csv_path);
        if (!os) throw ConfigError("cannot open '" + csv_path + "' for writing");
        os << csv.str();
      }
      bool increasing = true;
      for (std::size_t k = 1; k < rows.size(); ++k) increasing = increasing && rows[k].ratio > rows[k - 1].ratio;
      if (!json_path.empty()) {
        json t = {{"command", "sharpness"}, {"r", r}, {"mu", smu}, {"p", sp}, {"lambda", slambda},
                  {"increasing", increasing}, {"final_ratio", rows.back().ratio}};
        emit(t, json_path, out);
      }
      if (expect_ratio > 0.0 && !(increasing && rows.back().ratio >= expect_ratio)) {
        err << "morlab: ratios " << (increasing ? "increase" : "do not increase") << ", final "
            << rows.back().ratio << " vs expected " << expect_ratio << "\n";
        return kCheckFailed;
      }
      return kPass;
    } else if (*verify) {
      std::vector<Row> rows;
      if (suite == "oracles" || suite == "all") rows = oracle_suite(verify_m);
      if (suite == "layer" || suite == "all") {
        for (auto& row : layer_suite()) rows.push_back(row);
      }
      bool ok = true;
      json table = json::array();
      for (const auto& row : rows) {
        out << (row.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(18) << row.name << row.detail << "\n";
        table.push_back({{"check", row.name}, {"pass", row.pass}, {"detail", row.detail}});
        ok = ok && row.pass;
      }
      if (!json_path.empty()) emit({{"command", "verify"}, {"suite", suite}, {"checks", table}}, json_path, out);
      return ok ? kPass : kCheckFailed;
    } else if (*corpus) {
      if (*list) {
        const auto entries = build_corpus({cdim, cm, cw}, version);
        for (const auto& e : entries) out << e.name << "\t" << e.family << "\t" << hash_hex(e.hash) << "\t" << e.params << "\n";
        return kPass;
      }
      if (*cverify) {
        verify_manifest(build_corpus({}, version), version);
        out << "corpus version " << version << " matches its frozen hashes\n";
        return kPass;
      }
      const CorpusEntry e = load_corpus_entry(load_name, {cdim, cm, cw}, version);
      j = {{"command", "corpus load"}, {"name", e.name}, {"family", e.family}, {"params", e.params},
           {"hash", hash_hex(e.hash)}, {"version", version}, {"grid", grid_json(e.f.grid)}};
      if (!out_path.empty()) {
        write_grid(out_path, e.f);
        j["output"] = out_path;
      }
    }
    emit(j, json_path, out);
    return kPass;
  } catch (const CorpusError& e) {
    err << "morlab: " << e.what() << "\n";
    return *corpus && *cverify ? kCheckFailed : kConfigError;
  } catch (const ConfigError& e) {
    err << "morlab: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "morlab: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace morlab::cli
