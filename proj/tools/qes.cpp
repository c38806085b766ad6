// qes: command-line front end. Every output file is deterministic for a given
// configuration; the configuration that produced a directory is stored in its
// manifest.json.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qes/bkw.hpp"
#include "qes/branching.hpp"
#include "qes/cache.hpp"
#include "qes/monodromy.hpp"
#include "qes/quaddiff.hpp"
#include "qes/spectral.hpp"
#include "qes/yv.hpp"
#include "qes/zcase.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qes;

namespace {

struct RunConfig {
  std::optional<int> n;
  std::optional<std::string> a;
  std::optional<int> grid;
  std::optional<double> tol;
  std::string out = "out";
  std::string cache_dir;
  int jobs = 1;
  long precision = 64;
  bool timing = false;

  json to_json() const {
    json j;
    j["n"] = n ? json(*n) : json();
    j["a"] = a ? json(*a) : json();
    j["grid"] = grid ? json(*grid) : json();
    j["tol"] = tol ? json(*tol) : json();
    j["precision"] = precision;
    return j;
  }
};

// Values from a JSON config file fill in whatever the command line left unset.
void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  json j = json::parse(in);
  auto unset = [&](const char* flag) { return app.count(flag) == 0; };
  if (j.contains("n") && unset("--n")) cfg.n = j["n"].get<int>();
  if (j.contains("a") && unset("--a")) cfg.a = j["a"].get<std::string>();
  if (j.contains("grid") && unset("--grid")) cfg.grid = j["grid"].get<int>();
  if (j.contains("tol") && unset("--tol")) cfg.tol = j["tol"].get<double>();
  if (j.contains("out") && unset("--out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("cache_dir") && unset("--cache-dir")) cfg.cache_dir = j["cache_dir"].get<std::string>();
  if (j.contains("jobs") && unset("--jobs")) cfg.jobs = j["jobs"].get<int>();
  if (j.contains("precision") && unset("--precision")) cfg.precision = j["precision"].get<long>();
}

Cache make_cache(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return Cache(cfg.cache_dir);
  return Cache::from_environment();
}

class Writer {
 public:
  Writer(fs::path dir, std::string name, const RunConfig& cfg) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
    manifest_["figure"] = std::move(name);
    manifest_["config"] = cfg.to_json();
    manifest_["ops"] = json::array();
    manifest_["files"] = json::array();
  }
  void op(const std::string& what, json params) { manifest_["ops"].push_back({{"op", what}, {"params", std::move(params)}}); }
  void text(const std::string& file, const std::string& body) {
    std::ofstream out(dir_ / file, std::ios::binary | std::ios::trunc);
    out << body;
    manifest_["files"].push_back(file);
  }
  void csv(const std::string& file, const PointSet& s) { text(file, to_csv(s)); }
  void write_json(const std::string& file, const json& j) { text(file, j.dump(2) + "\n"); }
  void finish() {
    std::ofstream out(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
    out << manifest_.dump(2) << "\n";
  }

 private:
  fs::path dir_;
  json manifest_;
};

EigenOptions eigen_options(const RunConfig& cfg) {
  EigenOptions o;
  if (cfg.tol) o.tol = *cfg.tol;
  return o;
}

AberthOptions aberth_options(const RunConfig& cfg) {
  AberthOptions o;
  o.start_bits = cfg.precision;
  return o;
}

std::string a_label(cd a) { return complex_to_string(a); }

// Figures ------------------------------------------------------------------

void fig1(Writer& w, const RunConfig& cfg) {
  const int n = cfg.n.value_or(200);
  const cd a = cfg.a ? parse_complex(*cfg.a) : cd(0.0, 0.0);
  w.op("scaled_spectrum", {{"n", n}, {"a", a_label(a)}, {"scaling", "constant"}});
  PointSet s = scaled_spectrum(n, a, ScalingRule::constant, eigen_options(cfg));
  w.csv("spectrum.csv", s);
  w.write_json("summary.json", {{"n", n}, {"max_modulus", format_double(s.max_modulus(), 12)}, {"meta", s.meta}});
}

void fig_tau(Writer& w, const RunConfig& cfg) {
  const int k = cfg.n.value_or(150);
  const cd a = cfg.a ? parse_complex(*cfg.a) : cd(0.0, 0.0);
  json bp = json::array();
  for (double tau : {0.25, 0.5, 0.75}) {
    w.op("recurrence_roots", {{"tau", tau}, {"a", a_label(a)}, {"k_max", k}});
    PointSet r = recurrence_roots(tau, a, k);
    w.csv("roots_tau_" + format_double(tau) + ".csv", r);
    json pts = json::array();
    for (const auto& z : branch_points(a, tau)) pts.push_back(complex_json(z, 15));
    bp.push_back({{"tau", tau}, {"branch_points", pts}});
  }
  w.write_json("branch_points.json", bp);
}

void fig_a1(Writer& w, const RunConfig& cfg) {
  const int n = cfg.n.value_or(200);
  const int grid = cfg.grid.value_or(41);
  std::vector<cd> as = cfg.a ? std::vector<cd>{parse_complex(*cfg.a)} : std::vector<cd>{{0.5, -0.5}, {0.0, 0.5}, {1.0, 1.0}};
  for (std::size_t i = 0; i < as.size(); ++i) {
    const cd a = as[i];
    const std::string tag = "case" + std::to_string(i + 1);
    w.op("union_support", {{"a", a_label(a)}, {"tau_grid", grid}});
    SupportSample s = union_support(a, uniform_tau_grid(grid));
    PointSet cloud;
    cloud.points = s.cloud();
    cloud.sort_lex();
    w.csv(tag + "_support.csv", cloud);
    w.op("scaled_spectrum", {{"n", n}, {"a", a_label(a)}, {"scaling", "two_thirds"}});
    w.csv(tag + "_spectrum.csv", scaled_spectrum(n, a, ScalingRule::two_thirds, eigen_options(cfg)));
  }
}

void fig_a3(Writer& w, const RunConfig& cfg) {
  const int grid = cfg.grid.value_or(101);
  const cd a = cfg.a ? parse_complex(*cfg.a) : cd(3.0, 0.0);
  w.op("union_support", {{"a", a_label(a)}, {"tau_grid", grid}});
  SupportSample s = union_support(a, uniform_tau_grid(grid));
  PointSet cloud;
  cloud.points = s.cloud();
  cloud.sort_lex();
  w.csv("support.csv", cloud);
  w.op("support_endpoints", {{"a", a_label(a)}});
  json e = json::array();
  for (const auto& z : support_endpoints(a)) e.push_back(complex_json(z, 15));
  w.write_json("endpoints.json", {{"a", a_label(a)}, {"endpoints", e}});
}

void fig_atau(Writer& w, const RunConfig& cfg) {
  const int grid = cfg.grid.value_or(201);
  w.op("dsc_zero_curve", {{"samples", grid}});
  std::ostringstream os;
  os << "tau,a\n";
  for (int k = 0; k < grid; ++k) {
    const double tau = grid == 1 ? 0.5 : static_cast<double>(k) / (grid - 1);
    os << format_double(tau) << "," << format_double(std::cbrt(27.0 * tau - 27.0 * tau * tau)) << "\n";
  }
  w.text("curve.csv", os.str());
  w.write_json("maximum.json", {{"tau", "1/2"}, {"a", format_double(3.0 / std::cbrt(4.0))}});
}

void fig_a(Writer& w, const RunConfig& cfg) {
  TopologyOptions topts;
  if (cfg.n) topts.n_probe = *cfg.n;
  std::vector<cd> as = cfg.a ? std::vector<cd>{parse_complex(*cfg.a)}
                             : std::vector<cd>{{0.5, -0.5}, {0.8, -2.0 / 3.0}, {2.0 / 3.0, -1.0}};
  json report = json::array();
  for (std::size_t i = 0; i < as.size(); ++i) {
    const cd a = as[i];
    const std::string tag = "case" + std::to_string(i + 1);
    w.op("scaled_spectrum", {{"n", topts.n_probe}, {"a", a_label(a)}, {"scaling", "two_thirds"}});
    PointSet s = scaled_spectrum(topts.n_probe, a, ScalingRule::two_thirds, eigen_options(cfg));
    w.csv(tag + "_spectrum.csv", s);
    w.op("support_topology", {{"a", a_label(a)}, {"n_probe", topts.n_probe}});
    json entry{{"a", a_label(a)}};
    try {
      TopologyReport t = classify_cloud(s.points, topts);
      entry["topology"] = to_string(t.topology);
      entry["leaves"] = t.leaves;
      entry["junctions"] = t.junctions;
      entry["spurs"] = t.spurs;
      entry["max_turn_degrees"] = format_double(t.max_turn_degrees, 6);
    } catch (const AmbiguousTopology& e) {
      entry["topology"] = nullptr;
      entry["error"] = e.what();
    }
    json ends = json::array();
    for (const auto& z : support_endpoints(a)) ends.push_back(complex_json(z, 15));
    entry["endpoints"] = ends;
    report.push_back(entry);
  }
  w.write_json("topology.json", report);
}

SigmaOptions sigma_options(const RunConfig& cfg, const Cache* cache) {
  SigmaOptions o;
  o.jobs = cfg.jobs;
  o.cache = cache && cache->enabled() ? cache : nullptr;
  o.aberth = aberth_options(cfg);
  return o;
}

void fig_triangle(Writer& w, const RunConfig& cfg, const Cache& cache) {
  const int n = cfg.n.value_or(40);
  w.op("scaled_sigma", {{"n", n}});
  PointSet s = scaled_sigma(n, sigma_options(cfg, &cache));
  w.csv("sigma.csv", s);
  w.op("scaled_zeros", {{"n", n}});
  YVZeroOptions yo;
  yo.aberth = aberth_options(cfg);
  PointSet z = scaled_zeros(n, yo);
  w.csv("zeros.csv", z);
  w.op("compare_sets", {{"a", "sigma"}, {"b", "zeros"}});
  json c = to_json(compare_sets(s, z));
  c["max_modulus_sigma"] = format_double(s.max_modulus(), 12);
  c["max_modulus_zeros"] = format_double(z.max_modulus(), 12);
  w.write_json("compare.json", c);
}

void fig_triangle10(Writer& w, const RunConfig& cfg, const Cache& cache) {
  const int n = cfg.n.value_or(10);
  w.op("sigma_points", {{"n", n}});
  BranchSet b = sigma_points(n, sigma_options(cfg, &cache));
  w.csv("sigma.csv", b.points);
  w.write_json("branch_set.json", to_json(b));
}

void fig_slopes(Writer& w, const RunConfig& cfg) {
  const int n = cfg.n.value_or(8);
  const double R = 500.0;
  std::vector<cd> as = cfg.a ? std::vector<cd>{parse_complex(*cfg.a)}
                             : std::vector<cd>{std::polar(R, 4.0 * M_PI / 5.0), std::polar(R, 6.0 * M_PI / 5.0)};
  json reports = json::array();
  for (std::size_t i = 0; i < as.size(); ++i) {
    w.op("kac_limit_check", {{"n", n}, {"a", a_label(as[i])}});
    KacReport r = kac_limit_check(n, as[i]);
    PointSet roots = eigenvalues(n, as[i], eigen_options(cfg)).scaled(std::pow(static_cast<double>(n), 4.0 / 3.0));
    w.csv("case" + std::to_string(i + 1) + "_roots.csv", roots);
    reports.push_back(to_json(r));
  }
  w.write_json("kac.json", reports);
}

void fig_lattice(Writer& w, const RunConfig& cfg, const Cache& cache) {
  const int n = cfg.n.value_or(34);
  const double half = cfg.grid ? static_cast<double>(*cfg.grid) : 3.0;
  Window win{-half, half, -half, half};
  SigmaOptions so = sigma_options(cfg, &cache);
  w.op("sigma_points", {{"n", n}});
  BranchSet a = sigma_points(n, so);
  w.op("sigma_points", {{"n", n + 3}});
  BranchSet b = sigma_points(n + 3, so);
  w.op("lattice_probe", {{"n", n}, {"m", n + 3}, {"window", {-half, half, -half, half}}});
  auto pairs = lattice_probe(a.points, b.points, win);
  w.csv("sigma_" + std::to_string(n) + ".csv", a.points);
  w.csv("sigma_" + std::to_string(n + 3) + ".csv", b.points);
  w.write_json("pairs.json", to_json(pairs));
}

using FigureFn = std::function<void(Writer&, const RunConfig&, const Cache&)>;

const std::map<std::string, FigureFn>& figures() {
  static const std::map<std::string, FigureFn> f{
      {"fig1", [](Writer& w, const RunConfig& c, const Cache&) { fig1(w, c); }},
      {"figTau", [](Writer& w, const RunConfig& c, const Cache&) { fig_tau(w, c); }},
      {"figA1", [](Writer& w, const RunConfig& c, const Cache&) { fig_a1(w, c); }},
      {"triangle", fig_triangle},
      {"figA3", [](Writer& w, const RunConfig& c, const Cache&) { fig_a3(w, c); }},
      {"figAtau", [](Writer& w, const RunConfig& c, const Cache&) { fig_atau(w, c); }},
      {"figA", [](Writer& w, const RunConfig& c, const Cache&) { fig_a(w, c); }},
      {"triangle10", fig_triangle10},
      {"figslopes", [](Writer& w, const RunConfig& c, const Cache&) { fig_slopes(w, c); }},
      {"lattice", fig_lattice},
  };
  return f;
}

int cmd_figure(const std::string& name, const RunConfig& cfg) {
  auto it = figures().find(name);
  if (it == figures().end()) {
    std::string names;
    for (const auto& [k, v] : figures()) names += " " + k;
    throw UnknownFigure("unknown figure '" + name + "'; known:" + names);
  }
  Cache cache = make_cache(cfg);
  Writer w(fs::path(cfg.out) / name, name, cfg);
  it->second(w, cfg, cache);
  w.finish();
  std::cout << (fs::path(cfg.out) / name).string() << "\n";
  return 0;
}

// Verification suites -------------------------------------------------------

struct Check {
  std::string name;
  bool ok;
  json detail;
};

std::vector<Check> suite_exact(const RunConfig& cfg) {
  std::vector<Check> out;
  const int nmax = cfg.n.value_or(60);
  bool all = true;
  json failed = json::array();
  for (int n = 1; n <= nmax; ++n) {
    CertificationReport r = certify(n);
    if (!r.all_ok()) {
      all = false;
      failed.push_back(n);
    }
  }
  out.push_back({"interlacing certified for n <= " + std::to_string(nmax), all, {{"failed", failed}}});
  YVSequence yv = yv_generate(40);
  bool deg = true;
  for (int n = 0; n <= 40; ++n) deg = deg && yv.polys[static_cast<std::size_t>(n)].degree() == n * (n + 1) / 2;
  out.push_back({"YV exact divisibility and degrees, n <= 40", deg, {}});
  bool sig = true;
  for (int n = 1; n <= 12; ++n) sig = sig && sigma_polynomial(n).degree() == n * (n + 1) / 2;
  out.push_back({"sigma polynomial degrees, n <= 12", sig, {}});
  out.push_back({"endpoint cubic equals branch cubic at tau = 1/2",
                 grids_equal(endpoint_polynomial(), branch_point_polynomial(mpq_class(1, 2))), {}});
  out.push_back({"Dsc(3/4^(1/3), 1/2) = 0", dsc_exact(mpq_class(27, 4), mpq_class(1, 2)) == 0, {}});
  return out;
}

std::vector<Check> suite_asymptotic(const RunConfig& cfg) {
  std::vector<Check> out;
  std::vector<double> err;
  json mods = json::array();
  for (int n : {50, 100, 200}) {
    double m = scaled_spectrum(n, 0.0, ScalingRule::constant, eigen_options(cfg)).max_modulus();
    mods.push_back({{"n", n}, {"max_modulus", format_double(m, 12)}});
    err.push_back(std::fabs(m - 0.75));
  }
  out.push_back({"max scaled modulus approaches 3/4",
                 err[2] < 0.075 && err[2] < err[1] && err[1] < err[0], {{"samples", mods}}});
  auto ends = support_endpoints(0.0);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    cd target = std::polar(0.75, 2.0 * M_PI * k / 3.0);
    double best = 1e300;
    for (const auto& e : ends) best = std::min(best, std::abs(e - target));
    worst = std::max(worst, best);
  }
  out.push_back({"endpoints at a = 0 are (3/4) w^k", worst < 1e-12, {{"error", format_double(worst, 3)}}});
  bool real_ok = true;
  for (double a : {1.9, 2.5, 3.0})
    for (int k = 0; k <= 1000 && real_ok; ++k)
      for (const auto& b : branch_points(a, k / 1000.0)) real_ok = real_ok && std::fabs(b.imag()) < 1e-9;
  out.push_back({"branch points real for a >= 3/4^(1/3)", real_ok, {}});
  return out;
}

std::vector<Check> suite_monodromy(const RunConfig& cfg) {
  std::vector<Check> out;
  KacReport k = kac_limit_check(8, 1.0);
  out.push_back({"Kac spectrum n = 8, a = 1", k.kac_max_deviation < 1e-10,
                 {{"deviation", format_double(k.kac_max_deviation, 3)}}});
  MonodromyResult big = track_path(8, circle_path(500.0));
  std::vector<int> rev(9);
  for (int i = 0; i < 9; ++i) rev[static_cast<std::size_t>(i)] = 8 - i;
  out.push_back({"big circle |a| = 500 reverses the order", big.permutation == rev,
                 {{"permutation", permutation_string(big.permutation)}}});
  const int nmax = cfg.n.value_or(6);
  TableOptions to;
  to.jobs = cfg.jobs;
  for (int n = 1; n <= nmax; ++n) {
    BranchSet s = sigma_points(n);
    MonodromyTable t = monodromy_table(s, std::nullopt, to);
    bool ok = true;
    for (const auto& e : t.entries) {
      auto tr = adjacent_transposition(e.permutation);
      ok = ok && tr && *tr == n + 1 - e.grid.column && e.step_stable && e.deformation_stable.value_or(false);
    }
    out.push_back({"standard paths n = " + std::to_string(n) + " give adjacent transpositions", ok, to_json(t)});
  }
  return out;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg) {
  std::vector<Check> checks;
  auto add = [&](std::vector<Check> c) { checks.insert(checks.end(), c.begin(), c.end()); };
  if (suite == "exact" || suite == "all") add(suite_exact(cfg));
  if (suite == "asymptotic" || suite == "all") add(suite_asymptotic(cfg));
  if (suite == "monodromy" || suite == "all") add(suite_monodromy(cfg));
  if (checks.empty()) throw std::runtime_error("unknown suite '" + suite + "' (exact, asymptotic, monodromy, all)");
  json report;
  report["suite"] = suite;
  report["checks"] = json::array();
  bool all = true;
  for (const auto& c : checks) {
    report["checks"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    all = all && c.ok;
  }
  report["ok"] = all;
  std::cout << report.dump(2) << "\n";
  return all ? 0 : 1;
}

// Sweeps ------------------------------------------------------------------

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(std::stoi(item));
    } else {
      int lo = std::stoi(item.substr(0, colon)), hi = std::stoi(item.substr(colon + 1));
      for (int k = lo; k <= hi; ++k) out.push_back(k);
    }
  }
  return out;
}

int cmd_sweep(const std::string& what, const std::string& ns, const RunConfig& cfg) {
  Cache cache = make_cache(cfg);
  std::ostringstream os;
  if (what == "topology") {
    // Classification over a square grid of a.
    const int g = cfg.grid.value_or(9);
    const double half = 1.5;
    TopologyOptions topts;
    if (cfg.n) topts.n_probe = *cfg.n;
    os << "re,im,topology\n";
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        const cd a(-half + 2.0 * half * i / std::max(1, g - 1), -half + 2.0 * half * j / std::max(1, g - 1));
        std::string label;
        try {
          label = to_string(support_topology(a, topts).topology);
        } catch (const AmbiguousTopology&) {
          label = "ambiguous";
        }
        os << format_double(a.real()) << "," << format_double(a.imag()) << "," << label << "\n";
      }
  } else {
    const cd a = cfg.a ? parse_complex(*cfg.a) : cd(0.0, 0.0);
    for (int n : parse_int_list(ns)) {
      if (what == "spectrum") {
        if (os.tellp() == 0) os << "n,max_modulus,method\n";
        PointSet s = scaled_spectrum(n, a, ScalingRule::constant, eigen_options(cfg));
        os << n << "," << format_double(s.max_modulus(), 12) << "," << s.meta.value("method", "") << "\n";
      } else if (what == "sigma") {
        if (os.tellp() == 0) os << "n,degree,max_scaled_modulus\n";
        BranchSet b = sigma_points(n, sigma_options(cfg, &cache));
        os << n << "," << b.disc_poly.degree() << "," << format_double(b.points.max_modulus() / sigma_scale(n), 12) << "\n";
      } else if (what == "yv") {
        if (os.tellp() == 0) os << "n,degree,max_scaled_modulus\n";
        PointSet z = scaled_zeros(n);
        os << n << "," << z.size() << "," << format_double(z.max_modulus(), 12) << "\n";
      } else if (what == "certify") {
        if (os.tellp() == 0) os << "n,structure_ok,all_ok\n";
        CertificationReport r = certify(n);
        os << n << "," << r.structure_ok << "," << r.all_ok() << "\n";
      } else {
        throw std::runtime_error("unknown sweep '" + what + "' (spectrum, sigma, yv, certify, topology)");
      }
    }
  }
  fs::create_directories(cfg.out);
  const fs::path file = fs::path(cfg.out) / ("sweep_" + what + ".csv");
  std::ofstream(file, std::ios::binary | std::ios::trunc) << os.str();
  std::cout << os.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, branching points and monodromy of the quasi-exactly solvable quartic"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_file;
  int n_flag = 0, grid_flag = 0;
  double tol_flag = 0;
  std::string a_flag;
  app.add_option("--n", n_flag, "Size parameter");
  app.add_option("--a", a_flag, "Complex parameter, e.g. 1-2i");
  app.add_option("--grid", grid_flag, "Grid resolution");
  app.add_option("--tol", tol_flag, "Accuracy target");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (default: $QES_CACHE_DIR)");
  app.add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)");
  app.add_option("--precision", cfg.precision, "Starting precision in bits for multiprecision root finding");
  app.add_option("--config", config_file, "JSON file with defaults for the flags above");

  std::string figure_name;
  auto* fig = app.add_subcommand("figure", "Write the data behind a figure");
  fig->add_option("name", figure_name, "fig1, figTau, figA1, triangle, figA3, figAtau, figA, triangle10, figslopes, lattice")
      ->required();

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", suite, "exact, asymptotic, monodromy or all");

  std::string sweep_what, sweep_ns = "10,20,30";
  auto* sw = app.add_subcommand("sweep", "Tabulate a quantity over several n");
  sw->add_option("what", sweep_what, "spectrum, sigma, yv, certify or topology")->required();
  sw->add_option("--ns", sweep_ns, "Comma list of n, ranges as lo:hi");

  auto* cache_cmd = app.add_subcommand("cache", "Inspect the cache");
  cache_cmd->require_subcommand(1);
  auto* cache_ls = cache_cmd->add_subcommand("ls", "List cached artifacts");
  auto* cache_clear = cache_cmd->add_subcommand("clear", "Remove cached artifacts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.count("--n")) cfg.n = n_flag;
    if (app.count("--a")) cfg.a = a_flag;
    if (app.count("--grid")) cfg.grid = grid_flag;
    if (app.count("--tol")) cfg.tol = tol_flag;
    if (!config_file.empty()) apply_config_file(config_file, cfg, app);
    if (cfg.a) parse_complex(*cfg.a);

    if (*fig) return cmd_figure(figure_name, cfg);
    if (*ver) return cmd_verify(suite, cfg);
    if (*sw) return cmd_sweep(sweep_what, sweep_ns, cfg);
    if (*cache_cmd) {
      Cache cache = make_cache(cfg);
      if (!cache.enabled()) {
        std::cerr << "no cache directory (use --cache-dir or QES_CACHE_DIR)\n";
        return 2;
      }
      if (*cache_ls)
        for (const auto& e : cache.list()) std::cout << e.name << "\t" << e.bytes << "\n";
      if (*cache_clear) std::cout << "removed " << cache.clear() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
