// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails. Criteria can be selected with --only 3,7.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qes/bkw.hpp"
#include "qes/branching.hpp"
#include "qes/errors.hpp"
#include "qes/monodromy.hpp"
#include "qes/quaddiff.hpp"
#include "qes/spectral.hpp"
#include "qes/yv.hpp"
#include "qes/zcase.hpp"

#ifndef QES_CLI_PATH
#define QES_CLI_PATH "qes"
#endif

using namespace qes;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects sub-checks; the criterion passes only if all of them do.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failed_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  Outcome done() const {
    std::string d;
    for (const auto& s : notes_) d += (d.empty() ? "" : "; ") + s;
    for (const auto& s : failed_) d += (d.empty() ? "" : "; ") + std::string("failed: ") + s;
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  std::vector<std::string> notes_, failed_;
};

std::string fmt(double x, int digits = 4) { return format_double(x, digits); }

Outcome exact_structure() {
  Verdict v;
  int bad = 0;
  for (int n = 1; n <= 60; ++n) {
    CertificationReport r = certify(n);
    if (!r.structure_ok || !r.all_ok()) {
      ++bad;
      v.require(false, "n = " + std::to_string(n));
    }
  }
  v.note("60 values of n certified, " + std::to_string(bad) + " failures");
  return v.done();
}

Outcome oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(20240601);
  int checked = 0;
  for (int n = 1; n <= 12; ++n)
    for (int k = 0; k < 20; ++k) {
      mpq_class a = oracle::random_rational(rng);
      bool same = spectral_polynomial(n, a) == oracle::charpoly_cofactor(oracle::spectral_matrix(n, a));
      v.require(same, "n = " + std::to_string(n) + ", a = " + a.get_str());
      ++checked;
    }
  v.note(std::to_string(checked) + " (n, a) pairs compared coefficientwise");
  return v.done();
}

Outcome max_modulus_limit() {
  Verdict v;
  std::vector<double> err;
  for (int n : {50, 100, 200}) {
    double m = scaled_spectrum(n, 0.0, ScalingRule::constant).max_modulus();
    err.push_back(std::fabs(m - 0.75));
    v.note("n=" + std::to_string(n) + ": " + fmt(m, 6));
  }
  v.require(err[2] < 0.075, "within 10% at n = 200");
  v.require(err[2] < err[1] && err[1] < err[0], "error decreasing");
  return v.done();
}

Outcome cauchy_consistency() {
  Verdict v;
  PointSet s = scaled_spectrum(200, 0.0, ScalingRule::constant);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    cd beta = std::polar(2.0, 2 * M_PI * (k + 0.25) / 10);
    worst = std::max(worst, std::abs(cauchy_nu(beta, 0.0).value - empirical_cauchy(s, beta)));
  }
  v.note("max difference " + fmt(worst));
  v.require(worst < 1e-2, "difference below 1e-2");
  return v.done();
}

Outcome branch_endpoint_algebra() {
  Verdict v;
  v.require(grids_equal(endpoint_polynomial(), branch_point_polynomial(mpq_class(1, 2))), "polynomial identity");
  v.require(dsc_exact(mpq_class(27, 4), mpq_class(1, 2)) == 0, "Dsc(3/4^(1/3), 1/2) = 0");
  auto e = support_endpoints(0.0);
  std::vector<cd> expect;
  for (int k = 0; k < 3; ++k) expect.push_back(std::polar(0.75, 2 * M_PI * k / 3));
  v.require(multiset_close({e.begin(), e.end()}, expect, 1e-12), "endpoints at a = 0");
  return v.done();
}

Outcome real_interval() {
  Verdict v;
  for (double a : {1.9, 2.5, 3.0}) {
    bool real = true;
    for (int k = 0; k < 1000; ++k)
      for (auto b : branch_points(a, (k + 0.5) / 1000.0)) real = real && std::fabs(b.imag()) < 1e-9;
    v.require(real, "branch points real at a = " + fmt(a));

    SupportSample s = union_support(a, uniform_tau_grid(201));
    auto cloud = s.cloud();
    double lo = 1e300, hi = -1e300, im = 0.0;
    for (auto z : cloud) {
      lo = std::min(lo, z.real());
      hi = std::max(hi, z.real());
      im = std::max(im, std::fabs(z.imag()));
    }
    std::vector<double> ends;
    for (auto z : support_endpoints(a))
      if (std::fabs(z.imag()) < 1e-9) ends.push_back(z.real());
    std::sort(ends.begin(), ends.end());
    v.require(ends.size() >= 2, "two real endpoints at a = " + fmt(a));
    if (ends.size() >= 2) {
      const double e0 = ends[ends.size() - 2], e1 = ends.back();
      const double d = std::max(std::fabs(lo - e0), std::fabs(hi - e1));
      v.note("a=" + fmt(a) + ": [" + fmt(lo, 8) + ", " + fmt(hi, 8) + "] vs endpoints, gap " + fmt(d, 2));
      v.require(d < 1e-6, "interval matches endpoints at a = " + fmt(a));
    }
    v.require(im < 1e-9, "support is real at a = " + fmt(a));
  }
  return v.done();
}

Outcome yv_suite() {
  Verdict v;
  YVSequence s;
  try {
    s = yv_generate(40);
  } catch (const NotDivisible& e) {
    v.require(false, e.what());
    return v.done();
  }
  bool deg = true;
  for (int n = 0; n <= 40; ++n) deg = deg && s.polys[n].degree() == n * (n + 1) / 2;
  v.require(deg, "degrees n(n+1)/2");
  v.require(s.polys[2] == IntPoly{4, 0, 0, 1}, "YV_2");
  v.require(s.polys[3] == IntPoly{-80, 0, 0, 20, 0, 0, 1}, "YV_3");
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n)
    for (cd t : {cd(0.9, 0.4), cd(-2.1, 1.7), cd(3.3, -0.6), cd(0.2, -2.5)}) worst = std::max(worst, painleve_residual(n, t));
  v.note("Painleve residual " + fmt(worst, 2));
  v.require(worst < 1e-6, "Painleve residual below 1e-6");
  const double target = std::pow(4.5, 2.0 / 3.0);
  const double ratio = yv_zeros(40).max_modulus() / std::pow(40.0, 2.0 / 3.0);
  v.note("max|Z_40|/40^(2/3) = " + fmt(ratio, 5) + " vs " + fmt(target, 5) + " (" + fmt(100 * (ratio / target - 1), 3) +
         "%)");
  v.require(std::fabs(ratio / target - 1) <= 0.10, "max modulus within 10%");
  return v.done();
}

Outcome sigma_suite() {
  Verdict v;
  for (int n : {1, 2, 5, 10, 20, 40}) {
    IntPoly p = sigma_polynomial(n);
    v.require(p.degree() == n * (n + 1) / 2, "degree at n = " + std::to_string(n));
    if (n == 40) v.note("deg Sigma_40 polynomial = " + std::to_string(p.degree()));
  }
  BranchSet b2 = sigma_points(2);
  std::vector<cd> expect;
  for (int k = 0; k < 3; ++k) expect.push_back(3.0 * std::pow(2.0, -4.0 / 3.0) * std::polar(1.0, 2 * M_PI * k / 3));
  v.require(multiset_close(b2.points.points, expect, 1e-10), "Sigma_2");
  // Integer coefficients make conjugation symmetry exact; the computed
  // points must reflect it as well.
  for (int n : {10, 20}) {
    BranchSet b = sigma_points(n);
    std::vector<cd> conj;
    for (auto z : b.points.points) conj.push_back(std::conj(z));
    v.require(multiset_close(b.points.points, conj, 1e-9), "conjugation at n = " + std::to_string(n));
  }
  return v.done();
}

Outcome triangle_reproduction() {
  Verdict v;
  std::vector<double> nn;
  for (int n : {10, 20}) {
    SetComparison c = compare_sets(scaled_sigma(n), scaled_zeros(n));
    v.require(c.size_a == c.size_b, "equal sizes at n = " + std::to_string(n));
    nn.push_back(c.mean_nn);
    v.note("n=" + std::to_string(n) + ": |sets| " + std::to_string(c.size_a) + ", mean NN " + fmt(c.mean_nn));
  }
  v.require(nn[1] < nn[0], "mean NN decreases");
  return v.done();
}

Outcome monodromy_suite() {
  Verdict v;
  KacReport k = kac_limit_check(8, 1.0);
  v.require(k.kac_max_deviation < 1e-10, "Kac spectrum");
  MonodromyResult big = track_path(8, circle_path(500.0));
  v.require(big.permutation == std::vector<int>{8, 7, 6, 5, 4, 3, 2, 1, 0}, "big circle reversal");
  int entries = 0;
  for (int n = 1; n <= 6; ++n) {
    MonodromyTable t = monodromy_table(sigma_points(n));
    for (const auto& e : t.entries) {
      ++entries;
      auto tr = adjacent_transposition(e.permutation);
      const std::string at = "n=" + std::to_string(n) + " (" + std::to_string(e.grid.row) + "," + std::to_string(e.grid.column) + ")";
      v.require(tr.has_value(), "transposition " + at);
      v.require(e.step_stable, "step doubling " + at);
      v.require(e.deformation_stable.value_or(false), "deformation " + at);
    }
  }
  v.note(std::to_string(entries) + " standard paths, Kac deviation " + fmt(k.kac_max_deviation, 2));
  return v.done();
}

Outcome topology_cases() {
  Verdict v;
  const std::vector<std::pair<cd, Topology>> cases{
      {cd(0.5, -0.5), Topology::three_legs},
      {cd(2.0 / 3.0, -1.0), Topology::one_arc},
      {cd(0.8, -2.0 / 3.0), Topology::singular},
  };
  for (const auto& [a, want] : cases) {
    try {
      Topology got = support_topology(a).topology;
      v.note(complex_to_string(a) + " -> " + to_string(got));
      v.require(got == want, complex_to_string(a));
    } catch (const AmbiguousTopology& e) {
      v.require(false, complex_to_string(a) + " ambiguous");
    }
  }
  return v.done();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs the command line tool; stdout goes to a file inside the run directory.
int run_cli(const std::vector<std::string>& args, const fs::path& out_dir, const fs::path& cache) {
  std::string cmd = "QES_CACHE_DIR='" + cache.string() + "' '" + std::string(QES_CLI_PATH) + "' --out '" + out_dir.string() + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " > '" + (out_dir / "stdout.txt").string() + "' 2>&1";
  fs::create_directories(out_dir);
  return std::system(cmd.c_str());
}

Outcome determinism() {
  Verdict v;
  const fs::path root = fs::temp_directory_path() / "qes_acceptance_determinism";
  fs::remove_all(root);
  const fs::path cache = root / "cache";
  const std::vector<std::vector<std::string>> commands{
      {"figure", "fig1"},
      {"figure", "figTau"},
      {"--grid", "21", "figure", "figA1"},
      {"figure", "figA3"},
      {"figure", "figAtau"},
      {"figure", "figA"},
      {"--n", "20", "figure", "triangle"},
      {"figure", "triangle10"},
      {"figure", "figslopes"},
      {"--n", "16", "figure", "lattice"},
      {"--n", "12", "verify", "exact"},
      {"verify", "asymptotic"},
      {"--n", "4", "verify", "monodromy"},
      {"sweep", "sigma", "--ns", "6:9"},
      {"sweep", "certify", "--ns", "1:12"},
      {"cache", "ls"},
  };
  int compared = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string label;
    for (const auto& a : commands[c]) label += (label.empty() ? "" : " ") + a;
    std::vector<fs::path> runs;
    for (int rep = 0; rep < 3; ++rep) {
      fs::path dir = root / ("cmd" + std::to_string(c)) / ("run" + std::to_string(rep));
      int rc = run_cli(commands[c], dir, cache);
      v.require(rc == 0, label + " exit status");
      runs.push_back(dir);
    }
    // Run 0 may fill the cache; runs 1 and 2 are both warm.
    for (int rep : {0, 1}) {
      std::set<std::string> a, b;
      for (const auto& e : fs::recursive_directory_iterator(runs[rep])) if (e.is_regular_file()) a.insert(fs::relative(e.path(), runs[rep]).string());
      for (const auto& e : fs::recursive_directory_iterator(runs[rep + 1])) if (e.is_regular_file()) b.insert(fs::relative(e.path(), runs[rep + 1]).string());
      v.require(a == b, label + " file list");
      for (const auto& f : a) {
        if (!b.count(f)) continue;
        std::string x = read_file(runs[rep] / f), y = read_file(runs[rep + 1] / f);
        // stdout of figure commands echoes the directory, which differs by run.
        if (f == "stdout.txt" && commands[c][commands[c].size() - 2] == "figure") continue;
        v.require(x == y, label + ": " + f);
        ++compared;
      }
    }
  }
  v.note(std::to_string(commands.size()) + " commands, " + std::to_string(compared) + " file comparisons");
  fs::remove_all(root);
  return v.done();
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--only") {
      std::stringstream ss(argv[i + 1]);
      std::string item;
      while (std::getline(ss, item, ',')) only.insert(std::stoi(item));
    }

  const std::vector<Criterion> criteria{
      {1, "exact structure and interlacing, n <= 60", exact_structure},
      {2, "recurrence vs cofactor expansion, n <= 12", oracle_equivalence},
      {3, "max scaled modulus tends to 3/4", max_modulus_limit},
      {4, "Cauchy transform vs empirical spectrum", cauchy_consistency},
      {5, "branch/endpoint algebra", branch_endpoint_algebra},
      {6, "real branch points and real support interval", real_interval},
      {7, "Yablonskii-Vorob'ev suite", yv_suite},
      {8, "branching set suite", sigma_suite},
      {9, "branching set vs scaled YV zeros", triangle_reproduction},
      {10, "monodromy suite", monodromy_suite},
      {11, "support topology of three labelled cases", topology_cases},
      {12, "byte-identical reruns", determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s %2d  %s  [%.1fs]  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
