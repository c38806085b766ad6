#pragma once

// Branching points Sigma_n: the values of a where Sp_n(a, .) has a multiple
// root, i.e. the zeros of disc_lambda Sp_n.

#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qes/aberth.hpp"
#include "qes/cache.hpp"
#include "qes/exact_poly.hpp"
#include "qes/point_set.hpp"

namespace qes {

struct SigmaOptions {
  int cap = 40;
  int jobs = 1;
  const Cache* cache = nullptr;
  AberthOptions aberth;
};

/// Primitive integer polynomial in a with positive leading coefficient;
/// degree n(n+1)/2 or DegreeMismatch.
IntPoly sigma_polynomial(int n, const SigmaOptions& opts = {});

struct GridIndex {
  int row = 0;     // 1 .. 2n-1 from the bottom; real points sit in row n
  int column = 0;  // 1 .. n from the left; column j holds n+1-j points
};

struct BranchSet {
  int n = 0;
  IntPoly disc_poly;
  PointSet points;                               // sorted by (re, im)
  std::optional<std::vector<GridIndex>> grid;    // parallel to points
  std::string grid_error;                        // why indexing failed, if it did
};

/// Row/column labels by 1-D gap clustering. Throws IndexingAmbiguity when the
/// bands are not clearly separated or the column sizes are wrong.
std::vector<GridIndex> index_grid(const std::vector<cd>& points, int n);

BranchSet sigma_points(int n, const SigmaOptions& opts = {});

/// (27/4)^(1/3) n^(2/3), equal to 3 n^(2/3) / 4^(1/3).
double sigma_scale(int n);
PointSet scaled_sigma(int n, const SigmaOptions& opts = {});

struct SetComparison {
  std::size_t size_a = 0, size_b = 0;
  double hausdorff = 0.0;
  double mean_nn = 0.0;  // average of the two directed mean nearest-neighbour distances
  std::optional<double> assignment_cost;  // only for equal sizes
};
SetComparison compare_sets(const PointSet& a, const PointSet& b);
nlohmann::json to_json(const SetComparison& c);

struct Window {
  double re_min, re_max, im_min, im_max;
  bool contains(cd z) const {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
  }
};

struct LatticePair {
  cd from, to;
  double drift = 0.0;
  double spacing = 0.0;  // nearest-neighbour distance of `from` inside the first set
};

/// Matches each point of a inside the window to its nearest point of b.
std::vector<LatticePair> lattice_probe(const PointSet& a, const PointSet& b, const Window& w);
nlohmann::json to_json(const BranchSet& s);
nlohmann::json to_json(const std::vector<LatticePair>& pairs);

}  // namespace qes
