#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

namespace qes {

using cd = std::complex<double>;

/// Finite multiset of complex points with a label and free-form metadata.
struct PointSet {
  std::vector<cd> points;
  std::string label;
  double scale = 1.0;  // factor the raw points were divided by
  nlohmann::json meta = nlohmann::json::object();

  std::size_t size() const { return points.size(); }
  double max_modulus() const;
  /// Sort by (re, im); the order used for every export.
  void sort_lex();
  PointSet scaled(double factor) const;  // points / factor
};

bool lex_less(const cd& x, const cd& y);

std::string to_csv(const PointSet& s, int digits = 17);
nlohmann::json to_json(const PointSet& s, int digits = 17);
PointSet point_set_from_json(const nlohmann::json& j);

/// Fixed-width decimal used in exports, so output bytes are deterministic.
std::string format_double(double x, int digits = 17);
nlohmann::json complex_json(const cd& z, int digits = 17);

/// Multiset equality up to tol, via optimal assignment.
bool multiset_close(const std::vector<cd>& a, const std::vector<cd>& b, double tol);

/// Parses "re+imi", "re-imi", "imi", "re" (also accepts 'I' / 'j').
cd parse_complex(const std::string& text);
std::string complex_to_string(const cd& z);

}  // namespace qes
