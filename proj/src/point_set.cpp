#include "qes/point_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qes/assignment.hpp"

namespace qes {

bool lex_less(const cd& x, const cd& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

double PointSet::max_modulus() const {
  double m = 0.0;
  for (const auto& z : points) m = std::max(m, std::abs(z));
  return m;
}

void PointSet::sort_lex() { std::sort(points.begin(), points.end(), lex_less); }

PointSet PointSet::scaled(double factor) const {
  PointSet out = *this;
  for (auto& z : out.points) z /= factor;
  out.scale = scale * factor;
  return out;
}

std::string format_double(double x, int digits) {
  if (x == 0.0) return "0";  // folds -0 as well
  char buf[64];
  std::to_chars_result r = digits >= 17 ? std::to_chars(buf, buf + sizeof buf, x)
                                        : std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return std::string(buf, r.ptr);
}

nlohmann::json complex_json(const cd& z, int digits) {
  // Stored as strings to keep the byte representation under our control.
  return nlohmann::json::array({format_double(z.real(), digits), format_double(z.imag(), digits)});
}

std::string to_csv(const PointSet& s, int digits) {
  std::string out = "re,im\n";
  for (const auto& z : s.points) out += format_double(z.real(), digits) + "," + format_double(z.imag(), digits) + "\n";
  return out;
}

nlohmann::json to_json(const PointSet& s, int digits) {
  nlohmann::json j;
  j["label"] = s.label;
  j["scale"] = format_double(s.scale, digits);
  j["meta"] = s.meta;
  auto pts = nlohmann::json::array();
  for (const auto& z : s.points) pts.push_back(complex_json(z, digits));
  j["points"] = pts;
  return j;
}

PointSet point_set_from_json(const nlohmann::json& j) {
  PointSet s;
  s.label = j.value("label", "");
  s.scale = std::stod(j.value("scale", std::string("1")));
  if (j.contains("meta")) s.meta = j["meta"];
  for (const auto& p : j.at("points")) s.points.emplace_back(std::stod(p[0].get<std::string>()), std::stod(p[1].get<std::string>()));
  return s;
}

bool multiset_close(const std::vector<cd>& a, const std::vector<cd>& b, double tol) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  auto perm = match_points(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[static_cast<std::size_t>(perm[i])]) > tol) return false;
  return true;
}

cd parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  char last = s.back();
  bool imag = last == 'i' || last == 'I' || last == 'j';
  if (!imag) return {std::stod(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto coef = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  if (split == std::string::npos) return {0.0, coef(s)};
  return {std::stod(s.substr(0, split)), coef(s.substr(split))};
}

std::string complex_to_string(const cd& z) {
  std::string im = format_double(std::fabs(z.imag()));
  return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

}  // namespace qes
