#pragma once

#include "retset/dynamics.hpp"
#include "retset/parse.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace retset::testing {

inline TorusPoint point(std::uint32_t p, const std::vector<std::string>& coords) {
  TorusPoint out;
  for (const auto& c : coords) out.push_back(parse_function(c, p));
  return out;
}

inline IntMatrix square(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long x : r) M(i, j++) = x;
    ++i;
  }
  return M;
}

inline Curve curve(std::uint32_t p, std::size_t n, const std::vector<std::string>& eqs) {
  Curve V;
  for (const auto& e : eqs) V.equations.push_back(parse_laurent(e, p, n));
  return V;
}

inline MonomialAffineMap power_sums() {
  return {square({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), point(3, {"t", "1+t", "1-t"})};
}

inline MonomialAffineMap frobenius_line(std::uint32_t p) {
  const std::string e = std::to_string(p * p - 1);
  return {square({{1, 0}, {0, 1}}), point(p, {"t^" + e, "(1-t)^" + e})};
}

}  // namespace retset::testing
