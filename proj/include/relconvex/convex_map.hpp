#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relconvex/tolerance.hpp"

namespace relconvex {

/// A caller-supplied real map asserted to be non-decreasing and convex on an
/// interval holding every value it is applied to. The assertion is only
/// spot-checked. The callable may be invoked concurrently.
struct ConvexMap {
  std::string name;
  std::function<double(double)> fn;

  double operator()(double x) const { return fn(x); }

  std::vector<double> apply(std::span<const double> xs) const {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = fn(xs[i]);
    return out;
  }
};

namespace psi {

inline ConvexMap identity() {
  return {"identity", [](double x) { return x; }};
}
inline ConvexMap exp() {
  return {"exp", [](double x) { return std::exp(x); }};
}
/// x -> max(x, c).
inline ConvexMap relu(double c) {
  return {"relu@" + format_double(c), [c](double x) { return std::max(x, c); }};
}
/// x -> x^2; non-decreasing only on [0, inf).
inline ConvexMap square() {
  return {"square", [](double x) { return x * x; }};
}

}  // namespace psi

/// Spot-checks monotonicity and midpoint convexity of `map` over consecutive
/// distinct values of `xs`, plus the chord condition on consecutive triples.
/// Returns one message per failed check.
inline std::vector<std::string> spot_check(const ConvexMap& map, std::span<const double> xs,
                                           const Tolerance& tol = {}) {
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double u = v[i], w = v[i + 1];
    const double fu = map(u), fw = map(w);
    if (fu > fw + tol.slack(std::max(std::fabs(fu), std::fabs(fw))))
      warnings.push_back(map.name + " decreases between " + std::to_string(u) + " and " +
                         std::to_string(w));
    const double fm = map(0.5 * (u + w));
    if (fm > 0.5 * (fu + fw) + tol.slack(std::max({std::fabs(fm), std::fabs(fu), std::fabs(fw)})))
      warnings.push_back(map.name + " fails midpoint convexity on [" + std::to_string(u) + ", " +
                         std::to_string(w) + "]");
  }
  for (std::size_t i = 0; i + 2 < v.size(); ++i) {
    const double u = v[i], m = v[i + 1], w = v[i + 2];
    const double lam = (m - u) / (w - u);
    const double chord = (1.0 - lam) * map(u) + lam * map(w);
    const double fm = map(m);
    if (fm > chord + tol.slack(std::max(std::fabs(fm), std::fabs(chord))))
      warnings.push_back(map.name + " lies above its chord at " + std::to_string(m));
  }
  return warnings;
}

}  // namespace relconvex
