#pragma once

// The polygonal line through (t_i, a_i) and the generalized floor / fractional
// part relative to a witness.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "relconvex/error.hpp"
#include "relconvex/seqcore.hpp"
#include "relconvex/sequence.hpp"
#include "relconvex/tolerance.hpp"

namespace relconvex {

class PolygonalExtension {
 public:
  PolygonalExtension(RealSeq values, Witness abscissae)
      : a_(std::move(values)), t_(std::move(abscissae)), slopes_(chord_slopes(a_, t_)) {}

  const Witness& breakpoints_t() const noexcept { return t_; }
  const RealSeq& breakpoints_a() const noexcept { return a_; }
  /// slopes()[i] is the slope on [t_{i+1}, t_{i+2}) in 1-based terms.
  const std::vector<double>& slopes() const noexcept { return slopes_; }
  double lower() const noexcept { return t_.front(); }
  double upper() const noexcept { return t_.back(); }

 private:
  RealSeq a_;
  Witness t_;
  std::vector<double> slopes_;
};

inline PolygonalExtension build_extension(const RealSeq& a, const Witness& t) {
  detail::require_same_length(a.size(), t.size(), "build_extension");
  return PolygonalExtension(a, t);
}

namespace detail {

/// Clamps q into [t_1, t_n] when it lies within tol_abs outside; throws beyond.
inline double clamp_to_domain(const Witness& t, double q, double tol_abs) {
  if (!std::isfinite(q)) throw Error(ErrorKind::OutOfDomain, "non-finite abscissa");
  if (q < t.front() - tol_abs || q > t.back() + tol_abs)
    throw Error(ErrorKind::OutOfDomain, "abscissa " + std::to_string(q) + " outside [" +
                                            std::to_string(t.front()) + ", " +
                                            std::to_string(t.back()) + "]");
  return std::clamp(q, t.front(), t.back());
}

}  // namespace detail

/// floor_t(q): the 1-based index of the largest t_i not exceeding q.
/// floor_t(t_n) == n.
inline std::size_t floor_wrt(const Witness& t, double q, const Tolerance& tol = {}) {
  q = detail::clamp_to_domain(t, q, tol.abs);
  const auto it = std::upper_bound(t.begin(), t.end(), q);
  return static_cast<std::size_t>(it - t.begin());
}

/// {q}_t = q - t_{floor_t(q)}.
inline double frac_wrt(const Witness& t, double q, const Tolerance& tol = {}) {
  q = detail::clamp_to_domain(t, q, tol.abs);
  return q - t[floor_wrt(t, q, tol) - 1];
}

inline double eval(const PolygonalExtension& ext, double x, const Tolerance& tol = {}) {
  const Witness& t = ext.breakpoints_t();
  x = detail::clamp_to_domain(t, x, tol.abs);
  const std::size_t i = floor_wrt(t, x, tol);
  if (i == t.size()) return ext.breakpoints_a().back();
  return ext.breakpoints_a()[i - 1] + ext.slopes()[i - 1] * (x - t[i - 1]);
}

/// `resolution` equally spaced samples of the extension, both endpoints
/// included exactly.
inline std::vector<std::pair<double, double>> sample(const PolygonalExtension& ext,
                                                     std::size_t resolution) {
  if (resolution < 2) throw Error(ErrorKind::InvalidValue, "resolution must be at least 2");
  const double lo = ext.lower();
  const double hi = ext.upper();
  std::vector<std::pair<double, double>> out;
  out.reserve(resolution);
  for (std::size_t k = 0; k < resolution; ++k) {
    double x = lo + (hi - lo) * (static_cast<double>(k) / static_cast<double>(resolution - 1));
    if (k == resolution - 1) x = hi;
    x = std::min(x, hi);
    out.emplace_back(x, eval(ext, x));
  }
  return out;
}

/// Writes "x,value" rows, one per sample, preceded by a header row.
inline void write_samples_csv(std::ostream& os,
                              const std::vector<std::pair<double, double>>& samples) {
  os << "x,value\n";
  for (const auto& [x, y] : samples) os << format_double(x) << ',' << format_double(y) << '\n';
}

}  // namespace relconvex
