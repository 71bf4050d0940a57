#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relconvex/error.hpp"

namespace relconvex {

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Comparison slack. A quantity x counts as "non-negative" when
/// x >= -(abs + rel * scale), where scale is chosen by each check.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-12;

  static constexpr Tolerance exact() noexcept { return {0.0, 0.0}; }

  double slack(double scale) const noexcept { return abs + rel * std::fabs(scale); }

  void validate() const {
    if (!(abs >= 0.0) || !(rel >= 0.0) || !std::isfinite(abs) || !std::isfinite(rel))
      throw Error(ErrorKind::InvalidValue, "tolerance components must be finite and non-negative");
  }
};

/// Verdict of a family of one-sided inequalities.
///
/// `margin` is the smallest slack over all checked inequalities and
/// `threshold` the (non-positive) value it was compared against, so
/// holds == (margin >= threshold) == !first_violation.
/// Positions in `first_violation` are 1-based.
struct CheckReport {
  bool holds = true;
  std::optional<std::size_t> first_violation;
  double margin = 0.0;
  double threshold = 0.0;
  Tolerance tolerance{};
  std::vector<std::string> warnings;
};

namespace detail {

inline bool all_finite(const std::vector<double>& v) noexcept {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

/// Scans per-position margins (already computed) against a shared threshold.
/// `positions[k]` is the 1-based position reported for margins[k].
inline CheckReport scan_margins(const std::vector<double>& margins,
                                const std::vector<std::size_t>& positions,
                                double threshold, const Tolerance& tol) {
  CheckReport r;
  r.tolerance = tol;
  r.threshold = threshold;
  if (margins.empty()) return r;
  r.margin = margins.front();
  for (std::size_t k = 0; k < margins.size(); ++k) {
    if (margins[k] < r.margin) r.margin = margins[k];
    if (!r.first_violation && margins[k] < threshold) r.first_violation = positions[k];
  }
  r.holds = !r.first_violation.has_value();
  return r;
}

}  // namespace detail
}  // namespace relconvex
