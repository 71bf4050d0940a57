#pragma once

// Difference operators, convexity / relative-convexity predicates, shape
// classification and the explicit witness constructions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relconvex/error.hpp"
#include "relconvex/sequence.hpp"
#include "relconvex/tolerance.hpp"

namespace relconvex {

/// Delta a_i = a_{i+1} - a_i, i = 1..n-1.
inline std::vector<double> forward_diff(std::span<const double> a) {
  if (a.size() < 2)
    throw Error(ErrorKind::LengthError, "forward difference needs at least 2 terms");
  std::vector<double> d(a.size() - 1);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) d[i] = a[i + 1] - a[i];
  return d;
}

inline std::vector<double> forward_diff(const RealSeq& a) { return forward_diff(a.span()); }

/// Slopes Delta a_i / Delta t_i of the chords through (t_i, a_i).
inline std::vector<double> chord_slopes(const RealSeq& a, const Witness& t) {
  detail::require_same_length(a.size(), t.size(), "chord_slopes");
  std::vector<double> r(a.size() - 1);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) r[i] = (a[i + 1] - a[i]) / (t[i + 1] - t[i]);
  return r;
}

namespace detail {

inline double max_abs(std::span<const double> v) noexcept {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

/// Non-decreasing test on a slope sequence; the violation position reported
/// is the vertex shared by the two offending slopes (1-based).
inline CheckReport nondecreasing_slopes(const std::vector<double>& r, const Tolerance& tol,
                                        double unit = 1.0) {
  std::vector<double> margins;
  std::vector<std::size_t> positions;
  margins.reserve(r.size());
  positions.reserve(r.size());
  for (std::size_t j = 0; j + 1 < r.size(); ++j) {
    margins.push_back((r[j + 1] - r[j]) * unit);
    positions.push_back(j + 2);
  }
  return scan_margins(margins, positions, -tol.slack(max_abs(r)) * unit, tol);
}

}  // namespace detail

/// Midpoint convexity a_i <= (a_{i-1} + a_{i+1}) / 2 at every interior i.
///
/// `margin` is min_i (a_{i-1} + a_{i+1})/2 - a_i. The verdict uses the same
/// slope-increment arithmetic as is_convex_wrt against (1, 2, ..., n), so the
/// two agree exactly on every input.
inline CheckReport is_convex(const RealSeq& a, const Tolerance& tol = {}) {
  tol.validate();
  return detail::nondecreasing_slopes(forward_diff(a), tol, 0.5);
}

/// Relative convexity of a with respect to the witness t: the slope sequence
/// Delta a_i / Delta t_i is non-decreasing within tolerance.
inline CheckReport is_convex_wrt(const RealSeq& a, const Witness& t, const Tolerance& tol = {}) {
  tol.validate();
  detail::require_same_length(a.size(), t.size(), "is_convex_wrt");
  detail::require_witness_gaps(t, tol.abs);
  return detail::nondecreasing_slopes(chord_slopes(a, t), tol);
}

enum class ShapeVariant {
  StrictlyIncreasing,
  StrictlyDecreasing,
  DecThenConst,
  ConstThenInc,
  DecThenInc,
  DecConstInc,
  Constant,
  NotStrictlyVShaped,
};

constexpr std::string_view to_string(ShapeVariant v) noexcept {
  switch (v) {
    case ShapeVariant::StrictlyIncreasing: return "StrictlyIncreasing";
    case ShapeVariant::StrictlyDecreasing: return "StrictlyDecreasing";
    case ShapeVariant::DecThenConst: return "DecThenConst";
    case ShapeVariant::ConstThenInc: return "ConstThenInc";
    case ShapeVariant::DecThenInc: return "DecThenInc";
    case ShapeVariant::DecConstInc: return "DecConstInc";
    case ShapeVariant::Constant: return "Constant";
    case ShapeVariant::NotStrictlyVShaped: return "NotStrictlyVShaped";
  }
  return "Unknown";
}

inline constexpr ShapeVariant kAllShapeVariants[] = {
    ShapeVariant::StrictlyIncreasing, ShapeVariant::StrictlyDecreasing,
    ShapeVariant::DecThenConst,       ShapeVariant::ConstThenInc,
    ShapeVariant::DecThenInc,         ShapeVariant::DecConstInc,
    ShapeVariant::Constant,           ShapeVariant::NotStrictlyVShaped,
};

/// Segment boundaries of a strictly V-shaped sequence: the minimum value is
/// first reached at position m (1-based) and held for `plateau` further steps.
struct Breakpoints {
  std::size_t m = 1;
  std::size_t plateau = 0;
  friend bool operator==(const Breakpoints&, const Breakpoints&) = default;
};

struct ShapeClass {
  ShapeVariant variant = ShapeVariant::NotStrictlyVShaped;
  std::optional<Breakpoints> breakpoints;

  bool strictly_v_shaped() const noexcept { return variant != ShapeVariant::NotStrictlyVShaped; }
};

/// Per-step direction: -1 strict decrease, 0 plateau, +1 strict increase,
/// judged against tol.abs.
inline std::vector<int> step_signs(const RealSeq& a, const Tolerance& tol = {}) {
  const auto d = forward_diff(a);
  std::vector<int> s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s[i] = d[i] > tol.abs ? 1 : (d[i] < -tol.abs ? -1 : 0);
  return s;
}

inline ShapeClass classify_shape(const RealSeq& a, const Tolerance& tol = {}) {
  tol.validate();
  const auto signs = step_signs(a, tol);
  const std::size_t steps = signs.size();
  std::size_t dec = 0, flat = 0, inc = 0, k = 0;
  while (k < steps && signs[k] < 0) ++dec, ++k;
  while (k < steps && signs[k] == 0) ++flat, ++k;
  while (k < steps && signs[k] > 0) ++inc, ++k;
  if (k != steps) return {};

  const Breakpoints bp{dec + 1, flat};
  if (dec == steps) return {ShapeVariant::StrictlyDecreasing, std::nullopt};
  if (inc == steps) return {ShapeVariant::StrictlyIncreasing, std::nullopt};
  if (flat == steps) return {ShapeVariant::Constant, bp};
  if (inc == 0) return {ShapeVariant::DecThenConst, bp};
  if (dec == 0) return {ShapeVariant::ConstThenInc, bp};
  if (flat == 0) return {ShapeVariant::DecThenInc, bp};
  return {ShapeVariant::DecConstInc, bp};
}

/// A sequence admits some witness exactly when it is strictly V-shaped
/// (or constant).
inline bool is_relative_convex(const RealSeq& a, const Tolerance& tol = {}) {
  return classify_shape(a, tol).strictly_v_shaped();
}

/// A valid slope schedule for construct_witness: -k, ..., -1 over the k
/// decreasing steps and 1, ..., j over the j increasing steps.
inline std::vector<double> canonical_slopes(const RealSeq& a, const Tolerance& tol = {}) {
  if (!is_relative_convex(a, tol))
    throw Error(ErrorKind::ShapeError, "sequence is not strictly V-shaped");
  const auto signs = step_signs(a, tol);
  const auto dec = static_cast<std::size_t>(std::count(signs.begin(), signs.end(), -1));
  const auto inc = static_cast<std::size_t>(std::count(signs.begin(), signs.end(), 1));
  std::vector<double> s;
  s.reserve(dec + inc);
  for (std::size_t k = dec; k > 0; --k) s.push_back(-static_cast<double>(k));
  for (std::size_t k = 1; k <= inc; ++k) s.push_back(static_cast<double>(k));
  return s;
}

/// Builds t by t_1 = t1 and t_{i+1} = t_i + (a_{i+1} - a_i) / s_k, consuming one
/// slope s_k per non-plateau step; plateau steps advance by plateau_step.
/// The slopes s_k become exactly the chord slopes of (t, a).
inline Witness construct_witness(const RealSeq& a, std::span<const double> s, double t1,
                                 double plateau_step = 1.0, const Tolerance& tol = {}) {
  if (!is_relative_convex(a, tol))
    throw Error(ErrorKind::ShapeError, "sequence is not strictly V-shaped");
  if (!std::isfinite(t1) || !std::isfinite(plateau_step) || !(plateau_step > 0.0))
    throw Error(ErrorKind::InvalidValue, "t1 must be finite and plateau_step positive");
  const auto signs = step_signs(a, tol);
  const auto needed = static_cast<std::size_t>(
      std::count_if(signs.begin(), signs.end(), [](int v) { return v != 0; }));
  detail::require_same_length(s.size(), needed, "construct_witness slope schedule");
  for (std::size_t k = 0; k < s.size(); ++k)
    if (!std::isfinite(s[k]))
      throw Error(ErrorKind::InvalidValue, "non-finite slope", k + 1);
  for (std::size_t k = 0; k + 1 < s.size(); ++k)
    if (!(s[k + 1] > s[k]))
      throw Error(ErrorKind::MonotoneError,
                  "slope schedule must be strictly increasing at position " + std::to_string(k + 1),
                  k + 1);

  std::vector<double> t(a.size());
  t[0] = t1;
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (signs[i] == 0) {
      t[i + 1] = t[i] + plateau_step;
      continue;
    }
    const double slope = s[k];
    if ((signs[i] < 0 && !(slope < 0.0)) || (signs[i] > 0 && !(slope > 0.0)))
      throw Error(ErrorKind::SignError,
                  "slope " + std::to_string(k + 1) + " has the wrong sign for step " +
                      std::to_string(i + 1),
                  k + 1);
    t[i + 1] = t[i] + (a[i + 1] - a[i]) / slope;
    ++k;
  }
  return Witness(std::move(t));
}

namespace detail {

/// Strictly increasing segment on [lo, hi]: each slope is the midpoint of the
/// admissible open interval, t_1 = lo and t_k = hi exactly.
inline std::vector<double> increasing_subdivision(std::span<const double> seg, double lo,
                                                  double hi) {
  const std::size_t k = seg.size();
  std::vector<double> t(k);
  t[0] = lo;
  double prev = 0.0;
  for (std::size_t i = 0; i + 2 < k; ++i) {
    const double room = hi - t[i];
    const double upper = (seg[k - 1] - seg[i]) / room;
    // Below this slope the next abscissa would land at or beyond hi.
    const double lower = (seg[i + 1] - seg[i]) / room;
    double s = 0.5 * (prev + upper);
    if (!(s > lower)) s = 0.5 * (std::max(prev, lower) + upper);
    t[i + 1] = t[i] + (seg[i + 1] - seg[i]) / s;
    prev = s;
  }
  t[k - 1] = hi;
  return t;
}

/// Decreasing segment, by reflecting x -> -x and reversing the order.
inline std::vector<double> decreasing_subdivision(std::span<const double> seg, double lo,
                                                  double hi) {
  std::vector<double> rev(seg.rbegin(), seg.rend());
  auto r = increasing_subdivision(rev, -hi, -lo);
  std::vector<double> t(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) t[i] = -r[r.size() - 1 - i];
  return t;
}

inline std::vector<double> even_subdivision(std::size_t k, double lo, double hi) {
  std::vector<double> t(k);
  for (std::size_t i = 0; i < k; ++i)
    t[i] = lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(k - 1));
  t[0] = lo;
  t[k - 1] = hi;
  return t;
}

/// Appends `piece` to `out`, dropping the first point when it is the shared
/// junction with the previous piece.
inline void append_piece(std::vector<double>& out, const std::vector<double>& piece) {
  out.insert(out.end(), out.empty() ? piece.begin() : piece.begin() + 1, piece.end());
}

}  // namespace detail

/// A witness for a on [alpha, beta] with t_1 = alpha and t_n = beta exactly.
///
/// Monotone runs use the slope-midpoint subdivision; the pieces of a
/// multi-segment shape meet at (alpha+beta)/2 for two pieces, or at the two
/// trisection points for decrease-plateau-increase. Plateaus are evenly spaced.
inline Witness construct_witness_on_interval(const RealSeq& a, double alpha, double beta,
                                             const Tolerance& tol = {}) {
  const ShapeClass shape = classify_shape(a, tol);
  if (!shape.strictly_v_shaped())
    throw Error(ErrorKind::ShapeError, "sequence is not strictly V-shaped");
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha < beta))
    throw Error(ErrorKind::IntervalError, "need finite alpha < beta");

  const auto all = a.span();
  const std::size_t n = a.size();
  const double mid = alpha + 0.5 * (beta - alpha);
  const double third1 = alpha + (beta - alpha) / 3.0;
  const double third2 = alpha + 2.0 * (beta - alpha) / 3.0;

  std::vector<double> t;
  t.reserve(n);
  switch (shape.variant) {
    case ShapeVariant::StrictlyIncreasing:
      t = detail::increasing_subdivision(all, alpha, beta);
      break;
    case ShapeVariant::StrictlyDecreasing:
      t = detail::decreasing_subdivision(all, alpha, beta);
      break;
    case ShapeVariant::Constant:
      t = detail::even_subdivision(n, alpha, beta);
      break;
    case ShapeVariant::DecThenInc: {
      const std::size_t m = shape.breakpoints->m;
      detail::append_piece(t, detail::decreasing_subdivision(all.first(m), alpha, mid));
      detail::append_piece(t, detail::increasing_subdivision(all.subspan(m - 1), mid, beta));
      break;
    }
    case ShapeVariant::DecThenConst: {
      const std::size_t m = shape.breakpoints->m;
      detail::append_piece(t, detail::decreasing_subdivision(all.first(m), alpha, mid));
      detail::append_piece(t, detail::even_subdivision(n - m + 1, mid, beta));
      break;
    }
    case ShapeVariant::ConstThenInc: {
      const std::size_t flat = shape.breakpoints->plateau;
      detail::append_piece(t, detail::even_subdivision(flat + 1, alpha, mid));
      detail::append_piece(t, detail::increasing_subdivision(all.subspan(flat), mid, beta));
      break;
    }
    case ShapeVariant::DecConstInc: {
      const std::size_t m = shape.breakpoints->m;
      const std::size_t flat = shape.breakpoints->plateau;
      detail::append_piece(t, detail::decreasing_subdivision(all.first(m), alpha, third1));
      detail::append_piece(t, detail::even_subdivision(flat + 1, third1, third2));
      detail::append_piece(t, detail::increasing_subdivision(all.subspan(m - 1 + flat), third2, beta));
      break;
    }
    case ShapeVariant::NotStrictlyVShaped:
      break;
  }
  t.front() = alpha;
  t.back() = beta;
  return Witness(std::move(t));
}

}  // namespace relconvex
