#pragma once

// Alternative characterizations of t in T_a (three-point weighted form,
// log-difference form, determinants, slopes from an anchor), preservation
// under non-decreasing convex maps, and finite-prefix diagnostics for the
// bounded / asymptotic results.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relconvex/convex_map.hpp"
#include "relconvex/error.hpp"
#include "relconvex/inequalities.hpp"
#include "relconvex/seqcore.hpp"
#include "relconvex/sequence.hpp"
#include "relconvex/tolerance.hpp"

namespace relconvex {

/// a_i <= (dt_i a_{i-1} + dt_{i-1} a_{i+1}) / (dt_i + dt_{i-1}) at every interior i.
inline CheckReport grv_check(const RealSeq& a, const Witness& t, const Tolerance& tol = {}) {
  tol.validate();
  detail::require_same_length(a.size(), t.size(), "grv_check");
  detail::require_witness_gaps(t, tol.abs);
  std::vector<double> margins;
  std::vector<std::size_t> positions;
  double scale = 0.0;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    const double left = t[i] - t[i - 1];
    const double right = t[i + 1] - t[i];
    const double bound = (right * a[i - 1] + left * a[i + 1]) / (left + right);
    margins.push_back(bound - a[i]);
    positions.push_back(i + 1);
    scale = std::max(scale, std::fabs(a[i]));
  }
  scale = std::max({scale, std::fabs(a.front()), std::fabs(a.back())});
  return detail::scan_margins(margins, positions, -tol.slack(scale), tol);
}

/// For strictly increasing a: D^2 a_i / D a_i >= D^2 t_i / D t_i, i = 1..n-2.
inline CheckReport grv2_check(const RealSeq& a, const Witness& t, const Tolerance& tol = {}) {
  tol.validate();
  detail::require_same_length(a.size(), t.size(), "grv2_check");
  detail::require_witness_gaps(t, tol.abs);
  const auto da = forward_diff(a);
  const auto dt = forward_diff(t.span());
  for (std::size_t i = 0; i < da.size(); ++i)
    if (!(da[i] > tol.abs))
      throw Error(ErrorKind::NotStrictlyIncreasing,
                  "sequence must be strictly increasing; fails at step " + std::to_string(i + 1),
                  i + 1);
  std::vector<double> margins;
  std::vector<std::size_t> positions;
  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < da.size(); ++i) {
    const double lhs = (da[i + 1] - da[i]) / da[i];
    const double rhs = (dt[i + 1] - dt[i]) / dt[i];
    margins.push_back(lhs - rhs);
    positions.push_back(i + 1);
    scale = std::max({scale, std::fabs(lhs), std::fabs(rhs)});
  }
  return detail::scan_margins(margins, positions, -tol.slack(scale), tol);
}

enum class TripleScan { consecutive, all };

struct TripleReport : CheckReport {
  /// Lexicographically first violating (l, m, k), 1-based.
  std::optional<std::array<std::size_t, 3>> first_triple;
};

/// (t_k - t_m) a_l - (t_k - t_l) a_m + (t_m - t_l) a_k >= 0 for l < m < k.
/// Consecutive triples decide the same verdict in O(n); the full O(n^3) scan
/// is kept for cross-checking.
inline TripleReport determinant_all_triples(const RealSeq& a, const Witness& t,
                                            const Tolerance& tol = {},
                                            TripleScan scan = TripleScan::consecutive) {
  tol.validate();
  detail::require_same_length(a.size(), t.size(), "determinant_all_triples");
  detail::require_witness_gaps(t, tol.abs);
  const std::size_t n = a.size();
  const double scale = (t.back() - t.front()) * detail::max_abs(a.span());
  TripleReport r;
  r.tolerance = tol;
  r.threshold = -tol.slack(scale);
  bool first = true;
  auto visit = [&](std::size_t l, std::size_t m, std::size_t k) {
    const double det = (t[k] - t[m]) * a[l] - (t[k] - t[l]) * a[m] + (t[m] - t[l]) * a[k];
    if (first || det < r.margin) r.margin = det;
    first = false;
    if (!r.first_triple && det < r.threshold) {
      r.first_triple = std::array<std::size_t, 3>{l + 1, m + 1, k + 1};
      r.first_violation = m + 1;
    }
  };
  if (scan == TripleScan::consecutive) {
    for (std::size_t l = 0; l + 2 < n; ++l) visit(l, l + 1, l + 2);
  } else {
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t m = l + 1; m < n; ++m)
        for (std::size_t k = m + 1; k < n; ++k) visit(l, m, k);
  }
  r.holds = !r.first_triple.has_value();
  return r;
}

/// The divided differences (a_i - a_s) / (t_i - t_s), i > s, are
/// non-decreasing. `s` is 1-based, 1 <= s < n. Violation positions are the
/// index i at which the sequence drops.
inline CheckReport slope_from_s_check(const RealSeq& a, const Witness& t, std::size_t s,
                                      const Tolerance& tol = {}) {
  tol.validate();
  detail::require_same_length(a.size(), t.size(), "slope_from_s_check");
  detail::require_witness_gaps(t, tol.abs);
  if (s < 1 || s >= a.size())
    throw Error(ErrorKind::IndexOutOfRange,
                "anchor " + std::to_string(s) + " outside [1, " + std::to_string(a.size() - 1) + "]",
                s);
  std::vector<double> d;
  for (std::size_t i = s; i < a.size(); ++i) d.push_back((a[i] - a[s - 1]) / (t[i] - t[s - 1]));
  std::vector<double> margins;
  std::vector<std::size_t> positions;
  for (std::size_t j = 0; j + 1 < d.size(); ++j) {
    margins.push_back(d[j + 1] - d[j]);
    positions.push_back(s + j + 2);
  }
  return detail::scan_margins(margins, positions, -tol.slack(detail::max_abs(d)), tol);
}

/// Conjunction of slope_from_s_check over every anchor s = 1..n-1.
inline CheckReport slope_from_all_anchors(const RealSeq& a, const Witness& t,
                                          const Tolerance& tol = {}) {
  CheckReport all;
  all.tolerance = tol;
  bool first = true;
  for (std::size_t s = 1; s < a.size(); ++s) {
    const auto r = slope_from_s_check(a, t, s, tol);
    // Keep the anchor closest to (or furthest past) its own threshold.
    if (first || r.margin - r.threshold < all.margin - all.threshold) {
      all.margin = r.margin;
      all.threshold = r.threshold;
    }
    first = false;
    if (!r.holds && all.holds) {
      all.holds = false;
      all.first_violation = r.first_violation;
    }
  }
  return all;
}

/// T_a is contained in T_{psi(a)} for non-decreasing convex psi: checks that
/// psi(a) is still convex with respect to t.
inline CheckReport psi_preservation_check(const RealSeq& a, const Witness& t, const ConvexMap& psi,
                                          const Tolerance& tol = {}, Verify verify = Verify::on) {
  tol.validate();
  if (verify == Verify::on) detail::require_convex_wrt(a, t, tol, "a");
  auto warnings = spot_check(psi, a.span(), tol);
  auto r = is_convex_wrt(RealSeq(psi.apply(a.span())), t, tol);
  r.warnings = std::move(warnings);
  return r;
}

struct MonotoneDiagnostic {
  /// False when the witness gaps drop below alpha somewhere in the prefix, so
  /// the prefix says nothing about a divergent witness.
  bool applicable = true;
  std::string reason;
  CheckReport check;
};

/// Bounded above + convex w.r.t. a witness with gaps >= alpha: the prefix
/// must be non-increasing.
inline MonotoneDiagnostic bounded_monotone_diagnostic(const RealSeq& a, const Witness& t,
                                                      double bound, double alpha,
                                                      const Tolerance& tol = {}) {
  tol.validate();
  if (!std::isfinite(bound) || !std::isfinite(alpha) || !(alpha > 0.0))
    throw Error(ErrorKind::InvalidValue, "bound must be finite and alpha positive");
  detail::require_convex_wrt(a, t, tol, "a");
  const double top = *std::max_element(a.begin(), a.end());
  if (top > bound + tol.slack(bound))
    throw Error(ErrorKind::PreconditionViolation,
                "sequence exceeds the stated upper bound " + format_double(bound));

  MonotoneDiagnostic out;
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (t[i + 1] - t[i] < alpha) {
      out.applicable = false;
      out.reason = "witness gap at step " + std::to_string(i + 1) + " is below alpha";
      out.check.tolerance = tol;
      return out;
    }
  const auto da = forward_diff(a);
  std::vector<double> margins(da.size());
  std::vector<std::size_t> positions(da.size());
  for (std::size_t i = 0; i < da.size(); ++i) {
    margins[i] = -da[i];
    positions[i] = i + 1;
  }
  out.check = detail::scan_margins(margins, positions, -tol.slack(detail::max_abs(a.span())), tol);
  return out;
}

struct RateReport {
  /// k * Da_k / Dt_k, k = 1..n-1.
  std::vector<double> terms;
  /// sum_{j<=k} j * (r_{j+1} - r_j) with r_j = Da_j / Dt_j, k = 1..n-2.
  std::vector<double> partial_sums;
  /// max |terms[k]| over k >= ceil(3n/4).
  double max_tail = 0.0;
  double decay_threshold = 0.0;
  bool decays = true;
};

/// 1.5 times the final-quarter maximum of the reference terms 1/(k+1) for a
/// prefix of length n, i.e. 1.5 / (ceil(3n/4) + 1).
inline double default_decay_threshold(std::size_t n) {
  const std::size_t first = (3 * n + 3) / 4;
  return 1.5 / static_cast<double>(first + 1);
}

/// Raw prefix quantities behind n * Da_n / Dt_n -> 0 and the convergence of
/// sum n * D(Da_n / Dt_n). `decay_threshold` <= 0 selects the default.
inline RateReport rate_diagnostic(const RealSeq& a, const Witness& t, const Tolerance& tol = {},
                                  double decay_threshold = 0.0, Verify verify = Verify::on) {
  tol.validate();
  detail::require_same_length(a.size(), t.size(), "rate_diagnostic");
  if (verify == Verify::on) {
    detail::require_convex_wrt(a, t, tol, "a");
    const auto da = forward_diff(a);
    for (std::size_t i = 0; i < da.size(); ++i)
      if (da[i] > tol.slack(detail::max_abs(a.span())))
        throw Error(ErrorKind::PreconditionViolation,
                    "sequence increases at step " + std::to_string(i + 1), i + 1);
  }
  const auto r = chord_slopes(a, t);
  RateReport out;
  out.terms.resize(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) out.terms[k] = static_cast<double>(k + 1) * r[k];
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    acc += static_cast<double>(k + 1) * (r[k + 1] - r[k]);
    out.partial_sums.push_back(acc);
  }
  const std::size_t first = (3 * a.size() + 3) / 4;  // 1-based term index
  for (std::size_t k = first; k <= out.terms.size(); ++k)
    out.max_tail = std::max(out.max_tail, std::fabs(out.terms[k - 1]));
  out.decay_threshold =
      decay_threshold > 0.0 ? decay_threshold : default_decay_threshold(a.size());
  out.decays = out.max_tail <= out.decay_threshold;
  return out;
}

}  // namespace relconvex
