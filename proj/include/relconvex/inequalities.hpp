#pragma once

// Compute-and-verify engines for the discrete inequalities built on relative
// convexity: Lupas / Pecaric, Hermite-Hadamard-Fejer type sandwiches
// (relative, Niezgoda, convex-sequence form) and the majorization
// inequalities with generalized floor / fractional parts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relconvex/convex_map.hpp"
#include "relconvex/error.hpp"
#include "relconvex/functionals.hpp"
#include "relconvex/polyext.hpp"
#include "relconvex/seqcore.hpp"
#include "relconvex/sequence.hpp"
#include "relconvex/tolerance.hpp"

namespace relconvex {

/// Whether an engine verifies its hypotheses before computing. Turning it off
/// is meant for probing the converse directions.
enum class Verify { on, off };

struct LupasReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  double slack = 0.0;  // lhs - rhs
  double threshold = 0.0;
  Tolerance tolerance{};
};

/// lower <= value <= upper. Fields that a particular bound does not define
/// are left empty (the Niezgoda bound is one-sided, only the relative
/// sandwich has gamma_t / lambda_t).
struct BoundReport {
  std::optional<double> lower;
  double value = 0.0;
  double upper = 0.0;
  std::optional<std::size_t> m;
  std::optional<double> gamma_t;
  std::optional<double> lambda_t;
  bool holds = true;
  std::optional<double> slack_lower;  // value - lower
  double slack_upper = 0.0;           // upper - value
  double threshold = 0.0;
  Tolerance tolerance{};
  std::vector<std::string> warnings;
};

/// CheckReport for "lhs <= rhs" instances, carrying both sides.
struct SidesReport : CheckReport {
  double lhs = 0.0;
  double rhs = 0.0;
};

namespace detail {

inline void require_convex_wrt(const RealSeq& a, const Witness& t, const Tolerance& tol,
                               const char* name) {
  const auto r = is_convex_wrt(a, t, tol);
  if (!r.holds)
    throw Error(ErrorKind::PreconditionViolation,
                std::string(name) + " is not convex with respect to the witness (position " +
                    std::to_string(*r.first_violation) + ")",
                r.first_violation);
}

inline void require_convex(const RealSeq& a, const Tolerance& tol, const char* name) {
  const auto r = is_convex(a, tol);
  if (!r.holds)
    throw Error(ErrorKind::PreconditionViolation,
                std::string(name) + " is not convex (position " +
                    std::to_string(*r.first_violation) + ")",
                r.first_violation);
}

inline LupasReport finish_lupas(double lhs, double rhs, const Tolerance& tol) {
  LupasReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.threshold = -tol.slack(std::max(std::fabs(lhs), std::fabs(rhs)));
  r.holds = r.slack >= r.threshold;
  r.tolerance = tol;
  return r;
}

inline void finish_bounds(BoundReport& r, const Tolerance& tol) {
  double scale = std::max(std::fabs(r.value), std::fabs(r.upper));
  if (r.lower) scale = std::max(scale, std::fabs(*r.lower));
  r.tolerance = tol;
  r.threshold = -tol.slack(scale);
  r.slack_upper = r.upper - r.value;
  r.holds = r.slack_upper >= r.threshold;
  if (r.lower) {
    r.slack_lower = r.value - *r.lower;
    r.holds = r.holds && *r.slack_lower >= r.threshold;
  }
}

inline SidesReport finish_sides(double lhs, double rhs, double scale, const Tolerance& tol) {
  SidesReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.threshold = -tol.slack(scale);
  r.holds = r.margin >= r.threshold;
  r.tolerance = tol;
  return r;
}

}  // namespace detail

/// S(a, b) >= S(a, t) S(b, t) / S(t, t) for t a common witness of a and b.
inline LupasReport lupas_check(const RealSeq& a, const RealSeq& b, const Witness& t,
                               const WeightVec& p, const Tolerance& tol = {},
                               Verify verify = Verify::on) {
  tol.validate();
  detail::require_same_length(a.size(), b.size(), "lupas_check");
  detail::require_same_length(a.size(), t.size(), "lupas_check");
  detail::require_same_length(a.size(), p.size(), "lupas_check");
  if (verify == Verify::on) {
    detail::require_convex_wrt(a, t, tol, "a");
    detail::require_convex_wrt(b, t, tol, "b");
  }
  const double stt = cov_functional(t.span(), t.span(), p);
  if (!(stt > tol.abs))
    throw Error(ErrorKind::DegenerateWitness,
                "S(t, t) vanishes; at least two positions need positive weight");
  const double lhs = cov_functional(a, b, p);
  const double rhs = cov_functional(a.span(), t.span(), p) * cov_functional(b.span(), t.span(), p) / stt;
  return detail::finish_lupas(lhs, rhs, tol);
}

/// Raw-sum form for convex sequences against the arithmetic witness:
///   sum a_i b_i - (1/n) sum a_i sum b_i
///     >= 12 / (n (n^2 - 1)) * sum (i - (n+1)/2) a_i * sum (i - (n+1)/2) b_i.
/// Both sides are n times the corresponding lupas_check sides with
/// t = (1..n) and uniform weights.
inline LupasReport pecaric_check(const RealSeq& a, const RealSeq& b, const Tolerance& tol = {},
                                 Verify verify = Verify::on) {
  tol.validate();
  detail::require_same_length(a.size(), b.size(), "pecaric_check");
  if (verify == Verify::on) {
    detail::require_convex(a, tol, "a");
    detail::require_convex(b, tol, "b");
  }
  const std::size_t n = a.size();
  const double nd = static_cast<double>(n);
  const double centre = (nd + 1.0) / 2.0;
  double sab = 0.0, sa = 0.0, sb = 0.0, wa = 0.0, wb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = static_cast<double>(i + 1) - centre;
    sab += a[i] * b[i];
    sa += a[i];
    sb += b[i];
    wa += w * a[i];
    wb += w * b[i];
  }
  const double lhs = sab - sa * sb / nd;
  const double rhs = 12.0 / (nd * (nd * nd - 1.0)) * wa * wb;
  return detail::finish_lupas(lhs, rhs, tol);
}

/// gamma psi(a_{m+1}) + (1 - gamma) psi(a_m) <= M(psi(a)) <= lambda psi(a_1) + (1 - lambda) psi(a_n)
/// with m = floor_t(M(t)), gamma = (M(t) - t_m) / (t_{m+1} - t_m) and
/// lambda = (t_n - M(t)) / (t_n - t_1). When M(t) reaches t_n the index is
/// clamped to m = n - 1 (gamma = 1).
inline BoundReport hhf_bounds(const RealSeq& a, const Witness& t, const WeightVec& p,
                              const ConvexMap& psi, const Tolerance& tol = {},
                              Verify verify = Verify::on) {
  tol.validate();
  detail::require_same_length(a.size(), t.size(), "hhf_bounds");
  detail::require_same_length(a.size(), p.size(), "hhf_bounds");
  if (verify == Verify::on) detail::require_convex_wrt(a, t, tol, "a");
  const std::size_t n = a.size();
  const double span = t.back() - t.front();
  if (!(span > 0.0)) throw Error(ErrorKind::DegenerateWitness, "t_n equals t_1");

  BoundReport r;
  r.warnings = spot_check(psi, a.span(), tol);
  const double mt = std::clamp(weighted_mean(t.span(), p), t.front(), t.back());
  // Snap to a breakpoint that M(t) misses only by rounding.
  std::size_t m = floor_wrt(t, std::min(mt + tol.abs, t.back()), tol);
  m = std::min(m, n - 1);
  const double gamma = std::clamp((mt - t[m - 1]) / (t[m] - t[m - 1]), 0.0, 1.0);
  const double lambda = std::clamp((t.back() - mt) / span, 0.0, 1.0);

  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += p[i] * psi(a[i]);
  r.value = acc / p.total();
  r.m = m;
  r.gamma_t = gamma;
  r.lambda_t = lambda;
  r.lower = gamma * psi(a[m]) + (1.0 - gamma) * psi(a[m - 1]);
  r.upper = lambda * psi(a.front()) + (1.0 - lambda) * psi(a.back());
  detail::finish_bounds(r, tol);
  return r;
}

/// sum p_i psi(a_i) <= (sum (n-i)/(n-1) p_i) psi(a_1) + (sum (i-1)/(n-1) p_i) psi(a_n)
/// for convex a. One-sided: `lower` stays empty.
inline BoundReport niezgoda_bound(const RealSeq& a, const WeightVec& p, const ConvexMap& psi,
                                  const Tolerance& tol = {}, Verify verify = Verify::on) {
  tol.validate();
  detail::require_same_length(a.size(), p.size(), "niezgoda_bound");
  if (verify == Verify::on) detail::require_convex(a, tol, "a");
  const std::size_t n = a.size();
  const double nm1 = static_cast<double>(n - 1);
  BoundReport r;
  r.warnings = spot_check(psi, a.span(), tol);
  double value = 0.0, wfirst = 0.0, wlast = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    value += p[i] * psi(a[i]);
    wfirst += static_cast<double>(n - 1 - i) / nm1 * p[i];
    wlast += static_cast<double>(i) / nm1 * p[i];
  }
  r.value = value;
  r.upper = wfirst * psi(a.front()) + wlast * psi(a.back());
  detail::finish_bounds(r, tol);
  return r;
}

/// Phi(m, m+1) <= sum p_i psi(a_i) <= Phi(1, n) for convex a, with
/// m = floor(sum p_i i / P_n) clamped to [1, n-1] and
/// Phi(u, v) = (sum (i-u)/(v-u) p_i) psi(a_v) + (sum (v-i)/(v-u) p_i) psi(a_u).
inline BoundReport cor2_bounds(const RealSeq& a, const WeightVec& p, const ConvexMap& psi,
                               const Tolerance& tol = {}, Verify verify = Verify::on) {
  tol.validate();
  detail::require_same_length(a.size(), p.size(), "cor2_bounds");
  if (verify == Verify::on) detail::require_convex(a, tol, "a");
  const std::size_t n = a.size();

  double centroid = 0.0;
  for (std::size_t i = 0; i < n; ++i) centroid += p[i] * static_cast<double>(i + 1);
  centroid /= p.total();
  const double snapped = std::floor(centroid + tol.abs);
  const auto m = static_cast<std::size_t>(std::clamp(snapped, 1.0, static_cast<double>(n - 1)));

  auto phi = [&](std::size_t u, std::size_t v) {
    const double du = static_cast<double>(u), dv = static_cast<double>(v);
    double wv = 0.0, wu = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double di = static_cast<double>(i + 1);
      wv += (di - du) / (dv - du) * p[i];
      wu += (dv - di) / (dv - du) * p[i];
    }
    return wv * psi(a[v - 1]) + wu * psi(a[u - 1]);
  };

  BoundReport r;
  r.warnings = spot_check(psi, a.span(), tol);
  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) value += p[i] * psi(a[i]);
  r.value = value;
  r.m = m;
  r.lower = phi(m, m + 1);
  r.upper = phi(1, n);
  detail::finish_bounds(r, tol);
  return r;
}

/// sum (a_{floor p_i} - a_{floor q_i}) <= sum ({q_i} slope_{floor q_i} - {p_i} slope_{floor p_i})
/// with floors and fractional parts taken relative to t, for pvec < qvec in I_t^k.
/// Reports lhs / rhs of that inequality; margin = rhs - lhs.
inline SidesReport majorization_inequality_check(const RealSeq& a, const Witness& t,
                                                 std::span<const double> pvec,
                                                 std::span<const double> qvec,
                                                 const Tolerance& tol = {},
                                                 Verify verify = Verify::on) {
  tol.validate();
  detail::require_same_length(a.size(), t.size(), "majorization_inequality_check");
  detail::require_same_length(pvec.size(), qvec.size(), "majorization_inequality_check");
  if (pvec.empty()) throw Error(ErrorKind::LengthError, "empty majorization vectors");
  if (verify == Verify::on) {
    detail::require_convex_wrt(a, t, tol, "a");
    for (std::size_t i = 0; i < pvec.size(); ++i) {
      for (double v : {pvec[i], qvec[i]})
        if (!std::isfinite(v) || v < t.front() - tol.abs || v > t.back() + tol.abs)
          throw Error(ErrorKind::PreconditionViolation,
                      "component " + std::to_string(i + 1) + " lies outside [t_1, t_n]", i + 1);
    }
    if (!majorizes(pvec, qvec, tol))
      throw Error(ErrorKind::PreconditionViolation, "pvec is not majorized by qvec");
  }
  const auto slopes = chord_slopes(a, t);
  const std::size_t n = a.size();
  double lhs = 0.0, rhs = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < pvec.size(); ++i) {
    const std::size_t fp = floor_wrt(t, pvec[i], tol);
    const std::size_t fq = floor_wrt(t, qvec[i], tol);
    const double slope_p = fp < n ? slopes[fp - 1] : 0.0;
    const double slope_q = fq < n ? slopes[fq - 1] : 0.0;
    const double frac_p = frac_wrt(t, pvec[i], tol);
    const double frac_q = frac_wrt(t, qvec[i], tol);
    lhs += a[fp - 1] - a[fq - 1];
    rhs += frac_q * slope_q - frac_p * slope_p;
    scale += std::fabs(a[fp - 1]) + std::fabs(a[fq - 1]) + std::fabs(frac_q * slope_q) +
             std::fabs(frac_p * slope_p);
  }
  return detail::finish_sides(lhs, rhs, scale, tol);
}

/// sum a_{p_i} <= sum a_{q_i} for convex a and integer index vectors p < q
/// (indices 1-based).
inline SidesReport integer_majorization_check(const RealSeq& a, std::span<const std::size_t> pidx,
                                              std::span<const std::size_t> qidx,
                                              const Tolerance& tol = {},
                                              Verify verify = Verify::on) {
  tol.validate();
  detail::require_same_length(pidx.size(), qidx.size(), "integer_majorization_check");
  if (pidx.empty()) throw Error(ErrorKind::LengthError, "empty index vectors");
  for (std::size_t i = 0; i < pidx.size(); ++i)
    for (std::size_t v : {pidx[i], qidx[i]})
      if (v < 1 || v > a.size())
        throw Error(ErrorKind::IndexOutOfRange,
                    "index " + std::to_string(v) + " outside [1, " + std::to_string(a.size()) + "]",
                    i + 1);
  if (verify == Verify::on) {
    detail::require_convex(a, tol, "a");
    std::vector<double> pr(pidx.begin(), pidx.end()), qr(qidx.begin(), qidx.end());
    if (!majorizes(pr, qr, tol))
      throw Error(ErrorKind::PreconditionViolation, "pidx is not majorized by qidx");
  }
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < pidx.size(); ++i) {
    lhs += a[pidx[i] - 1];
    rhs += a[qidx[i] - 1];
  }
  return detail::finish_sides(lhs, rhs, std::max(std::fabs(lhs), std::fabs(rhs)), tol);
}

}  // namespace relconvex
