#pragma once

// Seeded instance generators and brute-force re-evaluators for property
// tests. Nothing in the engines depends on this header. The `brute`
// namespace deliberately recomputes everything from raw spans with its own
// loops (pairwise sums, linear scans, threshold tests) and calls none of the
// engine helpers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "relconvex/convex_map.hpp"
#include "relconvex/error.hpp"
#include "relconvex/seqcore.hpp"
#include "relconvex/sequence.hpp"

namespace relconvex::oracles {

struct Seeded {
  std::uint64_t seed = 0;
};

/// Reproducible draws. Conversions from raw 64-bit words are done here rather
/// than through <random> distributions, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(Seeded s) : engine_(s.seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream for trial k of a seeded run.
inline Seeded derive(Seeded base, std::uint64_t k) {
  std::uint64_t z = base.seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {z ^ (z >> 31)};
}

inline std::size_t min_length(ShapeVariant shape) {
  switch (shape) {
    case ShapeVariant::StrictlyIncreasing:
    case ShapeVariant::StrictlyDecreasing:
    case ShapeVariant::Constant: return 2;
    case ShapeVariant::DecThenConst:
    case ShapeVariant::ConstThenInc:
    case ShapeVariant::DecThenInc:
    case ShapeVariant::NotStrictlyVShaped: return 3;
    case ShapeVariant::DecConstInc: return 4;
  }
  return 2;
}

/// A random sequence whose classification is exactly `shape`. Step sizes are
/// drawn from [0.1, 2]; plateau steps are exact repeats.
inline RealSeq gen_shape(ShapeVariant shape, std::size_t n, Seeded seeded) {
  if (n < min_length(shape))
    throw Error(ErrorKind::InfeasibleShape,
                std::string(to_string(shape)) + " needs at least " +
                    std::to_string(min_length(shape)) + " terms");
  Rng rng(seeded);
  const std::size_t steps = n - 1;
  std::vector<int> signs(steps, 0);
  auto fill = [&](std::size_t dec, std::size_t flat) {
    for (std::size_t i = 0; i < steps; ++i) signs[i] = i < dec ? -1 : (i < dec + flat ? 0 : 1);
  };
  switch (shape) {
    case ShapeVariant::StrictlyIncreasing: fill(0, 0); break;
    case ShapeVariant::StrictlyDecreasing: fill(steps, 0); break;
    case ShapeVariant::Constant: fill(0, steps); break;
    case ShapeVariant::DecThenConst: fill(1 + rng.below(steps - 1), steps); break;
    case ShapeVariant::ConstThenInc: fill(0, 1 + rng.below(steps - 1)); break;
    case ShapeVariant::DecThenInc: fill(1 + rng.below(steps - 1), 0); break;
    case ShapeVariant::DecConstInc: {
      const std::size_t dec = 1 + rng.below(steps - 2);
      fill(dec, 1 + rng.below(steps - dec - 1));
      break;
    }
    case ShapeVariant::NotStrictlyVShaped: {
      for (auto& s : signs) s = static_cast<int>(rng.below(3)) - 1;
      const std::size_t k = rng.below(steps - 1);
      // Either a re-descent after an ascent or a descent after a plateau.
      signs[k] = rng.chance(0.5) ? 1 : 0;
      signs[k + 1] = -1;
      break;
    }
  }
  std::vector<double> a(n);
  a[0] = rng.uniform(-5.0, 5.0);
  for (std::size_t i = 0; i < steps; ++i) a[i + 1] = a[i] + signs[i] * rng.uniform(0.1, 2.0);
  return RealSeq(std::move(a));
}

/// A random strictly increasing slope schedule compatible with a's shape:
/// negative slopes on decreasing steps, positive on increasing ones.
inline std::vector<double> gen_slope_schedule(const RealSeq& a, Seeded seeded,
                                              const Tolerance& tol = {}) {
  Rng rng(seeded);
  const auto signs = step_signs(a, tol);
  const auto dec = static_cast<std::size_t>(std::count(signs.begin(), signs.end(), -1));
  const auto inc = static_cast<std::size_t>(std::count(signs.begin(), signs.end(), 1));
  std::vector<double> neg(dec), pos(inc);
  double acc = rng.uniform(0.1, 1.0);
  for (std::size_t k = dec; k > 0; --k) {
    neg[k - 1] = -acc;
    acc += rng.uniform(0.1, 1.0);
  }
  acc = rng.uniform(0.1, 1.0);
  for (std::size_t k = 0; k < inc; ++k) {
    pos[k] = acc;
    acc += rng.uniform(0.1, 1.0);
  }
  neg.insert(neg.end(), pos.begin(), pos.end());
  return neg;
}

enum class ConvexFamily { random, affine, piecewise_linear, exponential, quadratic };

/// Values of a random convex phi from `family` at the abscissae t.
inline std::vector<double> sample_convex(std::span<const double> t, Seeded seeded,
                                         ConvexFamily family = ConvexFamily::random) {
  Rng rng(seeded);
  const std::size_t n = t.size();
  const double centre = 0.5 * (t.front() + t.back());
  const double width = std::max(t.back() - t.front(), 1e-3);
  if (family == ConvexFamily::random) family = static_cast<ConvexFamily>(1 + rng.below(4));
  std::vector<double> a(n);
  switch (family) {
    case ConvexFamily::random:
    case ConvexFamily::affine: {
      const double c = rng.uniform(-2.0, 2.0), d = rng.uniform(-2.0, 2.0);
      for (std::size_t i = 0; i < n; ++i) a[i] = c * t[i] + d;
      break;
    }
    case ConvexFamily::piecewise_linear: {
      const std::size_t pieces = 1 + rng.below(4);
      std::vector<std::pair<double, double>> lines(pieces);
      for (auto& [slope, icpt] : lines) {
        slope = rng.uniform(-3.0, 3.0);
        icpt = rng.uniform(-2.0, 2.0);
      }
      for (std::size_t i = 0; i < n; ++i) {
        double v = lines[0].first * (t[i] - centre) + lines[0].second;
        for (const auto& [slope, icpt] : lines) v = std::max(v, slope * (t[i] - centre) + icpt);
        a[i] = v;
      }
      break;
    }
    case ConvexFamily::exponential: {
      const double amp = rng.uniform(0.1, 2.0);
      const double rate = rng.uniform(-3.0, 3.0) / width;
      const double lin = rng.uniform(-1.0, 1.0), off = rng.uniform(-1.0, 1.0);
      for (std::size_t i = 0; i < n; ++i)
        a[i] = amp * std::exp(rate * (t[i] - centre)) + lin * (t[i] - centre) + off;
      break;
    }
    case ConvexFamily::quadratic: {
      const double curv = rng.uniform(0.0, 2.0) / width;
      const double x0 = rng.uniform(t.front(), t.back());
      const double lin = rng.uniform(-1.0, 1.0), off = rng.uniform(-1.0, 1.0);
      for (std::size_t i = 0; i < n; ++i)
        a[i] = curv * (t[i] - x0) * (t[i] - x0) + lin * (t[i] - centre) + off;
      break;
    }
  }
  return a;
}

/// Random increasing abscissae: t_1 in [-2, 2], gaps in [0.05, 1].
inline std::vector<double> gen_abscissae(std::size_t n, Seeded seeded) {
  if (n < 2) throw Error(ErrorKind::LengthError, "need at least 2 terms");
  Rng rng(seeded);
  std::vector<double> t(n);
  t[0] = rng.uniform(-2.0, 2.0);
  for (std::size_t i = 1; i < n; ++i) t[i] = t[i - 1] + rng.uniform(0.05, 1.0);
  return t;
}

/// A random convex phi sampled at random increasing abscissae, giving a pair
/// (a, t) with t in T_a.
inline std::pair<RealSeq, Witness> gen_relative_convex_pair(
    std::size_t n, Seeded seeded, ConvexFamily family = ConvexFamily::random) {
  auto t = gen_abscissae(n, derive(seeded, 0));
  auto a = sample_convex(t, derive(seeded, 1), family);
  return {RealSeq(std::move(a)), Witness(std::move(t))};
}

/// Raises one interior term of a relative convex pair so that the slope
/// increment at that vertex becomes -c with c drawn from [0.2, 1]. Needs n >= 3.
inline RealSeq gen_perturbed_negative(const RealSeq& a, const Witness& t, Seeded seeded) {
  if (a.size() < 3) throw Error(ErrorKind::LengthError, "need at least 3 terms to perturb");
  Rng rng(seeded);
  const std::size_t k = 1 + rng.below(a.size() - 2);
  const double dl = t[k] - t[k - 1], dr = t[k + 1] - t[k];
  const double rl = (a[k] - a[k - 1]) / dl, rr = (a[k + 1] - a[k]) / dr;
  const double c = rng.uniform(0.2, 1.0);
  std::vector<double> v = a.values();
  v[k] += (rr - rl + c) / (1.0 / dl + 1.0 / dr);
  return RealSeq(std::move(v));
}

/// Non-negative weights, roughly one in five zeroed, at least two positive.
inline std::vector<double> gen_weights(std::size_t n, Seeded seeded) {
  Rng rng(seeded);
  std::vector<double> p(n);
  for (auto& w : p) w = rng.chance(0.2) ? 0.0 : rng.uniform(0.05, 1.0);
  const std::size_t i = rng.below(n);
  std::size_t j = rng.below(n - 1);
  if (j >= i) ++j;
  if (p[i] == 0.0) p[i] = rng.uniform(0.05, 1.0);
  if (p[j] == 0.0) p[j] = rng.uniform(0.05, 1.0);
  return p;
}

/// Replaces (y_i, y_j) by (lam y_i + (1-lam) y_j, (1-lam) y_i + lam y_j).
/// Positions are 0-based here.
inline std::vector<double> t_transform(std::vector<double> y, std::size_t i, std::size_t j,
                                       double lam) {
  const double yi = y[i], yj = y[j];
  y[i] = lam * yi + (1.0 - lam) * yj;
  y[j] = (1.0 - lam) * yi + lam * yj;
  return y;
}

/// A vector majorized by y, obtained from k random T-transforms. Results are
/// clamped into [min y, max y] to absorb rounding.
inline std::vector<double> gen_majorized_pair(std::span<const double> y, std::size_t k,
                                              Seeded seeded) {
  if (y.size() < 2) throw Error(ErrorKind::LengthError, "need at least 2 components");
  Rng rng(seeded);
  std::vector<double> x(y.begin(), y.end());
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t i = rng.below(x.size());
    std::size_t j = rng.below(x.size() - 1);
    if (j >= i) ++j;
    x = t_transform(std::move(x), i, j, rng.unit());
  }
  for (auto& v : x) v = std::clamp(v, *lo, *hi);
  return x;
}

namespace brute {

/// M_{n,p}(x) by a plain loop.
inline double mean(std::span<const double> x, std::span<const double> p) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += p[i] * x[i];
    den += p[i];
  }
  return num / den;
}

/// S_{n,p}(x, y) via 1/(2 P^2) sum_{i,j} p_i p_j (x_i - x_j)(y_i - y_j).
inline double cov(std::span<const double> x, std::span<const double> y,
                  std::span<const double> p) {
  double acc = 0.0, total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    total += p[i];
    for (std::size_t j = 0; j < x.size(); ++j) acc += p[i] * p[j] * (x[i] - x[j]) * (y[i] - y[j]);
  }
  return acc / (2.0 * total * total);
}

/// (lhs, rhs) of S(a, b) >= S(a, t) S(b, t) / S(t, t).
inline std::pair<double, double> lupas(std::span<const double> a, std::span<const double> b,
                                       std::span<const double> t, std::span<const double> p) {
  return {cov(a, b, p), cov(a, t, p) * cov(b, t, p) / cov(t, t, p)};
}

/// (lhs, rhs) of the raw-sum Pecaric inequality, via pairwise sums:
/// lhs = 1/(2n) sum_{i,j} (a_i - a_j)(b_i - b_j); rhs from sum_i (i - c) a_i.
inline std::pair<double, double> pecaric(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double nd = static_cast<double>(n);
  double pair_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pair_sum += (a[i] - a[j]) * (b[i] - b[j]);
  double wa = 0.0, wb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = static_cast<double>(2 * i + 1) - nd;  // 2 (i+1) - (n+1)
    wa += w * a[i];
    wb += w * b[i];
  }
  return {pair_sum / (2.0 * nd), 3.0 / (nd * (nd * nd - 1.0)) * wa * wb};
}

/// Polygonal line through (t_i, a_i) at x, found by a linear scan; x = t_n
/// returns a_n.
inline double polyline(std::span<const double> a, std::span<const double> t, double x) {
  const std::size_t n = t.size();
  if (x >= t[n - 1]) return a[n - 1];
  std::size_t i = 0;
  while (i + 1 < n && t[i + 1] <= x) ++i;
  return a[i] + (a[i + 1] - a[i]) / (t[i + 1] - t[i]) * (x - t[i]);
}

/// (lower, value, upper) of the relative sandwich. M(t) equal to t_n uses the
/// last segment, matching the clamp in the engine.
inline std::tuple<double, double, double> hhf(std::span<const double> a,
                                              std::span<const double> t,
                                              std::span<const double> p, const ConvexMap& psi) {
  const std::size_t n = a.size();
  const double mt = mean(t, p);
  std::size_t m = 0;  // 0-based left end of the segment holding mt
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (t[i] <= mt + 1e-12 * (1.0 + std::fabs(mt))) m = i;
  const double gamma = std::clamp((mt - t[m]) / (t[m + 1] - t[m]), 0.0, 1.0);
  const double lambda = (t[n - 1] - mt) / (t[n - 1] - t[0]);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += p[i] * psi(a[i]);
    den += p[i];
  }
  return {gamma * psi(a[m + 1]) + (1.0 - gamma) * psi(a[m]), num / den,
          lambda * psi(a[0]) + (1.0 - lambda) * psi(a[n - 1])};
}

/// (value, upper) of the one-sided bound with arithmetic weights.
inline std::pair<double, double> niezgoda(std::span<const double> a, std::span<const double> p,
                                          const ConvexMap& psi) {
  const std::size_t n = a.size();
  double value = 0.0, upper = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = static_cast<double>(n - 1 - i) / static_cast<double>(n - 1);
    value += p[i] * psi(a[i]);
    upper += p[i] * (lam * psi(a[0]) + (1.0 - lam) * psi(a[n - 1]));
  }
  return {value, upper};
}

/// (lower, value, upper) of the convex-sequence sandwich, with Phi expanded
/// term by term.
inline std::tuple<double, double, double> cor2(std::span<const double> a,
                                               std::span<const double> p, const ConvexMap& psi) {
  const std::size_t n = a.size();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += p[i] * static_cast<double>(i + 1);
    den += p[i];
  }
  std::size_t m = 1;
  while (m + 1 <= n - 1 && static_cast<double>(m + 1) <= num / den + 1e-9) ++m;
  auto line = [&](std::size_t u, std::size_t v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i + 1);
      const double w = (x - static_cast<double>(u)) / static_cast<double>(v - u);
      acc += p[i] * (w * psi(a[v - 1]) + (1.0 - w) * psi(a[u - 1]));
    }
    return acc;
  };
  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) value += p[i] * psi(a[i]);
  return {line(m, m + 1), value, line(1, n)};
}

/// (sum polyline(p_i), sum polyline(q_i)).
inline std::pair<double, double> majorization_sides(std::span<const double> a,
                                                    std::span<const double> t,
                                                    std::span<const double> pvec,
                                                    std::span<const double> qvec) {
  double sp = 0.0, sq = 0.0;
  for (double v : pvec) sp += polyline(a, t, v);
  for (double v : qvec) sq += polyline(a, t, v);
  return {sp, sq};
}

/// (sum a_{p_i}, sum a_{q_i}) for 1-based indices.
inline std::pair<double, double> index_sums(std::span<const double> a,
                                            std::span<const std::size_t> pidx,
                                            std::span<const std::size_t> qidx) {
  double sp = 0.0, sq = 0.0;
  for (std::size_t i : pidx) sp += a[i - 1];
  for (std::size_t i : qidx) sq += a[i - 1];
  return {sp, sq};
}

/// x < y via the threshold characterization: equal totals and
/// sum (x_i - c)_+ <= sum (y_i - c)_+ for every c among the components.
inline bool majorized(std::span<const double> x, std::span<const double> y, double slack) {
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  if (std::fabs(sx - sy) > slack) return false;
  auto excess = [](std::span<const double> v, double c) {
    double acc = 0.0;
    for (double e : v) acc += std::max(e - c, 0.0);
    return acc;
  };
  for (auto src : {x, y})
    for (double c : src)
      if (excess(x, c) > excess(y, c) + slack) return false;
  return true;
}

/// Minimum 3x3 determinant over all index triples l < m < k.
inline double min_determinant(std::span<const double> a, std::span<const double> t) {
  double best = 0.0;
  bool first = true;
  const std::size_t n = a.size();
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = l + 1; m < n; ++m)
      for (std::size_t k = m + 1; k < n; ++k) {
        // Cofactor expansion of |t a 1| along the third column.
        const double det = (t[m] * a[k] - t[k] * a[m]) - (t[l] * a[k] - t[k] * a[l]) +
                           (t[l] * a[m] - t[m] * a[l]);
        if (first || det < best) best = det;
        first = false;
      }
  return best;
}

/// Element-wise forward difference.
inline std::vector<double> diff(std::span<const double> a) {
  std::vector<double> d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] - a[i - 1]);
  return d;
}

}  // namespace brute
}  // namespace relconvex::oracles
