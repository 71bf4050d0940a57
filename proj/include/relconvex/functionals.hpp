#pragma once

// Weighted mean M_{n,p}, the Chebyshev-type functional S_{n,p}, the uniform
// Lupas constant K_n(t) and the majorization preorder.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "relconvex/error.hpp"
#include "relconvex/sequence.hpp"
#include "relconvex/tolerance.hpp"

namespace relconvex {

/// Non-negative weights with a positive total.
class WeightVec {
 public:
  explicit WeightVec(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw Error(ErrorKind::LengthError, "weight vector is empty");
    total_ = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (!std::isfinite(w_[i]) || w_[i] < 0.0)
        throw Error(ErrorKind::InvalidValue,
                    "weight " + std::to_string(i + 1) + " must be finite and non-negative", i + 1);
      total_ += w_[i];
    }
    if (!(total_ > 0.0)) throw Error(ErrorKind::ZeroTotalWeight, "weights sum to zero");
  }
  WeightVec(std::initializer_list<double> weights) : WeightVec(std::vector<double>(weights)) {}

  static WeightVec uniform(std::size_t n) { return WeightVec(std::vector<double>(n, 1.0)); }

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const noexcept { return w_[i]; }
  double total() const noexcept { return total_; }
  const std::vector<double>& values() const noexcept { return w_; }
  std::span<const double> span() const noexcept { return w_; }

 private:
  std::vector<double> w_;
  double total_ = 0.0;
};

inline double weighted_mean(std::span<const double> x, const WeightVec& p) {
  detail::require_same_length(x.size(), p.size(), "weighted_mean");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += p[i] * x[i];
  return acc / p.total();
}

inline double weighted_mean(const RealSeq& x, const WeightVec& p) {
  return weighted_mean(x.span(), p);
}

/// S_{n,p}(x, y) = M(xy) - M(x) M(y), evaluated in the centered form
/// M((x - M(x)) (y - M(y))), which is algebraically identical.
inline double cov_functional(std::span<const double> x, std::span<const double> y,
                             const WeightVec& p) {
  detail::require_same_length(x.size(), y.size(), "cov_functional");
  detail::require_same_length(x.size(), p.size(), "cov_functional");
  const double mx = weighted_mean(x, p);
  const double my = weighted_mean(y, p);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += p[i] * (x[i] - mx) * (y[i] - my);
  return acc / p.total();
}

inline double cov_functional(const RealSeq& x, const RealSeq& y, const WeightVec& p) {
  return cov_functional(x.span(), y.span(), p);
}

/// K_n(t) = 1 / (sum t_i^2 - (sum t_i)^2 / n).
inline double lupas_constant(const Witness& t, const Tolerance& tol = {}) {
  const double n = static_cast<double>(t.size());
  const double mean = std::accumulate(t.begin(), t.end(), 0.0) / n;
  double centered = 0.0;
  for (double v : t) centered += (v - mean) * (v - mean);
  if (!(centered > tol.abs))
    throw Error(ErrorKind::DegenerateWitness, "centered sum of squares of the witness vanishes");
  return 1.0 / centered;
}

/// x is majorized by y (x < y): decreasing-order prefix sums of x never exceed
/// those of y and the totals agree, all within tol.abs + tol.rel * sum|y|.
inline bool majorizes(std::span<const double> x, std::span<const double> y,
                      const Tolerance& tol = {}) {
  detail::require_same_length(x.size(), y.size(), "majorizes");
  if (x.empty()) throw Error(ErrorKind::LengthError, "majorization needs at least one component");
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::stable_sort(xs.begin(), xs.end(), std::greater<>());
  std::stable_sort(ys.begin(), ys.end(), std::greater<>());
  double scale = 0.0;
  for (double v : ys) scale += std::fabs(v);
  const double slack = tol.slack(scale);
  double px = 0.0, py = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    px += xs[k];
    py += ys[k];
    if (k + 1 < xs.size() && px > py + slack) return false;
  }
  return std::fabs(px - py) <= slack;
}

}  // namespace relconvex
