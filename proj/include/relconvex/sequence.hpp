#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relconvex/error.hpp"

namespace relconvex {

/// A finite real sequence a_1, ..., a_n with n >= 2 and finite entries.
///
/// Element access through operator[] is 0-based; positions that appear in
/// reports or as arguments elsewhere in the library (floor indices, anchor
/// positions, index lists) are 1-based, matching the notation a_1..a_n.
class RealSeq {
 public:
  explicit RealSeq(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2)
      throw Error(ErrorKind::LengthError,
                  "a sequence needs at least 2 terms, got " + std::to_string(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!std::isfinite(values_[i]))
        throw Error(ErrorKind::InvalidValue, "non-finite term at position " + std::to_string(i + 1),
                    i + 1);
  }
  RealSeq(std::initializer_list<double> values) : RealSeq(std::vector<double>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double front() const noexcept { return values_.front(); }
  double back() const noexcept { return values_.back(); }

  const std::vector<double>& values() const noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const RealSeq&, const RealSeq&) = default;

 private:
  std::vector<double> values_;
};

/// A strictly increasing sequence t_1 < t_2 < ... < t_n, the abscissae against
/// which relative convexity is measured.
class Witness {
 public:
  explicit Witness(RealSeq values) : seq_(std::move(values)) {
    for (std::size_t i = 0; i + 1 < seq_.size(); ++i)
      if (!(seq_[i + 1] > seq_[i]))
        throw Error(ErrorKind::WitnessNotIncreasing,
                    "witness must be strictly increasing; fails between positions " +
                        std::to_string(i + 1) + " and " + std::to_string(i + 2),
                    i + 1);
  }
  explicit Witness(std::vector<double> values) : Witness(RealSeq(std::move(values))) {}
  Witness(std::initializer_list<double> values) : Witness(RealSeq(values)) {}

  /// t_i = first + (i - 1) * step, i = 1..n.
  static Witness arithmetic(std::size_t n, double first = 1.0, double step = 1.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = first + static_cast<double>(i) * step;
    return Witness(std::move(v));
  }

  const RealSeq& seq() const noexcept { return seq_; }
  std::size_t size() const noexcept { return seq_.size(); }
  double operator[](std::size_t i) const noexcept { return seq_[i]; }
  double front() const noexcept { return seq_.front(); }
  double back() const noexcept { return seq_.back(); }
  const std::vector<double>& values() const noexcept { return seq_.values(); }
  std::span<const double> span() const noexcept { return seq_.span(); }
  auto begin() const noexcept { return seq_.begin(); }
  auto end() const noexcept { return seq_.end(); }

  friend bool operator==(const Witness&, const Witness&) = default;

 private:
  RealSeq seq_;
};

namespace detail {

inline void require_same_length(std::size_t lhs, std::size_t rhs, const char* what) {
  if (lhs != rhs)
    throw Error(ErrorKind::LengthMismatch, std::string(what) + ": lengths " + std::to_string(lhs) +
                                               " and " + std::to_string(rhs) + " differ");
}

/// Enforces the tolerance-aware gap requirement t_{i+1} - t_i > tol_abs.
inline void require_witness_gaps(const Witness& t, double tol_abs) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i + 1] - t[i] > tol_abs))
      throw Error(ErrorKind::WitnessNotIncreasing,
                  "witness gap at position " + std::to_string(i + 1) +
                      " does not exceed the absolute tolerance",
                  i + 1);
}

}  // namespace detail
}  // namespace relconvex
