#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "slide/errors.hpp"

namespace slide {

enum class DistanceOrigin { nearest_neighbor, pairwise, raw };

inline std::string to_string(DistanceOrigin origin) {
  switch (origin) {
    case DistanceOrigin::nearest_neighbor: return "nearest_neighbor";
    case DistanceOrigin::pairwise: return "pairwise";
    case DistanceOrigin::raw: return "raw";
  }
  return "raw";
}

// A descending sequence d_1 >= d_2 >= ... >= d_n of finite distances.
// Nearest-neighbor and pairwise sequences are strictly positive; raw
// sequences may contain zeros.
class DescendingDistances {
 public:
  DescendingDistances() = default;

  // values must already be sorted descending.
  explicit DescendingDistances(std::vector<double> values,
                               DistanceOrigin origin = DistanceOrigin::raw)
      : values_(std::move(values)), origin_(origin) {
    validate();
  }

  // Stable descending sort of arbitrary distances.
  static DescendingDistances sorted(std::vector<double> values,
                                    DistanceOrigin origin = DistanceOrigin::raw) {
    std::stable_sort(values.begin(), values.end(), std::greater<>());
    return DescendingDistances(std::move(values), origin);
  }

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }
  DistanceOrigin origin() const noexcept { return origin_; }

  double mean() const {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return sum / static_cast<double>(values_.size());
  }

  // Every entry multiplied by factor > 0.
  DescendingDistances scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
    std::vector<double> v(values_);
    for (double& x : v) x *= factor;
    return DescendingDistances(std::move(v), origin_);
  }

  // Every entry raised to the power r > 0 (order is preserved).
  DescendingDistances powered(double r) const {
    if (!(r > 0.0)) throw DomainError("power must be positive");
    std::vector<double> v(values_);
    for (double& x : v) x = std::pow(x, r);
    return DescendingDistances(std::move(v), origin_);
  }

  // Throws DomainError unless every entry is strictly positive.
  void require_positive() const {
    for (double v : values_)
      if (!(v > 0.0)) throw DomainError("distance sequence contains a non-positive entry");
  }

  friend bool operator==(const DescendingDistances&, const DescendingDistances&) = default;

 private:
  void validate() const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double v = values_[i];
      if (!std::isfinite(v) || v < 0.0)
        throw DomainError("distances must be finite and non-negative");
      if (origin_ != DistanceOrigin::raw && v == 0.0)
        throw DomainError("nearest-neighbor and pairwise distances must be positive");
      if (i > 0 && values_[i - 1] < v)
        throw DomainError("distances are not sorted in descending order");
    }
  }

  std::vector<double> values_;
  DistanceOrigin origin_ = DistanceOrigin::raw;
};

}  // namespace slide
