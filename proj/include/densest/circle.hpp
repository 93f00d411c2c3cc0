#pragma once

// Circle arithmetic on T = R/Z: points, the distance rho, the benchmark
// rate phi(n), and the incremental partition of the circle by a point set.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

namespace densest {

/// Absolute tolerance used for real comparisons in floating mode.
inline constexpr double kTolerance = 1e-12;

/// 1/(2 ln 2), the limit of n*phi(n).
inline constexpr double kLimitConstant = 0.5 / std::numbers::ln2;

/// A point of the unit circle, stored as its representative in [0,1).
class CirclePoint {
 public:
  constexpr CirclePoint() = default;

  /// Reduces any finite real mod 1.
  explicit CirclePoint(double x) : value_(reduce(x)) {}

  constexpr double value() const noexcept { return value_; }

  friend constexpr auto operator<=>(CirclePoint, CirclePoint) = default;

  static double reduce(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("circle point must be finite");
    double r = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.
    if (r >= 1.0) r = 0.0;
    return r;
  }

 private:
  double value_ = 0.0;
};

/// rho(s,t) = dist(s - t, Z), in [0, 1/2].
inline double rho(CirclePoint s, CirclePoint t) noexcept {
  const double d = std::fabs(s.value() - t.value());
  return d < 1.0 - d ? d : 1.0 - d;
}

/// phi(n) = (ln(n+1) - ln n) / (2 ln 2) = log2(1 + 1/n) / 2.
inline double phi(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("phi: n must be >= 1");
  return std::log1p(1.0 / static_cast<double>(n)) / (2.0 * std::numbers::ln2);
}

/// Clockwise arc length from `left` to `right`. Equal endpoints give the
/// whole circle.
inline double arc_length(double left, double right) noexcept {
  return right > left ? right - left : right - left + 1.0;
}

/// An arc of the partition: starts at `left`, runs clockwise to the next point.
struct ArcGap {
  CirclePoint left;
  double length = 0.0;

  // Ordered by length, then by left endpoint ascending.
  friend bool operator<(const ArcGap& a, const ArcGap& b) noexcept {
    if (a.length != b.length) return a.length < b.length;
    return a.left < b.left;
  }
  friend bool operator==(const ArcGap&, const ArcGap&) = default;
};

/// The partition of the circle by the distinct points seen so far. Points are
/// only ever added; each non-duplicate insertion splits exactly one arc.
class PartitionState {
 public:
  /// Result of one insertion.
  struct InsertOutcome {
    bool duplicate = false;
    ArcGap removed{};       // arc that was split (unset on the first point)
    ArcGap first{}, second{};  // its two halves
  };

  InsertOutcome insert(CirclePoint p) {
    InsertOutcome out;
    auto [it, inserted] = points_.insert(p.value());
    if (!inserted) {
      ++duplicates_;
      out.duplicate = true;
      return out;
    }
    if (points_.size() == 1) {
      out.first = ArcGap{p, 1.0};
      gaps_.insert(out.first);
      return out;
    }
    const double left = it == points_.begin() ? *points_.rbegin() : *std::prev(it);
    const double right = std::next(it) == points_.end() ? *points_.begin() : *std::next(it);

    out.removed = ArcGap{CirclePoint(left), arc_length(left, right)};
    const auto erased = gaps_.erase(out.removed);
    if (erased != 1) throw std::logic_error("partition: split arc not found");
    out.first = ArcGap{CirclePoint(left), arc_length(left, p.value())};
    out.second = ArcGap{p, arc_length(p.value(), right)};
    gaps_.insert(out.first);
    gaps_.insert(out.second);
    return out;
  }

  /// Number of distinct points.
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  std::size_t duplicates() const noexcept { return duplicates_; }

  const std::set<double>& points() const noexcept { return points_; }
  const std::set<ArcGap>& gaps() const noexcept { return gaps_; }

  /// Largest arc; ties resolved toward the smallest left endpoint.
  ArcGap max_gap() const {
    require_nonempty();
    const double len = gaps_.rbegin()->length;
    return *gaps_.lower_bound(ArcGap{CirclePoint{}, len});
  }
  ArcGap min_gap() const {
    require_nonempty();
    return *gaps_.begin();
  }

  /// Dispersion: half the largest arc.
  double dispersion() const { return max_gap().length / 2.0; }

  /// Minimal pairwise distance. Zero once a duplicate has been seen.
  /// Requires at least two inserted points.
  double min_distance() const {
    if (duplicates_ > 0) return 0.0;
    if (points_.size() < 2) throw std::domain_error("minimal gap needs at least two points");
    return gaps_.begin()->length;
  }

  /// Arc lengths in non-increasing order. O(n log n) on demand.
  std::vector<double> sorted_gap_vector() const {
    require_nonempty();
    std::vector<double> out;
    out.reserve(gaps_.size());
    for (auto it = gaps_.rbegin(); it != gaps_.rend(); ++it) out.push_back(it->length);
    return out;
  }

 private:
  void require_nonempty() const {
    if (points_.empty()) throw std::domain_error("partition is empty");
  }

  std::set<double> points_;
  std::set<ArcGap> gaps_;
  std::size_t duplicates_ = 0;
};

}  // namespace densest
