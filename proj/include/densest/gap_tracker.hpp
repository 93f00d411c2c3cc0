#pragma once

// Dispersion D_n and minimal gap d_n along a sequence, one O(log n) update
// per point.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "densest/circle.hpp"
#include "densest/json.hpp"
#include "densest/sequences.hpp"

namespace densest {

/// One row of a trajectory. d-fields are absent for n = 1.
struct TrajectoryRecord {
  std::uint64_t n = 0;
  double D_n = 0.0;
  std::optional<double> d_n;
  double nD_n = 0.0;
  std::optional<double> nd_n;
  double phi_n = 0.0;
  double D_ratio = 0.0;  // D_n / phi(n)
  std::optional<double> d_ratio;  // d_n / (2 phi(2n-1))
};

class GapTracker {
 public:
  const TrajectoryRecord& push(CirclePoint p) {
    ++n_;
    partition_.insert(p);
    TrajectoryRecord r;
    r.n = n_;
    r.D_n = partition_.dispersion();
    r.nD_n = static_cast<double>(n_) * r.D_n;
    r.phi_n = phi(n_);
    r.D_ratio = r.D_n / r.phi_n;
    if (n_ >= 2) {
      r.d_n = partition_.min_distance();
      r.nd_n = static_cast<double>(n_) * *r.d_n;
      r.d_ratio = *r.d_n / (2.0 * phi(2 * n_ - 1));
    }
    last_ = r;
    return last_;
  }

  std::uint64_t n() const noexcept { return n_; }
  const PartitionState& partition() const noexcept { return partition_; }
  const TrajectoryRecord& last() const noexcept { return last_; }

 private:
  PartitionState partition_;
  std::uint64_t n_ = 0;
  TrajectoryRecord last_{};
};

inline std::vector<TrajectoryRecord> track_points(const std::vector<CirclePoint>& points) {
  GapTracker tracker;
  std::vector<TrajectoryRecord> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(tracker.push(p));
  return out;
}

inline std::vector<TrajectoryRecord> track(const SequenceSpec& spec, std::uint64_t n_max) {
  return track_points(take(spec, n_max));
}

namespace detail {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string{}; }

}  // namespace detail

inline constexpr const char* kTrajectoryHeader = "n,D_n,d_n,nD_n,nd_n,phi_n,D_ratio,d_ratio";

inline void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRecord>& records) {
  using detail::format_real;
  os << kTrajectoryHeader << '\n';
  for (const auto& r : records) {
    os << r.n << ',' << format_real(r.D_n) << ',' << format_real(r.d_n) << ',' << format_real(r.nD_n) << ','
       << format_real(r.nd_n) << ',' << format_real(r.phi_n) << ',' << format_real(r.D_ratio) << ','
       << format_real(r.d_ratio) << '\n';
  }
}

inline void to_json(Json& j, const TrajectoryRecord& r) {
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  j = Json::object();
  j["n"] = r.n;
  j["D_n"] = r.D_n;
  j["d_n"] = opt(r.d_n);
  j["nD_n"] = r.nD_n;
  j["nd_n"] = opt(r.nd_n);
  j["phi_n"] = r.phi_n;
  j["D_ratio"] = r.D_ratio;
  j["d_ratio"] = opt(r.d_ratio);
}

enum class TrajectoryFormat { csv, json };

inline void emit_trajectory(const std::vector<TrajectoryRecord>& records, TrajectoryFormat format,
                            const std::string& path) {
  if (records.empty()) throw std::invalid_argument("no trajectory records to emit");
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write '" + path + "'");
  if (format == TrajectoryFormat::csv) {
    write_trajectory_csv(os, records);
  } else {
    os << Json(records).dump(2) << '\n';
  }
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace densest
