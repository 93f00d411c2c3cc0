#pragma once

// Finite checks of the two lower/upper-bound theorems for circle sequences.
//
// "Infinitely many n" cannot be tested, so each check uses the windowed
// statement the telescoping argument actually yields:
//   W1: for every n >= 1 some m in [n, 2n-1] has D_m >= phi(m);
//   W2: for every n >= 1 some m in [2n+1, 4n] has d_m <= phi(m-1).
// Both must hold for every sequence. A failing window is an implementation
// bug. Tolerances are applied in the sequence's favor.
//
// The structural inequalities on the non-increasing gap vectors t_{n,.} are
// also checked:
//   split:  t_{n,k} <= t_{n+1,k-1}    for 1 < k <= n,
//   rank:   t_{2n,2k} >= t_{n+k,n+k}  for 1 <= k <= n.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "densest/circle.hpp"
#include "densest/gap_tracker.hpp"
#include "densest/json.hpp"
#include "densest/sequences.hpp"

namespace densest {

struct WindowWitness {
  std::uint64_t m = 0;
  double value = 0.0;
  double bound = 0.0;
};

struct WindowReport {
  std::uint64_t n = 0;  // window start parameter
  std::uint64_t first = 0, last = 0;  // inclusive window
  std::vector<WindowWitness> witnesses;
  bool satisfied = false;
};

struct TheoremReport {
  std::string suite;  // "w1" or "w2"
  std::string sequence;
  std::uint64_t n_max = 0;
  std::vector<WindowReport> windows;

  bool clean() const {
    for (const auto& w : windows)
      if (!w.satisfied) return false;
    return true;
  }
};

/// W1 over a trajectory; needs records for n = 1..2*n_max-1.
inline std::vector<WindowReport> verify_w1(std::span<const TrajectoryRecord> records, std::uint64_t n_max) {
  if (records.size() < 2 * n_max - 1) throw std::invalid_argument("W1 needs the trajectory up to 2*n_max-1");
  std::vector<WindowReport> out;
  out.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    WindowReport w{n, n, 2 * n - 1, {}, false};
    for (auto m = w.first; m <= w.last; ++m) {
      const auto& r = records[m - 1];
      if (r.D_n >= r.phi_n - kTolerance) w.witnesses.push_back({m, r.D_n, r.phi_n});
    }
    w.satisfied = !w.witnesses.empty();
    out.push_back(std::move(w));
  }
  return out;
}

/// W2 over a trajectory; needs records for n = 1..4*n_max.
inline std::vector<WindowReport> verify_w2(std::span<const TrajectoryRecord> records, std::uint64_t n_max) {
  if (records.size() < 4 * n_max) throw std::invalid_argument("W2 needs the trajectory up to 4*n_max");
  std::vector<WindowReport> out;
  out.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    WindowReport w{n, 2 * n + 1, 4 * n, {}, false};
    for (auto m = w.first; m <= w.last; ++m) {
      const auto& r = records[m - 1];
      const double bound = phi(m - 1);
      if (*r.d_n <= bound + kTolerance) w.witnesses.push_back({m, *r.d_n, bound});
    }
    w.satisfied = !w.witnesses.empty();
    out.push_back(std::move(w));
  }
  return out;
}

inline TheoremReport verify_w1(const SequenceSpec& spec, std::uint64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  const auto records = track(spec, 2 * n_max - 1);
  return {"w1", spec.label(), n_max, verify_w1(records, n_max)};
}

inline TheoremReport verify_w2(const SequenceSpec& spec, std::uint64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  const auto records = track(spec, 4 * n_max);
  return {"w2", spec.label(), n_max, verify_w2(records, n_max)};
}

struct RankViolation {
  std::string family;  // "split" or "rank"
  std::uint64_t n = 0, k = 0;
  std::uint64_t lhs_n = 0, lhs_k = 0, rhs_n = 0, rhs_k = 0;  // t_{lhs} vs t_{rhs}
  double lhs = 0.0, rhs = 0.0;
  std::vector<double> lhs_gaps, rhs_gaps;
};

struct RankReport {
  std::string sequence;
  std::uint64_t n_max = 0;
  std::uint64_t split_checks = 0;
  std::uint64_t rank_checks = 0;
  std::optional<std::uint64_t> skipped_from;  // first duplicate index
  std::optional<RankViolation> split_violation;  // first of each family
  std::optional<RankViolation> rank_violation;

  bool clean() const noexcept { return !split_violation && !rank_violation; }
};

/// Checks both inequality families on gap vectors indexed by n - 1 (each
/// non-increasing, of length n) and keeps the first violation of each.
/// Split inequalities are checked for 2 <= n <= n_max, rank inequalities
/// for 2n <= n_max; pairs that need a vector beyond the supplied ones are
/// skipped.
inline RankReport check_rank_inequalities(std::span<const std::vector<double>> gap_vectors, std::uint64_t n_max) {
  RankReport rep;
  rep.n_max = n_max;
  const std::uint64_t have = gap_vectors.size();
  auto t = [&](std::uint64_t n, std::uint64_t k) { return gap_vectors[n - 1][k - 1]; };
  auto record = [&](std::optional<RankViolation>& slot, const char* family, std::uint64_t n, std::uint64_t k,
                    std::uint64_t ln, std::uint64_t lk, std::uint64_t rn, std::uint64_t rk) {
    if (slot) return;
    slot = RankViolation{family, n, k, ln, lk, rn, rk, t(ln, lk), t(rn, rk),
                         gap_vectors[ln - 1], gap_vectors[rn - 1]};
  };

  for (std::uint64_t n = 2; n <= n_max && n + 1 <= have; ++n) {
    for (std::uint64_t k = 2; k <= n; ++k) {
      ++rep.split_checks;
      if (t(n, k) > t(n + 1, k - 1) + kTolerance) record(rep.split_violation, "split", n, k, n, k, n + 1, k - 1);
    }
  }
  for (std::uint64_t n = 1; 2 * n <= n_max && 2 * n <= have; ++n) {
    for (std::uint64_t k = 1; k <= n; ++k) {
      ++rep.rank_checks;
      if (t(2 * n, 2 * k) < t(n + k, n + k) - kTolerance) {
        record(rep.rank_violation, "rank", n, k, 2 * n, 2 * k, n + k, n + k);
      }
    }
  }
  return rep;
}

/// Gap vectors of the prefixes n = 1..n_count, stopping before the first
/// duplicate point.
inline std::vector<std::vector<double>> prefix_gap_vectors(const std::vector<CirclePoint>& points,
                                                           std::optional<std::uint64_t>* first_duplicate = nullptr) {
  PartitionState state;
  std::vector<std::vector<double>> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (state.insert(points[i]).duplicate) {
      if (first_duplicate) *first_duplicate = i + 1;
      break;
    }
    out.push_back(state.sorted_gap_vector());
  }
  return out;
}

inline RankReport check_rank_inequalities(const SequenceSpec& spec, std::uint64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  std::optional<std::uint64_t> dup;
  const auto vectors = prefix_gap_vectors(take(spec, n_max + 1), &dup);
  auto rep = check_rank_inequalities(vectors, n_max);
  rep.sequence = spec.label();
  rep.skipped_from = dup;
  return rep;
}

inline constexpr const char* kW1Statement =
    "windowed lower bound: for every n <= n_max some m in [n, 2n-1] has D_m >= phi(m) (tolerance 1e-12)";
inline constexpr const char* kW2Statement =
    "windowed upper bound: for every n <= n_max some m in [2n+1, 4n] has d_m <= phi(m-1) (tolerance 1e-12); "
    "non-strict form tested, the strict '<' variant is not assumed";

inline void to_json(Json& j, const WindowWitness& w) { j = {{"m", w.m}, {"value", w.value}, {"bound", w.bound}}; }

inline void to_json(Json& j, const WindowReport& w) {
  j = {{"n", w.n}, {"window", {w.first, w.last}}, {"satisfied", w.satisfied}, {"witnesses", w.witnesses}};
}

/// Failing windows always appear in full; passing windows list only the
/// count of witnesses and the first one.
inline Json to_json(const TheoremReport& r) {
  Json windows = Json::array();
  std::uint64_t failures = 0;
  for (const auto& w : r.windows) {
    if (!w.satisfied) {
      ++failures;
      windows.push_back(w);
      continue;
    }
    windows.push_back({{"n", w.n},
                       {"window", {w.first, w.last}},
                       {"satisfied", true},
                       {"witness_count", w.witnesses.size()},
                       {"first_witness", w.witnesses.front()}});
  }
  return {{"suite", r.suite},
          {"statement", r.suite == "w1" ? kW1Statement : kW2Statement},
          {"sequence", r.sequence},
          {"n_max", r.n_max},
          {"clean", r.clean()},
          {"failures", failures},
          {"windows", std::move(windows)}};
}

inline Json to_json(const RankReport& r) {
  Json j = {{"suite", "rank"},
            {"statement",
             "split: t_{n,k} <= t_{n+1,k-1} for 1 < k <= n <= n_max; rank: t_{2n,2k} >= t_{n+k,n+k} for "
             "1 <= k <= n, 2n <= n_max (tolerance 1e-12)"},
            {"sequence", r.sequence},
            {"n_max", r.n_max},
            {"clean", r.clean()},
            {"split_checks", r.split_checks},
            {"rank_checks", r.rank_checks}};
  j["skipped_from_duplicate"] = r.skipped_from ? Json(*r.skipped_from) : Json(nullptr);
  auto violation = [](const std::optional<RankViolation>& v) -> Json {
    if (!v) return nullptr;
    return {{"family", v->family},
            {"n", v->n},
            {"k", v->k},
            {"lhs", {{"n", v->lhs_n}, {"k", v->lhs_k}, {"value", v->lhs}}},
            {"rhs", {{"n", v->rhs_n}, {"k", v->rhs_k}, {"value", v->rhs}}},
            {"lhs_gaps", v->lhs_gaps},
            {"rhs_gaps", v->rhs_gaps}};
  };
  j["split_violation"] = violation(r.split_violation);
  j["rank_violation"] = violation(r.rank_violation);
  return j;
}

}  // namespace densest
