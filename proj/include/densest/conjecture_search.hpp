#pragma once

// Search for ordered point lists whose minimal gap stays above the log-odd
// benchmark 2*phi(2n-1) at every prefix. The objective of x_1..x_N is
//
//   J = min over floor_n <= n <= N of d_n / (2 phi(2n-1)).
//
// The log-odd prefix has J = 1. A family with J_N bounded away above 1 as N
// grows would show that d_n <= 2 phi(2n-1) can fail for all large n; values
// tending to 1 or below are consistent with it. Results here are evidence
// at finite N only.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "densest/circle.hpp"
#include "densest/gap_tracker.hpp"
#include "densest/json.hpp"
#include "densest/sequences.hpp"

namespace densest {

struct AnnealSchedule {
  double initial_step = 0.25;
  double decay = 0.999;
  std::uint64_t iterations = 5000;
};

struct SearchConfig {
  std::uint64_t N = 10;
  std::uint64_t restarts = 64;
  std::uint64_t seed = 0;
  AnnealSchedule schedule;
  std::uint64_t objective_floor_n = 2;

  void validate() const {
    if (N < 2) throw std::invalid_argument("search horizon N must be >= 2");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (schedule.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (!(schedule.initial_step > 0.0)) throw std::invalid_argument("initial step must be positive");
    if (!(schedule.decay > 0.0 && schedule.decay < 1.0)) throw std::invalid_argument("decay must lie in (0,1)");
    if (objective_floor_n < 2) throw std::invalid_argument("objective floor must be >= 2");
    if (objective_floor_n > N) throw std::invalid_argument("objective floor exceeds N");
  }
};

struct Objective {
  double J = 0.0;
  std::vector<double> per_n_ratios;  // n = floor_n..N
};

/// Objective of an ordered point list, through the gap tracker.
inline Objective evaluate_objective(const std::vector<CirclePoint>& points, std::uint64_t floor_n = 2) {
  if (floor_n < 2) throw std::invalid_argument("objective floor must be >= 2");
  if (points.size() < floor_n) throw std::invalid_argument("fewer points than the objective floor");
  Objective out;
  out.J = std::numeric_limits<double>::infinity();
  GapTracker tracker;
  for (const auto& p : points) {
    const auto& r = tracker.push(p);
    if (r.n < floor_n) continue;
    out.per_n_ratios.push_back(*r.d_ratio);
    out.J = std::min(out.J, *r.d_ratio);
  }
  return out;
}

enum class InitKind { log_odd, greedy, random };

inline const char* to_string(InitKind k) {
  switch (k) {
    case InitKind::log_odd: return "log-odd";
    case InitKind::greedy: return "greedy";
    case InitKind::random: return "random";
  }
  return "?";
}

struct Improvement {
  std::uint64_t iteration = 0;
  double J = 0.0;
};

struct RestartSummary {
  std::uint64_t index = 0;
  InitKind init = InitKind::log_odd;
  double initial_J = 0.0;
  double best_J = 0.0;
  std::uint64_t accepted = 0;
};

struct SearchResult {
  SearchConfig config;
  std::vector<CirclePoint> best_points;
  double J = 0.0;
  std::vector<double> per_n_ratios;
  std::uint64_t best_restart = 0;
  std::uint64_t iterations_per_restart = 0;
  std::vector<Improvement> history;  // of the winning restart
  std::vector<RestartSummary> restarts;
};

namespace detail {

/// min ratio over prefixes, using a sorted vector instead of the tracker's
/// ordered sets. Gaps only split, so the minimal gap is the running minimum
/// of the new halves.
inline double fast_objective(const std::vector<double>& xs, std::uint64_t floor_n,
                             const std::vector<double>& bench, std::vector<double>& sorted) {
  sorted.clear();
  double min_gap = std::numeric_limits<double>::infinity();
  double J = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    if (it != sorted.end() && *it == x) return 0.0;
    if (!sorted.empty()) {
      const double left = it == sorted.begin() ? sorted.back() : *std::prev(it);
      const double right = it == sorted.end() ? sorted.front() : *it;
      min_gap = std::min({min_gap, arc_length(left, x), arc_length(x, right)});
    }
    sorted.insert(it, x);
    const std::size_t n = i + 1;
    if (n >= floor_n) J = std::min(J, min_gap / bench[n]);
  }
  return J;
}

inline std::vector<double> initial_points(InitKind kind, std::uint64_t N, SplitMix64& rng) {
  std::vector<double> xs;
  xs.reserve(N);
  switch (kind) {
    case InitKind::log_odd:
      for (std::uint64_t k = 1; k <= N; ++k) xs.push_back(log_odd_point(k).value());
      break;
    case InitKind::greedy: {
      // Midpoint of the largest arc maximizes the next minimal gap.
      PartitionState state;
      xs.push_back(0.0);
      state.insert(CirclePoint(0.0));
      while (xs.size() < N) {
        const auto g = state.max_gap();
        const CirclePoint p(g.left.value() + g.length / 2.0);
        xs.push_back(p.value());
        state.insert(p);
      }
      break;
    }
    case InitKind::random:
      xs.push_back(0.0);
      while (xs.size() < N) xs.push_back(rng.uniform());
      break;
  }
  return xs;
}

struct RestartOutcome {
  std::vector<double> xs;
  double J = 0.0;
  RestartSummary summary;
  std::vector<Improvement> history;
};

inline RestartOutcome run_restart(const SearchConfig& cfg, std::uint64_t index, std::uint64_t seed,
                                  const std::vector<double>& bench) {
  SplitMix64 rng(seed);
  const auto kind = static_cast<InitKind>(index % 3);
  RestartOutcome out;
  out.xs = initial_points(kind, cfg.N, rng);
  std::vector<double> scratch;
  scratch.reserve(cfg.N);
  out.J = fast_objective(out.xs, cfg.objective_floor_n, bench, scratch);
  out.summary = {index, kind, out.J, out.J, 0};
  out.history.push_back({0, out.J});

  // x_1 = 0 is fixed (rotation invariance); coordinates 2..N move.
  std::vector<double> trial = out.xs;
  double step = cfg.schedule.initial_step;
  for (std::uint64_t it = 1; it <= cfg.schedule.iterations; ++it, step *= cfg.schedule.decay) {
    const auto i = 1 + static_cast<std::size_t>(rng() % (cfg.N - 1));
    trial[i] = CirclePoint::reduce(out.xs[i] + step * (2.0 * rng.uniform() - 1.0));
    const double J = fast_objective(trial, cfg.objective_floor_n, bench, scratch);
    if (J > out.J) {
      out.xs[i] = trial[i];
      out.J = J;
      ++out.summary.accepted;
      out.history.push_back({it, J});
    } else {
      trial[i] = out.xs[i];
    }
  }
  out.summary.best_J = out.J;
  return out;
}

}  // namespace detail

/// Multi-start coordinate search with a geometrically shrinking step.
/// Restart r starts from the log-odd prefix (r % 3 == 0), the greedy
/// largest-arc bisection (r % 3 == 1) or random points (r % 3 == 2), each
/// with its own seed split from `config.seed`. Restarts run concurrently;
/// the best J wins, ties to the lower restart index.
inline SearchResult search(const SearchConfig& config, unsigned threads = 0) {
  config.validate();
  std::vector<double> bench(config.N + 1, 0.0);
  for (std::uint64_t n = 2; n <= config.N; ++n) bench[n] = 2.0 * phi(2 * n - 1);

  std::vector<std::uint64_t> seeds(config.restarts);
  SplitMix64 master(config.seed);
  for (auto& s : seeds) s = master();

  std::vector<detail::RestartOutcome> outcomes(config.restarts);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t r; (r = next.fetch_add(1)) < config.restarts;) {
      outcomes[r] = detail::run_restart(config, r, seeds[r], bench);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.restarts));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::uint64_t best = 0;
  for (std::uint64_t r = 1; r < config.restarts; ++r)
    if (outcomes[r].J > outcomes[best].J) best = r;

  SearchResult res;
  res.config = config;
  res.best_restart = best;
  res.iterations_per_restart = config.schedule.iterations;
  for (double x : outcomes[best].xs) res.best_points.emplace_back(x);
  res.history = outcomes[best].history;
  for (const auto& o : outcomes) res.restarts.push_back(o.summary);

  const auto check = evaluate_objective(res.best_points, config.objective_floor_n);
  if (std::fabs(check.J - outcomes[best].J) > kTolerance) {
    throw std::logic_error("search objective disagrees with tracker recomputation");
  }
  res.J = check.J;
  res.per_n_ratios = check.per_n_ratios;
  return res;
}

struct SweepRow {
  std::uint64_t N = 0;
  double J = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  bool non_increasing = true;  // J*_N never rises with N
};

/// Runs `search` at each horizon with the template's other settings.
inline SweepReport sweep(const std::vector<std::uint64_t>& horizons, const SearchConfig& base,
                         unsigned threads = 0) {
  if (!std::is_sorted(horizons.begin(), horizons.end())) throw std::invalid_argument("horizons must be ascending");
  SweepReport out;
  for (auto N : horizons) {
    auto cfg = base;
    cfg.N = N;
    out.rows.push_back({N, search(cfg, threads).J});
  }
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    if (out.rows[i].J > out.rows[i - 1].J) out.non_increasing = false;
  return out;
}

inline Json to_json(const SearchResult& r) {
  Json points = Json::array();
  for (const auto& p : r.best_points) points.push_back(p.value());
  Json history = Json::array();
  for (const auto& h : r.history) history.push_back({{"iteration", h.iteration}, {"J", h.J}});
  Json restarts = Json::array();
  for (const auto& s : r.restarts) {
    restarts.push_back({{"index", s.index},
                        {"init", to_string(s.init)},
                        {"initial_J", s.initial_J},
                        {"best_J", s.best_J},
                        {"accepted", s.accepted}});
  }
  const auto& c = r.config;
  return {{"objective", "J = min over floor_n <= n <= N of d_n / (2 phi(2n-1)); log-odd prefix gives 1"},
          {"config",
           {{"N", c.N},
            {"restarts", c.restarts},
            {"seed", c.seed},
            {"iterations", c.schedule.iterations},
            {"step", c.schedule.initial_step},
            {"decay", c.schedule.decay},
            {"floor_n", c.objective_floor_n}}},
          {"J", r.J},
          {"best_points", std::move(points)},
          {"per_n_ratios", r.per_n_ratios},
          {"telemetry",
           {{"restarts_used", r.restarts.size()},
            {"iterations_per_restart", r.iterations_per_restart},
            {"best_restart", r.best_restart},
            {"improvement_history", std::move(history)},
            {"restarts", std::move(restarts)}}}};
}

inline Json to_json(const SweepReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back({{"N", row.N}, {"J", row.J}});
  return {{"rows", std::move(rows)}, {"non_increasing", r.non_increasing}};
}

}  // namespace densest
