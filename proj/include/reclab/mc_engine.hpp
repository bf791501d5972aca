#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "reclab/simd/lattice.hpp"
#include "reclab/walk_models.hpp"

namespace reclab::mc {

inline constexpr std::uint64_t kDefaultSeed = 20240611ULL;

// Stream tags keep the random words of different experiment kinds apart.
inline constexpr std::uint32_t kStreamQuadrant = 1;
inline constexpr std::uint32_t kStreamSlab = 2;
inline constexpr std::uint32_t kStreamTree = 3;
inline constexpr std::uint32_t kStreamGroup = 4;
inline constexpr std::uint32_t kStreamCoupling = 5;
inline constexpr std::uint32_t kStreamOccupation = 6;

struct RunConfig {
  std::uint32_t horizon = 1000;
  std::uint64_t trajectories = 1000;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  simd::Backend backend = simd::Backend::Auto;
};

/// Return-time statistics. Censored trajectories (no return within the
/// horizon) are counted separately and never enter the histogram.
struct TrajectoryStats {
  std::uint64_t n_trajectories = 0;
  std::uint32_t horizon = 0;
  std::uint64_t returns_observed = 0;
  std::uint64_t censored = 0;
  std::uint64_t seed = 0;
  std::map<std::uint64_t, std::uint64_t> return_time_histogram;

  void add(std::uint64_t return_time);  // 0 means censored
  void merge(const TrajectoryStats& other);
  double empirical_return_probability() const;
  /// Mean over observed returns only.
  double mean_observed_return_time() const;
  std::uint64_t odd_return_times() const;
  friend bool operator==(const TrajectoryStats&, const TrajectoryStats&) = default;
};

TrajectoryStats stats_from_times(const std::vector<std::uint32_t>& times, std::uint32_t horizon, std::uint64_t seed);

/// Runs fn(first, count) over [0, n) in fixed-size chunks on `workers` threads.
/// Chunk boundaries do not depend on the worker count.
void parallel_chunks(std::uint64_t n, unsigned workers, const std::function<void(std::uint64_t, std::uint64_t)>& fn,
                     std::uint64_t chunk = 1024);

/// Cumulative 30-bit thresholds for a categorical law over probs.size() moves.
std::vector<std::int32_t> cumulative_thresholds(const std::vector<Rational>& probs);

/// Draws a move index from 30-bit thresholds.
inline int draw(const std::vector<std::int32_t>& thresholds, std::uint32_t word) {
  const auto u = static_cast<std::int32_t>(word >> 2);
  int m = 0;
  for (std::int32_t t : thresholds) m += u >= t;
  return m;
}

simd::LatticeKernelSpec compile(const models::Validated<models::QuadrantWalkSpec>& spec, models::Point start,
                                std::uint64_t seed);
simd::LatticeKernelSpec compile(const models::Validated<models::SlabWalkSpec>& spec, models::Point start,
                                std::uint64_t seed);
/// Uniform and left-spine class automata map onto the lattice kernel; other
/// automata return nullopt.
std::optional<simd::LatticeKernelSpec> compile(const models::Validated<models::ClassTreeSpec>& spec,
                                               std::uint64_t seed);
/// Homogeneous walk on Z^2 (use y = 0 for Z^1) with at most 8 generators.
simd::LatticeKernelSpec compile_group_walk(const std::vector<std::array<std::int32_t, 2>>& steps,
                                           const std::vector<Rational>& probs, std::uint64_t seed);

std::vector<std::uint32_t> first_return_times(const simd::LatticeKernelSpec& kernel, const RunConfig& cfg);

TrajectoryStats run_trajectories(const models::Validated<models::QuadrantWalkSpec>& spec, models::Point start,
                                 const RunConfig& cfg);
TrajectoryStats run_trajectories(const models::Validated<models::SlabWalkSpec>& spec, models::Point start,
                                 const RunConfig& cfg);
TrajectoryStats tree_run(const models::Validated<models::ClassTreeSpec>& spec, const RunConfig& cfg);
TrajectoryStats tree_run(const models::Validated<models::ExplicitTreeSpec>& spec, const RunConfig& cfg);
TrajectoryStats run_group_walk(const std::vector<std::array<std::int32_t, 2>>& steps,
                               const std::vector<Rational>& probs, const RunConfig& cfg);

/// Generic class-automaton walker; used when compile() declines.
TrajectoryStats tree_run_generic(const models::Validated<models::ClassTreeSpec>& spec, const RunConfig& cfg);

/// Visit frequencies of one long trajectory on {0..window}^2 with batch-means
/// standard errors.
struct OccupationEstimate {
  int window = 0;
  std::uint64_t steps = 0;
  std::vector<double> frequency;       // index i*(window+1)+j
  std::vector<double> standard_error;  // same layout
};

OccupationEstimate occupation_frequencies(const models::Validated<models::QuadrantWalkSpec>& spec,
                                          models::Point start, std::uint64_t steps, int window, std::uint64_t seed,
                                          int batches = 100);

/// counts[t] = number of trajectories at the start at time t (t = 0..horizon).
std::vector<std::uint64_t> visits_to_start(const models::Validated<models::QuadrantWalkSpec>& spec,
                                           models::Point start, const RunConfig& cfg);

/// Single-step sampler used by the Monte Carlo cross-checks: one step of the
/// quadrant walk from (x, y) using `word`.
models::Point quadrant_step(const models::QuadrantWalkSpec& spec, models::Point p, std::uint32_t word);

nlohmann::json to_json(const TrajectoryStats& stats);
/// Columns t,count,censored_count. Censored trajectories appear on the row t = horizon.
std::string histogram_csv(const TrajectoryStats& stats);

}  // namespace reclab::mc
