#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "reclab/mc_engine.hpp"
#include "reclab/walk_models.hpp"

namespace reclab::mc {

enum class CouplingMode { Recurrence, Transience };
std::string_view to_string(CouplingMode m);
CouplingMode coupling_mode_from_string(std::string_view name);

using Slack = std::array<int, 2>;
inline constexpr std::array<Slack, 3> kSlacks{{{2, 0}, {1, 1}, {0, 2}}};

struct CoupledState {
  models::Point x;
  models::Point y;
  std::optional<Slack> slack;  // smallest admissible slack, none if violated
  std::uint64_t t = 0;
};

struct CouplingConfig {
  std::uint32_t horizon = 1000;
  std::uint64_t trajectories = 1000;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  CouplingMode mode = CouplingMode::Recurrence;
  models::Point start_x{0, 0};
  models::Point start_y{0, 0};
  std::size_t max_reported = 16;
};

struct Violation {
  std::uint64_t trajectory = 0;
  std::string kind;  // "slack", "parity_x", "parity_y", "functional"
  CoupledState state;
};

/// counts[walk][region][outcome]; walk 0 = X, 1 = Y; outcome 0..3 is a
/// Direction, 4 is a lazy stay. Regions follow QuadrantRegion / SlabRegion.
using MarginalCounts = std::array<std::array<std::array<std::uint64_t, 5>, 6>, 2>;

struct CouplingResult {
  TrajectoryStats x_stats;
  TrajectoryStats y_stats;
  std::uint64_t steps_checked = 0;
  std::uint64_t slack_violations = 0;   // quadrant slack or slab functional
  std::uint64_t parity_violations = 0;
  std::int64_t max_functional = 0;      // slab only
  std::int64_t functional_bound = 0;    // slab only: 2*ceil(k/2)
  std::vector<Violation> violations;    // first few, in trajectory order
  MarginalCounts marginals{};
};

/// Three-stage coupling on the quadrant. X must be weakly inward-homogeneous,
/// elliptic and origin-compatible (r_o >= r_q, u_o >= u_q). Recurrence mode
/// needs Y below X, transience mode needs X below Y.
CouplingResult coupled_run(const models::Validated<models::QuadrantWalkSpec>& x,
                           const models::Validated<models::QuadrantWalkSpec>& y, const CouplingConfig& cfg);

/// Slab coupling. X must be slab-homogeneous; recurrence mode needs Y ⊴ X,
/// transience mode needs X ⊴ Y.
CouplingResult slab_coupled_run(const models::Validated<models::SlabWalkSpec>& x,
                                const models::Validated<models::SlabWalkSpec>& y, const CouplingConfig& cfg);

/// Smallest s in kSlacks with d <= s componentwise.
std::optional<Slack> admissible_slack(std::int64_t dx, std::int64_t dy);

nlohmann::json to_json(const CouplingResult& r);

}  // namespace reclab::mc
