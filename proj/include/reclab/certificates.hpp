#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "reclab/rational.hpp"
#include "reclab/walk_models.hpp"

namespace reclab::cert {

/// Product-form candidate on N^2:
///   pi(i,j) = rho^(i+j) inside, m_x rho^i on the x-axis, m_y rho^j on the
///   y-axis and w_o at the origin, before normalization by Z.
struct StationaryCandidate {
  Rational rho;
  Rational m_x;
  Rational m_y;
  Rational w_o;

  /// Unnormalized weight.
  Rational weight(std::int64_t i, std::int64_t j) const;
  /// Sum of all weights. Requires 0 < rho < 1.
  Rational normalizer() const;
  Rational probability(std::int64_t i, std::int64_t j) const;
};

struct BalanceFailure {
  models::Point state;
  Rational inflow;
  Rational weight;
};

struct StationaryReport {
  bool verified = false;
  int window = 0;
  std::uint64_t states_checked = 0;
  Rational normalizer;
  std::vector<BalanceFailure> failures;
};

inline constexpr int kDefaultStationaryWindow = 5;

/// Checks (pi P)(i,j) = pi(i,j) exactly for all i, j <= window.
StationaryReport verify_stationary(const models::Validated<models::QuadrantWalkSpec>& spec,
                                   const StationaryCandidate& candidate, int window = kDefaultStationaryWindow);

/// Exact two-step law of S = x - y from one state.
struct TwoStepRow {
  models::Point state;
  std::string region;
  Rational p_minus2;
  Rational p_zero;
  Rational p_plus2;
  Rational drift;  // E[increment]
};

/// I.i.d. lower bound B on the two-step increment of S = x - y.
struct IncrementDominator {
  Rational p_minus2;
  Rational p_zero;
  Rational p_plus2;
  std::vector<models::Point> tight_minus2;
  std::vector<models::Point> tight_plus2;
  std::vector<std::string> tight_minus2_regions;
  std::vector<std::string> tight_plus2_regions;
  int parity = 0;  // states with (i + j) % 2 == parity were enumerated
  int window = 0;
  std::vector<TwoStepRow> transcript;

  Rational mean() const { return Rational(2) * (p_plus2 - p_minus2); }
};

inline constexpr int kDefaultIncrementWindow = 7;

/// Enumerates the even-parity states with i <= window (and j <= window on the
/// quadrant). Two-step laws are constant beyond distance 2 from the boundary,
/// so any window >= 3 covers every shape.
IncrementDominator dominated_increments(const models::Validated<models::QuadrantWalkSpec>& spec,
                                        int window = kDefaultIncrementWindow);
IncrementDominator dominated_increments(const models::Validated<models::SlabWalkSpec>& spec,
                                        int window = kDefaultIncrementWindow);

struct TransienceCertificate {
  IncrementDominator dominator;
  Rational mu;
  /// c with P(T_k <= 0) <= exp(-c k); c = mu^2 / 8 for increments in [-2, 2].
  Rational exponent;
  /// Upper bound 1/c on sum_k exp(-c k).
  Rational series_bound;
  double exponent_display = 0.0;  // display only
};

TransienceCertificate hoeffding_certificate(const IncrementDominator& dom);

struct SlabDriftCertificate {
  int k = 0;
  int parity = 0;
  bool stopping_set_excluded = true;
  std::vector<models::Point> stopping_set;
  Rational sup_drift;
  std::vector<models::Point> tight_states;
  std::vector<std::string> tight_regions;
  std::vector<TwoStepRow> transcript;

  /// (k + x0 - y0 + 2) / (-sup/2) + 2.
  Rational hitting_bound(std::int64_t x0, std::int64_t y0) const;
};

/// Supremum of the two-step drift of S = x - y over the parity class of the
/// stopping set, without raising NoCertificate. Used to show that excluding
/// the stopping set matters.
SlabDriftCertificate slab_two_step_sup(const models::Validated<models::SlabWalkSpec>& spec, bool exclude_stopping_set,
                                       int window = kDefaultIncrementWindow);

/// Throws NoCertificate when the supremum is not negative.
SlabDriftCertificate slab_drift_certificate(const models::Validated<models::SlabWalkSpec>& spec,
                                            int window = kDefaultIncrementWindow);

nlohmann::json to_json(const StationaryReport& r);
nlohmann::json to_json(const IncrementDominator& d);
nlohmann::json to_json(const TransienceCertificate& c);
nlohmann::json to_json(const SlabDriftCertificate& c);

}  // namespace reclab::cert
