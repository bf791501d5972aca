#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "reclab/certificates.hpp"
#include "reclab/error.hpp"
#include "reclab/mc_engine.hpp"

using namespace reclab;
using namespace reclab::models;

namespace {

const cert::StationaryCandidate kPi{Rational(5, 7), Rational(3, 4), Rational(5, 6), Rational(35, 72)};

std::vector<std::pair<std::int64_t, std::int64_t>> as_pairs(const std::vector<Point>& ps) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& p : ps) out.emplace_back(p.x, p.y);
  return out;
}

// Brute-force two-step law of x - y, independent of the library.
std::map<int, Rational> two_step(const QuadrantWalkSpec& s, std::int64_t x, std::int64_t y) {
  std::map<int, Rational> out;
  for (Direction d1 : kDirections) {
    Rational p1 = s.law(quadrant_region(x, y))[d1];
    if (p1.is_zero()) continue;
    std::int64_t x1 = x + dx(d1), y1 = y + dy(d1);
    for (Direction d2 : kDirections) {
      Rational p2 = s.law(quadrant_region(x1, y1))[d2];
      if (p2.is_zero()) continue;
      out[dx(d1) + dx(d2) - dy(d1) - dy(d2)] += p1 * p2;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("product-form candidate is stationary for the recurrent walk") {
  auto rec = quadrant_example("quadrant_recurrent");
  cert::StationaryReport r = cert::verify_stationary(rec, kPi);
  CHECK(r.verified);
  CHECK(r.window == 5);
  CHECK(r.states_checked == 36);
  // Z = 35/72 + 3/4 * (5/2) + 5/6 * (5/2) + (5/2)^2
  CHECK(r.normalizer == Rational(35, 72) + Rational(3, 4) * Rational(5, 2) + Rational(5, 6) * Rational(5, 2) +
                            Rational(25, 4));

  cert::StationaryCandidate bad = kPi;
  bad.m_x = Rational(1, 2);
  cert::StationaryReport f = cert::verify_stationary(rec, bad);
  CHECK_FALSE(f.verified);
  std::vector<std::pair<std::int64_t, std::int64_t>> failed;
  for (const auto& b : f.failures) failed.emplace_back(b.state.x, b.state.y);
  CHECK(failed == std::vector<std::pair<std::int64_t, std::int64_t>>{
                      {0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {4, 0}, {4, 1}, {5, 0}, {5, 1}});

  CHECK(cert::verify_stationary(quadrant_example("quadrant_transient"), kPi).failures.size() == 36);
  CHECK_THROWS_AS(cert::verify_stationary(rec, kPi, 2), Error);
  cert::StationaryCandidate divergent = kPi;
  divergent.rho = 1;
  CHECK_THROWS_AS(divergent.normalizer(), Error);
}

TEST_CASE("every single-parameter perturbation breaks stationarity") {
  auto rec = quadrant_example("quadrant_recurrent");
  for (int which = 0; which < 4; ++which) {
    for (Rational eps : {Rational(1, 100), Rational(-1, 1000)}) {
      cert::StationaryCandidate c = kPi;
      Rational* field[4] = {&c.rho, &c.m_x, &c.m_y, &c.w_o};
      *field[which] += eps;
      CHECK_FALSE(cert::verify_stationary(rec, c).verified);
    }
  }
}

TEST_CASE("dominating increment of the transient walk") {
  auto d = cert::dominated_increments(quadrant_example("quadrant_transient"));
  CHECK(d.p_minus2 == Rational(1668, 10000));
  CHECK(d.p_zero == Rational(6651, 10000));
  CHECK(d.p_plus2 == Rational(1681, 10000));
  using PV = std::vector<std::pair<std::int64_t, std::int64_t>>;
  CHECK(as_pairs(d.tight_minus2) == PV{{2, 0}, {4, 0}, {6, 0}});
  CHECK(as_pairs(d.tight_plus2) == PV{{2, 0}, {4, 0}, {6, 0}});
  CHECK(d.tight_minus2_regions == std::vector<std::string>{"x_axis"});
  CHECK(d.mean() == Rational(26, 10000));

  cert::TransienceCertificate c = cert::hoeffding_certificate(d);
  CHECK(c.mu == Rational(26, 10000));
  CHECK(c.exponent == Rational(169, 200000000));
  CHECK(c.series_bound == Rational(200000000, 169));

  auto r = cert::dominated_increments(quadrant_example("quadrant_recurrent"));
  CHECK(r.p_minus2 == Rational(49, 144));
  CHECK(r.p_zero == Rational(35, 72));
  CHECK(r.p_plus2 == Rational(25, 144));
  CHECK_THROWS_AS(cert::hoeffding_certificate(r), Error);
}

TEST_CASE("the enumeration window covers every two-step shape") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    QuadrantWalkSpec s = testgen::random_quadrant(rng, 40);
    auto d = cert::dominated_increments(validate(s), 3);
    auto wide = cert::dominated_increments(validate(s), 7);
    CHECK(d.p_minus2 == wide.p_minus2);
    CHECK(d.p_plus2 == wide.p_plus2);
    for (std::int64_t i = 0; i <= 14; ++i) {
      for (std::int64_t j = 0; j <= 14; ++j) {
        if ((i + j) % 2 != 0) continue;
        auto law = two_step(s, i, j);
        CHECK(law[-2] <= d.p_minus2);
        CHECK(law[2] >= d.p_plus2);
      }
    }
  }
}

TEST_CASE("Hoeffding bound dominates the empirical return profile") {
  auto tra = quadrant_example("quadrant_transient");
  auto cert = cert::hoeffding_certificate(cert::dominated_increments(tra));
  mc::RunConfig cfg;
  cfg.horizon = 4000;
  cfg.trajectories = 4000;
  auto visits = mc::visits_to_start(tra, Point{0, 0}, cfg);
  REQUIRE(visits.size() == cfg.horizon + 1);
  CHECK(visits[0] == cfg.trajectories);
  double total = 0;
  for (std::uint32_t t = 1; t <= cfg.horizon; ++t) {
    if (t % 2 == 1) {
      CHECK(visits[t] == 0);
      continue;
    }
    const double frac = static_cast<double>(visits[t]) / static_cast<double>(cfg.trajectories);
    total += frac;
    const double bound = std::exp(-cert.exponent.to_double() * (t / 2));
    CHECK(frac <= bound);
  }
  CHECK(total <= cert.series_bound.to_double());
}

TEST_CASE("slab dominating increments") {
  for (int k = 2; k <= 6; ++k) {
    auto d = cert::dominated_increments(slab_example("slab_transient", k));
    CHECK(d.p_minus2 == Rational::from_decimal("0.2401"));
    CHECK(d.p_zero == Rational::from_decimal("0.4998"));
    CHECK(d.p_plus2 == Rational::from_decimal("0.2601"));
    CHECK(d.tight_minus2_regions == std::vector<std::string>{"upper_boundary"});
    CHECK(d.tight_plus2_regions == std::vector<std::string>{"lower_boundary"});
  }
}

TEST_CASE("slab drift certificate") {
  for (int k = 2; k <= 6; ++k) {
    auto rec = slab_example("slab_recurrent", k);
    cert::SlabDriftCertificate c = cert::slab_drift_certificate(rec);
    CHECK(c.sup_drift == Rational(-223, 2500));
    CHECK(c.parity == k % 2);
    CHECK(c.tight_regions == std::vector<std::string>{"lower_boundary"});
    CHECK(c.tight_states.front() == Point{k % 2 == 0 ? 2 : 3, 0});
    using PV = std::vector<std::pair<std::int64_t, std::int64_t>>;
    if (k % 2 == 0) {
      CHECK(as_pairs(c.stopping_set) == PV{{0, 0}, {0, k}});
    } else {
      CHECK(as_pairs(c.stopping_set) == PV{{0, k}, {1, 0}, {0, 1}});
    }
    auto incl = cert::slab_two_step_sup(rec, false);
    CHECK(incl.sup_drift == (k % 2 == 0 ? Rational::from_decimal("1.0102") : Rational::from_decimal("0.55")));
    CHECK_THROWS_AS(cert::slab_drift_certificate(slab_example("slab_transient", k)), Error);
  }
  CHECK(cert::slab_two_step_sup(slab_example("slab_transient", 4), true).sup_drift ==
        Rational::from_decimal("1.9596"));
  CHECK(cert::slab_drift_certificate(slab_example("slab_recurrent", 4)).hitting_bound(2, 0) ==
        Rational(40446, 223));
}

TEST_CASE("certificates serialise exact values as strings") {
  auto d = cert::dominated_increments(quadrant_example("quadrant_transient"));
  auto j = cert::to_json(cert::hoeffding_certificate(d));
  CHECK(j.at("mu") == "13/5000");
  CHECK(j.at("exponent") == "169/200000000");
}
