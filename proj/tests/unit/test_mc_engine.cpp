#include <cmath>

#include "doctest.h"
#include "reclab/certificates.hpp"
#include "reclab/mc_engine.hpp"
#include "reclab/simd/philox.hpp"
#include "reclab/tree_networks.hpp"

using namespace reclab;
using models::Point;

namespace {

// P(first return to 0 by time 2n) for simple symmetric walk on Z: 1 - C(2n,n)/4^n.
double simple_walk_return_by(int two_n) {
  int n = two_n / 2;
  double log_c = std::lgamma(2.0 * n + 1) - 2 * std::lgamma(n + 1.0) - 2.0 * n * std::log(2.0);
  return 1.0 - std::exp(log_c);
}

void check_close(double est, double p, std::uint64_t n, double sigmas = 4.0) {
  double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
  CHECK(std::abs(est - p) <= sigmas * se + 1e-12);
}

}  // namespace

TEST_CASE("return statistics do not depend on worker count or backend") {
  auto tra = models::quadrant_example("quadrant_transient");
  mc::RunConfig cfg;
  cfg.horizon = 5000;
  cfg.trajectories = 3000;
  cfg.seed = 99;
  cfg.workers = 1;
  mc::TrajectoryStats one = mc::run_trajectories(tra, Point{0, 0}, cfg);
  cfg.workers = 3;
  mc::TrajectoryStats three = mc::run_trajectories(tra, Point{0, 0}, cfg);
  CHECK(one == three);
  cfg.backend = simd::Backend::Scalar;
  CHECK(mc::run_trajectories(tra, Point{0, 0}, cfg) == one);
  cfg.seed = 100;
  CHECK_FALSE(mc::run_trajectories(tra, Point{0, 0}, cfg) == one);
  CHECK(one.returns_observed + one.censored == one.n_trajectories);
}

TEST_CASE("nearest-neighbour walks return at even times") {
  mc::RunConfig cfg;
  cfg.horizon = 2000;
  cfg.trajectories = 2000;
  for (const char* name : {"quadrant_recurrent", "quadrant_transient"}) {
    auto s = mc::run_trajectories(models::quadrant_example(name), Point{1, 2}, cfg);
    CHECK(s.returns_observed > 0);
    CHECK(s.odd_return_times() == 0);
  }
  for (int k : {2, 3}) {
    auto s = mc::run_trajectories(models::slab_example("slab_recurrent", k), Point{0, 0}, cfg);
    CHECK(s.odd_return_times() == 0);
  }
}

TEST_CASE("simple walk on Z matches the exact first-return law") {
  mc::RunConfig cfg;
  cfg.trajectories = 20000;
  for (std::uint32_t horizon : {2u, 10u, 1000u}) {
    cfg.horizon = horizon;
    auto s = mc::run_group_walk({{{1, 0}}, {{-1, 0}}}, {Rational(1, 2), Rational(1, 2)}, cfg);
    check_close(s.empirical_return_probability(), simple_walk_return_by(static_cast<int>(horizon)), cfg.trajectories);
  }
}

TEST_CASE("occupation frequencies match the product-form stationary law") {
  auto rec = models::quadrant_example("quadrant_recurrent");
  cert::StationaryCandidate pi{Rational(5, 7), Rational(3, 4), Rational(5, 6), Rational(35, 72)};
  const int window = 3;
  auto est = mc::occupation_frequencies(rec, Point{0, 0}, 4'000'000, window, 17);
  int outside = 0;
  for (int i = 0; i <= window; ++i) {
    for (int j = 0; j <= window; ++j) {
      std::size_t idx = static_cast<std::size_t>(i * (window + 1) + j);
      double exact = pi.probability(i, j).to_double();
      if (std::abs(est.frequency[idx] - exact) > 3 * est.standard_error[idx]) ++outside;
    }
  }
  // 16 cells at 3 sigma: allow one straggler
  CHECK(outside <= 1);
}

TEST_CASE("histogram csv lists censored trajectories at the horizon") {
  auto s = mc::stats_from_times({2, 2, 4, 0, 0, 0}, 10, 1);
  CHECK(s.returns_observed == 3);
  CHECK(s.censored == 3);
  CHECK(s.empirical_return_probability() == doctest::Approx(0.5));
  CHECK(s.mean_observed_return_time() == doctest::Approx(8.0 / 3));
  std::string csv = mc::histogram_csv(s);
  CHECK(csv.rfind("t,count,censored_count\n", 0) == 0);
  CHECK(csv.find("2,2,0\n") != std::string::npos);
  CHECK(csv.find("10,0,3\n") != std::string::npos);
  auto j = mc::to_json(s);
  CHECK(j.at("censored") == 3);
}

TEST_CASE("single-step sampler follows the region law") {
  auto rec = models::quadrant_example("quadrant_recurrent");
  int counts[4] = {0, 0, 0, 0};
  simd::StreamReader r(3, mc::kStreamQuadrant, 0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    Point p = mc::quadrant_step(*rec, Point{3, 3}, r.next());
    if (p.x == 2) ++counts[0];
    if (p.x == 4) ++counts[1];
    if (p.y == 4) ++counts[2];
    if (p.y == 2) ++counts[3];
  }
  const double law[4] = {5.0 / 24, 1.0 / 24, 3.0 / 8, 3.0 / 8};
  for (int d = 0; d < 4; ++d) check_close(static_cast<double>(counts[d]) / n, law[d], n);
}

TEST_CASE("lattice tree kernel agrees with the generic tree walker") {
  auto pair = trees::tree_counterexample(Rational(1, 10));
  mc::RunConfig cfg;
  cfg.horizon = 3000;
  cfg.trajectories = 4000;
  for (const auto* spec : {&pair.x, &pair.y}) {
    auto fast = mc::tree_run(*spec, cfg);
    auto slow = mc::tree_run_generic(*spec, cfg);
    double p = fast.empirical_return_probability();
    double q = slow.empirical_return_probability();
    double se = std::sqrt((p * (1 - p) + q * (1 - q)) / cfg.trajectories);
    CHECK(std::abs(p - q) <= 4 * se + 1e-9);
    CHECK(fast.odd_return_times() == 0);
  }
}

TEST_CASE("explicit finite trees are always recurrent") {
  models::ExplicitTreeSpec t;
  t.parent = {-1, 0, 0, 1};
  t.up = {0, Rational(1, 2), 1, 1};
  t.down = {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2)}, {}, {}};
  mc::RunConfig cfg;
  cfg.horizon = 10000;
  cfg.trajectories = 500;
  auto s = mc::tree_run(models::validate(t), cfg);
  CHECK(s.censored == 0);
  CHECK(s.odd_return_times() == 0);
  // simple walk on a tree with 3 edges: pi(root) = deg/6 = 1/3
  CHECK(s.mean_observed_return_time() == doctest::Approx(3.0).epsilon(0.1));
}
