#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "reclab/walk_models.hpp"

namespace testgen {

using reclab::Rational;
using reclab::models::Direction;
using reclab::models::Law;

/// Random point of the simplex over `parts` coordinates with denominator den.
inline std::vector<Rational> random_split(std::mt19937_64& rng, int parts, long den, bool positive = true) {
  long lo = positive ? 1 : 0;
  long free_mass = den - lo * parts;
  std::vector<long> cuts{0, free_mass};
  std::uniform_int_distribution<long> u(0, free_mass);
  for (int i = 0; i + 1 < parts; ++i) cuts.push_back(u(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> out;
  for (int i = 0; i < parts; ++i) out.emplace_back(cuts[i + 1] - cuts[i] + lo, den);
  return out;
}

inline Law law_over(const std::vector<Direction>& dirs, const std::vector<Rational>& probs) {
  Law law;
  for (std::size_t i = 0; i < dirs.size(); ++i) law[dirs[i]] = probs[i];
  return law;
}

/// Elliptic quadrant walk: every allowed move has positive probability.
inline reclab::models::QuadrantWalkSpec random_quadrant(std::mt19937_64& rng, long den = 120) {
  using D = Direction;
  reclab::models::QuadrantWalkSpec s;
  s.origin = law_over({D::Right, D::Up}, random_split(rng, 2, den));
  s.x_axis = law_over({D::Left, D::Right, D::Up}, random_split(rng, 3, den));
  s.y_axis = law_over({D::Right, D::Up, D::Down}, random_split(rng, 3, den));
  s.interior = law_over({D::Left, D::Right, D::Up, D::Down}, random_split(rng, 4, den));
  return s;
}

/// Moves mass from up/right to down/left in every region, so the result
/// precedes `x` in the quadrant order.
inline reclab::models::QuadrantWalkSpec push_down_left(std::mt19937_64& rng, reclab::models::QuadrantWalkSpec x) {
  using D = Direction;
  using reclab::models::QuadrantRegion;
  std::uniform_int_distribution<int> pct(0, 100);
  for (QuadrantRegion r : reclab::models::kQuadrantRegions) {
    Law& law = x.law(r);
    for (D from : {D::Up, D::Right}) {
      for (D to : {D::Down, D::Left}) {
        if (reclab::models::forbidden(r, to)) continue;
        Rational moved = law[from] * Rational(pct(rng), 200);
        law[from] -= moved;
        law[to] += moved;
      }
    }
  }
  return x;
}

/// Mirror of push_down_left: the result follows `x` in the quadrant order.
inline reclab::models::QuadrantWalkSpec push_up_right(std::mt19937_64& rng, reclab::models::QuadrantWalkSpec x) {
  using D = Direction;
  using reclab::models::QuadrantRegion;
  std::uniform_int_distribution<int> pct(0, 100);
  for (QuadrantRegion r : reclab::models::kQuadrantRegions) {
    Law& law = x.law(r);
    for (D from : {D::Down, D::Left}) {
      for (D to : {D::Up, D::Right}) {
        Rational moved = law[from] * Rational(pct(rng), 200);
        law[from] -= moved;
        law[to] += moved;
      }
    }
  }
  return x;
}

/// Elliptic, weakly inward-homogeneous walk with r_o >= r_q and u_o >= u_q.
/// With `inward` the axes keep r_x = r_q and u_y = u_q (no lazy moves).
inline reclab::models::QuadrantWalkSpec random_weakly_inward(std::mt19937_64& rng, long den = 100,
                                                             bool inward = false) {
  using D = Direction;
  std::uniform_int_distribution<int> pct(0, 100);
  reclab::models::QuadrantWalkSpec s;
  auto q4 = random_split(rng, 4, den);
  s.interior = law_over({D::Left, D::Right, D::Up, D::Down}, q4);
  const Law& q = s.interior;
  {
    // r_x = t r_q with 1 <= t <= 1/(1 - d_q); l_x, u_x >= t l_q, t u_q
    Rational t = 1 + Rational(inward ? 0 : pct(rng), 100) * q[D::Down] / (1 - q[D::Down]);
    Rational slack = 1 - t * (1 - q[D::Down]);
    Rational a(pct(rng), 100);
    s.x_axis = reclab::models::make_law(t * q[D::Left] + a * slack, t * q[D::Right],
                                        t * q[D::Up] + (1 - a) * slack, 0);
  }
  {
    Rational t = 1 + Rational(inward ? 0 : pct(rng), 100) * q[D::Left] / (1 - q[D::Left]);
    Rational slack = 1 - t * (1 - q[D::Left]);
    Rational a(pct(rng), 100);
    s.y_axis = reclab::models::make_law(0, t * q[D::Right] + a * slack, t * q[D::Up],
                                        t * q[D::Down] + (1 - a) * slack);
  }
  Rational a(pct(rng), 100);
  Rational r_o = q[D::Right] + a * (1 - q[D::Right] - q[D::Up]);
  s.origin = reclab::models::make_law(0, r_o, 1 - r_o, 0);
  return s;
}

/// Slab walk satisfying the slab homogeneity inequalities: every boundary
/// region keeps the centre law on its allowed moves and spreads the blocked
/// mass over them.
inline reclab::models::SlabWalkSpec random_slab_homogeneous(std::mt19937_64& rng, int k, long den = 100) {
  using D = Direction;
  using reclab::models::SlabRegion;
  std::uniform_int_distribution<int> pct(0, 100);
  reclab::models::SlabWalkSpec s;
  s.k = k;
  Law q = law_over({D::Left, D::Right, D::Up, D::Down}, random_split(rng, 4, den));
  s.law(SlabRegion::Center) = q;
  auto spread = [&](SlabRegion r) {
    Law law;
    std::vector<D> allowed;
    Rational blocked;
    for (D d : reclab::models::kDirections) {
      if (reclab::models::forbidden(r, d)) {
        blocked += q[d];
      } else {
        law[d] = q[d];
        allowed.push_back(d);
      }
    }
    auto split = random_split(rng, static_cast<int>(allowed.size()), den, false);
    for (std::size_t i = 0; i < allowed.size(); ++i) law[allowed[i]] += blocked * split[i];
    return law;
  };
  for (SlabRegion r : {SlabRegion::Lower, SlabRegion::Upper, SlabRegion::Left}) s.law(r) = spread(r);
  const Law& x = s.law(SlabRegion::Lower);
  Rational r_o = x[D::Right] + Rational(pct(rng), 100) * (1 - x[D::Right] - q[D::Up]);
  s.law(SlabRegion::Origin) = reclab::models::make_law(0, r_o, 1 - r_o, 0);
  const Law& u = s.law(SlabRegion::Upper);
  Rational r_c = u[D::Right] + Rational(pct(rng), 100) * (1 - u[D::Right] - q[D::Down]);
  s.law(SlabRegion::Corner) = reclab::models::make_law(0, r_c, 0, 1 - r_c);
  return s;
}

/// Moves horizontal mass toward the left (or right) wherever allowed, keeping
/// vertical mass fixed.
inline reclab::models::SlabWalkSpec slab_shift(std::mt19937_64& rng, reclab::models::SlabWalkSpec s, bool leftward) {
  using D = Direction;
  std::uniform_int_distribution<int> pct(0, 100);
  for (auto r : reclab::models::kSlabRegions) {
    Law& law = s.law(r);
    D from = leftward ? D::Right : D::Left;
    D to = leftward ? D::Left : D::Right;
    if (reclab::models::forbidden(r, to)) continue;
    Rational moved = law[from] * Rational(pct(rng), 100);
    law[from] -= moved;
    law[to] += moved;
  }
  return s;
}

}  // namespace testgen
