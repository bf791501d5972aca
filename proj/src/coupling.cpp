#include "reclab/coupling.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

#include "reclab/error.hpp"
#include "reclab/simd/philox.hpp"

namespace reclab::mc {

using namespace reclab::models;

std::string_view to_string(CouplingMode m) { return m == CouplingMode::Recurrence ? "recurrence" : "transience"; }

CouplingMode coupling_mode_from_string(std::string_view name) {
  if (name == "recurrence") return CouplingMode::Recurrence;
  if (name == "transience") return CouplingMode::Transience;
  throw Error(ErrorCode::UnknownName, "unknown coupling mode '" + std::string(name) + "'");
}

std::optional<Slack> admissible_slack(std::int64_t dx, std::int64_t dy) {
  for (const Slack& s : kSlacks) {
    if (dx <= s[0] && dy <= s[1]) return s;
  }
  return std::nullopt;
}

namespace {

constexpr int kStay = 4;

struct Categorical {
  std::vector<std::int32_t> thr;
  std::vector<int> outcome;

  int sample(std::uint32_t word) const { return outcome[static_cast<std::size_t>(draw(thr, word))]; }
};

Categorical identity(int outcome) { return {{}, {outcome}}; }

Categorical categorical(const std::vector<std::pair<int, Rational>>& entries, const std::string& what) {
  Rational total;
  std::vector<Rational> probs;
  Categorical c;
  for (const auto& [o, p] : entries) {
    if (p.sign() < 0) {
      throw Error(ErrorCode::PreconditionFailed, what + ": negative redirection probability " + p.str());
    }
    total += p;
    probs.push_back(p);
    c.outcome.push_back(o);
  }
  if (total != Rational(1)) {
    throw Error(ErrorCode::PreconditionFailed, what + ": redirection probabilities sum to " + total.str());
  }
  c.thr = cumulative_thresholds(probs);
  return c;
}

int idx(Direction d) { return static_cast<int>(d); }

/// Stage 3 for Y: turn X's law at a region into Y's law at the same region.
Categorical shift_table(const Law& lx, const Law& ly, Direction d, CouplingMode mode, const std::string& where) {
  using D = Direction;
  const bool rec = mode == CouplingMode::Recurrence;
  const bool shifted = rec ? (d == D::Right || d == D::Up) : (d == D::Left || d == D::Down);
  if (!shifted || lx[d].is_zero()) return identity(idx(d));
  const Rational keep = ly[d] / lx[d];
  const Rational lose = Rational(1) - keep;
  if (lose.is_zero()) return identity(idx(d));
  const D a = rec ? D::Left : D::Right;
  const D b = rec ? D::Down : D::Up;
  const Rational gap_a = ly[a] - lx[a];
  const Rational gap_b = ly[b] - lx[b];
  const Rational gap = gap_a + gap_b;
  if (gap.sign() <= 0) {
    throw Error(ErrorCode::PreconditionFailed, where + ": order between X and Y fails");
  }
  return categorical({{idx(d), keep}, {idx(a), lose * gap_a / gap}, {idx(b), lose * gap_b / gap}},
                     where + " shift " + std::string(to_string(d)));
}

struct Tables {
  int n_regions = 0;
  Categorical stage1;
  std::vector<std::array<Categorical, 4>> redirect;  // [X rule region][stage-1 direction]
  std::vector<std::array<Categorical, 4>> shift;     // [Y region][direction]
};

void fill_shift(Tables& t, const std::vector<Law>& lx, const std::vector<Law>& ly, CouplingMode mode,
                const std::vector<std::string>& names) {
  t.shift.resize(static_cast<std::size_t>(t.n_regions));
  for (int r = 0; r < t.n_regions; ++r) {
    for (Direction d : kDirections) {
      t.shift[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx(d))] =
          shift_table(lx[static_cast<std::size_t>(r)], ly[static_cast<std::size_t>(r)], d, mode,
                      names[static_cast<std::size_t>(r)]);
    }
  }
}

Categorical stage1_table(const Law& q) {
  return categorical({{idx(Direction::Left), q[Direction::Left]},
                      {idx(Direction::Right), q[Direction::Right]},
                      {idx(Direction::Up), q[Direction::Up]},
                      {idx(Direction::Down), q[Direction::Down]}},
                     "interior");
}

struct Monitor {
  virtual ~Monitor() = default;
  virtual int region(Point p) const = 0;
  /// Returns false when the coupling invariant fails; fills slack / functional.
  virtual bool check(Point x, Point y, CoupledState& st, std::int64_t& functional) const = 0;
};

CouplingResult run_coupling(const Tables& tab, const Monitor& mon, const CouplingConfig& cfg) {
  if (cfg.trajectories == 0 || cfg.horizon == 0) {
    throw Error(ErrorCode::InvalidArgument, "coupled runs need horizon >= 1 and trajectories >= 1");
  }
  const std::uint64_t chunk = 256;
  const std::uint64_t n_chunks = (cfg.trajectories + chunk - 1) / chunk;
  std::vector<CouplingResult> partial(n_chunks);
  std::vector<std::uint32_t> tx(cfg.trajectories), ty(cfg.trajectories);

  parallel_chunks(
      cfg.trajectories, cfg.workers,
      [&](std::uint64_t first, std::uint64_t count) {
        CouplingResult& res = partial[first / chunk];
        for (std::uint64_t traj = first; traj < first + count; ++traj) {
          simd::StreamReader rng(cfg.seed, kStreamCoupling, traj);
          Point x = cfg.start_x;
          Point y = cfg.start_y;
          std::uint64_t moves_x = 0, moves_y = 0;
          std::uint32_t ret_x = 0, ret_y = 0;
          for (std::uint32_t t = 1; t <= cfg.horizon; ++t) {
            const simd::PhiloxCounter w = rng.next_block();
            const int d1 = tab.stage1.sample(w[0]);
            const int rx = mon.region(x);
            const int ry = mon.region(y);
            const int ox = tab.redirect[static_cast<std::size_t>(rx)][static_cast<std::size_t>(d1)].sample(w[1]);
            int oy = tab.redirect[static_cast<std::size_t>(ry)][static_cast<std::size_t>(d1)].sample(w[1]);
            if (oy != kStay) oy = tab.shift[static_cast<std::size_t>(ry)][static_cast<std::size_t>(oy)].sample(w[2]);
            ++res.marginals[0][static_cast<std::size_t>(rx)][static_cast<std::size_t>(ox)];
            ++res.marginals[1][static_cast<std::size_t>(ry)][static_cast<std::size_t>(oy)];
            if (ox != kStay) {
              const auto d = static_cast<Direction>(ox);
              x.x += dx(d);
              x.y += dy(d);
              ++moves_x;
            }
            if (oy != kStay) {
              const auto d = static_cast<Direction>(oy);
              y.x += dx(d);
              y.y += dy(d);
              ++moves_y;
            }
            if (ret_x == 0 && x == cfg.start_x) ret_x = t;
            if (ret_y == 0 && y == cfg.start_y) ret_y = t;

            CoupledState st{x, y, std::nullopt, t};
            std::int64_t functional = 0;
            const bool ok = mon.check(x, y, st, functional);
            res.max_functional = std::max(res.max_functional, functional);
            auto record = [&](const char* kind) {
              if (res.violations.size() < cfg.max_reported) res.violations.push_back({traj, kind, st});
            };
            if (!ok) {
              ++res.slack_violations;
              record("slack");
            }
            const std::int64_t px = (x.x + x.y) - (cfg.start_x.x + cfg.start_x.y) - static_cast<std::int64_t>(moves_x);
            const std::int64_t py = (y.x + y.y) - (cfg.start_y.x + cfg.start_y.y) - static_cast<std::int64_t>(moves_y);
            if (px % 2 != 0) {
              ++res.parity_violations;
              record("parity_x");
            }
            if (py % 2 != 0) {
              ++res.parity_violations;
              record("parity_y");
            }
            ++res.steps_checked;
          }
          tx[traj] = ret_x;
          ty[traj] = ret_y;
        }
      },
      chunk);

  CouplingResult out;
  for (const auto& p : partial) {
    out.steps_checked += p.steps_checked;
    out.slack_violations += p.slack_violations;
    out.parity_violations += p.parity_violations;
    out.max_functional = std::max(out.max_functional, p.max_functional);
    for (const auto& v : p.violations) {
      if (out.violations.size() < cfg.max_reported) out.violations.push_back(v);
    }
    for (std::size_t w = 0; w < 2; ++w) {
      for (std::size_t r = 0; r < 6; ++r) {
        for (std::size_t o = 0; o < 5; ++o) out.marginals[w][r][o] += p.marginals[w][r][o];
      }
    }
  }
  out.x_stats = stats_from_times(tx, cfg.horizon, cfg.seed);
  out.y_stats = stats_from_times(ty, cfg.horizon, cfg.seed);
  return out;
}

bool elliptic(const QuadrantWalkSpec& s) {
  for (QuadrantRegion r : kQuadrantRegions) {
    for (Direction d : kDirections) {
      if (!forbidden(r, d) && s.law(r)[d].is_zero()) return false;
    }
  }
  return true;
}

struct QuadrantMonitor final : Monitor {
  CouplingMode mode;
  explicit QuadrantMonitor(CouplingMode m) : mode(m) {}
  int region(Point p) const override { return static_cast<int>(quadrant_region(p.x, p.y)); }
  bool check(Point x, Point y, CoupledState& st, std::int64_t&) const override {
    const bool rec = mode == CouplingMode::Recurrence;
    st.slack = rec ? admissible_slack(y.x - x.x, y.y - x.y) : admissible_slack(x.x - y.x, x.y - y.y);
    return st.slack.has_value();
  }
};

struct SlabMonitor final : Monitor {
  CouplingMode mode;
  int k;
  std::int64_t bound;
  SlabMonitor(CouplingMode m, int kk) : mode(m), k(kk), bound(2 * ((kk + 1) / 2)) {}
  int region(Point p) const override { return static_cast<int>(slab_region(p.x, p.y, k)); }
  bool check(Point x, Point y, CoupledState&, std::int64_t& functional) const override {
    const std::int64_t di = mode == CouplingMode::Recurrence ? y.x - x.x : x.x - y.x;
    functional = std::llabs(y.y - x.y) + std::max<std::int64_t>(di, 0);
    return functional <= bound;
  }
};

}  // namespace

CouplingResult coupled_run(const Validated<QuadrantWalkSpec>& xv, const Validated<QuadrantWalkSpec>& yv,
                           const CouplingConfig& cfg) {
  using D = Direction;
  using R = QuadrantRegion;
  const QuadrantWalkSpec& x = *xv;
  if (!homogeneity_class(xv).weakly_inward) {
    throw Error(ErrorCode::PreconditionFailed, "X is not weakly inward-homogeneous");
  }
  if (!elliptic(x)) throw Error(ErrorCode::PreconditionFailed, "X is not elliptic");
  const Law& q = x.interior;
  if (x.origin[D::Right] < q[D::Right] || x.origin[D::Up] < q[D::Up]) {
    throw Error(ErrorCode::PreconditionFailed, "X origin is not compatible with the redirection framework (needs r_o >= r_q and u_o >= u_q)");
  }
  const bool rec = cfg.mode == CouplingMode::Recurrence;
  const auto order = rec ? check_order(yv, xv, OrderKind::QuadrantPreceq) : check_order(xv, yv, OrderKind::QuadrantPreceq);
  if (!order.holds) {
    throw Error(ErrorCode::PreconditionFailed,
                rec ? "Y does not precede X (recurrence mode)" : "X does not precede Y (transience mode)");
  }

  Tables tab;
  tab.n_regions = 4;
  tab.stage1 = stage1_table(q);
  tab.redirect.resize(4);
  for (R r : kQuadrantRegions) {
    for (D d : kDirections) tab.redirect[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx(d))] = identity(idx(d));
  }
  {
    const Law& lx = x.x_axis;
    const Rational lambda = q[D::Right] / lx[D::Right];
    tab.redirect[static_cast<std::size_t>(R::XAxis)][static_cast<std::size_t>(idx(D::Down))] = categorical(
        {{kStay, (Rational(1) - lambda) / q[D::Down]},
         {idx(D::Left), (lambda * lx[D::Left] - q[D::Left]) / q[D::Down]},
         {idx(D::Up), (lambda * lx[D::Up] - q[D::Up]) / q[D::Down]}},
        "x_axis");
    const Law& ly = x.y_axis;
    const Rational mu = q[D::Up] / ly[D::Up];
    tab.redirect[static_cast<std::size_t>(R::YAxis)][static_cast<std::size_t>(idx(D::Left))] = categorical(
        {{kStay, (Rational(1) - mu) / q[D::Left]},
         {idx(D::Down), (mu * ly[D::Down] - q[D::Down]) / q[D::Left]},
         {idx(D::Right), (mu * ly[D::Right] - q[D::Right]) / q[D::Left]}},
        "y_axis");
    const Law& lo = x.origin;
    const Rational blocked = q[D::Left] + q[D::Down];
    const Categorical origin = categorical({{idx(D::Right), (lo[D::Right] - q[D::Right]) / blocked},
                                            {idx(D::Up), (lo[D::Up] - q[D::Up]) / blocked}},
                                           "origin");
    tab.redirect[static_cast<std::size_t>(R::Origin)][static_cast<std::size_t>(idx(D::Left))] = origin;
    tab.redirect[static_cast<std::size_t>(R::Origin)][static_cast<std::size_t>(idx(D::Down))] = origin;
  }
  std::vector<Law> lx, ly;
  std::vector<std::string> names;
  for (R r : kQuadrantRegions) {
    lx.push_back(x.law(r));
    ly.push_back(yv->law(r));
    names.emplace_back(to_string(r));
  }
  fill_shift(tab, lx, ly, cfg.mode, names);
  if (cfg.start_x.x < 0 || cfg.start_x.y < 0 || cfg.start_y.x < 0 || cfg.start_y.y < 0) {
    throw Error(ErrorCode::InvalidArgument, "start outside the quadrant");
  }
  return run_coupling(tab, QuadrantMonitor(cfg.mode), cfg);
}

CouplingResult slab_coupled_run(const Validated<SlabWalkSpec>& xv, const Validated<SlabWalkSpec>& yv,
                                const CouplingConfig& cfg) {
  using D = Direction;
  using R = SlabRegion;
  const SlabWalkSpec& x = *xv;
  if (!slab_homogeneity(xv)) throw Error(ErrorCode::PreconditionFailed, "X is not slab-homogeneous");
  const bool rec = cfg.mode == CouplingMode::Recurrence;
  const auto order =
      rec ? check_order(yv, xv, OrderKind::SlabTrianglelefteq) : check_order(xv, yv, OrderKind::SlabTrianglelefteq);
  if (!order.holds) {
    throw Error(ErrorCode::PreconditionFailed,
                rec ? "Y is not left of X (recurrence mode)" : "X is not left of Y (transience mode)");
  }
  const Law& q = x.law(R::Center);
  Tables tab;
  tab.n_regions = 6;
  tab.stage1 = stage1_table(q);
  tab.redirect.resize(6);
  for (R r : kSlabRegions) {
    for (D d : kDirections) tab.redirect[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx(d))] = identity(idx(d));
  }
  auto set = [&](R r, D d, const std::vector<std::pair<int, Rational>>& e) {
    if (q[d].is_zero()) return;  // never selected in stage 1
    tab.redirect[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx(d))] =
        categorical(e, std::string(to_string(r)));
  };
  auto over = [&](const Rational& a, D d) { return q[d].is_zero() ? Rational(0) : a / q[d]; };
  {
    const Law& l = x.law(R::Lower);
    set(R::Lower, D::Down,
        {{idx(D::Right), over(l[D::Right] - q[D::Right], D::Down)},
         {idx(D::Left), over(l[D::Left] - q[D::Left], D::Down)},
         {idx(D::Up), over(l[D::Up] - q[D::Up], D::Down)}});
    const Law& u = x.law(R::Upper);
    set(R::Upper, D::Up,
        {{idx(D::Right), over(u[D::Right] - q[D::Right], D::Up)},
         {idx(D::Left), over(u[D::Left] - q[D::Left], D::Up)},
         {idx(D::Down), over(u[D::Down] - q[D::Down], D::Up)}});
    const Law& y = x.law(R::Left);
    set(R::Left, D::Left,
        {{idx(D::Right), over(y[D::Right] - q[D::Right], D::Left)},
         {idx(D::Down), over(y[D::Down] - q[D::Down], D::Left)},
         {idx(D::Up), over(y[D::Up] - q[D::Up], D::Left)}});
    // Origin and corner send the Right mass through the boundary-shared
    // direction first so they redirect right whenever the adjacent boundary does.
    const Law& o = x.law(R::Origin);
    const Rational extra_o = o[D::Right] - q[D::Right];
    const Rational beta_d = min(Rational(1), over(extra_o, D::Down));
    const Rational beta_l = over(extra_o - q[D::Down] * beta_d, D::Left);
    set(R::Origin, D::Down, {{idx(D::Right), beta_d}, {idx(D::Up), Rational(1) - beta_d}});
    set(R::Origin, D::Left, {{idx(D::Right), beta_l}, {idx(D::Up), Rational(1) - beta_l}});
    const Law& c = x.law(R::Corner);
    const Rational extra_c = c[D::Right] - q[D::Right];
    const Rational alpha_u = min(Rational(1), over(extra_c, D::Up));
    const Rational alpha_l = over(extra_c - q[D::Up] * alpha_u, D::Left);
    set(R::Corner, D::Up, {{idx(D::Right), alpha_u}, {idx(D::Down), Rational(1) - alpha_u}});
    set(R::Corner, D::Left, {{idx(D::Right), alpha_l}, {idx(D::Down), Rational(1) - alpha_l}});
  }
  std::vector<Law> lx, ly;
  std::vector<std::string> names;
  for (R r : kSlabRegions) {
    lx.push_back(x.law(r));
    ly.push_back(yv->law(r));
    names.emplace_back(to_string(r));
  }
  fill_shift(tab, lx, ly, cfg.mode, names);
  for (const Point& p : {cfg.start_x, cfg.start_y}) {
    if (p.x < 0 || p.y < 0 || p.y > x.k) throw Error(ErrorCode::InvalidArgument, "start outside the slab");
  }
  SlabMonitor mon(cfg.mode, x.k);
  CouplingResult res = run_coupling(tab, mon, cfg);
  res.functional_bound = mon.bound;
  return res;
}

nlohmann::json to_json(const CouplingResult& r) {
  nlohmann::json viol = nlohmann::json::array();
  for (const auto& v : r.violations) {
    nlohmann::json s = {{"t", v.state.t},
                        {"X", {v.state.x.x, v.state.x.y}},
                        {"Y", {v.state.y.x, v.state.y.y}}};
    viol.push_back({{"trajectory", v.trajectory}, {"kind", v.kind}, {"state", s}});
  }
  nlohmann::json out = {{"steps_checked", r.steps_checked},
                        {"slack_violations", r.slack_violations},
                        {"parity_violations", r.parity_violations},
                        {"violations", viol},
                        {"X", to_json(r.x_stats)},
                        {"Y", to_json(r.y_stats)}};
  if (r.functional_bound > 0) {
    out["max_functional"] = r.max_functional;
    out["functional_bound"] = r.functional_bound;
  }
  return out;
}

}  // namespace reclab::mc
