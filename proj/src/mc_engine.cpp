#include "reclab/mc_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "reclab/error.hpp"
#include "reclab/simd/philox.hpp"

namespace reclab::mc {

using namespace reclab::models;

void TrajectoryStats::add(std::uint64_t return_time) {
  ++n_trajectories;
  if (return_time == 0) {
    ++censored;
  } else {
    ++returns_observed;
    ++return_time_histogram[return_time];
  }
}

void TrajectoryStats::merge(const TrajectoryStats& other) {
  n_trajectories += other.n_trajectories;
  returns_observed += other.returns_observed;
  censored += other.censored;
  for (const auto& [t, c] : other.return_time_histogram) return_time_histogram[t] += c;
}

double TrajectoryStats::empirical_return_probability() const {
  return n_trajectories == 0 ? 0.0 : static_cast<double>(returns_observed) / static_cast<double>(n_trajectories);
}

double TrajectoryStats::mean_observed_return_time() const {
  if (returns_observed == 0) return 0.0;
  long double total = 0;
  for (const auto& [t, c] : return_time_histogram) total += static_cast<long double>(t) * c;
  return static_cast<double>(total / returns_observed);
}

std::uint64_t TrajectoryStats::odd_return_times() const {
  std::uint64_t odd = 0;
  for (const auto& [t, c] : return_time_histogram) {
    if (t % 2 == 1) odd += c;
  }
  return odd;
}

TrajectoryStats stats_from_times(const std::vector<std::uint32_t>& times, std::uint32_t horizon, std::uint64_t seed) {
  TrajectoryStats s;
  s.horizon = horizon;
  s.seed = seed;
  for (std::uint32_t t : times) s.add(t);
  return s;
}

void parallel_chunks(std::uint64_t n, unsigned workers, const std::function<void(std::uint64_t, std::uint64_t)>& fn,
                     std::uint64_t chunk) {
  if (chunk == 0) chunk = 1;
  const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
  workers = std::max(1u, workers);
  if (workers == 1 || n_chunks <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) fn(c * chunk, std::min(chunk, n - c * chunk));
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto body = [&] {
    for (;;) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= n_chunks || failed.load()) return;
      try {
        fn(c * chunk, std::min(chunk, n - c * chunk));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::int32_t> cumulative_thresholds(const std::vector<Rational>& probs) {
  std::vector<std::int32_t> out;
  Rational c;
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    c += probs[i];
    out.push_back(static_cast<std::int32_t>(c.scaled_floor(30)));
  }
  return out;
}

namespace {

constexpr std::array<Direction, 4> kMoveOrder{Direction::Left, Direction::Right, Direction::Up, Direction::Down};

void fill_region(simd::LatticeKernelSpec& k, int region, const std::vector<Rational>& probs,
                 const std::vector<std::array<std::int32_t, 2>>& moves) {
  auto thr = cumulative_thresholds(probs);
  for (std::size_t m = 0; m < thr.size(); ++m) k.threshold[m][region] = thr[m];
  for (std::size_t m = 0; m < moves.size(); ++m) {
    k.dx[m][region] = moves[m][0];
    k.dy[m][region] = moves[m][1];
  }
}

void fill_law(simd::LatticeKernelSpec& k, int region, const Law& law) {
  std::vector<Rational> probs;
  std::vector<std::array<std::int32_t, 2>> moves;
  for (Direction d : kMoveOrder) {
    probs.push_back(law[d]);
    moves.push_back({dx(d), dy(d)});
  }
  fill_region(k, region, probs, moves);
}

std::int32_t checked_coord(std::int64_t v) {
  if (v < 0 || v > (1LL << 30)) throw Error(ErrorCode::InvalidArgument, "start coordinate out of range");
  return static_cast<std::int32_t>(v);
}

}  // namespace

simd::LatticeKernelSpec compile(const Validated<QuadrantWalkSpec>& spec, Point start, std::uint64_t seed) {
  simd::LatticeKernelSpec k;
  k.rule = simd::LatticeRule::Quadrant;
  k.n_moves = 4;
  fill_law(k, 0, spec->interior);
  fill_law(k, 1, spec->y_axis);
  fill_law(k, 2, spec->x_axis);
  fill_law(k, 3, spec->origin);
  k.start_x = checked_coord(start.x);
  k.start_y = checked_coord(start.y);
  k.key = seed;
  k.stream = kStreamQuadrant;
  return k;
}

simd::LatticeKernelSpec compile(const Validated<SlabWalkSpec>& spec, Point start, std::uint64_t seed) {
  if (start.y < 0 || start.y > spec->k) throw Error(ErrorCode::InvalidArgument, "start outside the slab");
  simd::LatticeKernelSpec k;
  k.rule = simd::LatticeRule::Slab;
  k.slab_k = spec->k;
  k.n_moves = 4;
  for (SlabRegion r : kSlabRegions) fill_law(k, static_cast<int>(r), spec->law(r));
  k.start_x = checked_coord(start.x);
  k.start_y = checked_coord(start.y);
  k.key = seed;
  k.stream = kStreamSlab;
  return k;
}

std::optional<simd::LatticeKernelSpec> compile(const Validated<ClassTreeSpec>& spec, std::uint64_t seed) {
  const auto& cls = spec->classes;
  const int root = spec->root_class;
  const auto& rc = cls[static_cast<std::size_t>(root)];
  auto all_equal = [](const std::vector<int>& v, int c) {
    return std::all_of(v.begin(), v.end(), [c](int x) { return x == c; });
  };
  auto probs_of = [](const ClassTreeSpec::VertexClass& c, std::size_t n_moves) {
    std::vector<Rational> p{c.up};
    p.insert(p.end(), c.child_prob.begin(), c.child_prob.end());
    p.resize(n_moves);
    return p;
  };
  simd::LatticeKernelSpec k;
  k.key = seed;
  k.stream = kStreamTree;
  if (rc.child_class.empty()) return std::nullopt;

  // Uniform: every non-root vertex has the same class. Depth on the x-axis.
  const int c = rc.child_class.front();
  if (all_equal(rc.child_class, c) && all_equal(cls[static_cast<std::size_t>(c)].child_class, c)) {
    const auto& cc = cls[static_cast<std::size_t>(c)];
    std::size_t n_moves = 1 + std::max(rc.child_class.size(), cc.child_class.size());
    if (n_moves > simd::kMaxMoves) return std::nullopt;
    k.rule = simd::LatticeRule::Quadrant;
    k.n_moves = static_cast<std::int32_t>(n_moves);
    std::vector<std::array<std::int32_t, 2>> moves{{-1, 0}};
    for (std::size_t i = 1; i < n_moves; ++i) moves.push_back({1, 0});
    fill_region(k, 3, probs_of(rc, n_moves), moves);  // root = (0,0)
    fill_region(k, 2, probs_of(cc, n_moves), moves);  // depth > 0 on the x-axis
    return k;
  }

  // Left spine: one spine child per spine vertex, everything else off-spine
  // and closed under children.
  auto split = [](const std::vector<int>& children, int spine, int& off) {
    int n_spine = 0;
    for (int ch : children) {
      if (ch == spine) {
        ++n_spine;
      } else if (off < 0 || ch == off) {
        off = ch;
      } else {
        return false;
      }
    }
    return n_spine == 1;
  };
  int s_root = -1;
  int off = -1;
  for (int cand : rc.child_class) {
    int o = -1;
    const auto& cc = cls[static_cast<std::size_t>(cand)];
    if (split(rc.child_class, cand, o) && split(cc.child_class, cand, o) && o >= 0 && o != cand &&
        all_equal(cls[static_cast<std::size_t>(o)].child_class, o)) {
      s_root = cand;
      off = o;
      break;
    }
  }
  if (s_root < 0) return std::nullopt;
  const auto& sc = cls[static_cast<std::size_t>(s_root)];
  const auto& oc = cls[static_cast<std::size_t>(off)];
  std::size_t n_moves = 1 + std::max({rc.child_class.size(), sc.child_class.size(), oc.child_class.size()});
  if (n_moves > simd::kMaxMoves) return std::nullopt;
  k.rule = simd::LatticeRule::SpineTree;
  k.n_moves = static_cast<std::int32_t>(n_moves);
  auto spine_moves = [&](const std::vector<int>& children, bool has_parent) {
    std::vector<std::array<std::int32_t, 2>> moves{{has_parent ? -1 : 0, 0}};
    for (std::size_t i = 0; i + 1 < n_moves; ++i) {
      if (i < children.size() && children[i] == s_root) {
        moves.push_back({1, 0});
      } else {
        moves.push_back({0, 1});
      }
    }
    return moves;
  };
  std::vector<std::array<std::int32_t, 2>> off_moves{{0, -1}};
  for (std::size_t i = 1; i < n_moves; ++i) off_moves.push_back({0, 1});
  fill_region(k, 0, probs_of(oc, n_moves), off_moves);
  fill_region(k, 1, probs_of(sc, n_moves), spine_moves(sc.child_class, true));
  fill_region(k, 2, probs_of(rc, n_moves), spine_moves(rc.child_class, false));
  return k;
}

simd::LatticeKernelSpec compile_group_walk(const std::vector<std::array<std::int32_t, 2>>& steps,
                                           const std::vector<Rational>& probs, std::uint64_t seed) {
  if (steps.empty() || steps.size() > simd::kMaxMoves || steps.size() != probs.size()) {
    throw Error(ErrorCode::InvalidArgument, "group walk needs 1..8 generators with matching probabilities");
  }
  simd::LatticeKernelSpec k;
  k.rule = simd::LatticeRule::Homogeneous;
  k.n_moves = static_cast<std::int32_t>(steps.size());
  fill_region(k, 0, probs, steps);
  k.key = seed;
  k.stream = kStreamGroup;
  return k;
}

std::vector<std::uint32_t> first_return_times(const simd::LatticeKernelSpec& kernel, const RunConfig& cfg) {
  std::vector<std::uint32_t> out(cfg.trajectories);
  const simd::Backend backend = simd::resolve_backend(cfg.backend);
  parallel_chunks(cfg.trajectories, cfg.workers, [&](std::uint64_t first, std::uint64_t count) {
    simd::lattice_first_return(kernel, first, count, cfg.horizon, out.data() + first, backend);
  });
  return out;
}

TrajectoryStats run_trajectories(const Validated<QuadrantWalkSpec>& spec, Point start, const RunConfig& cfg) {
  return stats_from_times(first_return_times(compile(spec, start, cfg.seed), cfg), cfg.horizon, cfg.seed);
}

TrajectoryStats run_trajectories(const Validated<SlabWalkSpec>& spec, Point start, const RunConfig& cfg) {
  return stats_from_times(first_return_times(compile(spec, start, cfg.seed), cfg), cfg.horizon, cfg.seed);
}

TrajectoryStats run_group_walk(const std::vector<std::array<std::int32_t, 2>>& steps,
                               const std::vector<Rational>& probs, const RunConfig& cfg) {
  return stats_from_times(first_return_times(compile_group_walk(steps, probs, cfg.seed), cfg), cfg.horizon,
                          cfg.seed);
}

TrajectoryStats tree_run_generic(const Validated<ClassTreeSpec>& spec, const RunConfig& cfg) {
  const auto& cls = spec->classes;
  std::vector<std::vector<std::int32_t>> thresholds;
  for (const auto& c : cls) {
    std::vector<Rational> p{c.up};
    p.insert(p.end(), c.child_prob.begin(), c.child_prob.end());
    thresholds.push_back(cumulative_thresholds(p));
  }
  std::vector<std::uint32_t> times(cfg.trajectories);
  parallel_chunks(cfg.trajectories, cfg.workers, [&](std::uint64_t first, std::uint64_t count) {
    std::vector<int> path;
    for (std::uint64_t i = first; i < first + count; ++i) {
      simd::StreamReader rng(cfg.seed, kStreamTree, i);
      path.clear();
      std::uint32_t result = 0;
      for (std::uint32_t t = 0; t < cfg.horizon; ++t) {
        const int cur = path.empty() ? spec->root_class : path.back();
        const int m = draw(thresholds[static_cast<std::size_t>(cur)], rng.next());
        if (m == 0) {
          path.pop_back();
        } else {
          path.push_back(cls[static_cast<std::size_t>(cur)].child_class[static_cast<std::size_t>(m - 1)]);
        }
        if (path.empty()) {
          result = t + 1;
          break;
        }
      }
      times[i] = result;
    }
  });
  return stats_from_times(times, cfg.horizon, cfg.seed);
}

TrajectoryStats tree_run(const Validated<ClassTreeSpec>& spec, const RunConfig& cfg) {
  if (auto kernel = compile(spec, cfg.seed)) {
    return stats_from_times(first_return_times(*kernel, cfg), cfg.horizon, cfg.seed);
  }
  return tree_run_generic(spec, cfg);
}

TrajectoryStats tree_run(const Validated<ExplicitTreeSpec>& spec, const RunConfig& cfg) {
  const auto children = spec->children();
  std::vector<std::vector<std::int32_t>> thresholds;
  for (std::size_t v = 0; v < spec->size(); ++v) {
    std::vector<Rational> p{spec->up[v]};
    p.insert(p.end(), spec->down[v].begin(), spec->down[v].end());
    thresholds.push_back(cumulative_thresholds(p));
  }
  std::vector<std::uint32_t> times(cfg.trajectories);
  parallel_chunks(cfg.trajectories, cfg.workers, [&](std::uint64_t first, std::uint64_t count) {
    for (std::uint64_t i = first; i < first + count; ++i) {
      simd::StreamReader rng(cfg.seed, kStreamTree, i);
      std::size_t v = 0;
      std::uint32_t result = 0;
      for (std::uint32_t t = 0; t < cfg.horizon; ++t) {
        const int m = draw(thresholds[v], rng.next());
        v = m == 0 ? static_cast<std::size_t>(spec->parent[v])
                   : static_cast<std::size_t>(children[v][static_cast<std::size_t>(m - 1)]);
        if (v == 0) {
          result = t + 1;
          break;
        }
      }
      times[i] = result;
    }
  });
  return stats_from_times(times, cfg.horizon, cfg.seed);
}

namespace {

struct QuadrantSampler {
  std::array<std::vector<std::int32_t>, 4> thr;

  explicit QuadrantSampler(const QuadrantWalkSpec& spec) {
    for (QuadrantRegion r : kQuadrantRegions) {
      std::vector<Rational> p;
      for (Direction d : kMoveOrder) p.push_back(spec.law(r)[d]);
      thr[static_cast<std::size_t>(r)] = cumulative_thresholds(p);
    }
  }

  Point step(Point p, std::uint32_t word) const {
    const auto r = static_cast<std::size_t>(quadrant_region(p.x, p.y));
    const Direction d = kMoveOrder[static_cast<std::size_t>(draw(thr[r], word))];
    return {p.x + dx(d), p.y + dy(d)};
  }
};

}  // namespace

Point quadrant_step(const QuadrantWalkSpec& spec, Point p, std::uint32_t word) {
  return QuadrantSampler(spec).step(p, word);
}

OccupationEstimate occupation_frequencies(const Validated<QuadrantWalkSpec>& spec, Point start, std::uint64_t steps,
                                          int window, std::uint64_t seed, int batches) {
  if (window < 0 || batches < 2 || steps < static_cast<std::uint64_t>(batches)) {
    throw Error(ErrorCode::InvalidArgument, "occupation estimate needs window >= 0, batches >= 2, steps >= batches");
  }
  const QuadrantSampler sampler(*spec);
  const std::size_t side = static_cast<std::size_t>(window) + 1;
  const std::uint64_t per_batch = steps / static_cast<std::uint64_t>(batches);
  std::vector<std::vector<double>> batch_freq(static_cast<std::size_t>(batches), std::vector<double>(side * side));
  simd::StreamReader rng(seed, kStreamOccupation, 0);
  Point p = start;
  for (int b = 0; b < batches; ++b) {
    std::vector<std::uint64_t> counts(side * side);
    for (std::uint64_t s = 0; s < per_batch; ++s) {
      p = sampler.step(p, rng.next());
      if (p.x <= window && p.y <= window) ++counts[static_cast<std::size_t>(p.x) * side + static_cast<std::size_t>(p.y)];
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
      batch_freq[static_cast<std::size_t>(b)][i] = static_cast<double>(counts[i]) / static_cast<double>(per_batch);
    }
  }
  OccupationEstimate est;
  est.window = window;
  est.steps = per_batch * static_cast<std::uint64_t>(batches);
  est.frequency.assign(side * side, 0.0);
  est.standard_error.assign(side * side, 0.0);
  for (std::size_t i = 0; i < side * side; ++i) {
    double mean = 0;
    for (const auto& bf : batch_freq) mean += bf[i];
    mean /= batches;
    double var = 0;
    for (const auto& bf : batch_freq) var += (bf[i] - mean) * (bf[i] - mean);
    var /= (batches - 1);
    est.frequency[i] = mean;
    est.standard_error[i] = std::sqrt(var / batches);
  }
  return est;
}

std::vector<std::uint64_t> visits_to_start(const Validated<QuadrantWalkSpec>& spec, Point start, const RunConfig& cfg) {
  const QuadrantSampler sampler(*spec);
  const std::uint64_t chunk = 1024;
  const std::uint64_t n_chunks = (cfg.trajectories + chunk - 1) / chunk;
  std::vector<std::vector<std::uint64_t>> partial(n_chunks, std::vector<std::uint64_t>(cfg.horizon + 1ULL));
  parallel_chunks(
      cfg.trajectories, cfg.workers,
      [&](std::uint64_t first, std::uint64_t count) {
        auto& counts = partial[first / chunk];
        for (std::uint64_t i = first; i < first + count; ++i) {
          simd::StreamReader rng(cfg.seed, kStreamQuadrant, i);
          Point p = start;
          ++counts[0];
          for (std::uint32_t t = 1; t <= cfg.horizon; ++t) {
            p = sampler.step(p, rng.next());
            if (p == start) ++counts[t];
          }
        }
      },
      chunk);
  std::vector<std::uint64_t> total(cfg.horizon + 1ULL);
  for (const auto& c : partial) {
    for (std::size_t t = 0; t < total.size(); ++t) total[t] += c[t];
  }
  return total;
}

nlohmann::json to_json(const TrajectoryStats& s) {
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& [t, c] : s.return_time_histogram) hist.push_back({t, c});
  return {{"n_trajectories", s.n_trajectories},
          {"horizon", s.horizon},
          {"returns_observed", s.returns_observed},
          {"censored", s.censored},
          {"empirical_return_probability", s.empirical_return_probability()},
          {"mean_observed_return_time", s.mean_observed_return_time()},
          {"seed", s.seed},
          {"return_time_histogram", hist}};
}

std::string histogram_csv(const TrajectoryStats& s) {
  std::ostringstream os;
  os << "t,count,censored_count\n";
  bool horizon_row = false;
  for (const auto& [t, c] : s.return_time_histogram) {
    std::uint64_t cens = 0;
    if (t == s.horizon) {
      cens = s.censored;
      horizon_row = true;
    }
    os << t << ',' << c << ',' << cens << '\n';
  }
  if (!horizon_row && s.censored > 0) os << s.horizon << ",0," << s.censored << '\n';
  return os.str();
}

}  // namespace reclab::mc
