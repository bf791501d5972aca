// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--workers N] [criterion ...]
//
// Criterion 8 re-runs 3-7 and compares their outputs byte for byte, so it
// needs all of them selected. Exit status is 0 when every failure is listed in
// kKnownFailures, 1 otherwise.

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "../unit/generators.hpp"
#include "../unit/networks.hpp"
#include "json.hpp"
#include "reclab/abelian_space.hpp"
#include "reclab/certificates.hpp"
#include "reclab/coupling.hpp"
#include "reclab/error.hpp"
#include "reclab/mc_engine.hpp"
#include "reclab/tree_networks.hpp"
#include "reclab/walk_io.hpp"
#include "reclab/walk_models.hpp"

using json = nlohmann::json;
using namespace reclab;
using models::OrderKind;
using models::Point;

namespace {

// 4: the lazy axis moves used for weakly inward-homogeneous X can leave the
// two walks with opposite parity, after which one shared Down step breaks the
// slack. 7: null-recurrent walks on Z^2 return within 10^6 steps with
// probability about 0.82, below the 0.99 the oracle demands, and walks on Z
// with drift near 0 are transient yet return more than 90% of the time.
const std::map<int, std::string> kKnownFailures = {
    {4, "lazy axis moves of weakly inward-homogeneous X break the joint parity the slack argument relies on"},
    {7, "2-d null-recurrent walks return in ~82% of runs at horizon 1e6 (< 99%); weak-drift transient walks on Z "
        "return in > 90%"},
};

unsigned g_workers = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
  json output;  // everything the criterion computed; compared by criterion 8
};

std::string sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

// 1 ------------------------------------------------------------------------

Outcome stationary() {
  const auto walk = models::quadrant_example("quadrant_recurrent");
  const cert::StationaryCandidate base{Rational(5, 7), Rational(3, 4), Rational(5, 6), Rational(35, 72)};
  const auto rep = cert::verify_stationary(walk, base, 5);
  Outcome o;
  o.output["base"] = cert::to_json(rep);
  int perturbed_failing = 0;
  int perturbations = 0;
  for (int field = 0; field < 4; ++field) {
    for (const Rational& eps : {Rational(1, 1000), Rational(-1, 1000)}) {
      cert::StationaryCandidate c = base;
      Rational* slots[] = {&c.rho, &c.m_x, &c.m_y, &c.w_o};
      *slots[field] += eps;
      ++perturbations;
      if (!cert::verify_stationary(walk, c, 5).verified) ++perturbed_failing;
    }
  }
  o.pass = rep.verified && rep.states_checked == 36 && perturbed_failing == perturbations;
  o.detail = "verified=" + std::string(rep.verified ? "true" : "false") + " states=" +
             std::to_string(rep.states_checked) + " perturbed_failing=" + std::to_string(perturbed_failing) + "/" +
             std::to_string(perturbations);
  return o;
}

// 2 ------------------------------------------------------------------------

Outcome transience() {
  const auto walk = models::quadrant_example("quadrant_transient");
  const auto dom = cert::dominated_increments(walk);
  Outcome o;
  bool tight_ok = !dom.tight_minus2.empty();
  for (const Point& p : dom.tight_minus2) tight_ok = tight_ok && p.y == 0 && p.x > 0;
  const bool values = dom.p_minus2 == Rational(1668, 10000) && dom.p_zero == Rational(6651, 10000) &&
                      dom.p_plus2 == Rational(1681, 10000);
  bool issued = false;
  cert::TransienceCertificate c;
  try {
    c = cert::hoeffding_certificate(dom);
    issued = true;
  } catch (const Error&) {
  }
  const bool mu_ok = issued && c.mu == Rational(26, 10000);
  const bool finite = issued && c.exponent > 0 && c.series_bound > 0;
  o.pass = values && tight_ok && mu_ok && finite;
  o.output = issued ? cert::to_json(c) : cert::to_json(dom);
  o.detail = "(" + dom.p_minus2.str() + ", " + dom.p_zero.str() + ", " + dom.p_plus2.str() + ") tight=" +
             std::to_string(dom.tight_minus2.size()) + (tight_ok ? " on y=0,x>0" : " OFF y=0,x>0") +
             " mu=" + (issued ? c.mu.str() : "none") + " sum<=" + (issued ? c.series_bound.str() : "none");
  return o;
}

// 3 ------------------------------------------------------------------------

Outcome counterexample_order() {
  const auto rec = models::quadrant_example("quadrant_recurrent");
  const auto tra = models::quadrant_example("quadrant_transient");
  const auto order = models::check_order(tra, rec, OrderKind::QuadrantPreceq);
  bool every_strict = order.holds;
  int non_forced = 0;
  for (const auto& c : order.comparisons) {
    if (c.forced || c.single_state) continue;
    ++non_forced;
    every_strict = every_strict && c.strict;
  }
  mc::RunConfig cfg;
  cfg.horizon = 100000;
  cfg.trajectories = 10000;
  cfg.workers = g_workers;
  const auto srec = mc::run_trajectories(rec, {0, 0}, cfg);
  const auto stra = mc::run_trajectories(tra, {0, 0}, cfg);
  const double fr = srec.empirical_return_probability();
  const double ft = stra.empirical_return_probability();
  Outcome o;
  o.pass = order.holds && order.strict && every_strict && fr >= 0.99 && fr - ft >= 0.05;
  o.output = {{"order", io::to_json(order)}, {"recurrent", mc::to_json(srec)}, {"transient", mc::to_json(stra)}};
  o.detail = "holds=" + std::string(order.holds ? "true" : "false") + " strict on " + std::to_string(non_forced) +
             " non-forced comparisons=" + (every_strict ? "true" : "false") + " return freq rec=" + fmt(fr) +
             " tra=" + fmt(ft) + " diff=" + fmt(fr - ft);
  return o;
}

// 4 ------------------------------------------------------------------------

struct SuiteTotals {
  std::uint64_t steps = 0, slack = 0, parity = 0;
  int runs = 0, runs_with_violations = 0, lazy_runs_with_violations = 0;
};

SuiteTotals coupling_pairs(std::uint64_t rng_seed, bool inward, json& results) {
  std::mt19937_64 rng(rng_seed);
  SuiteTotals t;
  for (int pair = 0; pair < 20; ++pair) {
    const auto x = models::validate(testgen::random_weakly_inward(rng, 100, inward));
    const bool lazy = !models::homogeneity_class(x).inward;
    for (auto mode : {mc::CouplingMode::Recurrence, mc::CouplingMode::Transience}) {
      const auto y = models::validate(mode == mc::CouplingMode::Recurrence ? testgen::push_down_left(rng, *x)
                                                                            : testgen::push_up_right(rng, *x));
      mc::CouplingConfig cfg;
      cfg.horizon = 1000;
      cfg.trajectories = 10000;
      cfg.seed = mc::kDefaultSeed + static_cast<std::uint64_t>(pair);
      cfg.workers = g_workers;
      cfg.mode = mode;
      const auto r = mc::coupled_run(x, y, cfg);
      t.steps += r.steps_checked;
      t.slack += r.slack_violations;
      t.parity += r.parity_violations;
      ++t.runs;
      if (r.slack_violations > 0) {
        ++t.runs_with_violations;
        t.lazy_runs_with_violations += lazy;
      }
      results.push_back(mc::to_json(r));
    }
  }
  return t;
}

Outcome coupling_suite() {
  Outcome o;
  json weak = json::array(), inward = json::array();
  const SuiteTotals w = coupling_pairs(404, false, weak);
  // same suite with X inward-homogeneous (no lazy axis moves); reported only
  const SuiteTotals in = coupling_pairs(405, true, inward);
  o.pass = w.slack == 0 && w.parity == 0 && w.steps == 40ULL * 10000 * 1000;
  o.output = {{"weakly_inward", weak}, {"inward", inward}};
  o.detail = "weakly inward X: " + std::to_string(w.runs) + " runs, steps=" + std::to_string(w.steps) +
             " slack_violations=" + std::to_string(w.slack) + " in " + std::to_string(w.runs_with_violations) +
             " runs (" + std::to_string(w.lazy_runs_with_violations) + " with lazy X) parity_violations=" +
             std::to_string(w.parity) + "; inward-homogeneous X: slack_violations=" + std::to_string(in.slack) +
             " parity_violations=" + std::to_string(in.parity) + " over " + std::to_string(in.steps) + " steps";
  return o;
}

// 5 ------------------------------------------------------------------------

Outcome slab() {
  Outcome o;
  const auto rec = models::slab_example("slab_recurrent", 4);
  const auto tra = models::slab_example("slab_transient", 4);
  bool drift_ok = false;
  std::string sup = "none";
  try {
    const auto c = cert::slab_drift_certificate(rec);
    sup = c.sup_drift.str();
    drift_ok = c.sup_drift == Rational(-892, 10000) && !c.tight_regions.empty();
    for (const auto& r : c.tight_regions) drift_ok = drift_ok && r == "lower_boundary";
    o.output["drift"] = cert::to_json(c);
  } catch (const Error& e) {
    o.output["drift"] = e.what();
  }
  const auto dom = cert::dominated_increments(tra);
  const bool dom_ok = dom.p_minus2 == Rational(2401, 10000) && dom.p_zero == Rational(4998, 10000) &&
                      dom.p_plus2 == Rational(2601, 10000);
  o.output["dominator"] = cert::to_json(dom);

  std::mt19937_64 rng(505);
  bool coupling_ok = true;
  std::string worst;
  json runs = json::array();
  for (int k = 2; k <= 5; ++k) {
    const auto x = models::validate(testgen::random_slab_homogeneous(rng, k));
    for (auto mode : {mc::CouplingMode::Recurrence, mc::CouplingMode::Transience}) {
      const auto y = models::validate(testgen::slab_shift(rng, *x, mode == mc::CouplingMode::Recurrence));
      mc::CouplingConfig cfg;
      cfg.horizon = 1000;
      cfg.trajectories = 10000;
      cfg.seed = mc::kDefaultSeed + static_cast<std::uint64_t>(k);
      cfg.workers = g_workers;
      cfg.mode = mode;
      const auto r = mc::slab_coupled_run(x, y, cfg);
      const std::int64_t bound = 2 * ((k + 1) / 2);
      coupling_ok = coupling_ok && r.functional_bound == bound && r.max_functional <= bound &&
                    r.slack_violations == 0 && r.parity_violations == 0 && r.steps_checked == 10000ULL * 1000;
      worst += " k=" + std::to_string(k) + (mode == mc::CouplingMode::Recurrence ? "r:" : "t:") +
               std::to_string(r.max_functional) + "/" + std::to_string(bound);
      runs.push_back(mc::to_json(r));
    }
  }
  o.output["coupling"] = runs;
  o.pass = drift_ok && dom_ok && coupling_ok;
  o.detail = "sup=" + sup + (drift_ok ? " (lower boundary)" : " (MISMATCH)") + " slab_transient(4)=(" +
             dom.p_minus2.str() + ", " + dom.p_zero.str() + ", " + dom.p_plus2.str() + ") max functional" + worst;
  return o;
}

// 6 ------------------------------------------------------------------------

Outcome trees_criterion() {
  Outcome o;
  const auto pair = trees::tree_counterexample(Rational(1, 10));
  const auto weak = models::check_order(pair.x, pair.y, OrderKind::TreeWeak);
  const auto strong = models::check_order(pair.x, pair.y, OrderKind::TreeStrong);
  const bool order_ok = weak.holds && weak.strict && !strong.holds;

  const int depth = 40;
  const auto cy = trees::effective_conductance_series(trees::conductances_from_walk(pair.y, depth), depth);
  int below = 0;
  json ys = json::array();
  for (const auto& c : cy) {
    ys.push_back(trees::to_json(c));
    if (below == 0 && c.bounds.hi() < 1e-3) below = c.n;
  }
  bool decreasing = true;
  for (std::size_t i = 2; i < cy.size(); ++i) decreasing = decreasing && cy[i].bounds.hi() <= cy[i - 1].bounds.lo();

  const auto unit = trees::effective_conductance_series(testgen::unit_binary_class(), 20);
  bool unit_ok = unit.size() == 20;
  for (const auto& c : unit) {
    const long p = 1L << c.n;
    unit_ok = unit_ok && c.exact && c.value == Rational(p, p - 1);
  }

  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> bump(0, 3);
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testgen::random_network(rng, 1 + trial % 12, 40);
    std::vector<Rational> edge = a.edge;
    for (std::size_t v = 1; v < edge.size(); ++v) edge[v] += Rational(bump(rng), 4);
    const auto b = trees::explicit_network(a.parent, edge);
    const auto r = trees::rayleigh_check(a, b);
    if (!r.dominated || !r.effective_dominated || !r.violating_levels.empty()) ++violations;
  }

  mc::RunConfig cfg;
  cfg.horizon = 100000;
  cfg.trajectories = 10000;
  cfg.workers = g_workers;
  const auto sx = mc::tree_run(pair.x, cfg);
  const auto sy = mc::tree_run(pair.y, cfg);
  const double fx = sx.empirical_return_probability();
  const double fy = sy.empirical_return_probability();

  o.pass = order_ok && below > 0 && decreasing && unit_ok && violations == 0 && fy >= 0.99 && fx <= 0.9;
  o.output = {{"weak", io::to_json(weak)}, {"strong", io::to_json(strong)}, {"c_Y", ys},
              {"X", mc::to_json(sx)},      {"Y", mc::to_json(sy)},          {"rayleigh_violations", violations}};
  o.detail = "weak strict=" + std::string(weak.holds && weak.strict ? "true" : "false") +
             " strong=" + (strong.holds ? "true" : "false") + " c_n(Y)<1e-3 at n=" + std::to_string(below) +
             " unit 2^n/(2^n-1) n<=20: " + (unit_ok ? "exact" : "MISMATCH") + " rayleigh violations=" +
             std::to_string(violations) + "/200 return freq Y=" + fmt(fy) + " X=" + fmt(fx);
  return o;
}

// 7 ------------------------------------------------------------------------

struct OracleResult {
  std::uint64_t run = 0;
  std::uint64_t returned = 0;
  std::uint64_t censored = 0;
  bool recurrent_like = false;  // returned in >= 99% of 10^4
  bool transient_like = false;  // returned in <= 90% of 10^4
};

// 10^4 trajectories at horizon 10^6, in ten fixed chunks. Stops as soon as
// 1000 trajectories are censored, which already settles "<= 90%".
OracleResult mc_oracle(const abelian::GroupWalkInstance& inst, std::uint64_t seed) {
  std::vector<std::array<std::int32_t, 2>> steps;
  std::vector<Rational> probs;
  for (std::size_t i = 0; i < inst.generators.size(); ++i) {
    if (inst.a[i] == 0) continue;
    const auto& f = inst.generators[i].free;
    steps.push_back({static_cast<std::int32_t>(f.at(0)), static_cast<std::int32_t>(f.size() > 1 ? f[1] : 0)});
    probs.push_back(inst.a[i]);
  }
  OracleResult r;
  constexpr std::uint64_t kTotal = 10000, kChunk = 1000;
  for (std::uint64_t c = 0; c < kTotal / kChunk && r.censored < kTotal / 10; ++c) {
    mc::RunConfig cfg;
    cfg.horizon = 1000000;
    cfg.trajectories = kChunk;
    cfg.seed = seed * 16 + c;
    cfg.workers = g_workers;
    const auto s = mc::run_group_walk(steps, probs, cfg);
    r.run += s.n_trajectories;
    r.returned += s.returns_observed;
    r.censored += s.censored;
  }
  r.transient_like = r.censored >= kTotal / 10;
  r.recurrent_like = r.run == kTotal && r.censored * 100 <= kTotal;
  return r;
}

abelian::GroupWalkInstance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rank_d(1, 2), size_d(2, 6), coord(-2, 2), coin(0, 1);
  abelian::GroupWalkInstance inst;
  inst.group.rank = rank_d(rng);
  const int n = size_d(rng);
  for (int i = 0; i < n; ++i) {
    abelian::GroupElement g;
    for (int d = 0; d < inst.group.rank; ++d) g.free.push_back(coord(rng));
    inst.generators.push_back(g);
  }
  std::vector<abelian::SupportClass> classes;
  if (coin(rng)) classes = abelian::feasible_supports(inst.group, inst.generators);
  if (!classes.empty()) {
    // witness of a random class, pulled toward one of its vertices
    std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
    const auto& cls = classes[pick(rng)];
    std::uniform_int_distribution<std::size_t> vpick(0, cls.vertices.size() - 1);
    const auto& v = cls.vertices[vpick(rng)].point;
    const Rational t(coord(rng) + 3, 4);
    for (std::size_t i = 0; i < cls.witness.size(); ++i) inst.a.push_back((cls.witness[i] + t * v[i]) / (1 + t));
  } else {
    inst.a = testgen::random_split(rng, n, 60);
  }
  abelian::validate_instance(inst);
  return inst;
}

abelian::GroupWalkInstance symmetric_basis(int n) {
  abelian::GroupWalkInstance inst;
  inst.group.rank = n;
  for (int i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      abelian::GroupElement g;
      g.free.assign(static_cast<std::size_t>(n), 0);
      g.free[static_cast<std::size_t>(i)] = s;
      inst.generators.push_back(g);
    }
  }
  inst.a.assign(inst.generators.size(), Rational(1, 2 * n));
  return inst;
}

// Midpoint of a violating pair must be transient.
bool midpoint_transient(const abelian::GroupWalkInstance& shape, const abelian::ConvexityReport& rep) {
  if (!rep.violation) return false;
  abelian::GroupWalkInstance mid = shape;
  mid.a.clear();
  for (std::size_t i = 0; i < rep.violation->first.size(); ++i) {
    mid.a.push_back((rep.violation->first[i] + rep.violation->second[i]) / 2);
  }
  return abelian::classify(mid).kind == abelian::Recurrence::Transient;
}

Outcome abelian_criterion() {
  Outcome o;
  std::mt19937_64 rng(707);
  int agree = 0;
  std::map<std::string, int> mismatches;
  int midpoints = 0, midpoints_ok = 0;
  json instances = json::array();
  for (int i = 0; i < 50; ++i) {
    const auto inst = random_instance(rng);
    const auto cls = abelian::classify(inst);
    const auto orc = mc_oracle(inst, mc::kDefaultSeed + static_cast<std::uint64_t>(i));
    const bool recurrent = cls.kind != abelian::Recurrence::Transient;
    const bool ok = recurrent ? orc.recurrent_like : orc.transient_like;
    if (ok) {
      ++agree;
    } else {
      std::string key = std::string(abelian::to_string(cls.kind)) + " dim " + std::to_string(cls.span_dimension) +
                        " Z" + std::to_string(inst.group.rank);
      if (cls.kind == abelian::Recurrence::Transient) key += " drift " + abelian::to_json(cls)["drift"].dump();
      key += " returned " + std::to_string(orc.returned) + "/" + std::to_string(orc.run);
      ++mismatches[key];
    }
    const auto conv = abelian::is_R_convex(inst.group, inst.generators);
    if (!conv.convex) {
      ++midpoints;
      midpoints_ok += midpoint_transient(inst, conv);
    }
    json a = json::array();
    for (const auto& x : inst.a) a.push_back(x.str());
    instances.push_back({{"classification", abelian::to_json(cls)},
                         {"a", a},
                         {"run", orc.run},
                         {"returned", orc.returned},
                         {"censored", orc.censored}});
  }

  const abelian::FGAbelianGroup z3{3, {}};
  const std::vector<abelian::GroupElement> bipyramid{
      {{0, 0, 1}, {}}, {{1, 0, 0}, {}}, {{-1, 1, 0}, {}}, {{-1, -1, 0}, {}}, {{0, 0, -1}, {}}};
  const auto topo = abelian::R_topology(z3, bipyramid);
  const bool bip_ok = topo.classes.size() == 2 && topo.pathconnected == abelian::Verdict::False;
  {
    abelian::GroupWalkInstance shape{z3, bipyramid, {}};
    const auto conv = abelian::is_R_convex(z3, bipyramid);
    if (!conv.convex) {
      ++midpoints;
      midpoints_ok += midpoint_transient(shape, conv);
    }
  }

  bool zn_ok = true;
  std::string zn;
  for (int n = 1; n <= 4; ++n) {
    const auto inst = symmetric_basis(n);
    const auto conv = abelian::is_R_convex(inst.group, inst.generators);
    zn_ok = zn_ok && conv.convex == (n <= 2);
    zn += (n > 1 ? "," : "") + std::string(conv.convex ? "T" : "F");
    if (!conv.convex) {
      ++midpoints;
      midpoints_ok += midpoint_transient(inst, conv);
    }
  }

  o.pass = agree == 50 && bip_ok && zn_ok && midpoints_ok == midpoints;
  o.output = {{"instances", instances}, {"bipyramid", abelian::to_json(topo)}};
  std::string miss;
  for (const auto& [what, count] : mismatches) miss += " [" + std::to_string(count) + "x " + what + "]";
  o.detail = "oracle agreement " + std::to_string(agree) + "/50" + (miss.empty() ? "" : " mismatches:" + miss) +
             "; bipyramid classes=" + std::to_string(topo.classes.size()) +
             " pathconnected=" + std::string(abelian::to_string(topo.pathconnected)) + "; Z^n convex n=1..4: " + zn +
             "; midpoints transient " + std::to_string(midpoints_ok) + "/" + std::to_string(midpoints);
  return o;
}

struct Criterion {
  int id;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  g_workers = std::max(1u, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--workers" && i + 1 < argc) {
      g_workers = static_cast<unsigned>(std::stoul(argv[++i]));
    } else {
      selected.insert(std::stoi(arg));
    }
  }
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8};

  const std::vector<Criterion> criteria{
      {1, 1, stationary},      {2, 1, transience},       {3, 120, counterexample_order}, {4, 300, coupling_suite},
      {5, 300, slab},          {6, 300, trees_criterion}, {7, 600, abelian_criterion},
  };

  std::map<int, std::string> first_digest;
  bool unexpected = false;
  auto report = [&](int id, bool pass, const std::string& detail) {
    std::string tag = pass ? "PASS" : "FAIL";
    const auto known = kKnownFailures.find(id);
    if (!pass && known != kKnownFailures.end()) {
      tag += " (known: " + known->second + ")";
    } else if (!pass) {
      unexpected = true;
    }
    std::cout << "criterion " << id << ": " << tag << " | " << detail << std::endl;
  };

  for (const auto& c : criteria) {
    if (!selected.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_seconds;
    first_digest[c.id] = sha256(o.output.dump());
    report(c.id, o.pass && in_time,
           o.detail + " | " + fmt(secs, 2) + "s (budget " + fmt(c.budget_seconds, 0) + "s)" +
               (in_time ? "" : " OVER BUDGET"));
  }

  if (selected.count(8)) {
    bool same = true;
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& c : criteria) {
      if (c.id < 3) continue;
      if (!first_digest.count(c.id)) {
        same = false;
        detail += " " + std::to_string(c.id) + ":not-run";
        continue;
      }
      const std::string again = sha256(c.run().output.dump());
      const bool eq = again == first_digest[c.id];
      same = same && eq;
      detail += " " + std::to_string(c.id) + ":" + again.substr(0, 12) + (eq ? "" : "!=" + first_digest[c.id].substr(0, 12));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(8, same, "re-run digests" + detail + " | " + fmt(secs, 2) + "s");
  }
  return unexpected ? 1 : 0;
}
