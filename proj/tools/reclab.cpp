// reclab: command-line front end for the recurrence lab.
//
// Every subcommand reads JSON (a file, or stdin when --spec is absent or "-"),
// prints its result on stdout and a run manifest on stderr. With --out DIR the
// result and manifest.json are written there as well.
//
// Exit codes: 0 success, 1 precondition or validation failure, 2 internal
// error, 3 an "unknown" verdict (region queries).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "manifest.hpp"
#include "reclab/abelian_space.hpp"
#include "reclab/certificates.hpp"
#include "reclab/coupling.hpp"
#include "reclab/error.hpp"
#include "reclab/mc_engine.hpp"
#include "reclab/tree_networks.hpp"
#include "reclab/walk_io.hpp"
#include "reclab/walk_models.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace reclab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 1;
constexpr int kExitInternal = 2;
constexpr int kExitUnknown = 3;

struct Common {
  std::string spec = "-";
  std::string out_dir;
  std::string format = "json";
  std::string parent_manifest;
  std::optional<std::uint64_t> seed;
  std::uint32_t horizon = 100000;
  std::uint64_t trajectories = 10000;
  unsigned workers = 1;
  std::string backend = "auto";
};

struct Result {
  json body;
  std::string csv;  // filled when the command supports --format csv
  int exit_code = kExitOk;
};

class Session {
 public:
  Session(std::string command, std::vector<std::string> argv, Common& common)
      : common_(common), manifest_(std::move(command), std::move(argv)) {}

  Common& opt() { return common_; }
  cli::RunManifest& manifest() { return manifest_; }

  std::string read(const std::string& path) {
    std::string bytes;
    if (path.empty() || path == "-") {
      if (stdin_used_) throw Error(ErrorCode::InvalidArgument, "stdin can feed only one input");
      stdin_used_ = true;
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      bytes = ss.str();
    } else {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
      std::ostringstream ss;
      ss << in.rdbuf();
      bytes = ss.str();
    }
    manifest_.add_input(path.empty() ? "-" : path, bytes);
    return bytes;
  }

  json read_json(const std::string& path) {
    const std::string bytes = read(path);
    try {
      return json::parse(bytes);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, (path == "-" ? std::string("stdin") : path) + ": " + e.what());
    }
  }

  std::uint64_t seed() {
    std::uint64_t s = mc::kDefaultSeed;
    if (common_.seed) {
      s = *common_.seed;
    } else if (const char* env = std::getenv("RECLAB_SEED")) {
      try {
        s = std::stoull(env);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, std::string("RECLAB_SEED is not an integer: ") + env);
      }
    }
    manifest_.set_seed(s);
    return s;
  }

  mc::RunConfig run_config() {
    mc::RunConfig cfg;
    cfg.horizon = common_.horizon;
    cfg.trajectories = common_.trajectories;
    cfg.workers = std::max(1u, common_.workers);
    cfg.seed = seed();
    cfg.backend = simd::backend_from_string(common_.backend);
    return cfg;
  }

  int finish(const std::string& stem, const Result& r) {
    const bool csv = common_.format == "csv";
    if (csv && r.csv.empty()) throw Error(ErrorCode::InvalidArgument, "this command has no CSV output");
    const std::string text = csv ? r.csv : r.body.dump(2) + "\n";
    std::cout << text;
    if (!common_.parent_manifest.empty()) {
      std::ifstream in(common_.parent_manifest, std::ios::binary);
      if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + common_.parent_manifest);
      std::ostringstream ss;
      ss << in.rdbuf();
      manifest_.set_parent(common_.parent_manifest, ss.str());
    }
    if (!common_.out_dir.empty()) {
      fs::create_directories(common_.out_dir);
      const fs::path result = fs::path(common_.out_dir) / (stem + (csv ? ".csv" : ".json"));
      std::ofstream(result, std::ios::binary) << text;
      manifest_.add_output(result);
      const fs::path mpath = fs::path(common_.out_dir) / "manifest.json";
      manifest_.add_output(mpath);
      std::ofstream(mpath, std::ios::binary) << manifest_.to_json().dump(2) << "\n";
    } else {
      std::cerr << "manifest: " << manifest_.to_json().dump() << "\n";
    }
    return r.exit_code;
  }

 private:
  Common& common_;
  cli::RunManifest manifest_;
  bool stdin_used_ = false;
};

models::Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "expected a point like 2,0, got '" + text + "'");
  try {
    return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "expected a point like 2,0, got '" + text + "'");
  }
}

json error_json(const Error& e) {
  json issues = json::array();
  for (const auto& i : e.issues()) {
    issues.push_back({{"code", std::string(to_string(i.code))}, {"where", i.where}, {"message", i.message}});
  }
  return {{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"issues", issues}};
}

template <class T>
const T& expect(const io::AnyValidated& v, const char* what) {
  if (const T* p = std::get_if<T>(&v)) return *p;
  throw Error(ErrorCode::ShapeMismatch, std::string("this command needs a ") + what + " spec");
}

std::string spec_kind(const io::AnyValidated& v) {
  switch (v.index()) {
    case 0: return "quadrant";
    case 1: return "slab";
    case 2: return "tree";
    default: return "class_tree";
  }
}

std::string rows_csv(const std::vector<cert::TwoStepRow>& rows) {
  std::ostringstream os;
  os << "x,y,region,p_minus2,p_zero,p_plus2,drift\n";
  for (const auto& r : rows) {
    os << r.state.x << ',' << r.state.y << ',' << r.region << ',' << r.p_minus2.str() << ',' << r.p_zero.str() << ','
       << r.p_plus2.str() << ',' << r.drift.str() << '\n';
  }
  return os.str();
}

std::string conductance_csv(const std::vector<trees::EffectiveConductance>& series) {
  std::ostringstream os;
  os << "n,exact,value,lo,hi\n";
  for (const auto& c : series) {
    os << c.n << ',' << (c.exact ? 1 : 0) << ',' << (c.exact ? c.value.str() : "") << ',' << c.bounds.lo_str(20)
       << ',' << c.bounds.hi_str(20) << '\n';
  }
  return os.str();
}

// --- subcommands -----------------------------------------------------------

Result cmd_validate(Session& s) {
  const json doc = s.read_json(s.opt().spec);
  Result r;
  try {
    const io::AnyValidated v = io::parse_and_validate(doc);
    r.body = {{"valid", true}, {"kind", spec_kind(v)}, {"spec", io::to_json(v)}};
  } catch (const Error& e) {
    r.body = error_json(e);
    r.body["valid"] = false;
    r.exit_code = kExitPrecondition;
  }
  return r;
}

models::OrderKind default_order(const io::AnyValidated& v) {
  switch (v.index()) {
    case 0: return models::OrderKind::QuadrantPreceq;
    case 1: return models::OrderKind::SlabTrianglelefteq;
    default: return models::OrderKind::TreeWeak;
  }
}

Result cmd_order_check(Session& s, const std::string& xpath, const std::string& ypath, const std::string& order) {
  const auto x = io::parse_and_validate(s.read_json(xpath));
  const auto y = io::parse_and_validate(s.read_json(ypath));
  if (x.index() != y.index()) throw Error(ErrorCode::ShapeMismatch, "X and Y are different kinds of walk");
  const models::OrderKind kind = order.empty() ? default_order(x) : models::order_kind_from_string(order);
  const models::OrderResult res = std::visit(
      [&](const auto& xv) -> models::OrderResult {
        using T = std::decay_t<decltype(xv)>;
        return models::check_order(xv, std::get<T>(y), kind);
      },
      x);
  Result r;
  r.body = io::to_json(res);
  r.body["order"] = std::string(to_string(kind));
  return r;
}

Result cmd_homogeneity(Session& s) {
  const auto v = io::parse_and_validate(s.read_json(s.opt().spec));
  Result r;
  if (const auto* q = std::get_if<models::Validated<models::QuadrantWalkSpec>>(&v)) {
    r.body = io::to_json(models::homogeneity_class(*q));
  } else {
    r.body = io::to_json(models::slab_homogeneity_report(expect<models::Validated<models::SlabWalkSpec>>(v, "quadrant or slab")));
  }
  return r;
}

Result cmd_simulate(Session& s, const std::string& start) {
  const auto v = io::parse_and_validate(s.read_json(s.opt().spec));
  const mc::RunConfig cfg = s.run_config();
  const models::Point p = parse_point(start);
  mc::TrajectoryStats stats;
  switch (v.index()) {
    case 0: stats = mc::run_trajectories(std::get<0>(v), p, cfg); break;
    case 1: stats = mc::run_trajectories(std::get<1>(v), p, cfg); break;
    case 2: stats = mc::tree_run(std::get<2>(v), cfg); break;
    default: stats = mc::tree_run(std::get<3>(v), cfg); break;
  }
  Result r;
  r.body = mc::to_json(stats);
  r.body["backend"] = std::string(simd::to_string(simd::resolve_backend(cfg.backend)));
  r.csv = mc::histogram_csv(stats);
  return r;
}

Result cmd_couple(Session& s, const std::string& xpath, const std::string& ypath, const std::string& mode,
                  const std::string& sx, const std::string& sy) {
  const auto x = io::parse_and_validate(s.read_json(xpath));
  const auto y = io::parse_and_validate(s.read_json(ypath));
  mc::CouplingConfig cfg;
  const mc::RunConfig run = s.run_config();
  cfg.horizon = run.horizon;
  cfg.trajectories = run.trajectories;
  cfg.seed = run.seed;
  cfg.workers = run.workers;
  cfg.mode = mc::coupling_mode_from_string(mode);
  cfg.start_x = parse_point(sx);
  cfg.start_y = parse_point(sy);
  mc::CouplingResult res;
  if (x.index() == 0 && y.index() == 0) {
    res = mc::coupled_run(std::get<0>(x), std::get<0>(y), cfg);
  } else if (x.index() == 1 && y.index() == 1) {
    res = mc::slab_coupled_run(std::get<1>(x), std::get<1>(y), cfg);
  } else {
    throw Error(ErrorCode::ShapeMismatch, "couple needs two quadrant or two slab specs");
  }
  Result r;
  r.body = mc::to_json(res);
  r.body["mode"] = std::string(mc::to_string(cfg.mode));
  std::ostringstream os;
  os << "steps_checked,slack_violations,parity_violations,max_functional,functional_bound,x_returns,y_returns\n"
     << res.steps_checked << ',' << res.slack_violations << ',' << res.parity_violations << ',' << res.max_functional
     << ',' << res.functional_bound << ',' << res.x_stats.returns_observed << ',' << res.y_stats.returns_observed
     << '\n';
  r.csv = os.str();
  // a violation means the coupling construction itself is broken
  if (res.slack_violations + res.parity_violations > 0) r.exit_code = kExitInternal;
  return r;
}

Result cmd_stationary(Session& s, const std::string& rho, const std::string& mx, const std::string& my,
                      const std::string& wo, int window) {
  const auto v = io::parse_and_validate(s.read_json(s.opt().spec));
  const auto& q = expect<models::Validated<models::QuadrantWalkSpec>>(v, "quadrant");
  const cert::StationaryCandidate cand{Rational::parse(rho), Rational::parse(mx), Rational::parse(my),
                                       Rational::parse(wo)};
  const cert::StationaryReport rep = cert::verify_stationary(q, cand, window);
  Result r;
  r.body = cert::to_json(rep);
  if (!rep.verified) r.exit_code = kExitPrecondition;
  return r;
}

Result cmd_transience(Session& s, int window) {
  const auto v = io::parse_and_validate(s.read_json(s.opt().spec));
  cert::IncrementDominator dom;
  if (const auto* q = std::get_if<models::Validated<models::QuadrantWalkSpec>>(&v)) {
    dom = cert::dominated_increments(*q, window);
  } else {
    dom = cert::dominated_increments(expect<models::Validated<models::SlabWalkSpec>>(v, "quadrant or slab"), window);
  }
  Result r;
  r.csv = rows_csv(dom.transcript);
  try {
    r.body = cert::to_json(cert::hoeffding_certificate(dom));
    r.body["issued"] = true;
  } catch (const Error& e) {
    r.body = error_json(e);
    r.body["issued"] = false;
    r.body["dominator"] = cert::to_json(dom);
    r.exit_code = kExitPrecondition;
  }
  return r;
}

Result cmd_slab_drift(Session& s, int window, bool include_stopping_set, const std::string& start) {
  const auto v = io::parse_and_validate(s.read_json(s.opt().spec));
  const auto& slab = expect<models::Validated<models::SlabWalkSpec>>(v, "slab");
  Result r;
  if (include_stopping_set) {
    const auto c = cert::slab_two_step_sup(slab, false, window);
    r.body = cert::to_json(c);
    r.csv = rows_csv(c.transcript);
    return r;
  }
  try {
    const auto c = cert::slab_drift_certificate(slab, window);
    r.body = cert::to_json(c);
    r.body["issued"] = true;
    if (!start.empty()) {
      const models::Point p = parse_point(start);
      r.body["hitting_bound"] = {{"start", {p.x, p.y}}, {"bound", c.hitting_bound(p.x, p.y).str()}};
    }
    r.csv = rows_csv(c.transcript);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoCertificate) throw;
    const auto c = cert::slab_two_step_sup(slab, true, window);
    r.body = error_json(e);
    r.body["issued"] = false;
    r.body["sup_drift"] = c.sup_drift.str();
    r.csv = rows_csv(c.transcript);
    r.exit_code = kExitPrecondition;
  }
  return r;
}

Result cmd_tree_counterexample(Session&, const std::string& delta_text, int depth, const std::string& emit) {
  const Rational delta = Rational::parse(delta_text);
  const trees::TreeCounterexamplePair pair = trees::tree_counterexample(delta);
  Result r;
  if (emit == "x" || emit == "y") {
    r.body = io::to_json(emit == "x" ? *pair.x : *pair.y);
    return r;
  }
  const auto nx = trees::conductances_from_walk(pair.x, depth);
  const auto ny = trees::conductances_from_walk(pair.y, depth);
  const auto cx = trees::effective_conductance_series(nx, depth);
  const auto cy = trees::effective_conductance_series(ny, depth);
  json series = json::array();
  int below = 0;
  for (std::size_t i = 0; i < cx.size(); ++i) {
    series.push_back({{"n", cx[i].n}, {"X", trees::to_json(cx[i])}, {"Y", trees::to_json(cy[i])}});
    if (below == 0 && cy[i].bounds.hi() < 1e-3) below = cy[i].n;
  }
  const auto weak = models::check_order(pair.x, pair.y, models::OrderKind::TreeWeak);
  const auto strong = models::check_order(pair.x, pair.y, models::OrderKind::TreeStrong);
  r.body = {{"delta", delta.str()},
            {"X", io::to_json(*pair.x)},
            {"Y", io::to_json(*pair.y)},
            {"weak_order", io::to_json(weak)},
            {"strong_order", io::to_json(strong)},
            {"conductance", series},
            {"Y_below_1e-3_at", below == 0 ? json(nullptr) : json(below)}};
  std::ostringstream os;
  os << "n,X_lo,X_hi,Y_lo,Y_hi\n";
  for (std::size_t i = 0; i < cx.size(); ++i) {
    os << cx[i].n << ',' << cx[i].bounds.lo_str(20) << ',' << cx[i].bounds.hi_str(20) << ','
       << cy[i].bounds.lo_str(20) << ',' << cy[i].bounds.hi_str(20) << '\n';
  }
  r.csv = os.str();
  return r;
}

trees::ConductanceNetwork network_of(const io::AnyValidated& v, int depth) {
  if (const auto* t = std::get_if<models::Validated<models::ExplicitTreeSpec>>(&v)) {
    return trees::conductances_from_walk(*t, depth);
  }
  return trees::conductances_from_walk(expect<models::Validated<models::ClassTreeSpec>>(v, "tree or class_tree"),
                                       depth);
}

Result cmd_conductance(Session& s, int depth, bool dot) {
  const auto v = io::parse_and_validate(s.read_json(s.opt().spec));
  trees::ConductanceNetwork net = network_of(v, depth);
  const int n_max = std::min(depth, std::max(net.depth, 1));
  const auto series = trees::effective_conductance_series(net, n_max);
  Result r;
  json arr = json::array();
  for (const auto& c : series) arr.push_back(trees::to_json(c));
  r.body = {{"network", trees::to_json(net)}, {"conductance", arr}};
  if (dot) r.body["dot"] = trees::to_dot(net, std::min(n_max, 4));
  if (v.index() == 3) {
    try {
      const auto mass = trees::network_mass(net, n_max);
      r.body["root_stationary_mass"] = {{"lower", mass.pi_lower().str()}, {"upper", mass.pi_upper().str()}};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotSummable) throw;
      r.body["root_stationary_mass"] = nullptr;
    }
  }
  r.csv = conductance_csv(series);
  return r;
}

Result cmd_rayleigh(Session& s, const std::string& apath, const std::string& bpath, int depth) {
  const auto a = io::parse_and_validate(s.read_json(apath));
  const auto b = io::parse_and_validate(s.read_json(bpath));
  const auto na = network_of(a, depth);
  const auto nb = network_of(b, depth);
  Result r;
  r.body = trees::to_json(trees::rayleigh_check(na, nb));
  return r;
}

Result cmd_classify(Session& s) {
  const auto inst = abelian::instance_from_json(s.read_json(s.opt().spec));
  Result r;
  r.body = abelian::to_json(abelian::classify(inst));
  r.body["group"] = inst.group.str();
  return r;
}

Result cmd_region(Session& s, const std::string& group_text, const std::string& gens_path, const std::string& query,
                  const std::vector<std::size_t>& mesh, int resolution) {
  const json doc = s.read_json(gens_path.empty() ? s.opt().spec : gens_path);
  abelian::FGAbelianGroup g;
  if (!group_text.empty()) {
    g = abelian::FGAbelianGroup::parse(group_text);
  } else if (doc.is_object() && doc.contains("group")) {
    g = abelian::group_from_json(doc.at("group"));
  } else {
    throw Error(ErrorCode::InvalidArgument, "region needs --group or a \"group\" entry in the generators file");
  }
  const auto gens = abelian::generators_from_json(g, doc);
  Result r;
  r.body = {{"group", g.str()}};
  bool unknown = false;
  if (query == "R" || query == "all") {
    const auto convex = abelian::is_R_convex(g, gens);
    const auto topo = abelian::R_topology(g, gens);
    r.body["R"] = {{"convexity", abelian::to_json(convex)}, {"topology", abelian::to_json(topo)}};
    unknown = unknown || topo.pathconnected == abelian::Verdict::Unknown;
  }
  if (query == "Rc" || query == "all") {
    const auto rc = abelian::Rc_properties(g, gens);
    r.body["Rc"] = abelian::to_json(rc);
    unknown = unknown || rc.pathconnected == abelian::Verdict::Unknown || rc.convex == abelian::Verdict::Unknown;
  }
  if (query == "P" || query == "all") r.body["P"] = abelian::to_json(abelian::P_region(g, gens));
  if (query == "supports") {
    json arr = json::array();
    for (const auto& c : abelian::feasible_supports(g, gens)) arr.push_back(abelian::to_json(c));
    r.body["classes"] = arr;
  }
  if (!mesh.empty()) {
    if (mesh.size() != 3) throw Error(ErrorCode::InvalidArgument, "--mesh takes three generator indices");
    r.csv = abelian::simplex_mesh_csv(g, gens, mesh[0], mesh[1], mesh[2], resolution);
  }
  if (unknown) r.exit_code = kExitUnknown;
  return r;
}

json bipyramid_doc() {
  return {{"group", {{"rank", 3}, {"torsion", json::array()}}},
          {"generators", {{0, 0, 1}, {1, 0, 0}, {-1, 1, 0}, {-1, -1, 0}, {0, 0, -1}}}};
}

Result cmd_paper_examples(Session&, const std::string& name, int k, const std::string& delta) {
  Result r;
  if (name == "list") {
    r.body = {{"quadrant", {"quadrant_recurrent", "quadrant_transient"}},
              {"slab", {"slab_recurrent", "slab_transient"}},
              {"tree", {"tree_x", "tree_y"}},
              {"group", {"bipyramid", "z3_symmetric"}}};
  } else if (name == "quadrant_recurrent" || name == "quadrant_transient") {
    r.body = io::to_json(*models::quadrant_example(name));
  } else if (name == "slab_recurrent" || name == "slab_transient") {
    r.body = io::to_json(*models::slab_example(name, k));
  } else if (name == "tree_x" || name == "tree_y") {
    const auto pair = trees::tree_counterexample(Rational::parse(delta));
    r.body = io::to_json(name == "tree_x" ? *pair.x : *pair.y);
  } else if (name == "bipyramid") {
    r.body = bipyramid_doc();
  } else if (name == "z3_symmetric") {
    r.body = {{"group", {{"rank", 3}, {"torsion", json::array()}}},
              {"generators", {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}}};
  } else {
    throw Error(ErrorCode::UnknownName, "unknown example '" + name + "' (try --name list)");
  }
  return r;
}

void add_common(CLI::App* sub, Common& c, bool input, bool sim) {
  if (input) sub->add_option("--spec", c.spec, "input JSON file, '-' or absent for stdin");
  sub->add_option("--out", c.out_dir, "write the result and manifest.json into DIR");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--parent-manifest", c.parent_manifest, "manifest of an earlier run to chain from");
  if (sim) {
    sub->add_option("--seed", c.seed, "Philox key; falls back to $RECLAB_SEED, then 20240611");
    sub->add_option("--horizon", c.horizon, "steps per trajectory")->capture_default_str();
    sub->add_option("--trajectories", c.trajectories, "number of trajectories")->capture_default_str();
    sub->add_option("--workers", c.workers, "worker threads; results do not depend on it")->capture_default_str();
    sub->add_option("--backend", c.backend, "auto, scalar or avx2 ($RECLAB_SIMD overrides auto)")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reclab: recurrence and transience experiments for random walks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(RECLAB_VERSION));
  Common common;

  auto* validate = app.add_subcommand("validate", "validate a walk spec");
  add_common(validate, common, true, false);

  std::string xpath = "-", ypath = "-", order;
  auto* order_check = app.add_subcommand("order-check", "compare two walks in a stochastic order");
  add_common(order_check, common, false, false);
  order_check->add_option("--x", xpath, "spec of X")->required();
  order_check->add_option("--y", ypath, "spec of Y")->required();
  order_check->add_option("--order", order, "quadrant_preceq, slab_trianglelefteq, tree_weak or tree_strong");

  auto* homogeneity = app.add_subcommand("homogeneity", "inward / weakly inward / slab homogeneity checks");
  add_common(homogeneity, common, true, false);

  std::string start = "0,0";
  auto* simulate = app.add_subcommand(
      "simulate", "first-return Monte Carlo; CSV columns t,count,censored_count (censored rows sit at t = horizon)");
  add_common(simulate, common, true, true);
  simulate->add_option("--start", start, "start state x,y (lattice walks)")->capture_default_str();

  std::string mode = "recurrence", start_x = "0,0", start_y = "0,0";
  auto* couple = app.add_subcommand(
      "couple",
      "coupled run of X and Y; CSV columns steps_checked,slack_violations,parity_violations,max_functional,"
      "functional_bound,x_returns,y_returns");
  add_common(couple, common, false, true);
  couple->add_option("--x", xpath, "spec of X (the homogeneous walk)")->required();
  couple->add_option("--y", ypath, "spec of Y")->required();
  couple->add_option("--mode", mode, "recurrence or transience")->capture_default_str();
  couple->add_option("--start-x", start_x, "start of X")->capture_default_str();
  couple->add_option("--start-y", start_y, "start of Y")->capture_default_str();

  std::string rho, mx, my, wo;
  int window = cert::kDefaultStationaryWindow;
  auto* stationary = app.add_subcommand("stationary-check", "exact balance check of a product-form candidate");
  add_common(stationary, common, true, false);
  stationary->add_option("--rho", rho)->required();
  stationary->add_option("--mx", mx)->required();
  stationary->add_option("--my", my)->required();
  stationary->add_option("--wo", wo)->required();
  stationary->add_option("--window", window, "check states with i, j <= window")->capture_default_str();

  int inc_window = cert::kDefaultIncrementWindow;
  auto* transience = app.add_subcommand(
      "transience-cert",
      "dominating two-step increment and Hoeffding certificate; CSV columns x,y,region,p_minus2,p_zero,p_plus2,drift");
  add_common(transience, common, true, false);
  transience->add_option("--window", inc_window)->capture_default_str();

  bool include_stop = false;
  std::string hit_start;
  auto* slab_drift = app.add_subcommand(
      "slab-drift", "negative two-step drift certificate on the slab; CSV columns as transience-cert");
  add_common(slab_drift, common, true, false);
  slab_drift->add_option("--window", inc_window)->capture_default_str();
  slab_drift->add_flag("--include-stopping-set", include_stop, "report the supremum without excluding the stopping set");
  slab_drift->add_option("--start", hit_start, "x,y for the expected hitting-time bound");

  std::string delta = "1/10", emit;
  int depth = 70;
  auto* tree_ce = app.add_subcommand("tree-counterexample",
                                     "tree pair ordered weakly but not strongly; CSV columns n,X_lo,X_hi,Y_lo,Y_hi");
  add_common(tree_ce, common, false, false);
  tree_ce->add_option("--delta", delta, "0 < delta < 1/7")->capture_default_str();
  tree_ce->add_option("--depth", depth)->capture_default_str();
  tree_ce->add_option("--emit", emit, "x or y: print only that spec")->check(CLI::IsMember({"x", "y"}));

  bool dot = false;
  auto* conductance = app.add_subcommand("conductance", "effective conductances c_1..c_depth; CSV columns n,exact,value,lo,hi");
  add_common(conductance, common, true, false);
  conductance->add_option("--depth", depth)->capture_default_str();
  conductance->add_flag("--dot", dot, "include a DOT rendering of the first levels");

  auto* rayleigh = app.add_subcommand("rayleigh", "edgewise and effective conductance comparison of two tree walks");
  add_common(rayleigh, common, false, false);
  rayleigh->add_option("--a", xpath)->required();
  rayleigh->add_option("--b", ypath)->required();
  rayleigh->add_option("--depth", depth)->capture_default_str();

  auto* classify = app.add_subcommand("classify", "classify a homogeneous walk on Z^n x H");
  add_common(classify, common, true, false);

  std::string group, gens, query = "R";
  std::vector<std::size_t> mesh;
  int resolution = 20;
  auto* region = app.add_subcommand(
      "region", "recurrent region of the parameter simplex; exit 3 on an unknown verdict; mesh CSV columns a_i,a_j,a_l,classification");
  add_common(region, common, true, false);
  region->add_option("--group", group, "e.g. Z3 or Z1xC2");
  region->add_option("--gens", gens, "generators JSON (defaults to --spec)");
  region->add_option("--query", query, "R, Rc, P, supports or all")
      ->check(CLI::IsMember({"R", "Rc", "P", "supports", "all"}))
      ->capture_default_str();
  region->add_option("--mesh", mesh, "three generator indices for a simplex-slice CSV")->expected(3);
  region->add_option("--resolution", resolution)->capture_default_str();

  std::string name = "list";
  int k = 4;
  auto* examples = app.add_subcommand("paper-examples", "print a built-in example spec");
  add_common(examples, common, false, false);
  examples->add_option("--name", name)->capture_default_str();
  examples->add_option("--k", k, "slab thickness")->capture_default_str();
  examples->add_option("--delta", delta, "tree counterexample parameter")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  CLI::App* sub = app.get_subcommands().front();
  Session session(sub->get_name(), std::vector<std::string>(argv, argv + argc), common);
  try {
    Result r;
    const std::string& cmd = sub->get_name();
    if (cmd == "validate") r = cmd_validate(session);
    else if (cmd == "order-check") r = cmd_order_check(session, xpath, ypath, order);
    else if (cmd == "homogeneity") r = cmd_homogeneity(session);
    else if (cmd == "simulate") r = cmd_simulate(session, start);
    else if (cmd == "couple") r = cmd_couple(session, xpath, ypath, mode, start_x, start_y);
    else if (cmd == "stationary-check") r = cmd_stationary(session, rho, mx, my, wo, window);
    else if (cmd == "transience-cert") r = cmd_transience(session, inc_window);
    else if (cmd == "slab-drift") r = cmd_slab_drift(session, inc_window, include_stop, hit_start);
    else if (cmd == "tree-counterexample") r = cmd_tree_counterexample(session, delta, depth, emit);
    else if (cmd == "conductance") r = cmd_conductance(session, depth, dot);
    else if (cmd == "rayleigh") r = cmd_rayleigh(session, xpath, ypath, depth);
    else if (cmd == "classify") r = cmd_classify(session);
    else if (cmd == "region") r = cmd_region(session, group, gens, query, mesh, resolution);
    else r = cmd_paper_examples(session, name, k, delta);
    return session.finish(cmd, r);
  } catch (const Error& e) {
    std::cout << error_json(e).dump(2) << "\n";
    std::cerr << "reclab: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "reclab: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
