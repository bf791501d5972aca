#include "reclab/tree_networks.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "reclab/error.hpp"

namespace reclab::trees {

using namespace reclab::models;
using json = nlohmann::json;

ClassTreeSpec uniform_tree(const std::vector<Rational>& root_child, const Rational& up,
                           const std::vector<Rational>& child) {
  ClassTreeSpec spec;
  spec.classes.push_back({"root", Rational(0), root_child, std::vector<int>(root_child.size(), 1)});
  spec.classes.push_back({"body", up, child, std::vector<int>(child.size(), 1)});
  spec.root_class = 0;
  return spec;
}

ClassTreeSpec left_spine_tree(const Rational& root_left, const Rational& root_right, const BranchLaw& spine,
                              const BranchLaw& off) {
  ClassTreeSpec spec;
  spec.classes.push_back({"root", Rational(0), {root_left, root_right}, {1, 2}});
  spec.classes.push_back({"spine", spine.up, {spine.left, spine.right}, {1, 2}});
  spec.classes.push_back({"off", off.up, {off.left, off.right}, {2, 2}});
  spec.root_class = 0;
  return spec;
}

TreeCounterexamplePair tree_counterexample(const Rational& delta) {
  if (delta.sign() <= 0 || delta >= Rational(1, 7)) {
    throw Error(ErrorCode::DeltaOutOfRange, "delta = " + delta.str() + " is outside (0, 1/7)");
  }
  const Rational one(1);
  const Rational& d = delta;
  const Rational half(1, 2);
  ClassTreeSpec y = left_spine_tree(half, half, {Rational(2) * d, d, one - Rational(3) * d},
                                    {one - Rational(2) * d, d, d});
  ClassTreeSpec x = left_spine_tree(half, half, {Rational(3) * d, one - Rational(4) * d, d},
                                    {one - d, d * half, d * half});
  return {delta, validate(std::move(x)), validate(std::move(y))};
}

std::vector<std::vector<int>> ConductanceNetwork::children() const {
  std::vector<std::vector<int>> ch(parent.size());
  for (std::size_t v = 1; v < parent.size(); ++v) ch[static_cast<std::size_t>(parent[v])].push_back(static_cast<int>(v));
  return ch;
}

std::vector<int> ConductanceNetwork::levels() const {
  std::vector<int> lv(parent.size(), 0);
  for (std::size_t v = 1; v < parent.size(); ++v) lv[v] = lv[static_cast<std::size_t>(parent[v])] + 1;
  return lv;
}

Rational ConductanceNetwork::vertex_total(int v) const {
  if (kind != Kind::Explicit) throw Error(ErrorCode::InvalidArgument, "vertex totals need an explicit network");
  Rational total = v > 0 ? edge[static_cast<std::size_t>(v)] : Rational(0);
  for (std::size_t w = 1; w < parent.size(); ++w) {
    if (parent[w] == v) total += edge[w];
  }
  return total;
}

Rational ConductanceNetwork::root_total() const {
  Rational total;
  if (kind == Kind::Explicit) {
    for (std::size_t w = 1; w < parent.size(); ++w) {
      if (parent[w] == 0) total += edge[w];
    }
  } else {
    for (const auto& e : root_edge) total += e;
  }
  return total;
}

ConductanceNetwork explicit_network(std::vector<int> parent, std::vector<Rational> edge) {
  if (parent.empty() || parent.size() != edge.size()) {
    throw Error(ErrorCode::ShapeMismatch, "parent and edge arrays must be non-empty and of equal length");
  }
  for (std::size_t v = 1; v < parent.size(); ++v) {
    if (parent[v] < 0 || static_cast<std::size_t>(parent[v]) >= v) {
      throw Error(ErrorCode::InvalidArgument, "parent[" + std::to_string(v) + "] must precede the vertex");
    }
    if (edge[v].sign() < 0) throw Error(ErrorCode::NegativeProbability, "negative conductance");
  }
  ConductanceNetwork net;
  net.kind = ConductanceNetwork::Kind::Explicit;
  net.parent = std::move(parent);
  net.parent[0] = -1;
  net.edge = std::move(edge);
  net.edge[0] = Rational(0);
  const auto lv = net.levels();
  net.depth = *std::max_element(lv.begin(), lv.end());
  return net;
}

ConductanceNetwork conductances_from_walk(const Validated<ExplicitTreeSpec>& spec, int depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  const ExplicitTreeSpec& s = spec.spec();
  const auto ch = s.children();
  std::vector<int> level(s.size(), 0);
  for (std::size_t v = 1; v < s.size(); ++v) level[v] = level[static_cast<std::size_t>(s.parent[v])] + 1;
  std::vector<Rational> full(s.size());
  std::vector<int> new_id(s.size(), -1);
  std::vector<int> parent{-1};
  std::vector<Rational> edge{Rational(0)};
  new_id[0] = 0;
  for (std::size_t v = 0; v < s.size(); ++v) {
    if (level[v] >= depth) continue;
    const auto& kids = ch[v];
    if (v > 0 && !kids.empty() && s.up[v].is_zero()) {
      throw Error(ErrorCode::ZeroParentProbability, "vertex " + std::to_string(v) + " has P(v, parent) = 0");
    }
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const auto w = static_cast<std::size_t>(kids[i]);
      full[w] = v == 0 ? s.down[0][i] : full[v] * s.down[v][i] / s.up[v];
    }
  }
  for (std::size_t v = 1; v < s.size(); ++v) {
    if (level[v] > depth) continue;
    new_id[v] = static_cast<int>(parent.size());
    parent.push_back(new_id[static_cast<std::size_t>(s.parent[v])]);
    edge.push_back(full[v]);
  }
  ConductanceNetwork net = explicit_network(std::move(parent), std::move(edge));
  net.depth = std::max(net.depth, 0);
  return net;
}

ConductanceNetwork conductances_from_walk(const Validated<ClassTreeSpec>& spec, int depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  const ClassTreeSpec& s = spec.spec();
  ConductanceNetwork net;
  net.kind = ConductanceNetwork::Kind::Class;
  net.depth = depth;
  net.root_class = s.root_class;
  const auto& root = s.classes[static_cast<std::size_t>(s.root_class)];
  net.root_child_class = root.child_class;
  net.root_edge = root.child_prob;
  for (const auto& cls : s.classes) {
    net.class_names.push_back(cls.name);
    net.child_class.push_back(cls.child_class);
    std::vector<Rational> r;
    if (&cls != &root && !cls.child_class.empty()) {
      if (cls.up.is_zero()) {
        throw Error(ErrorCode::ZeroParentProbability, "class " + cls.name + " has P(v, parent) = 0");
      }
      for (const auto& p : cls.child_prob) r.push_back(p / cls.up);
    } else {
      r.assign(cls.child_class.size(), Rational(0));
    }
    net.ratio.push_back(std::move(r));
  }
  return net;
}

ConductanceNetwork expand(const ConductanceNetwork& net, int depth) {
  if (net.kind == ConductanceNetwork::Kind::Explicit) {
    const auto lv = net.levels();
    std::vector<int> new_id(net.parent.size(), -1);
    std::vector<int> parent{-1};
    std::vector<Rational> edge{Rational(0)};
    new_id[0] = 0;
    for (std::size_t v = 1; v < net.parent.size(); ++v) {
      if (lv[v] > depth) continue;
      new_id[v] = static_cast<int>(parent.size());
      parent.push_back(new_id[static_cast<std::size_t>(net.parent[v])]);
      edge.push_back(net.edge[v]);
    }
    return explicit_network(std::move(parent), std::move(edge));
  }
  struct Item {
    int id;
    int cls;
    Rational in;
    int level;
  };
  std::vector<int> parent{-1};
  std::vector<Rational> edge{Rational(0)};
  std::deque<Item> queue;
  for (std::size_t i = 0; i < net.root_edge.size() && depth >= 1; ++i) {
    parent.push_back(0);
    edge.push_back(net.root_edge[i]);
    queue.push_back({static_cast<int>(parent.size()) - 1, net.root_child_class[i], net.root_edge[i], 1});
  }
  while (!queue.empty()) {
    Item it = queue.front();
    queue.pop_front();
    if (it.level >= depth) continue;
    const auto c = static_cast<std::size_t>(it.cls);
    for (std::size_t i = 0; i < net.child_class[c].size(); ++i) {
      parent.push_back(it.id);
      Rational e = it.in * net.ratio[c][i];
      edge.push_back(e);
      queue.push_back({static_cast<int>(parent.size()) - 1, net.child_class[c][i], e, it.level + 1});
    }
  }
  ConductanceNetwork out = explicit_network(std::move(parent), std::move(edge));
  out.depth = depth;
  return out;
}

namespace {

// Series-parallel reduction with every vertex at level n grounded.
Rational explicit_effective(const ConductanceNetwork& net, int n) {
  const auto lv = net.levels();
  const std::size_t size = net.parent.size();
  std::vector<Rational> sub(size);
  std::vector<bool> grounded(size, false);
  for (std::size_t v = 0; v < size; ++v) grounded[v] = lv[v] == n;
  for (std::size_t v = size; v-- > 1;) {
    if (lv[v] > n) continue;
    const auto p = static_cast<std::size_t>(net.parent[v]);
    const Rational& e = net.edge[v];
    if (grounded[v]) {
      sub[p] += e;
    } else if (!sub[v].is_zero() && !e.is_zero()) {
      sub[p] += e * sub[v] / (e + sub[v]);
    }
  }
  return sub[0];
}

struct ClassTables {
  // g[m][c]: subtree conductance below a class-c vertex to m further levels,
  // relative to its incoming edge; m = 0 is grounded.
  std::vector<std::vector<Rational>> exact;
  std::vector<std::vector<Interval>> approx;
};

Rational sat(const Rational& x) { return x / (Rational(1) + x); }

EffectiveConductance class_root(const ConductanceNetwork& net, const ClassTables& t, int n) {
  EffectiveConductance out;
  out.n = n;
  const auto m = static_cast<std::size_t>(n - 1);
  if (n <= kExactDepth) {
    Rational total;
    for (std::size_t i = 0; i < net.root_edge.size(); ++i) {
      const auto c = static_cast<std::size_t>(net.root_child_class[i]);
      total += net.root_edge[i] * (m == 0 ? Rational(1) : sat(t.exact[m][c]));
    }
    out.exact = true;
    out.value = total;
    out.bounds = Interval(total);
  } else {
    Interval total(Rational(0));
    for (std::size_t i = 0; i < net.root_edge.size(); ++i) {
      const auto c = static_cast<std::size_t>(net.root_child_class[i]);
      total = total + Interval(net.root_edge[i]) * saturate(t.approx[m][c]);
    }
    out.exact = false;
    out.bounds = total;
  }
  return out;
}

ClassTables class_tables(const ConductanceNetwork& net, int n_max) {
  const std::size_t classes = net.child_class.size();
  ClassTables t;
  const int exact_levels = std::min(n_max, kExactDepth);
  t.exact.assign(static_cast<std::size_t>(std::max(exact_levels, 1)), std::vector<Rational>(classes));
  for (int m = 1; m < exact_levels; ++m) {
    for (std::size_t c = 0; c < classes; ++c) {
      Rational g;
      for (std::size_t i = 0; i < net.child_class[c].size(); ++i) {
        const auto cc = static_cast<std::size_t>(net.child_class[c][i]);
        g += net.ratio[c][i] * (m == 1 ? Rational(1) : sat(t.exact[static_cast<std::size_t>(m - 1)][cc]));
      }
      t.exact[static_cast<std::size_t>(m)][c] = g;
    }
  }
  if (n_max > kExactDepth) {
    t.approx.assign(static_cast<std::size_t>(n_max), std::vector<Interval>(classes));
    for (int m = 1; m < n_max; ++m) {
      for (std::size_t c = 0; c < classes; ++c) {
        Interval g(Rational(0));
        for (std::size_t i = 0; i < net.child_class[c].size(); ++i) {
          const auto cc = static_cast<std::size_t>(net.child_class[c][i]);
          Interval s = m == 1 ? Interval(Rational(1)) : saturate(t.approx[static_cast<std::size_t>(m - 1)][cc]);
          g = g + Interval(net.ratio[c][i]) * s;
        }
        t.approx[static_cast<std::size_t>(m)][c] = g;
      }
    }
  }
  return t;
}

}  // namespace

std::vector<EffectiveConductance> effective_conductance_series(const ConductanceNetwork& net, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  if (n_max > net.depth) {
    throw Error(ErrorCode::InvalidArgument,
                "depth " + std::to_string(n_max) + " exceeds the network depth " + std::to_string(net.depth));
  }
  std::vector<EffectiveConductance> out;
  if (net.kind == ConductanceNetwork::Kind::Explicit) {
    for (int n = 1; n <= n_max; ++n) {
      EffectiveConductance c;
      c.n = n;
      c.value = explicit_effective(net, n);
      c.bounds = Interval(c.value);
      out.push_back(std::move(c));
    }
    return out;
  }
  const ClassTables t = class_tables(net, n_max);
  for (int n = 1; n <= n_max; ++n) out.push_back(class_root(net, t, n));
  return out;
}

EffectiveConductance effective_conductance(const ConductanceNetwork& net, int n) {
  return effective_conductance_series(net, n).back();
}

namespace {

void require_same_tree(const ConductanceNetwork& a, const ConductanceNetwork& b) {
  if (a.kind != b.kind) throw Error(ErrorCode::ShapeMismatch, "networks of different kinds");
  if (a.kind == ConductanceNetwork::Kind::Explicit) {
    if (a.parent != b.parent) throw Error(ErrorCode::ShapeMismatch, "networks live on different trees");
  } else if (a.root_child_class != b.root_child_class || a.child_class != b.child_class ||
             a.root_class != b.root_class) {
    throw Error(ErrorCode::ShapeMismatch, "class networks generate different trees");
  }
}

bool class_dominated(const ConductanceNetwork& a, const ConductanceNetwork& b, int depth) {
  // best[c]: largest c^A / c^B over edges entering class-c vertices at the
  // current level among edges where both are positive.
  const std::size_t classes = a.child_class.size();
  std::vector<std::optional<Rational>> best(classes);
  for (std::size_t i = 0; i < a.root_edge.size(); ++i) {
    const Rational& ea = a.root_edge[i];
    const Rational& eb = b.root_edge[i];
    if (ea.is_zero()) continue;
    if (eb.is_zero()) return false;
    const Rational r = ea / eb;
    if (r > Rational(1)) return false;
    auto& slot = best[static_cast<std::size_t>(a.root_child_class[i])];
    if (!slot || r > *slot) slot = r;
  }
  for (int level = 2; level <= depth; ++level) {
    std::vector<std::optional<Rational>> next(classes);
    bool any = false;
    for (std::size_t c = 0; c < classes; ++c) {
      if (!best[c]) continue;
      for (std::size_t i = 0; i < a.child_class[c].size(); ++i) {
        const Rational& ra = a.ratio[c][i];
        const Rational& rb = b.ratio[c][i];
        if (ra.is_zero()) continue;
        if (rb.is_zero()) return false;
        const Rational r = *best[c] * ra / rb;
        if (r > Rational(1)) return false;
        auto& slot = next[static_cast<std::size_t>(a.child_class[c][i])];
        if (!slot || r > *slot) slot = r;
        any = true;
      }
    }
    if (!any) break;
    best = std::move(next);
  }
  return true;
}

}  // namespace

RayleighResult rayleigh_check(const ConductanceNetwork& a, const ConductanceNetwork& b, std::optional<int> depth) {
  require_same_tree(a, b);
  RayleighResult r;
  r.depth = depth.value_or(std::min(a.depth, b.depth));
  if (a.kind == ConductanceNetwork::Kind::Class) r.depth = std::min(r.depth, kExactDepth);
  if (r.depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  if (a.kind == ConductanceNetwork::Kind::Explicit) {
    const auto lv = a.levels();
    r.dominated = true;
    for (std::size_t v = 1; v < a.parent.size(); ++v) {
      if (lv[v] <= r.depth && a.edge[v] > b.edge[v]) r.dominated = false;
    }
  } else {
    r.dominated = class_dominated(a, b, r.depth);
  }
  const auto ca = effective_conductance_series(a, r.depth);
  const auto cb = effective_conductance_series(b, r.depth);
  for (int n = 1; n <= r.depth; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    if (ca[i].value > cb[i].value) r.violating_levels.push_back(n);
  }
  r.effective_dominated = r.violating_levels.empty();
  return r;
}

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

// Level-to-level transfer of incoming edge mass between classes.
RMatrix transfer(const ConductanceNetwork& net) {
  const std::size_t classes = net.child_class.size();
  RMatrix m(classes, std::vector<Rational>(classes));
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t i = 0; i < net.child_class[c].size(); ++i) {
      m[c][static_cast<std::size_t>(net.child_class[c][i])] += net.ratio[c][i];
    }
  }
  return m;
}

double spectral_radius_bound(const RMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i][j] = m[i][j].to_double();
  }
  std::vector<double> x(n, 1.0);
  double bound = 0.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) y[i] += d[i][j] * x[j];
    }
    bound = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      bound = std::max(bound, y[i] / x[i]);
      norm = std::max(norm, y[i]);
    }
    if (norm == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm + 1e-300;
  }
  return bound;
}

// Vector v >= 1 with M v <= q v componentwise, q < 1.
std::pair<std::vector<Rational>, Rational> geometric_weights(const RMatrix& m) {
  const double rho = spectral_radius_bound(m);
  if (!(rho < 1.0 - 1e-12)) {
    throw Error(ErrorCode::NotSummable, "edge conductances do not decay geometrically");
  }
  constexpr long kScale = 1L << 20;
  const long num = std::min(kScale - 1, static_cast<long>(std::ceil((1.0 + rho) / 2.0 * kScale)));
  const Rational q(num, kScale);
  const std::size_t n = m.size();
  std::vector<Rational> u(n, Rational(1));
  std::vector<Rational> v = u;
  for (int j = 0; j < 4096; ++j) {
    std::vector<Rational> next(n);
    bool below = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!m[i][k].is_zero()) next[i] += m[i][k] * u[k];
      }
      next[i] /= q;
      if (next[i] > Rational(1)) below = false;
    }
    if (below) return {v, q};
    for (std::size_t i = 0; i < n; ++i) v[i] += next[i];
    u = std::move(next);
  }
  throw Error(ErrorCode::NotSummable, "could not certify geometric decay of edge conductances");
}

}  // namespace

NetworkMass network_mass(const ConductanceNetwork& net, int depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  NetworkMass mass;
  mass.depth = depth;
  mass.root_total = net.root_total();
  if (net.kind == ConductanceNetwork::Kind::Explicit) {
    const auto lv = net.levels();
    Rational edges;
    for (std::size_t v = 1; v < net.parent.size(); ++v) edges += net.edge[v];
    if (*std::max_element(lv.begin(), lv.end()) > depth) {
      throw Error(ErrorCode::InvalidArgument, "explicit network is deeper than the requested depth");
    }
    mass.truncated = Rational(2) * edges;
    mass.upper = mass.truncated;
    return mass;
  }
  const RMatrix m = transfer(net);
  const std::size_t classes = m.size();
  std::vector<Rational> w(classes);
  for (std::size_t i = 0; i < net.root_edge.size(); ++i) {
    w[static_cast<std::size_t>(net.root_child_class[i])] += net.root_edge[i];
  }
  Rational edges;
  for (int level = 1; level <= depth; ++level) {
    for (const auto& x : w) edges += x;
    if (level == depth) break;
    std::vector<Rational> next(classes);
    for (std::size_t c = 0; c < classes; ++c) {
      if (w[c].is_zero()) continue;
      for (std::size_t d = 0; d < classes; ++d) {
        if (!m[c][d].is_zero()) next[d] += w[c] * m[c][d];
      }
    }
    w = std::move(next);
  }
  const auto [v, q] = geometric_weights(m);
  Rational wv;
  for (std::size_t c = 0; c < classes; ++c) wv += w[c] * v[c];
  const Rational tail = wv * q / (Rational(1) - q);
  mass.truncated = Rational(2) * edges;
  mass.upper = Rational(2) * (edges + tail);
  return mass;
}

std::string_view to_string(ReturnTimeComparison::Verdict v) {
  switch (v) {
    case ReturnTimeComparison::Verdict::Equal: return "equal";
    case ReturnTimeComparison::Verdict::Confirmed: return "confirmed";
    case ReturnTimeComparison::Verdict::Inconclusive: return "inconclusive";
    case ReturnTimeComparison::Verdict::Violated: return "violated";
  }
  return "?";
}

namespace {

ReturnTimeComparison::Verdict compare_masses(const NetworkMass& x, const NetworkMass& y) {
  if (x.pi_lower() >= y.pi_upper()) return ReturnTimeComparison::Verdict::Confirmed;
  if (x.pi_upper() < y.pi_lower()) return ReturnTimeComparison::Verdict::Violated;
  return ReturnTimeComparison::Verdict::Inconclusive;
}

template <class Spec>
void require_strong(const Validated<Spec>& x, const Validated<Spec>& y) {
  const OrderResult order = check_order(x, y, OrderKind::TreeStrong);
  if (!order.holds) {
    std::vector<Issue> issues;
    for (const auto& w : order.witnesses) {
      issues.push_back({ErrorCode::OrderViolation, w.where, w.what + ": " + w.lhs.str() + " vs " + w.rhs.str()});
    }
    throw Error(ErrorCode::OrderViolation, "X does not precede Y in the strong tree order", std::move(issues));
  }
}

}  // namespace

ReturnTimeComparison return_time_compare(const Validated<ClassTreeSpec>& x, const Validated<ClassTreeSpec>& y,
                                         int depth) {
  require_strong(x, y);
  ReturnTimeComparison out;
  out.x = network_mass(conductances_from_walk(x, depth), depth);
  out.y = network_mass(conductances_from_walk(y, depth), depth);
  out.verdict = x.spec() == y.spec() ? ReturnTimeComparison::Verdict::Equal : compare_masses(out.x, out.y);
  return out;
}

ReturnTimeComparison return_time_compare(const Validated<ExplicitTreeSpec>& x, const Validated<ExplicitTreeSpec>& y) {
  require_strong(x, y);
  const auto nx = conductances_from_walk(x, static_cast<int>(x->size()));
  const auto ny = conductances_from_walk(y, static_cast<int>(y->size()));
  ReturnTimeComparison out;
  out.x = network_mass(nx, std::max(nx.depth, 1));
  out.y = network_mass(ny, std::max(ny.depth, 1));
  if (x.spec() == y.spec() || out.x.pi_lower() == out.y.pi_lower()) {
    out.verdict = ReturnTimeComparison::Verdict::Equal;
  } else {
    out.verdict = compare_masses(out.x, out.y);
  }
  return out;
}

std::string to_dot(const ConductanceNetwork& net, int depth) {
  const ConductanceNetwork e = expand(net, depth);
  std::ostringstream os;
  os << "digraph tree {\n";
  for (std::size_t v = 1; v < e.parent.size(); ++v) {
    os << "  v" << e.parent[v] << " -> v" << v << " [label=\"" << e.edge[v].str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

json to_json(const ConductanceNetwork& net) {
  json j;
  j["depth"] = net.depth;
  if (net.kind == ConductanceNetwork::Kind::Explicit) {
    j["kind"] = "explicit";
    j["parent"] = net.parent;
    json edges = json::array();
    for (std::size_t v = 0; v < net.edge.size(); ++v) edges.push_back(net.edge[v].str());
    j["edge"] = edges;
    return j;
  }
  j["kind"] = "class";
  j["root_class"] = net.root_class;
  json roots = json::array();
  for (std::size_t i = 0; i < net.root_edge.size(); ++i) {
    roots.push_back({{"class", net.class_names[static_cast<std::size_t>(net.root_child_class[i])]},
                     {"conductance", net.root_edge[i].str()}});
  }
  j["root_edges"] = roots;
  json classes = json::array();
  for (std::size_t c = 0; c < net.child_class.size(); ++c) {
    json kids = json::array();
    for (std::size_t i = 0; i < net.child_class[c].size(); ++i) {
      kids.push_back({{"class", net.class_names[static_cast<std::size_t>(net.child_class[c][i])]},
                      {"ratio", net.ratio[c][i].str()}});
    }
    classes.push_back({{"name", net.class_names[c]}, {"children", kids}});
  }
  j["classes"] = classes;
  return j;
}

json to_json(const EffectiveConductance& c) {
  json j{{"n", c.n}, {"exact", c.exact}, {"approx", c.approx()}};
  if (c.exact) {
    j["value"] = c.value.str();
  } else {
    j["lower"] = c.bounds.lo_str();
    j["upper"] = c.bounds.hi_str();
  }
  return j;
}

json to_json(const RayleighResult& r) {
  return {{"dominated", r.dominated},
          {"effective_dominated", r.effective_dominated},
          {"depth", r.depth},
          {"violating_levels", r.violating_levels}};
}

json to_json(const ReturnTimeComparison& r) {
  auto side = [](const NetworkMass& m) {
    return json{{"root_total", m.root_total.str()},
                {"sum_lower", m.truncated.str()},
                {"sum_upper", m.upper.str()},
                {"pi_r_lower", m.pi_lower().str()},
                {"pi_r_upper", m.pi_upper().str()},
                {"pi_r_approx", m.pi_lower().to_double()},
                {"depth", m.depth}};
  };
  return {{"x", side(r.x)}, {"y", side(r.y)}, {"verdict", to_string(r.verdict)}};
}

}  // namespace reclab::trees
