#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "reclab/interval.hpp"
#include "reclab/rational.hpp"
#include "reclab/walk_models.hpp"

namespace reclab::trees {

/// Outgoing law of a vertex of a binary class tree.
struct BranchLaw {
  Rational up;
  Rational left;
  Rational right;
};

/// Every vertex below the root has the same law; the root moves to child i
/// with probability root_child[i].
models::ClassTreeSpec uniform_tree(const std::vector<Rational>& root_child, const Rational& up,
                                   const std::vector<Rational>& child);

/// Binary tree whose all-left path from the root (the spine) uses `spine`
/// and every other vertex uses `off`.
models::ClassTreeSpec left_spine_tree(const Rational& root_left, const Rational& root_right, const BranchLaw& spine,
                                      const BranchLaw& off);

struct TreeCounterexamplePair {
  Rational delta;
  models::Validated<models::ClassTreeSpec> x;
  models::Validated<models::ClassTreeSpec> y;
};

/// Requires 0 < delta < 1/7.
TreeCounterexamplePair tree_counterexample(const Rational& delta);

/// Conductances of a reversible tree walk. Explicit networks list every edge;
/// class networks describe an infinite tree by per-class ratios of child edge
/// conductance to incoming edge conductance.
struct ConductanceNetwork {
  enum class Kind { Explicit, Class };
  Kind kind = Kind::Explicit;
  int depth = 0;  // largest level the network is meant to be evaluated at

  // Explicit: vertex 0 is the root, parent[v] < v, edge[v] = c(parent(v), v).
  std::vector<int> parent;
  std::vector<Rational> edge;

  // Class automaton.
  int root_class = 0;
  std::vector<std::string> class_names;
  std::vector<int> root_child_class;
  std::vector<Rational> root_edge;
  std::vector<std::vector<int>> child_class;
  std::vector<std::vector<Rational>> ratio;

  std::vector<std::vector<int>> children() const;
  std::vector<int> levels() const;
  /// c_v = sum of conductances of edges at v (explicit networks).
  Rational vertex_total(int v) const;
  /// Root total c_r.
  Rational root_total() const;
};

/// Builds an explicit network and checks the tree shape and signs.
ConductanceNetwork explicit_network(std::vector<int> parent, std::vector<Rational> edge);

/// c(r,v) = P(r,v) and c(v,w) = c(pa(v),v) P(v,w) / P(v,pa(v)), restricted to
/// levels <= depth.
ConductanceNetwork conductances_from_walk(const models::Validated<models::ExplicitTreeSpec>& spec, int depth);
ConductanceNetwork conductances_from_walk(const models::Validated<models::ClassTreeSpec>& spec, int depth);

/// Unrolls a network to an explicit one with levels <= depth.
ConductanceNetwork expand(const ConductanceNetwork& net, int depth);

/// Largest depth at which class-network conductances are kept exact.
inline constexpr int kExactDepth = 64;

struct EffectiveConductance {
  int n = 0;
  bool exact = true;
  Rational value;   // when exact
  Interval bounds;  // always filled
  double approx() const { return exact ? value.to_double() : 0.5 * (bounds.lo() + bounds.hi()); }
};

/// Effective conductance between the root and level n, with level n grounded.
EffectiveConductance effective_conductance(const ConductanceNetwork& net, int n);
/// c_1, ..., c_{n_max}.
std::vector<EffectiveConductance> effective_conductance_series(const ConductanceNetwork& net, int n_max);

struct RayleighResult {
  bool dominated = false;
  bool effective_dominated = false;
  int depth = 0;
  std::vector<int> violating_levels;  // n with c_n^A > c_n^B
};

/// Compares two networks on the same tree up to `depth` (defaults to the
/// smaller network depth).
RayleighResult rayleigh_check(const ConductanceNetwork& a, const ConductanceNetwork& b,
                              std::optional<int> depth = std::nullopt);

struct NetworkMass {
  Rational root_total;
  Rational truncated;  // sum over vertices at levels <= depth of c_v
  Rational upper;      // truncated plus a rigorous tail bound
  int depth = 0;
  Rational pi_lower() const { return root_total / upper; }
  Rational pi_upper() const { return root_total / truncated; }
};

/// Sum of vertex totals, with a geometric tail bound for class networks.
/// Throws NotSummable when no geometric decay can be certified.
NetworkMass network_mass(const ConductanceNetwork& net, int depth);

struct ReturnTimeComparison {
  enum class Verdict { Equal, Confirmed, Inconclusive, Violated };
  NetworkMass x;
  NetworkMass y;
  Verdict verdict = Verdict::Inconclusive;
};

std::string_view to_string(ReturnTimeComparison::Verdict v);

/// Requires X preceq Y in the strong tree order. Checks pi_r^X >= pi_r^Y,
/// equivalently E_X[tau_r] <= E_Y[tau_r].
ReturnTimeComparison return_time_compare(const models::Validated<models::ClassTreeSpec>& x,
                                         const models::Validated<models::ClassTreeSpec>& y, int depth);
ReturnTimeComparison return_time_compare(const models::Validated<models::ExplicitTreeSpec>& x,
                                         const models::Validated<models::ExplicitTreeSpec>& y);

/// DOT digraph with conductance labels; class networks are unrolled to `depth`.
std::string to_dot(const ConductanceNetwork& net, int depth = 4);
nlohmann::json to_json(const ConductanceNetwork& net);
nlohmann::json to_json(const EffectiveConductance& c);
nlohmann::json to_json(const RayleighResult& r);
nlohmann::json to_json(const ReturnTimeComparison& r);

}  // namespace reclab::trees
