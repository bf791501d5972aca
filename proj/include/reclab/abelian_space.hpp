#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "reclab/linalg.hpp"
#include "reclab/rational.hpp"

namespace reclab::abelian {

/// Z^rank x C_{torsion[0]} x ... with every torsion order >= 2.
struct FGAbelianGroup {
  int rank = 0;
  std::vector<std::int64_t> torsion;

  /// "Z3" is Z^3, "C2" is a cyclic factor; factors joined by 'x', e.g. "Z1xC2".
  static FGAbelianGroup parse(std::string_view text);
  std::string str() const;
  /// Invariant factors d_1 | d_2 | ... of the torsion part.
  std::vector<std::int64_t> invariant_factors() const;
  friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;
};

struct GroupElement {
  std::vector<std::int64_t> free;
  std::vector<std::int64_t> torsion;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Reduces torsion residues and checks coordinate counts.
GroupElement normalize(const FGAbelianGroup& g, GroupElement e);
GroupElement negate(const FGAbelianGroup& g, const GroupElement& e);
/// pi: drops the torsion coordinates.
linalg::Vector projection(const GroupElement& e);

struct GroupWalkInstance {
  FGAbelianGroup group;
  std::vector<GroupElement> generators;
  std::vector<Rational> a;
};

/// Throws InvalidArgument / NegativeProbability / NonStochastic.
void validate_instance(const GroupWalkInstance& inst);

enum class Recurrence { PositiveRecurrent, NullRecurrent, Transient };
std::string_view to_string(Recurrence r);

struct Classification {
  Recurrence kind = Recurrence::Transient;
  std::size_t span_dimension = 0;
  linalg::Vector drift;
  std::vector<std::size_t> support;  // indices i with a_i > 0
};

Classification classify(const GroupWalkInstance& inst);

inline constexpr std::size_t kDefaultGeneratorGuard = 20;

/// Minimal zero-drift support: the unique a in the simplex supported on
/// `support` with zero drift.
struct VertexSupport {
  std::vector<std::size_t> support;
  linalg::Vector point;  // full length |S|
};

/// Maximal support of recurrent parameters sharing one span of pi(U).
struct SupportClass {
  std::vector<std::size_t> support;
  linalg::Matrix span;  // reduced row-echelon basis
  std::size_t dimension = 0;
  linalg::Vector witness;  // full length |S|, strictly positive exactly on support
  std::vector<VertexSupport> vertices;
};

/// All vertices of {a in simplex : sum a_i pi(s_i) = 0}, optionally only
/// those whose span has dimension <= max_dimension.
std::vector<VertexSupport> zero_drift_vertices(const std::vector<GroupElement>& gens,
                                               std::optional<std::size_t> max_dimension = std::nullopt);

std::vector<SupportClass> feasible_supports(const FGAbelianGroup& g, const std::vector<GroupElement>& gens,
                                            std::size_t guard = kDefaultGeneratorGuard);

struct ConvexityReport {
  bool convex = false;
  std::optional<linalg::Matrix> witness_space;  // V, dim <= 2
  /// Two recurrent points whose midpoint is transient, with the classes that
  /// were combined to build each of them.
  struct Violation {
    linalg::Vector first;
    linalg::Vector second;
    std::vector<std::size_t> first_classes;
    std::size_t second_class = 0;
  };
  std::optional<Violation> violation;
  std::vector<SupportClass> classes;
};

ConvexityReport is_R_convex(const FGAbelianGroup& g, const std::vector<GroupElement>& gens,
                            std::size_t guard = kDefaultGeneratorGuard);

enum class Verdict { True, False, Unknown };
std::string_view to_string(Verdict v);

struct TopologyReport {
  bool closed = true;
  Verdict pathconnected = Verdict::Unknown;
  /// Connected components of the graph on span classes joined when their
  /// polytopes share a point.
  std::size_t components_lower_bound = 0;
  std::string reason;
  std::vector<SupportClass> classes;
};

TopologyReport R_topology(const FGAbelianGroup& g, const std::vector<GroupElement>& gens,
                          std::size_t guard = kDefaultGeneratorGuard);

struct ComplementReport {
  Verdict pathconnected = Verdict::Unknown;
  Verdict convex = Verdict::Unknown;
  std::string pathconnected_reason;
  std::string convex_reason;
  /// For convex == False: e_i, e_j transient with a recurrent midpoint.
  std::optional<std::pair<std::size_t, std::size_t>> convexity_witness;
};

ComplementReport Rc_properties(const FGAbelianGroup& g, const std::vector<GroupElement>& gens,
                               std::size_t guard = kDefaultGeneratorGuard);

struct PositiveRegion {
  std::vector<std::size_t> free_indices;  // i with pi(s_i) = 0
  bool empty = true;
  bool whole_simplex = false;
  bool closed = true;
  bool convex = true;
  std::string description;
};

PositiveRegion P_region(const FGAbelianGroup& g, const std::vector<GroupElement>& gens);

/// S closed under inverses in G.
bool is_symmetric(const FGAbelianGroup& g, const std::vector<GroupElement>& gens);
/// Some c >= 1 with pi(S) = pi(T) u -c pi(T); returns c.
std::optional<std::int64_t> opposite_multiple_form(const std::vector<GroupElement>& gens);

// JSON: {"group": {"rank": n, "torsion": [...]}, "generators": [...], "a": [...]}.
// A generator is an integer array (free then torsion coordinates) or
// {"free": [...], "torsion": [...]}.
FGAbelianGroup group_from_json(const nlohmann::json& j);
std::vector<GroupElement> generators_from_json(const FGAbelianGroup& g, const nlohmann::json& j);
GroupWalkInstance instance_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GroupElement& e);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const SupportClass& c);
nlohmann::json to_json(const ConvexityReport& r);
nlohmann::json to_json(const TopologyReport& r);
nlohmann::json to_json(const ComplementReport& r);
nlohmann::json to_json(const PositiveRegion& r);

/// Samples the 2-simplex slice spanned by generators (i, j, l) on a grid of
/// the given resolution; columns a_i,a_j,a_l,classification.
std::string simplex_mesh_csv(const FGAbelianGroup& g, const std::vector<GroupElement>& gens, std::size_t i,
                             std::size_t j, std::size_t l, int resolution);

}  // namespace reclab::abelian
