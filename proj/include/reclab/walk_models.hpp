#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reclab/rational.hpp"

namespace reclab::models {

enum class Direction : int { Left = 0, Right = 1, Up = 2, Down = 3 };

inline constexpr std::array<Direction, 4> kDirections{Direction::Left, Direction::Right, Direction::Up,
                                                      Direction::Down};

std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view name);
int dx(Direction d);
int dy(Direction d);

/// Outgoing distribution of one region, indexed by Direction.
struct Law {
  std::array<Rational, 4> p{};

  Rational& operator[](Direction d) { return p[static_cast<int>(d)]; }
  const Rational& operator[](Direction d) const { return p[static_cast<int>(d)]; }
  Rational sum() const;
  friend bool operator==(const Law&, const Law&) = default;
};

/// Builds a law from (left, right, up, down).
Law make_law(Rational left, Rational right, Rational up, Rational down);

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class QuadrantRegion : int { Origin = 0, XAxis = 1, YAxis = 2, Interior = 3 };
inline constexpr std::array<QuadrantRegion, 4> kQuadrantRegions{QuadrantRegion::Origin, QuadrantRegion::XAxis,
                                                                QuadrantRegion::YAxis, QuadrantRegion::Interior};
std::string_view to_string(QuadrantRegion r);
QuadrantRegion quadrant_region(std::int64_t x, std::int64_t y);
bool forbidden(QuadrantRegion r, Direction d);

struct QuadrantWalkSpec {
  Law origin;
  Law x_axis;
  Law y_axis;
  Law interior;

  const Law& law(QuadrantRegion r) const;
  Law& law(QuadrantRegion r);
  friend bool operator==(const QuadrantWalkSpec&, const QuadrantWalkSpec&) = default;
};

enum class SlabRegion : int { Center = 0, Lower = 1, Upper = 2, Left = 3, Origin = 4, Corner = 5 };
inline constexpr std::array<SlabRegion, 6> kSlabRegions{SlabRegion::Center, SlabRegion::Lower, SlabRegion::Upper,
                                                        SlabRegion::Left,   SlabRegion::Origin, SlabRegion::Corner};
std::string_view to_string(SlabRegion r);
SlabRegion slab_region(std::int64_t x, std::int64_t y, int k);
bool forbidden(SlabRegion r, Direction d);

struct SlabWalkSpec {
  int k = 2;
  std::array<Law, 6> laws{};

  const Law& law(SlabRegion r) const { return laws[static_cast<int>(r)]; }
  Law& law(SlabRegion r) { return laws[static_cast<int>(r)]; }
  friend bool operator==(const SlabWalkSpec&, const SlabWalkSpec&) = default;
};

/// Finite rooted tree. Vertex 0 is the root and parent[v] < v for v > 0.
/// down[v][i] is the probability of moving to the i-th child of v, children
/// ordered by increasing vertex id.
struct ExplicitTreeSpec {
  std::vector<int> parent;
  std::vector<Rational> up;
  std::vector<std::vector<Rational>> down;

  std::size_t size() const { return parent.size(); }
  std::vector<std::vector<int>> children() const;
  friend bool operator==(const ExplicitTreeSpec&, const ExplicitTreeSpec&) = default;
};

/// Infinite tree generated by a finite class automaton. Every vertex of class
/// c has child_class[c].size() children; the i-th child has class
/// child_class[c][i] and is entered with probability child_prob[c][i].
struct ClassTreeSpec {
  struct VertexClass {
    std::string name;
    Rational up;
    std::vector<Rational> child_prob;
    std::vector<int> child_class;
    friend bool operator==(const VertexClass&, const VertexClass&) = default;
  };
  std::vector<VertexClass> classes;
  int root_class = 0;
  friend bool operator==(const ClassTreeSpec&, const ClassTreeSpec&) = default;
};

namespace detail {
struct Validator;
class Key {
  Key() = default;
  friend struct Validator;
};
}  // namespace detail

/// A spec that passed validation. Only the validate() overloads create one.
template <class Spec>
class Validated {
 public:
  Validated(detail::Key, Spec spec) : spec_(std::move(spec)) {}
  const Spec& spec() const { return spec_; }
  const Spec& operator*() const { return spec_; }
  const Spec* operator->() const { return &spec_; }

 private:
  Spec spec_;
};

Validated<QuadrantWalkSpec> validate(QuadrantWalkSpec spec);
Validated<SlabWalkSpec> validate(SlabWalkSpec spec);
Validated<ExplicitTreeSpec> validate(ExplicitTreeSpec spec);
Validated<ClassTreeSpec> validate(ClassTreeSpec spec);

enum class OrderKind { QuadrantPreceq, SlabTrianglelefteq, TreeWeak, TreeStrong };
std::string_view to_string(OrderKind k);
OrderKind order_kind_from_string(std::string_view name);

enum class Relation { Geq, Leq, Eq };

/// One inequality lhs (rel) rhs of an order definition.
struct Comparison {
  std::string where;
  std::string what;
  Rational lhs;
  Rational rhs;
  Relation rel = Relation::Geq;
  bool forced = false;       // both sides pinned to zero by the state space
  bool single_state = false; // region is one state (origin, corner, root)
  bool satisfied = false;
  bool strict = false;
};

struct OrderResult {
  bool holds = false;
  /// Every comparison that is neither forced, an equality constraint, nor
  /// located at a single-state region is strict.
  bool strict = false;
  /// Same, but single-state regions included.
  bool strict_everywhere = false;
  std::vector<Comparison> witnesses;  // failing comparisons
  std::vector<Comparison> comparisons;
};

OrderResult check_order(const Validated<QuadrantWalkSpec>& x, const Validated<QuadrantWalkSpec>& y, OrderKind kind);
OrderResult check_order(const Validated<SlabWalkSpec>& x, const Validated<SlabWalkSpec>& y, OrderKind kind);
OrderResult check_order(const Validated<ExplicitTreeSpec>& x, const Validated<ExplicitTreeSpec>& y, OrderKind kind);
OrderResult check_order(const Validated<ClassTreeSpec>& x, const Validated<ClassTreeSpec>& y, OrderKind kind);

/// Ratio num/den where den may be zero.
struct ExtendedRatio {
  enum class Kind { Finite, Infinite, Vacuous };
  std::string name;
  Rational num;
  Rational den;
  Kind kind = Kind::Finite;
  Rational value;  // meaningful when kind == Finite
};

ExtendedRatio make_ratio(std::string name, const Rational& num, const Rational& den);
/// a >= b on extended ratios; a vacuous side satisfies any comparison.
bool ratio_geq(const ExtendedRatio& a, const ExtendedRatio& b);

struct NamedCheck {
  std::string statement;
  bool satisfied = false;
};

struct HomogeneityReport {
  bool inward = false;
  bool weakly_inward = false;
  std::vector<ExtendedRatio> ratios;
  std::vector<NamedCheck> inward_checks;
  std::vector<NamedCheck> weak_checks;
};

HomogeneityReport homogeneity_class(const Validated<QuadrantWalkSpec>& spec);

struct SlabHomogeneityReport {
  bool homogeneous = false;
  std::vector<NamedCheck> checks;
};

SlabHomogeneityReport slab_homogeneity_report(const Validated<SlabWalkSpec>& spec);
bool slab_homogeneity(const Validated<SlabWalkSpec>& spec);

Validated<QuadrantWalkSpec> quadrant_example(std::string_view name);
Validated<SlabWalkSpec> slab_example(std::string_view name, int k);

using ValidatedWalk = std::variant<Validated<QuadrantWalkSpec>, Validated<SlabWalkSpec>>;
/// Accepts quadrant_recurrent, quadrant_transient, slab_recurrent(k), slab_transient(k).
ValidatedWalk paper_example(std::string_view name);

}  // namespace reclab::models
