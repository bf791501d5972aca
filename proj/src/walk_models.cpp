#include "reclab/walk_models.hpp"

#include <functional>
#include <regex>

#include "reclab/error.hpp"

namespace reclab::models {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Up: return "up";
    case Direction::Down: return "down";
  }
  return "?";
}

Direction direction_from_string(std::string_view name) {
  for (Direction d : kDirections) {
    if (to_string(d) == name) return d;
  }
  throw Error(ErrorCode::UnknownName, "unknown direction '" + std::string(name) + "'");
}

int dx(Direction d) { return d == Direction::Left ? -1 : (d == Direction::Right ? 1 : 0); }
int dy(Direction d) { return d == Direction::Down ? -1 : (d == Direction::Up ? 1 : 0); }

Rational Law::sum() const { return p[0] + p[1] + p[2] + p[3]; }

Law make_law(Rational left, Rational right, Rational up, Rational down) {
  Law law;
  law[Direction::Left] = std::move(left);
  law[Direction::Right] = std::move(right);
  law[Direction::Up] = std::move(up);
  law[Direction::Down] = std::move(down);
  return law;
}

std::string_view to_string(QuadrantRegion r) {
  switch (r) {
    case QuadrantRegion::Origin: return "origin";
    case QuadrantRegion::XAxis: return "x_axis";
    case QuadrantRegion::YAxis: return "y_axis";
    case QuadrantRegion::Interior: return "interior";
  }
  return "?";
}

QuadrantRegion quadrant_region(std::int64_t x, std::int64_t y) {
  if (x == 0) return y == 0 ? QuadrantRegion::Origin : QuadrantRegion::YAxis;
  return y == 0 ? QuadrantRegion::XAxis : QuadrantRegion::Interior;
}

bool forbidden(QuadrantRegion r, Direction d) {
  bool left_blocked = r == QuadrantRegion::Origin || r == QuadrantRegion::YAxis;
  bool down_blocked = r == QuadrantRegion::Origin || r == QuadrantRegion::XAxis;
  return (d == Direction::Left && left_blocked) || (d == Direction::Down && down_blocked);
}

const Law& QuadrantWalkSpec::law(QuadrantRegion r) const {
  switch (r) {
    case QuadrantRegion::Origin: return origin;
    case QuadrantRegion::XAxis: return x_axis;
    case QuadrantRegion::YAxis: return y_axis;
    case QuadrantRegion::Interior: break;
  }
  return interior;
}

Law& QuadrantWalkSpec::law(QuadrantRegion r) {
  return const_cast<Law&>(static_cast<const QuadrantWalkSpec&>(*this).law(r));
}

std::string_view to_string(SlabRegion r) {
  switch (r) {
    case SlabRegion::Center: return "center";
    case SlabRegion::Lower: return "lower_boundary";
    case SlabRegion::Upper: return "upper_boundary";
    case SlabRegion::Left: return "left_boundary";
    case SlabRegion::Origin: return "origin";
    case SlabRegion::Corner: return "upper_corner";
  }
  return "?";
}

SlabRegion slab_region(std::int64_t x, std::int64_t y, int k) {
  if (x == 0) {
    if (y == 0) return SlabRegion::Origin;
    if (y == k) return SlabRegion::Corner;
    return SlabRegion::Left;
  }
  if (y == 0) return SlabRegion::Lower;
  if (y == k) return SlabRegion::Upper;
  return SlabRegion::Center;
}

bool forbidden(SlabRegion r, Direction d) {
  switch (d) {
    case Direction::Left: return r == SlabRegion::Left || r == SlabRegion::Origin || r == SlabRegion::Corner;
    case Direction::Down: return r == SlabRegion::Lower || r == SlabRegion::Origin;
    case Direction::Up: return r == SlabRegion::Upper || r == SlabRegion::Corner;
    case Direction::Right: return false;
  }
  return false;
}

std::vector<std::vector<int>> ExplicitTreeSpec::children() const {
  std::vector<std::vector<int>> out(parent.size());
  for (std::size_t v = 1; v < parent.size(); ++v) {
    if (parent[v] >= 0 && static_cast<std::size_t>(parent[v]) < parent.size()) {
      out[static_cast<std::size_t>(parent[v])].push_back(static_cast<int>(v));
    }
  }
  return out;
}

namespace detail {

struct Validator {
  template <class Spec>
  static Validated<Spec> make(Spec spec) {
    return Validated<Spec>(Key{}, std::move(spec));
  }
};

}  // namespace detail

namespace {

void check_law(const Law& law, const std::string& where, const std::function<bool(Direction)>& is_forbidden,
               std::vector<Issue>& issues) {
  for (Direction d : kDirections) {
    const Rational& p = law[d];
    if (p.sign() < 0) {
      issues.push_back({ErrorCode::NegativeProbability, where, std::string(to_string(d)) + " = " + p.str()});
    } else if (p > Rational(1)) {
      issues.push_back({ErrorCode::NonStochastic, where, std::string(to_string(d)) + " = " + p.str() + " > 1"});
    }
    if (is_forbidden(d) && !p.is_zero()) {
      issues.push_back({ErrorCode::ForbiddenMove, where, std::string(to_string(d)) + " = " + p.str() +
                                                             " leaves the state space"});
    }
  }
  Rational s = law.sum();
  if (s != Rational(1)) issues.push_back({ErrorCode::NonStochastic, where, "row sums to " + s.str()});
}

void check_distribution(const Rational& up, const std::vector<Rational>& down, const std::string& where,
                        std::vector<Issue>& issues) {
  Rational s = up;
  if (up.sign() < 0) issues.push_back({ErrorCode::NegativeProbability, where, "up = " + up.str()});
  for (std::size_t i = 0; i < down.size(); ++i) {
    if (down[i].sign() < 0) {
      issues.push_back({ErrorCode::NegativeProbability, where, "child " + std::to_string(i) + " = " + down[i].str()});
    }
    s += down[i];
  }
  if (s != Rational(1)) issues.push_back({ErrorCode::NonStochastic, where, "row sums to " + s.str()});
}

[[noreturn]] void fail(std::vector<Issue> issues) {
  ErrorCode head = issues.front().code;
  throw Error(head, "spec failed validation (" + std::to_string(issues.size()) + " issue(s))", std::move(issues));
}

}  // namespace

Validated<QuadrantWalkSpec> validate(QuadrantWalkSpec spec) {
  std::vector<Issue> issues;
  for (QuadrantRegion r : kQuadrantRegions) {
    check_law(spec.law(r), std::string(to_string(r)), [r](Direction d) { return forbidden(r, d); }, issues);
  }
  if (!issues.empty()) fail(std::move(issues));
  return detail::Validator::make(std::move(spec));
}

Validated<SlabWalkSpec> validate(SlabWalkSpec spec) {
  std::vector<Issue> issues;
  if (spec.k < 2) issues.push_back({ErrorCode::InvalidArgument, "k", "thickness must be at least 2"});
  for (SlabRegion r : kSlabRegions) {
    check_law(spec.law(r), std::string(to_string(r)), [r](Direction d) { return forbidden(r, d); }, issues);
  }
  if (!issues.empty()) fail(std::move(issues));
  return detail::Validator::make(std::move(spec));
}

Validated<ExplicitTreeSpec> validate(ExplicitTreeSpec spec) {
  std::vector<Issue> issues;
  const std::size_t n = spec.parent.size();
  if (n == 0) issues.push_back({ErrorCode::InvalidArgument, "tree", "empty tree"});
  if (spec.up.size() != n || spec.down.size() != n) {
    issues.push_back({ErrorCode::ShapeMismatch, "tree", "parent/up/down lengths differ"});
    fail(std::move(issues));
  }
  if (n > 0 && spec.parent[0] != -1) issues.push_back({ErrorCode::InvalidArgument, "vertex 0", "root must have parent -1"});
  for (std::size_t v = 1; v < n; ++v) {
    if (spec.parent[v] < 0 || static_cast<std::size_t>(spec.parent[v]) >= v) {
      issues.push_back({ErrorCode::InvalidArgument, "vertex " + std::to_string(v), "parent must precede the vertex"});
    }
  }
  if (!issues.empty()) fail(std::move(issues));
  auto children = spec.children();
  if (n > 0 && !spec.up[0].is_zero()) {
    issues.push_back({ErrorCode::ForbiddenMove, "vertex 0", "root has no parent but up = " + spec.up[0].str()});
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::string where = "vertex " + std::to_string(v);
    if (spec.down[v].size() != children[v].size()) {
      issues.push_back({ErrorCode::ShapeMismatch, where,
                        "expected " + std::to_string(children[v].size()) + " child probabilities"});
      continue;
    }
    check_distribution(spec.up[v], spec.down[v], where, issues);
  }
  if (!issues.empty()) fail(std::move(issues));
  return detail::Validator::make(std::move(spec));
}

Validated<ClassTreeSpec> validate(ClassTreeSpec spec) {
  std::vector<Issue> issues;
  const int n = static_cast<int>(spec.classes.size());
  if (n == 0) issues.push_back({ErrorCode::InvalidArgument, "classes", "no vertex classes"});
  if (spec.root_class < 0 || spec.root_class >= n) {
    issues.push_back({ErrorCode::InvalidArgument, "root_class", "out of range"});
  }
  if (!issues.empty()) fail(std::move(issues));
  for (int c = 0; c < n; ++c) {
    const auto& cls = spec.classes[static_cast<std::size_t>(c)];
    std::string where = "class " + (cls.name.empty() ? std::to_string(c) : cls.name);
    if (cls.child_prob.size() != cls.child_class.size()) {
      issues.push_back({ErrorCode::ShapeMismatch, where, "child_prob and child_class lengths differ"});
      continue;
    }
    for (int cc : cls.child_class) {
      if (cc < 0 || cc >= n) issues.push_back({ErrorCode::InvalidArgument, where, "child class out of range"});
      if (cc == spec.root_class) issues.push_back({ErrorCode::InvalidArgument, where, "root class reused below the root"});
    }
    check_distribution(cls.up, cls.child_prob, where, issues);
  }
  const auto& root = spec.classes[static_cast<std::size_t>(spec.root_class)];
  if (!root.up.is_zero()) {
    issues.push_back({ErrorCode::ForbiddenMove, "root", "root has no parent but up = " + root.up.str()});
  }
  if (!issues.empty()) fail(std::move(issues));
  return detail::Validator::make(std::move(spec));
}

std::string_view to_string(OrderKind k) {
  switch (k) {
    case OrderKind::QuadrantPreceq: return "quadrant_preceq";
    case OrderKind::SlabTrianglelefteq: return "slab_trianglelefteq";
    case OrderKind::TreeWeak: return "tree_weak";
    case OrderKind::TreeStrong: return "tree_strong";
  }
  return "?";
}

OrderKind order_kind_from_string(std::string_view name) {
  for (OrderKind k : {OrderKind::QuadrantPreceq, OrderKind::SlabTrianglelefteq, OrderKind::TreeWeak,
                      OrderKind::TreeStrong}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::UnknownName, "unknown order kind '" + std::string(name) + "'");
}

namespace {

class OrderBuilder {
 public:
  void add(std::string where, std::string what, const Rational& lhs, const Rational& rhs, Relation rel, bool forced,
           bool single_state) {
    Comparison c;
    c.where = std::move(where);
    c.what = std::move(what);
    c.lhs = lhs;
    c.rhs = rhs;
    c.rel = rel;
    c.forced = forced;
    c.single_state = single_state;
    switch (rel) {
      case Relation::Geq: c.satisfied = lhs >= rhs; c.strict = lhs > rhs; break;
      case Relation::Leq: c.satisfied = lhs <= rhs; c.strict = lhs < rhs; break;
      case Relation::Eq: c.satisfied = lhs == rhs; c.strict = false; break;
    }
    out_.comparisons.push_back(std::move(c));
  }

  OrderResult finish() {
    out_.holds = true;
    out_.strict = true;
    out_.strict_everywhere = true;
    for (const auto& c : out_.comparisons) {
      if (!c.satisfied) {
        out_.holds = false;
        out_.witnesses.push_back(c);
      }
      if (c.forced || c.rel == Relation::Eq || c.strict) continue;
      out_.strict_everywhere = false;
      if (!c.single_state) out_.strict = false;
    }
    if (!out_.holds) {
      out_.strict = false;
      out_.strict_everywhere = false;
    }
    return std::move(out_);
  }

 private:
  OrderResult out_;
};

// X precedes Y: X goes down and left at least as much as Y.
template <class Region, class ForbiddenFn>
void add_preceq(OrderBuilder& b, const Law& x, const Law& y, Region r, ForbiddenFn forbidden_fn, bool single) {
  std::string where(to_string(r));
  for (Direction d : kDirections) {
    bool forced = forbidden_fn(r, d);
    Relation rel = (d == Direction::Left || d == Direction::Down) ? Relation::Geq : Relation::Leq;
    b.add(where, std::string(to_string(d)), x[d], y[d], rel, forced, single);
  }
}

}  // namespace

OrderResult check_order(const Validated<QuadrantWalkSpec>& x, const Validated<QuadrantWalkSpec>& y, OrderKind kind) {
  if (kind != OrderKind::QuadrantPreceq) {
    throw Error(ErrorCode::ShapeMismatch, std::string(to_string(kind)) + " does not apply to quadrant walks");
  }
  OrderBuilder b;
  for (QuadrantRegion r : kQuadrantRegions) {
    add_preceq(b, x->law(r), y->law(r), r, [](QuadrantRegion rr, Direction d) { return forbidden(rr, d); },
               r == QuadrantRegion::Origin);
  }
  return b.finish();
}

OrderResult check_order(const Validated<SlabWalkSpec>& x, const Validated<SlabWalkSpec>& y, OrderKind kind) {
  if (x->k != y->k) {
    throw Error(ErrorCode::ShapeMismatch,
                "slab thickness differs: " + std::to_string(x->k) + " vs " + std::to_string(y->k));
  }
  OrderBuilder b;
  for (SlabRegion r : kSlabRegions) {
    bool single = r == SlabRegion::Origin || r == SlabRegion::Corner;
    auto fb = [](SlabRegion rr, Direction d) { return forbidden(rr, d); };
    if (kind == OrderKind::QuadrantPreceq) {
      add_preceq(b, x->law(r), y->law(r), r, fb, single);
    } else if (kind == OrderKind::SlabTrianglelefteq) {
      std::string where(to_string(r));
      const Law& lx = x->law(r);
      const Law& ly = y->law(r);
      b.add(where, "left", lx[Direction::Left], ly[Direction::Left], Relation::Geq, fb(r, Direction::Left), single);
      b.add(where, "right", lx[Direction::Right], ly[Direction::Right], Relation::Leq, false, single);
      b.add(where, "up", lx[Direction::Up], ly[Direction::Up], Relation::Eq, fb(r, Direction::Up), single);
      b.add(where, "down", lx[Direction::Down], ly[Direction::Down], Relation::Eq, fb(r, Direction::Down), single);
    } else {
      throw Error(ErrorCode::ShapeMismatch, std::string(to_string(kind)) + " does not apply to slab walks");
    }
  }
  return b.finish();
}

OrderResult check_order(const Validated<ExplicitTreeSpec>& x, const Validated<ExplicitTreeSpec>& y, OrderKind kind) {
  if (kind != OrderKind::TreeWeak && kind != OrderKind::TreeStrong) {
    throw Error(ErrorCode::ShapeMismatch, std::string(to_string(kind)) + " does not apply to trees");
  }
  if (x->parent != y->parent) throw Error(ErrorCode::ShapeMismatch, "trees differ");
  OrderBuilder b;
  for (std::size_t v = 0; v < x->size(); ++v) {
    std::string where = "vertex " + std::to_string(v);
    if (v > 0) b.add(where, "up", x->up[v], y->up[v], Relation::Geq, false, false);
    if (kind == OrderKind::TreeStrong) {
      for (std::size_t i = 0; i < x->down[v].size(); ++i) {
        b.add(where, "child " + std::to_string(i), x->down[v][i], y->down[v][i], Relation::Leq, false, v == 0);
      }
    }
  }
  return b.finish();
}

OrderResult check_order(const Validated<ClassTreeSpec>& x, const Validated<ClassTreeSpec>& y, OrderKind kind) {
  if (kind != OrderKind::TreeWeak && kind != OrderKind::TreeStrong) {
    throw Error(ErrorCode::ShapeMismatch, std::string(to_string(kind)) + " does not apply to trees");
  }
  if (x->root_class != y->root_class || x->classes.size() != y->classes.size()) {
    throw Error(ErrorCode::ShapeMismatch, "class automata differ");
  }
  for (std::size_t c = 0; c < x->classes.size(); ++c) {
    if (x->classes[c].child_class != y->classes[c].child_class) {
      throw Error(ErrorCode::ShapeMismatch, "class automata generate different trees");
    }
  }
  OrderBuilder b;
  for (std::size_t c = 0; c < x->classes.size(); ++c) {
    const auto& cx = x->classes[c];
    const auto& cy = y->classes[c];
    bool is_root = static_cast<int>(c) == x->root_class;
    std::string where = "class " + (cx.name.empty() ? std::to_string(c) : cx.name);
    if (!is_root) b.add(where, "up", cx.up, cy.up, Relation::Geq, false, false);
    if (kind == OrderKind::TreeStrong) {
      for (std::size_t i = 0; i < cx.child_prob.size(); ++i) {
        b.add(where, "child " + std::to_string(i), cx.child_prob[i], cy.child_prob[i], Relation::Leq, false, is_root);
      }
    }
  }
  return b.finish();
}

ExtendedRatio make_ratio(std::string name, const Rational& num, const Rational& den) {
  ExtendedRatio r;
  r.name = std::move(name);
  r.num = num;
  r.den = den;
  if (!den.is_zero()) {
    r.kind = ExtendedRatio::Kind::Finite;
    r.value = num / den;
  } else {
    r.kind = num.is_zero() ? ExtendedRatio::Kind::Vacuous : ExtendedRatio::Kind::Infinite;
  }
  return r;
}

bool ratio_geq(const ExtendedRatio& a, const ExtendedRatio& b) {
  using K = ExtendedRatio::Kind;
  if (a.kind == K::Vacuous || b.kind == K::Vacuous) return true;
  if (a.kind == K::Infinite) return true;
  if (b.kind == K::Infinite) return false;
  return a.value >= b.value;
}

HomogeneityReport homogeneity_class(const Validated<QuadrantWalkSpec>& spec) {
  using D = Direction;
  const Law& o = spec->origin;
  const Law& x = spec->x_axis;
  const Law& y = spec->y_axis;
  const Law& q = spec->interior;
  HomogeneityReport rep;

  auto check = [](std::vector<NamedCheck>& into, std::string s, bool ok) { into.push_back({std::move(s), ok}); };
  check(rep.inward_checks, "r_o >= r_x", o[D::Right] >= x[D::Right]);
  check(rep.inward_checks, "r_x = r_q", x[D::Right] == q[D::Right]);
  check(rep.inward_checks, "l_x >= l_q", x[D::Left] >= q[D::Left]);
  check(rep.inward_checks, "u_x >= u_q", x[D::Up] >= q[D::Up]);
  check(rep.inward_checks, "u_o >= u_y", o[D::Up] >= y[D::Up]);
  check(rep.inward_checks, "u_y = u_q", y[D::Up] == q[D::Up]);
  check(rep.inward_checks, "d_y >= d_q", y[D::Down] >= q[D::Down]);
  check(rep.inward_checks, "r_y >= r_q", y[D::Right] >= q[D::Right]);

  ExtendedRatio lx = make_ratio("l_x/l_q", x[D::Left], q[D::Left]);
  ExtendedRatio ux = make_ratio("u_x/u_q", x[D::Up], q[D::Up]);
  ExtendedRatio rx = make_ratio("r_x/r_q", x[D::Right], q[D::Right]);
  ExtendedRatio dy_ = make_ratio("d_y/d_q", y[D::Down], q[D::Down]);
  ExtendedRatio ry = make_ratio("r_y/r_q", y[D::Right], q[D::Right]);
  ExtendedRatio uy = make_ratio("u_y/u_q", y[D::Up], q[D::Up]);
  ExtendedRatio one = make_ratio("1", Rational(1), Rational(1));
  check(rep.weak_checks, "l_x/l_q >= r_x/r_q", ratio_geq(lx, rx));
  check(rep.weak_checks, "u_x/u_q >= r_x/r_q", ratio_geq(ux, rx));
  check(rep.weak_checks, "r_x/r_q >= 1", ratio_geq(rx, one));
  check(rep.weak_checks, "d_y/d_q >= u_y/u_q", ratio_geq(dy_, uy));
  check(rep.weak_checks, "r_y/r_q >= u_y/u_q", ratio_geq(ry, uy));
  check(rep.weak_checks, "u_y/u_q >= 1", ratio_geq(uy, one));
  rep.ratios = {lx, ux, rx, dy_, ry, uy};

  rep.inward = true;
  for (const auto& c : rep.inward_checks) rep.inward = rep.inward && c.satisfied;
  rep.weakly_inward = true;
  for (const auto& c : rep.weak_checks) rep.weakly_inward = rep.weakly_inward && c.satisfied;
  return rep;
}

SlabHomogeneityReport slab_homogeneity_report(const Validated<SlabWalkSpec>& spec) {
  using D = Direction;
  const Law& q = spec->law(SlabRegion::Center);
  const Law& x = spec->law(SlabRegion::Lower);
  const Law& u = spec->law(SlabRegion::Upper);
  const Law& y = spec->law(SlabRegion::Left);
  const Law& o = spec->law(SlabRegion::Origin);
  const Law& c = spec->law(SlabRegion::Corner);
  SlabHomogeneityReport rep;
  auto check = [&rep](std::string s, bool ok) { rep.checks.push_back({std::move(s), ok}); };
  check("r_c >= r_u", c[D::Right] >= u[D::Right]);
  check("r_u >= r_q", u[D::Right] >= q[D::Right]);
  check("r_q <= r_x", q[D::Right] <= x[D::Right]);
  check("r_x <= r_o", x[D::Right] <= o[D::Right]);
  check("r_y >= r_q", y[D::Right] >= q[D::Right]);
  check("l_u >= l_q", u[D::Left] >= q[D::Left]);
  check("l_q <= l_x", q[D::Left] <= x[D::Left]);
  check("d_u >= d_q", u[D::Down] >= q[D::Down]);
  check("d_y >= d_q", y[D::Down] >= q[D::Down]);
  check("d_c >= d_q", c[D::Down] >= q[D::Down]);
  check("u_x >= u_q", x[D::Up] >= q[D::Up]);
  check("u_y >= u_q", y[D::Up] >= q[D::Up]);
  check("u_o >= u_q", o[D::Up] >= q[D::Up]);
  rep.homogeneous = true;
  for (const auto& ch : rep.checks) rep.homogeneous = rep.homogeneous && ch.satisfied;
  return rep;
}

bool slab_homogeneity(const Validated<SlabWalkSpec>& spec) { return slab_homogeneity_report(spec).homogeneous; }

namespace {

Law law_from(std::initializer_list<std::pair<Direction, const char*>> entries, bool decimal) {
  Law law;
  for (const auto& [d, text] : entries) law[d] = decimal ? Rational::from_decimal(text) : Rational::parse(text);
  return law;
}

}  // namespace

Validated<QuadrantWalkSpec> quadrant_example(std::string_view name) {
  using D = Direction;
  QuadrantWalkSpec s;
  if (name == "quadrant_recurrent") {
    s.origin = law_from({{D::Right, "9/14"}, {D::Up, "5/14"}}, false);
    s.x_axis = law_from({{D::Up, "1/2"}, {D::Right, "5/12"}, {D::Left, "1/12"}}, false);
    s.y_axis = law_from({{D::Down, "89/120"}, {D::Up, "5/24"}, {D::Right, "1/20"}}, false);
    s.interior = law_from({{D::Up, "3/8"}, {D::Down, "3/8"}, {D::Left, "5/24"}, {D::Right, "1/24"}}, false);
  } else if (name == "quadrant_transient") {
    s.origin = law_from({{D::Right, "9/14"}, {D::Up, "5/14"}}, false);
    s.x_axis = law_from({{D::Up, "49/100"}, {D::Right, "41/100"}, {D::Left, "1/10"}}, false);
    s.y_axis = law_from({{D::Down, "19/25"}, {D::Up, "5/25"}, {D::Right, "1/25"}}, false);
    s.interior = law_from({{D::Up, "1/100"}, {D::Down, "74/100"}, {D::Left, "21/100"}, {D::Right, "4/100"}}, false);
  } else {
    throw Error(ErrorCode::UnknownName, "unknown quadrant example '" + std::string(name) + "'");
  }
  return validate(std::move(s));
}

Validated<SlabWalkSpec> slab_example(std::string_view name, int k) {
  using D = Direction;
  using R = SlabRegion;
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "slab examples require k >= 2, got " + std::to_string(k));
  SlabWalkSpec s;
  s.k = k;
  if (name == "slab_recurrent") {
    s.law(R::Center) = law_from({{D::Up, "0.65"}, {D::Right, "0.33"}, {D::Left, "0.01"}, {D::Down, "0.01"}}, true);
    s.law(R::Lower) = law_from({{D::Right, "0.52"}, {D::Up, "0.47"}, {D::Left, "0.01"}}, true);
    s.law(R::Upper) = law_from({{D::Down, "0.49"}, {D::Left, "0.48"}, {D::Right, "0.03"}}, true);
    s.law(R::Left) = law_from({{D::Up, "0.97"}, {D::Right, "0.02"}, {D::Down, "0.01"}}, true);
    s.law(R::Origin) = law_from({{D::Right, "0.99"}, {D::Up, "0.01"}}, true);
    s.law(R::Corner) = law_from({{D::Down, "0.50"}, {D::Right, "0.50"}}, true);
  } else if (name == "slab_transient") {
    s.law(R::Center) = law_from({{D::Up, "0.01"}, {D::Right, "0.32"}, {D::Left, "0.02"}, {D::Down, "0.65"}}, true);
    s.law(R::Lower) = law_from({{D::Right, "0.51"}, {D::Up, "0.46"}, {D::Left, "0.03"}}, true);
    s.law(R::Upper) = law_from({{D::Down, "0.50"}, {D::Left, "0.49"}, {D::Right, "0.01"}}, true);
    s.law(R::Left) = law_from({{D::Up, "0.01"}, {D::Right, "0.01"}, {D::Down, "0.98"}}, true);
    s.law(R::Origin) = law_from({{D::Right, "0.99"}, {D::Up, "0.01"}}, true);
    s.law(R::Corner) = law_from({{D::Down, "0.51"}, {D::Right, "0.49"}}, true);
  } else {
    throw Error(ErrorCode::UnknownName, "unknown slab example '" + std::string(name) + "'");
  }
  return validate(std::move(s));
}

ValidatedWalk paper_example(std::string_view name) {
  static const std::regex slab_re(R"((slab_recurrent|slab_transient)\((-?\d+)\))");
  std::string text(name);
  std::smatch m;
  if (std::regex_match(text, m, slab_re)) return slab_example(m[1].str(), std::stoi(m[2].str()));
  if (text == "slab_recurrent" || text == "slab_transient") {
    throw Error(ErrorCode::InvalidArgument, "slab examples need a thickness, e.g. " + text + "(4)");
  }
  return quadrant_example(name);
}

}  // namespace reclab::models
