#include <random>

#include "doctest.h"
#include "reclab/abelian_space.hpp"
#include "reclab/error.hpp"

using namespace reclab;
using namespace reclab::abelian;

namespace {

GroupElement el(std::vector<std::int64_t> free, std::vector<std::int64_t> torsion = {}) {
  return {std::move(free), std::move(torsion)};
}

std::vector<GroupElement> symmetric_basis(int n) {
  std::vector<GroupElement> s;
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    s.push_back(el(e));
    e[static_cast<std::size_t>(i)] = -1;
    s.push_back(el(e));
  }
  return s;
}

std::vector<GroupElement> bipyramid() {
  return {el({0, 0, 1}), el({1, 0, 0}), el({-1, 1, 0}), el({-1, -1, 0}), el({0, 0, -1})};
}

FGAbelianGroup zn(int n) { return {n, {}}; }

std::vector<Rational> uniform(std::size_t n) { return std::vector<Rational>(n, Rational(1, static_cast<long>(n))); }

Recurrence kind_of(const FGAbelianGroup& g, const std::vector<GroupElement>& s, const linalg::Vector& a) {
  return classify({g, s, a}).kind;
}

bool recurrent(Recurrence r) { return r != Recurrence::Transient; }

linalg::Vector drift(const std::vector<GroupElement>& s, const linalg::Vector& a) {
  linalg::Vector d(s.front().free.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t k = 0; k < d.size(); ++k) d[k] += a[i] * Rational(static_cast<long>(s[i].free[k]));
  return d;
}

}  // namespace

TEST_CASE("group parsing") {
  CHECK(FGAbelianGroup::parse("Z3") == zn(3));
  CHECK(FGAbelianGroup::parse("Z1xC2") == FGAbelianGroup{1, {2}});
  CHECK(FGAbelianGroup::parse("Z^2 x Z/6").torsion == std::vector<std::int64_t>{6});
  CHECK(FGAbelianGroup{1, {4, 6}}.invariant_factors() == std::vector<std::int64_t>{2, 12});
  CHECK(FGAbelianGroup{2, {3}}.str() == "Z2xC3");
  CHECK_THROWS_AS(FGAbelianGroup::parse("Q2"), Error);
  CHECK_THROWS_AS(FGAbelianGroup::parse("C1"), Error);
}

TEST_CASE("classification examples") {
  CHECK(kind_of(zn(2), symmetric_basis(2), uniform(4)) == Recurrence::NullRecurrent);
  CHECK(kind_of(zn(3), symmetric_basis(3), uniform(6)) == Recurrence::Transient);
  FGAbelianGroup zc{1, {2}};
  CHECK(kind_of(zc, {el({0}, {1})}, {1}) == Recurrence::PositiveRecurrent);
  CHECK(kind_of(zn(1), {el({1}), el({-1})}, {Rational(2, 3), Rational(1, 3)}) == Recurrence::Transient);
  CHECK(kind_of(zn(1), {el({2}), el({-1})}, {Rational(1, 3), Rational(2, 3)}) == Recurrence::NullRecurrent);
  CHECK_THROWS_AS(classify({zn(1), {el({1}), el({-1})}, {Rational(1, 2), Rational(1, 3)}}), Error);
  CHECK_THROWS_AS(classify({zn(1), {el({1, 0})}, {1}}), Error);
}

TEST_CASE("feasible supports: trivial cases") {
  auto identity = feasible_supports(zn(2), {el({0, 0})});
  REQUIRE(identity.size() == 1);
  CHECK(identity[0].dimension == 0);
  CHECK(identity[0].witness == linalg::Vector{1});
  CHECK(feasible_supports(zn(1), {el({1})}).empty());
  std::vector<GroupElement> many(21, el({1}));
  CHECK_THROWS_AS(feasible_supports(zn(1), many), Error);
}

TEST_CASE("trigonal bipyramid") {
  auto classes = feasible_supports(zn(3), bipyramid());
  REQUIRE(classes.size() == 2);
  const SupportClass* axis = nullptr;
  const SupportClass* plane = nullptr;
  for (const auto& c : classes) (c.dimension == 1 ? axis : plane) = &c;
  REQUIRE(axis != nullptr);
  REQUIRE(plane != nullptr);
  CHECK(axis->support == std::vector<std::size_t>{0, 4});
  CHECK(axis->witness == linalg::Vector{Rational(1, 2), 0, 0, 0, Rational(1, 2)});
  CHECK(plane->support == std::vector<std::size_t>{1, 2, 3});
  CHECK(plane->witness == linalg::Vector{0, Rational(1, 2), Rational(1, 4), Rational(1, 4), 0});

  TopologyReport t = R_topology(zn(3), bipyramid());
  CHECK(t.closed);
  CHECK(t.pathconnected == Verdict::False);
  CHECK(t.components_lower_bound == 2);
  ConvexityReport c = is_R_convex(zn(3), bipyramid());
  CHECK_FALSE(c.convex);
  REQUIRE(c.violation.has_value());
  linalg::Vector mid(5);
  for (std::size_t i = 0; i < 5; ++i) mid[i] = (c.violation->first[i] + c.violation->second[i]) / 2;
  CHECK(kind_of(zn(3), bipyramid(), mid) == Recurrence::Transient);
}

TEST_CASE("symmetric basis convexity") {
  for (int n = 1; n <= 4; ++n) {
    ConvexityReport r = is_R_convex(zn(n), symmetric_basis(n));
    CHECK(r.convex == (n <= 2));
    CHECK(r.witness_space.has_value() == r.convex);
    CHECK(r.violation.has_value() == !r.convex);
    if (r.violation) {
      linalg::Vector mid(r.violation->first.size());
      for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = (r.violation->first[i] + r.violation->second[i]) / 2;
      CHECK(recurrent(kind_of(zn(n), symmetric_basis(n), r.violation->first)));
      CHECK(recurrent(kind_of(zn(n), symmetric_basis(n), r.violation->second)));
      CHECK(kind_of(zn(n), symmetric_basis(n), mid) == Recurrence::Transient);
    }
    TopologyReport t = R_topology(zn(n), symmetric_basis(n));
    CHECK(t.pathconnected == Verdict::True);
  }
}

TEST_CASE("witnesses are exact and classes are closed under mixing") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coord(-2, 2);
  std::uniform_int_distribution<int> weight(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const int size = 2 + trial % 5;
    std::vector<GroupElement> s;
    for (int i = 0; i < size; ++i) {
      std::vector<std::int64_t> v(static_cast<std::size_t>(n));
      for (auto& x : v) x = coord(rng);
      s.push_back(el(v));
    }
    for (const auto& cls : feasible_supports(zn(n), s)) {
      CHECK(cls.dimension <= 2);
      Rational sum;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const bool in = std::find(cls.support.begin(), cls.support.end(), i) != cls.support.end();
        CHECK((cls.witness[i].sign() > 0) == in);
        sum += cls.witness[i];
      }
      CHECK(sum == 1);
      CHECK(drift(s, cls.witness) == linalg::Vector(static_cast<std::size_t>(n)));
      CHECK(recurrent(kind_of(zn(n), s, cls.witness)));
      // random convex combinations of the class vertices stay recurrent
      for (int rep = 0; rep < 5; ++rep) {
        linalg::Vector a(s.size());
        Rational total;
        for (const auto& v : cls.vertices) {
          Rational w(weight(rng));
          total += w;
          for (std::size_t i = 0; i < a.size(); ++i) a[i] += w * v.point[i];
        }
        for (auto& x : a) x /= total;
        CHECK(recurrent(kind_of(zn(n), s, a)));
      }
    }
  }
}

TEST_CASE("symmetric shortcut agrees with the convexity decision") {
  std::mt19937_64 rng(57);
  std::uniform_int_distribution<int> coord(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const int pairs = 1 + static_cast<int>(rng() % 3);
    std::vector<GroupElement> s;
    for (int i = 0; i < pairs; ++i) {
      std::vector<std::int64_t> v(static_cast<std::size_t>(n));
      for (auto& x : v) x = coord(rng);
      s.push_back(el(v));
      for (auto& x : v) x = -x;
      s.push_back(el(v));
    }
    REQUIRE(is_symmetric(zn(n), s));
    linalg::Matrix proj;
    for (const auto& g : s) proj.push_back(projection(g));
    const bool shortcut = linalg::span_dimension(proj) <= 2;
    ConvexityReport r = is_R_convex(zn(n), s);
    CHECK(r.convex == shortcut);
    if (r.violation) {
      linalg::Vector mid(s.size());
      for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = (r.violation->first[i] + r.violation->second[i]) / 2;
      CHECK(kind_of(zn(n), s, mid) == Recurrence::Transient);
    }
    CHECK(R_topology(zn(n), s).pathconnected == Verdict::True);
  }
}

TEST_CASE("opposite multiple form") {
  CHECK(opposite_multiple_form({el({1, 0}), el({0, 1}), el({-2, 0}), el({0, -2})}) == 2);
  CHECK_FALSE(opposite_multiple_form({el({1, 0}), el({0, 1}), el({-1, -1})}).has_value());
  TopologyReport t = R_topology(zn(2), {el({1, 0}), el({0, 1}), el({-2, 0}), el({0, -2})});
  CHECK(t.pathconnected == Verdict::True);
  TopologyReport u = R_topology(zn(2), {el({1, 0}), el({0, 1}), el({-1, -1})});
  CHECK(u.pathconnected == Verdict::Unknown);
  CHECK(u.components_lower_bound == 1);
}

TEST_CASE("complement properties") {
  ComplementReport z3 = Rc_properties(zn(3), symmetric_basis(3));
  CHECK(z3.pathconnected == Verdict::True);
  CHECK(z3.convex == Verdict::False);
  REQUIRE(z3.convexity_witness.has_value());
  auto [i, j] = *z3.convexity_witness;
  linalg::Vector mid(6);
  mid[i] += Rational(1, 2);
  mid[j] += Rational(1, 2);
  CHECK(recurrent(kind_of(zn(3), symmetric_basis(3), mid)));
  linalg::Vector ei(6), ej(6);
  ei[i] = 1;
  ej[j] = 1;
  CHECK(kind_of(zn(3), symmetric_basis(3), ei) == Recurrence::Transient);
  CHECK(kind_of(zn(3), symmetric_basis(3), ej) == Recurrence::Transient);

  ComplementReport line = Rc_properties(zn(1), {el({1}), el({-1})});
  CHECK(line.pathconnected == Verdict::False);
  ComplementReport trivial = Rc_properties(zn(2), {el({0, 0})});
  CHECK(trivial.pathconnected == Verdict::True);
  CHECK(trivial.convex == Verdict::True);
  ComplementReport open = Rc_properties(zn(2), {el({1, 0}), el({0, 1}), el({-1, -1})});
  CHECK(open.pathconnected == Verdict::Unknown);
  CHECK(open.convex == Verdict::Unknown);
}

TEST_CASE("positive recurrent face") {
  FGAbelianGroup zc{1, {2}};
  PositiveRegion p = P_region(zc, {el({1}, {0}), el({0}, {1})});
  CHECK(p.free_indices == std::vector<std::size_t>{1});
  CHECK_FALSE(p.empty);
  CHECK(p.closed);
  CHECK(p.convex);
  CHECK(P_region(zn(2), {el({0, 0}), el({0, 0})}).whole_simplex);
  CHECK(P_region(zn(2), symmetric_basis(2)).empty);
}

TEST_CASE("instances load from JSON") {
  auto inst = instance_from_json(nlohmann::json::parse(
      R"({"group": {"rank": 1, "torsion": [3]}, "generators": [[1, 0], {"free": [-1], "torsion": [5]}], "a": ["1/2", "1/2"]})"));
  CHECK(inst.group == FGAbelianGroup{1, {3}});
  CHECK(inst.generators[1] == el({-1}, {2}));
  CHECK(classify(inst).kind == Recurrence::NullRecurrent);
  auto gens = generators_from_json(zn(3), nlohmann::json::parse(R"({"generators": [[0,0,1],[1,0,0]]})"));
  CHECK(gens.size() == 2);
  CHECK_THROWS_AS(generators_from_json(zn(3), nlohmann::json::parse("[[1,2]]")), Error);
}

TEST_CASE("simplex mesh") {
  std::string csv = simplex_mesh_csv(zn(1), {el({1}), el({-1}), el({0})}, 0, 1, 2, 4);
  CHECK(csv.rfind("a_0,a_1,a_2,classification\n", 0) == 0);
  CHECK(csv.find("1/2,1/2,0,NullRecurrent") != std::string::npos);
  CHECK(csv.find("0,0,1,PositiveRecurrent") != std::string::npos);
}
