#include "reclab/abelian_space.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "reclab/error.hpp"
#include "reclab/walk_io.hpp"

namespace reclab::abelian {

using linalg::Matrix;
using linalg::Vector;
using json = nlohmann::json;

namespace {

std::int64_t parse_count(std::string_view digits, std::string_view token) {
  if (digits.empty()) throw Error(ErrorCode::ParseError, "missing number in group factor '" + std::string(token) + "'");
  std::int64_t v = 0;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw Error(ErrorCode::ParseError, "bad group factor '" + std::string(token) + "'");
    v = v * 10 + (ch - '0');
    if (v > (1LL << 40)) throw Error(ErrorCode::ParseError, "group factor too large");
  }
  return v;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

FGAbelianGroup FGAbelianGroup::parse(std::string_view text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+00D7 multiplication sign is accepted as a separator.
    if (static_cast<unsigned char>(text[i]) == 0xC3 && i + 1 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x97) {
      s += 'x';
      ++i;
    } else if (text[i] != ' ') {
      s += text[i] == '*' ? 'x' : text[i];
    }
  }
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty group description");
  FGAbelianGroup g;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('x', start);
    if (end == std::string::npos) end = s.size();
    std::string_view tok(s.data() + start, end - start);
    if (tok.empty()) throw Error(ErrorCode::ParseError, "empty factor in '" + std::string(text) + "'");
    if (tok.rfind("Z/", 0) == 0 || tok.rfind("Z_", 0) == 0 || tok[0] == 'C') {
      const std::int64_t m = parse_count(tok.substr(tok[0] == 'C' ? 1 : 2), tok);
      if (m < 2) throw Error(ErrorCode::InvalidArgument, "torsion orders must be at least 2");
      g.torsion.push_back(m);
    } else if (tok[0] == 'Z') {
      std::string_view rest = tok.substr(1);
      if (!rest.empty() && rest[0] == '^') rest = rest.substr(1);
      g.rank += rest.empty() ? 1 : static_cast<int>(parse_count(rest, tok));
    } else {
      throw Error(ErrorCode::ParseError, "unknown group factor '" + std::string(tok) + "'");
    }
    start = end + 1;
  }
  return g;
}

std::string FGAbelianGroup::str() const {
  std::string out = "Z" + std::to_string(rank);
  for (auto m : torsion) out += "xC" + std::to_string(m);
  return out;
}

std::vector<std::int64_t> FGAbelianGroup::invariant_factors() const {
  std::map<std::int64_t, std::vector<std::int64_t>> powers;
  for (std::int64_t m : torsion) {
    std::int64_t x = m;
    for (std::int64_t p = 2; p * p <= x; ++p) {
      if (x % p != 0) continue;
      std::int64_t q = 1;
      while (x % p == 0) {
        x /= p;
        q *= p;
      }
      powers[p].push_back(q);
    }
    if (x > 1) powers[x].push_back(x);
  }
  std::size_t count = 0;
  for (auto& [p, qs] : powers) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    count = std::max(count, qs.size());
  }
  std::vector<std::int64_t> out(count, 1);
  for (const auto& [p, qs] : powers) {
    for (std::size_t i = 0; i < qs.size(); ++i) out[i] *= qs[i];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

GroupElement normalize(const FGAbelianGroup& g, GroupElement e) {
  if (e.free.size() != static_cast<std::size_t>(g.rank)) {
    throw Error(ErrorCode::ShapeMismatch, "element has " + std::to_string(e.free.size()) + " free coordinates, group " +
                                              g.str() + " needs " + std::to_string(g.rank));
  }
  if (e.torsion.empty()) e.torsion.assign(g.torsion.size(), 0);
  if (e.torsion.size() != g.torsion.size()) {
    throw Error(ErrorCode::ShapeMismatch, "element torsion coordinates do not match group " + g.str());
  }
  for (std::size_t i = 0; i < e.torsion.size(); ++i) e.torsion[i] = mod(e.torsion[i], g.torsion[i]);
  return e;
}

GroupElement negate(const FGAbelianGroup& g, const GroupElement& e) {
  GroupElement n = e;
  for (auto& x : n.free) x = -x;
  for (auto& x : n.torsion) x = -x;
  return normalize(g, std::move(n));
}

Vector projection(const GroupElement& e) {
  Vector v;
  v.reserve(e.free.size());
  for (auto x : e.free) v.emplace_back(static_cast<long>(x));
  return v;
}

void validate_instance(const GroupWalkInstance& inst) {
  if (inst.generators.empty()) throw Error(ErrorCode::InvalidArgument, "generator list is empty");
  if (inst.a.size() != inst.generators.size()) {
    throw Error(ErrorCode::ShapeMismatch, "a has " + std::to_string(inst.a.size()) + " entries for " +
                                              std::to_string(inst.generators.size()) + " generators");
  }
  for (const auto& s : inst.generators) (void)normalize(inst.group, s);
  Rational total;
  for (const auto& x : inst.a) {
    if (x.sign() < 0) throw Error(ErrorCode::NegativeProbability, "negative weight " + x.str());
    total += x;
  }
  if (total != Rational(1)) throw Error(ErrorCode::NonStochastic, "weights sum to " + total.str());
}

std::string_view to_string(Recurrence r) {
  switch (r) {
    case Recurrence::PositiveRecurrent: return "PositiveRecurrent";
    case Recurrence::NullRecurrent: return "NullRecurrent";
    case Recurrence::Transient: return "Transient";
  }
  return "?";
}

namespace {

Matrix projections(const std::vector<GroupElement>& gens, const std::vector<std::size_t>& idx) {
  Matrix m;
  for (auto i : idx) m.push_back(projection(gens[i]));
  return m;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

bool all_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

}  // namespace

Classification classify(const GroupWalkInstance& inst) {
  validate_instance(inst);
  Classification c;
  const std::size_t n = static_cast<std::size_t>(inst.group.rank);
  c.drift.assign(n, Rational(0));
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    if (inst.a[i].is_zero()) continue;
    c.support.push_back(i);
    const Vector p = projection(inst.generators[i]);
    for (std::size_t k = 0; k < n; ++k) c.drift[k] += inst.a[i] * p[k];
  }
  c.span_dimension = n == 0 ? 0 : linalg::span_dimension(projections(inst.generators, c.support));
  if (c.span_dimension == 0) {
    c.kind = Recurrence::PositiveRecurrent;
  } else if (c.span_dimension <= 2 && all_zero(c.drift)) {
    c.kind = Recurrence::NullRecurrent;
  } else {
    c.kind = Recurrence::Transient;
  }
  return c;
}

std::vector<VertexSupport> zero_drift_vertices(const std::vector<GroupElement>& gens,
                                               std::optional<std::size_t> max_dimension) {
  std::vector<VertexSupport> out;
  if (gens.empty()) return out;
  const std::size_t m = gens.size();
  const std::size_t n = gens.front().free.size();
  Matrix proj = projections(gens, all_indices(m));
  const std::size_t r = n == 0 ? 0 : linalg::rank(proj);
  std::size_t max_size = std::min(m, r + 1);
  if (max_dimension) max_size = std::min(max_size, *max_dimension + 1);
  std::vector<std::size_t> subset;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!subset.empty()) {
      Matrix cols;  // rows: coordinates of (pi(s), 1)
      bool ok = true;
      if (max_dimension && n > 0) {
        Matrix ps;
        for (auto i : subset) ps.push_back(proj[i]);
        ok = linalg::span_dimension(ps) <= *max_dimension;
      }
      if (ok) {
        Matrix a(n + 1, Vector(subset.size()));
        for (std::size_t c = 0; c < subset.size(); ++c) {
          for (std::size_t k = 0; k < n; ++k) a[k][c] = proj[subset[c]][k];
          a[n][c] = Rational(1);
        }
        if (linalg::rank(a) == subset.size()) {
          Vector rhs(n + 1);
          rhs[n] = Rational(1);
          auto x = linalg::solve(a, rhs);
          if (x && std::all_of(x->begin(), x->end(), [](const Rational& v) { return v.sign() > 0; })) {
            VertexSupport vs;
            vs.support = subset;
            vs.point.assign(m, Rational(0));
            for (std::size_t c = 0; c < subset.size(); ++c) vs.point[subset[c]] = (*x)[c];
            out.push_back(std::move(vs));
          }
        }
      }
    }
    if (subset.size() == max_size) return;
    for (std::size_t i = from; i < m; ++i) {
      subset.push_back(i);
      rec(i + 1);
      subset.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

void check_guard(const std::vector<GroupElement>& gens, std::size_t guard) {
  if (gens.size() > guard) {
    throw Error(ErrorCode::TooManyGenerators,
                std::to_string(gens.size()) + " generators exceed the enumeration guard of " + std::to_string(guard));
  }
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "generator list is empty");
}

std::vector<GroupElement> normalized(const FGAbelianGroup& g, const std::vector<GroupElement>& gens) {
  std::vector<GroupElement> out;
  out.reserve(gens.size());
  for (const auto& s : gens) out.push_back(normalize(g, s));
  return out;
}

bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<SupportClass> feasible_supports(const FGAbelianGroup& g, const std::vector<GroupElement>& raw,
                                            std::size_t guard) {
  check_guard(raw, guard);
  const auto gens = normalized(g, raw);
  const std::size_t m = gens.size();
  const auto vertices = zero_drift_vertices(gens, 2);
  std::vector<Matrix> spans;
  for (const auto& v : vertices) spans.push_back(linalg::span_basis(projections(gens, v.support)));

  // Candidate subspaces: every vertex span plus the planes through two lines.
  std::vector<Matrix> candidates;
  auto add_candidate = [&](const Matrix& s) {
    if (std::find(candidates.begin(), candidates.end(), s) == candidates.end()) candidates.push_back(s);
  };
  for (const auto& s : spans) add_candidate(s);
  std::vector<Matrix> lines;
  for (const auto& s : candidates) {
    if (s.size() == 1) lines.push_back(s);
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      Matrix both = lines[i];
      both.insert(both.end(), lines[j].begin(), lines[j].end());
      add_candidate(linalg::span_basis(both));
    }
  }

  std::vector<SupportClass> classes;
  for (const auto& v_space : candidates) {
    SupportClass cls;
    std::vector<bool> in(m, false);
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      if (!linalg::span_contains(v_space, spans[k])) continue;
      cls.vertices.push_back(vertices[k]);
      for (auto i : vertices[k].support) in[i] = true;
    }
    if (cls.vertices.empty()) continue;
    for (std::size_t i = 0; i < m; ++i) {
      if (in[i]) cls.support.push_back(i);
    }
    cls.span = linalg::span_basis(projections(gens, cls.support));
    cls.dimension = cls.span.size();
    const bool seen = std::any_of(classes.begin(), classes.end(), [&](const SupportClass& c) { return c.span == cls.span; });
    if (seen) continue;
    cls.witness.assign(m, Rational(0));
    const Rational share(1, static_cast<long>(cls.vertices.size()));
    for (const auto& v : cls.vertices) {
      for (std::size_t i = 0; i < m; ++i) cls.witness[i] += share * v.point[i];
    }
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(), [](const SupportClass& a, const SupportClass& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.support < b.support;
  });
  return classes;
}

ConvexityReport is_R_convex(const FGAbelianGroup& g, const std::vector<GroupElement>& gens, std::size_t guard) {
  ConvexityReport report;
  report.classes = feasible_supports(g, gens, guard);
  Matrix all;
  for (const auto& c : report.classes) all.insert(all.end(), c.span.begin(), c.span.end());
  Matrix total = linalg::span_basis(all);
  if (total.size() <= 2) {
    report.convex = true;
    report.witness_space = total;
    return report;
  }
  // Average classes together while the joint span stays planar; the first
  // class that lifts it out of the plane gives a transient midpoint.
  ConvexityReport::Violation v;
  v.first = report.classes.front().witness;
  v.first_classes = {0};
  Matrix span = report.classes.front().span;
  for (std::size_t k = 1; k < report.classes.size(); ++k) {
    Matrix joint = span;
    joint.insert(joint.end(), report.classes[k].span.begin(), report.classes[k].span.end());
    joint = linalg::span_basis(joint);
    if (joint.size() > 2) {
      v.second = report.classes[k].witness;
      v.second_class = k;
      report.violation = std::move(v);
      return report;
    }
    for (std::size_t i = 0; i < v.first.size(); ++i) {
      v.first[i] = (v.first[i] + report.classes[k].witness[i]) / Rational(2);
    }
    v.first_classes.push_back(k);
    span = std::move(joint);
  }
  throw Error(ErrorCode::InvalidArgument, "internal: no violating pair found");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

bool is_symmetric(const FGAbelianGroup& g, const std::vector<GroupElement>& raw) {
  const auto gens = normalized(g, raw);
  return std::all_of(gens.begin(), gens.end(), [&](const GroupElement& s) {
    return std::find(gens.begin(), gens.end(), negate(g, s)) != gens.end();
  });
}

std::optional<std::int64_t> opposite_multiple_form(const std::vector<GroupElement>& gens) {
  std::vector<Vector> p;
  for (const auto& s : gens) p.push_back(projection(s));
  auto scaled = [](const Vector& v, std::int64_t c) {
    Vector out = v;
    for (auto& x : out) x *= Rational(static_cast<long>(-c));
    return out;
  };
  auto present = [&](const Vector& v) { return std::find(p.begin(), p.end(), v) != p.end(); };
  std::vector<std::int64_t> cs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (all_zero(p[i])) continue;
    for (std::size_t j = 0; j < p.size(); ++j) {
      // p_j = -c p_i for a positive integer c?
      std::optional<Rational> ratio;
      bool ok = true;
      for (std::size_t k = 0; k < p[i].size() && ok; ++k) {
        if (p[i][k].is_zero()) {
          ok = p[j][k].is_zero();
        } else {
          Rational r = -p[j][k] / p[i][k];
          if (ratio && *ratio != r) ok = false;
          ratio = r;
        }
      }
      if (!ok || !ratio || ratio->sign() <= 0 || ratio->denominator() != "1") continue;
      cs.push_back(std::stoll(ratio->numerator()));
    }
  }
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  for (std::int64_t c : cs) {
    std::vector<bool> in_t(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) in_t[i] = present(scaled(p[i], c));
    bool covered = true;
    for (std::size_t i = 0; i < p.size() && covered; ++i) {
      if (in_t[i]) continue;
      bool hit = false;
      for (std::size_t t = 0; t < p.size() && !hit; ++t) hit = in_t[t] && scaled(p[t], c) == p[i];
      covered = hit;
    }
    if (covered) return c;
  }
  return std::nullopt;
}

TopologyReport R_topology(const FGAbelianGroup& g, const std::vector<GroupElement>& gens, std::size_t guard) {
  TopologyReport report;
  report.classes = feasible_supports(g, gens, guard);
  const auto norm = normalized(g, gens);
  const bool trivial = std::all_of(norm.begin(), norm.end(), [](const GroupElement& s) {
    return std::all_of(s.free.begin(), s.free.end(), [](std::int64_t x) { return x == 0; });
  });
  const std::size_t k = report.classes.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<std::size_t> common;
      std::set_intersection(report.classes[i].support.begin(), report.classes[i].support.end(),
                            report.classes[j].support.begin(), report.classes[j].support.end(),
                            std::back_inserter(common));
      const auto& verts = report.classes[i].vertices;
      const bool meet = std::any_of(verts.begin(), verts.end(),
                                    [&](const VertexSupport& v) { return subset_of(v.support, common); });
      if (meet) parent[find(i)] = find(j);
    }
  }
  std::size_t components = 0;
  for (std::size_t i = 0; i < k; ++i) components += find(i) == i;
  report.components_lower_bound = components;
  if (trivial) {
    report.pathconnected = Verdict::True;
    report.reason = "pi(S) = {0}, so R is the whole simplex";
  } else if (k == 0) {
    report.pathconnected = Verdict::True;
    report.reason = "R is empty";
  } else if (components >= 2) {
    report.pathconnected = Verdict::False;
    report.reason = "span classes split into " + std::to_string(components) + " groups of pairwise disjoint polytopes";
  } else if (is_symmetric(g, gens)) {
    report.pathconnected = Verdict::True;
    report.reason = "S is symmetric";
  } else if (auto c = opposite_multiple_form(norm)) {
    report.pathconnected = Verdict::True;
    report.reason = "pi(S) = T u -" + std::to_string(*c) + "T";
  } else {
    report.pathconnected = Verdict::Unknown;
    report.reason = "no implemented criterion applies";
  }
  return report;
}

ComplementReport Rc_properties(const FGAbelianGroup& g, const std::vector<GroupElement>& raw, std::size_t guard) {
  check_guard(raw, guard);
  const auto gens = normalized(g, raw);
  ComplementReport r;
  const bool trivial = std::all_of(gens.begin(), gens.end(), [](const GroupElement& s) {
    return std::all_of(s.free.begin(), s.free.end(), [](std::int64_t x) { return x == 0; });
  });
  if (trivial) {
    r.pathconnected = Verdict::True;
    r.convex = Verdict::True;
    r.pathconnected_reason = r.convex_reason = "pi(S) = {0}, so the complement is empty";
    return r;
  }
  const auto vertices = zero_drift_vertices(gens);
  std::vector<std::size_t> widest;
  for (const auto& v : vertices) widest.insert(widest.end(), v.support.begin(), v.support.end());
  std::sort(widest.begin(), widest.end());
  widest.erase(std::unique(widest.begin(), widest.end()), widest.end());
  const std::size_t widest_dim =
      widest.empty() || g.rank == 0 ? 0 : linalg::span_dimension(projections(gens, widest));
  if (widest_dim >= 3) {
    r.pathconnected = Verdict::True;
    r.pathconnected_reason = "a zero-drift support spans dimension " + std::to_string(widest_dim);
  } else if (gens.size() == 2) {
    const Vector p = projection(gens[0]);
    const Vector q = projection(gens[1]);
    Matrix both{p, q};
    const bool opposite = !all_zero(p) && !all_zero(q) && linalg::rank(both) == 1 && !vertices.empty() &&
                          vertices.front().support.size() == 2;
    if (opposite) {
      r.pathconnected = Verdict::False;
      r.pathconnected_reason = "R is a single interior point of a segment";
    } else {
      r.pathconnected_reason = "no implemented criterion applies";
    }
  } else {
    r.pathconnected_reason = "no implemented criterion applies";
  }
  if (is_symmetric(g, gens)) {
    for (std::size_t i = 0; i < gens.size() && !r.convexity_witness; ++i) {
      if (all_zero(projection(gens[i]))) continue;
      const auto inv = negate(g, gens[i]);
      const auto j = static_cast<std::size_t>(std::find(gens.begin(), gens.end(), inv) - gens.begin());
      r.convexity_witness = std::make_pair(i, j);
    }
    r.convex = Verdict::False;
    r.convex_reason = "e_i and e_j are transient while their midpoint is recurrent";
  } else {
    r.convex_reason = "no implemented criterion applies";
  }
  return r;
}

PositiveRegion P_region(const FGAbelianGroup& g, const std::vector<GroupElement>& raw) {
  const auto gens = normalized(g, raw);
  PositiveRegion p;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (all_zero(projection(gens[i]))) p.free_indices.push_back(i);
  }
  p.empty = p.free_indices.empty();
  p.whole_simplex = p.free_indices.size() == gens.size();
  if (p.empty) {
    p.description = "empty";
  } else if (p.whole_simplex) {
    p.description = "the whole simplex";
  } else {
    std::ostringstream os;
    os << "{a : a_i = 0 for i in {";
    bool first = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (std::find(p.free_indices.begin(), p.free_indices.end(), i) != p.free_indices.end()) continue;
      os << (first ? "" : ", ") << i;
      first = false;
    }
    os << "}}";
    p.description = os.str();
  }
  return p;
}

FGAbelianGroup group_from_json(const json& j) {
  if (j.is_string()) return FGAbelianGroup::parse(j.get<std::string>());
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "group must be a string or an object");
  FGAbelianGroup g;
  g.rank = j.value("rank", 0);
  if (g.rank < 0) throw Error(ErrorCode::InvalidArgument, "negative rank");
  if (j.contains("torsion")) g.torsion = j.at("torsion").get<std::vector<std::int64_t>>();
  for (auto m : g.torsion) {
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "torsion orders must be at least 2");
  }
  return g;
}

std::vector<GroupElement> generators_from_json(const FGAbelianGroup& g, const json& j) {
  const json& list = j.is_object() && j.contains("generators") ? j.at("generators") : j;
  if (!list.is_array()) throw Error(ErrorCode::ParseError, "generators must be an array");
  std::vector<GroupElement> out;
  const auto rank = static_cast<std::size_t>(g.rank);
  for (const auto& e : list) {
    GroupElement el;
    if (e.is_array()) {
      auto coords = e.get<std::vector<std::int64_t>>();
      if (coords.size() != rank && coords.size() != rank + g.torsion.size()) {
        throw Error(ErrorCode::ShapeMismatch, "generator " + e.dump() + " does not fit group " + g.str());
      }
      el.free.assign(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(rank));
      el.torsion.assign(coords.begin() + static_cast<std::ptrdiff_t>(rank), coords.end());
    } else if (e.is_object()) {
      el.free = e.value("free", std::vector<std::int64_t>{});
      el.torsion = e.value("torsion", std::vector<std::int64_t>{});
    } else {
      throw Error(ErrorCode::ParseError, "generator must be an array or an object");
    }
    out.push_back(normalize(g, std::move(el)));
  }
  return out;
}

GroupWalkInstance instance_from_json(const json& j) {
  GroupWalkInstance inst;
  inst.group = group_from_json(j.at("group"));
  inst.generators = generators_from_json(inst.group, j.at("generators"));
  if (j.contains("a")) {
    for (const auto& x : j.at("a")) inst.a.push_back(io::parse_rational(x));
  }
  return inst;
}

namespace {

json vector_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json matrix_json(const Matrix& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(vector_json(row));
  return a;
}

}  // namespace

json to_json(const GroupElement& e) { return {{"free", e.free}, {"torsion", e.torsion}}; }

json to_json(const Classification& c) {
  return {{"classification", to_string(c.kind)},
          {"span_dimension", c.span_dimension},
          {"drift", vector_json(c.drift)},
          {"support", c.support}};
}

json to_json(const SupportClass& c) {
  json verts = json::array();
  for (const auto& v : c.vertices) verts.push_back({{"support", v.support}, {"point", vector_json(v.point)}});
  return {{"support", c.support},
          {"span", matrix_json(c.span)},
          {"dimension", c.dimension},
          {"witness", vector_json(c.witness)},
          {"vertices", verts}};
}

namespace {
json classes_json(const std::vector<SupportClass>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(to_json(c));
  return a;
}
}  // namespace

json to_json(const ConvexityReport& r) {
  json j{{"convex", r.convex}, {"classes", classes_json(r.classes)}};
  if (r.witness_space) j["witness_space"] = matrix_json(*r.witness_space);
  if (r.violation) {
    j["violation"] = {{"first", vector_json(r.violation->first)},
                      {"second", vector_json(r.violation->second)},
                      {"first_classes", r.violation->first_classes},
                      {"second_class", r.violation->second_class}};
  }
  return j;
}

json to_json(const TopologyReport& r) {
  return {{"closed", r.closed},
          {"pathconnected", to_string(r.pathconnected)},
          {"components_lower_bound", r.components_lower_bound},
          {"reason", r.reason},
          {"classes", classes_json(r.classes)}};
}

json to_json(const ComplementReport& r) {
  json j{{"pathconnected", to_string(r.pathconnected)},
         {"pathconnected_reason", r.pathconnected_reason},
         {"convex", to_string(r.convex)},
         {"convex_reason", r.convex_reason}};
  if (r.convexity_witness) j["convexity_witness"] = {r.convexity_witness->first, r.convexity_witness->second};
  return j;
}

json to_json(const PositiveRegion& r) {
  return {{"free_indices", r.free_indices},
          {"empty", r.empty},
          {"whole_simplex", r.whole_simplex},
          {"closed", r.closed},
          {"convex", r.convex},
          {"description", r.description}};
}

std::string simplex_mesh_csv(const FGAbelianGroup& g, const std::vector<GroupElement>& gens, std::size_t i,
                             std::size_t j, std::size_t l, int resolution) {
  if (i >= gens.size() || j >= gens.size() || l >= gens.size() || resolution < 1) {
    throw Error(ErrorCode::InvalidArgument, "bad mesh parameters");
  }
  std::ostringstream os;
  os << "a_" << i << ",a_" << j << ",a_" << l << ",classification\n";
  for (int p = 0; p <= resolution; ++p) {
    for (int q = 0; p + q <= resolution; ++q) {
      const int s = resolution - p - q;
      GroupWalkInstance inst{g, gens, std::vector<Rational>(gens.size())};
      inst.a[i] += Rational(p, resolution);
      inst.a[j] += Rational(q, resolution);
      inst.a[l] += Rational(s, resolution);
      os << inst.a[i].str() << ',' << inst.a[j].str() << ',' << inst.a[l].str() << ','
         << to_string(classify(inst).kind) << '\n';
    }
  }
  return os.str();
}

}  // namespace reclab::abelian
