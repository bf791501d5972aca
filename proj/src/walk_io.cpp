#include "reclab/walk_io.hpp"

#include "reclab/error.hpp"

namespace reclab::io {

using namespace reclab::models;

Rational parse_rational(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorCode::ParseError, "expected a rational string like \"3/8\", got " + j.dump());
}

json rational_json(const Rational& r) { return r.str(); }

namespace {

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
  return obj.at(key);
}

Law parse_law(const json& j, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, where + ": region table must be an object");
  Law law;
  for (auto it = j.begin(); it != j.end(); ++it) {
    Direction d;
    try {
      d = direction_from_string(it.key());
    } catch (const Error&) {
      throw Error(ErrorCode::UnknownName, where + ": unknown direction '" + it.key() + "'");
    }
    law[d] = parse_rational(it.value());
  }
  return law;
}

int get_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

AnySpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "spec must be a JSON object");
  int version = get_int(require(doc, "schema_version"), "schema_version");
  if (version != kSchemaVersion) {
    throw Error(ErrorCode::ParseError, "unsupported schema_version " + std::to_string(version));
  }
  std::string kind = require(doc, "kind").get<std::string>();
  if (kind == "quadrant") {
    const json& regions = require(doc, "regions");
    QuadrantWalkSpec s;
    for (auto it = regions.begin(); it != regions.end(); ++it) {
      bool found = false;
      for (QuadrantRegion r : kQuadrantRegions) {
        if (to_string(r) == it.key()) {
          s.law(r) = parse_law(it.value(), it.key());
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::UnknownName, "unknown quadrant region '" + it.key() + "'");
    }
    return s;
  }
  if (kind == "slab") {
    SlabWalkSpec s;
    s.k = get_int(require(doc, "k"), "k");
    const json& regions = require(doc, "regions");
    for (auto it = regions.begin(); it != regions.end(); ++it) {
      bool found = false;
      for (SlabRegion r : kSlabRegions) {
        if (to_string(r) == it.key()) {
          s.law(r) = parse_law(it.value(), it.key());
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::UnknownName, "unknown slab region '" + it.key() + "'");
    }
    return s;
  }
  if (kind == "tree") {
    ExplicitTreeSpec s;
    for (const auto& p : require(doc, "parent")) s.parent.push_back(get_int(p, "parent"));
    for (const auto& u : require(doc, "up")) s.up.push_back(parse_rational(u));
    for (const auto& row : require(doc, "down")) {
      std::vector<Rational> probs;
      for (const auto& p : row) probs.push_back(parse_rational(p));
      s.down.push_back(std::move(probs));
    }
    return s;
  }
  if (kind == "class_tree") {
    ClassTreeSpec s;
    s.root_class = doc.contains("root_class") ? get_int(doc.at("root_class"), "root_class") : 0;
    for (const auto& c : require(doc, "classes")) {
      ClassTreeSpec::VertexClass vc;
      vc.name = c.value("name", std::string());
      vc.up = c.contains("up") ? parse_rational(c.at("up")) : Rational(0);
      for (const auto& ch : require(c, "children")) {
        vc.child_prob.push_back(parse_rational(require(ch, "p")));
        vc.child_class.push_back(get_int(require(ch, "class"), "class"));
      }
      s.classes.push_back(std::move(vc));
    }
    return s;
  }
  throw Error(ErrorCode::UnknownName, "unknown spec kind '" + kind + "'");
}

AnyValidated parse_and_validate(const json& doc) {
  return std::visit([](auto&& s) -> AnyValidated { return validate(std::move(s)); }, parse_spec(doc));
}

json to_json(const Law& law) {
  json j = json::object();
  for (Direction d : kDirections) {
    if (!law[d].is_zero()) j[std::string(to_string(d))] = law[d].str();
  }
  return j;
}

json to_json(const QuadrantWalkSpec& spec) {
  json regions = json::object();
  for (QuadrantRegion r : kQuadrantRegions) regions[std::string(to_string(r))] = to_json(spec.law(r));
  return {{"schema_version", kSchemaVersion}, {"kind", "quadrant"}, {"regions", regions}};
}

json to_json(const SlabWalkSpec& spec) {
  json regions = json::object();
  for (SlabRegion r : kSlabRegions) regions[std::string(to_string(r))] = to_json(spec.law(r));
  return {{"schema_version", kSchemaVersion}, {"kind", "slab"}, {"k", spec.k}, {"regions", regions}};
}

json to_json(const ExplicitTreeSpec& spec) {
  json up = json::array();
  json down = json::array();
  for (const auto& u : spec.up) up.push_back(u.str());
  for (const auto& row : spec.down) {
    json r = json::array();
    for (const auto& p : row) r.push_back(p.str());
    down.push_back(r);
  }
  return {{"schema_version", kSchemaVersion}, {"kind", "tree"}, {"parent", spec.parent}, {"up", up}, {"down", down}};
}

json to_json(const ClassTreeSpec& spec) {
  json classes = json::array();
  for (const auto& c : spec.classes) {
    json children = json::array();
    for (std::size_t i = 0; i < c.child_prob.size(); ++i) {
      children.push_back({{"p", c.child_prob[i].str()}, {"class", c.child_class[i]}});
    }
    classes.push_back({{"name", c.name}, {"up", c.up.str()}, {"children", children}});
  }
  return {{"schema_version", kSchemaVersion}, {"kind", "class_tree"}, {"root_class", spec.root_class},
          {"classes", classes}};
}

json to_json(const AnySpec& spec) {
  return std::visit([](const auto& s) { return to_json(s); }, spec);
}

json to_json(const AnyValidated& spec) {
  return std::visit([](const auto& s) { return to_json(s.spec()); }, spec);
}

namespace {

const char* relation_str(Relation r) {
  switch (r) {
    case Relation::Geq: return ">=";
    case Relation::Leq: return "<=";
    case Relation::Eq: return "==";
  }
  return "?";
}

json comparison_json(const Comparison& c) {
  return {{"where", c.where},         {"what", c.what},   {"lhs", c.lhs.str()},
          {"relation", relation_str(c.rel)}, {"rhs", c.rhs.str()}, {"forced", c.forced},
          {"single_state", c.single_state}, {"satisfied", c.satisfied}, {"strict", c.strict}};
}

json checks_json(const std::vector<NamedCheck>& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back({{"check", c.statement}, {"satisfied", c.satisfied}});
  return out;
}

}  // namespace

json to_json(const OrderResult& r) {
  json witnesses = json::array();
  for (const auto& c : r.witnesses) witnesses.push_back(comparison_json(c));
  json all = json::array();
  for (const auto& c : r.comparisons) all.push_back(comparison_json(c));
  return {{"holds", r.holds},
          {"strict", r.strict},
          {"strict_everywhere", r.strict_everywhere},
          {"witnesses", witnesses},
          {"comparisons", all}};
}

json to_json(const HomogeneityReport& r) {
  json ratios = json::array();
  for (const auto& ratio : r.ratios) {
    json e = {{"name", ratio.name}, {"num", ratio.num.str()}, {"den", ratio.den.str()}};
    switch (ratio.kind) {
      case ExtendedRatio::Kind::Finite: e["value"] = ratio.value.str(); break;
      case ExtendedRatio::Kind::Infinite: e["value"] = "inf"; break;
      case ExtendedRatio::Kind::Vacuous: e["value"] = "undefined (0/0, treated as satisfied)"; break;
    }
    ratios.push_back(e);
  }
  return {{"inward", r.inward},
          {"weakly_inward", r.weakly_inward},
          {"ratio_report", ratios},
          {"inward_checks", checks_json(r.inward_checks)},
          {"weak_checks", checks_json(r.weak_checks)}};
}

json to_json(const SlabHomogeneityReport& r) {
  return {{"homogeneous", r.homogeneous}, {"checks", checks_json(r.checks)}};
}

}  // namespace reclab::io
