#include "reclab/certificates.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "reclab/error.hpp"
#include "reclab/walk_io.hpp"

namespace reclab::cert {

using namespace reclab::models;
using json = nlohmann::json;

Rational StationaryCandidate::weight(std::int64_t i, std::int64_t j) const {
  if (i < 0 || j < 0) return Rational(0);
  if (i == 0 && j == 0) return w_o;
  if (j == 0) return m_x * pow(rho, static_cast<unsigned>(i));
  if (i == 0) return m_y * pow(rho, static_cast<unsigned>(j));
  return pow(rho, static_cast<unsigned>(i + j));
}

Rational StationaryCandidate::normalizer() const {
  if (rho.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  if (rho >= Rational(1)) throw Error(ErrorCode::NotSummable, "rho = " + rho.str() + " >= 1");
  const Rational g = rho / (Rational(1) - rho);  // sum_{i>=1} rho^i
  return w_o + (m_x + m_y) * g + g * g;
}

Rational StationaryCandidate::probability(std::int64_t i, std::int64_t j) const { return weight(i, j) / normalizer(); }

StationaryReport verify_stationary(const Validated<QuadrantWalkSpec>& spec, const StationaryCandidate& candidate,
                                   int window) {
  if (window < 3) throw Error(ErrorCode::InvalidArgument, "window must be at least 3");
  for (const Rational* w : {&candidate.m_x, &candidate.m_y, &candidate.w_o}) {
    if (w->sign() <= 0) throw Error(ErrorCode::InvalidArgument, "candidate weights must be positive");
  }
  StationaryReport report;
  report.window = window;
  report.normalizer = candidate.normalizer();
  const QuadrantWalkSpec& s = spec.spec();
  for (std::int64_t i = 0; i <= window; ++i) {
    for (std::int64_t j = 0; j <= window; ++j) {
      Rational inflow;
      for (Direction d : kDirections) {
        const std::int64_t sx = i - dx(d);
        const std::int64_t sy = j - dy(d);
        if (sx < 0 || sy < 0) continue;
        const Rational& p = s.law(quadrant_region(sx, sy))[d];
        if (!p.is_zero()) inflow += candidate.weight(sx, sy) * p;
      }
      ++report.states_checked;
      Rational w = candidate.weight(i, j);
      if (inflow != w) report.failures.push_back({{i, j}, inflow, w});
    }
  }
  report.verified = report.failures.empty();
  return report;
}

namespace {

using LawAt = std::function<const Law&(std::int64_t, std::int64_t)>;

TwoStepRow two_step(const LawAt& law_at, Point z, std::string region) {
  TwoStepRow row;
  row.state = z;
  row.region = std::move(region);
  const Law& first = law_at(z.x, z.y);
  for (Direction d1 : kDirections) {
    if (first[d1].is_zero()) continue;
    const std::int64_t x1 = z.x + dx(d1);
    const std::int64_t y1 = z.y + dy(d1);
    const Law& second = law_at(x1, y1);
    for (Direction d2 : kDirections) {
      if (second[d2].is_zero()) continue;
      const Rational p = first[d1] * second[d2];
      const int a = (dx(d1) + dx(d2)) - (dy(d1) + dy(d2));
      if (a == -2) row.p_minus2 += p;
      if (a == 0) row.p_zero += p;
      if (a == 2) row.p_plus2 += p;
    }
  }
  row.drift = Rational(2) * (row.p_plus2 - row.p_minus2);
  return row;
}

std::vector<std::string> distinct(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& s : in) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

IncrementDominator dominate(std::vector<TwoStepRow> rows, int window) {
  IncrementDominator dom;
  dom.window = window;
  dom.parity = 0;
  dom.p_minus2 = rows.front().p_minus2;
  dom.p_plus2 = rows.front().p_plus2;
  for (const auto& r : rows) {
    dom.p_minus2 = max(dom.p_minus2, r.p_minus2);
    dom.p_plus2 = min(dom.p_plus2, r.p_plus2);
  }
  dom.p_zero = Rational(1) - dom.p_minus2 - dom.p_plus2;
  std::vector<std::string> rm, rp;
  for (const auto& r : rows) {
    if (r.p_minus2 == dom.p_minus2) {
      dom.tight_minus2.push_back(r.state);
      rm.push_back(r.region);
    }
    if (r.p_plus2 == dom.p_plus2) {
      dom.tight_plus2.push_back(r.state);
      rp.push_back(r.region);
    }
  }
  dom.tight_minus2_regions = distinct(rm);
  dom.tight_plus2_regions = distinct(rp);
  dom.transcript = std::move(rows);
  return dom;
}

}  // namespace

IncrementDominator dominated_increments(const Validated<QuadrantWalkSpec>& spec, int window) {
  if (window < 3) throw Error(ErrorCode::InvalidArgument, "window must be at least 3");
  const QuadrantWalkSpec& s = spec.spec();
  LawAt law_at = [&s](std::int64_t x, std::int64_t y) -> const Law& { return s.law(quadrant_region(x, y)); };
  std::vector<TwoStepRow> rows;
  for (std::int64_t i = 0; i <= window; ++i) {
    for (std::int64_t j = 0; j <= window; ++j) {
      if ((i + j) % 2 != 0) continue;
      rows.push_back(two_step(law_at, {i, j}, std::string(to_string(quadrant_region(i, j)))));
    }
  }
  return dominate(std::move(rows), window);
}

IncrementDominator dominated_increments(const Validated<SlabWalkSpec>& spec, int window) {
  if (window < 3) throw Error(ErrorCode::InvalidArgument, "window must be at least 3");
  const SlabWalkSpec& s = spec.spec();
  LawAt law_at = [&s](std::int64_t x, std::int64_t y) -> const Law& { return s.law(slab_region(x, y, s.k)); };
  std::vector<TwoStepRow> rows;
  for (std::int64_t i = 0; i <= window; ++i) {
    for (std::int64_t j = 0; j <= s.k; ++j) {
      if ((i + j) % 2 != 0) continue;
      rows.push_back(two_step(law_at, {i, j}, std::string(to_string(slab_region(i, j, s.k)))));
    }
  }
  return dominate(std::move(rows), window);
}

TransienceCertificate hoeffding_certificate(const IncrementDominator& dom) {
  if (dom.p_minus2 + dom.p_zero + dom.p_plus2 != Rational(1)) {
    throw Error(ErrorCode::InvalidArgument, "dominator probabilities do not sum to 1");
  }
  TransienceCertificate c;
  c.dominator = dom;
  c.mu = dom.mean();
  if (c.mu.sign() <= 0) throw Error(ErrorCode::NonPositiveDrift, "mean increment " + c.mu.str() + " is not positive");
  // Hoeffding with range 4 per step: exp(-2 (k mu)^2 / (16 k)) = exp(-k mu^2 / 8).
  c.exponent = c.mu * c.mu / Rational(8);
  // sum_k exp(-ck) = 1 / (e^c - 1) <= 1 / c.
  c.series_bound = Rational(1) / c.exponent;
  c.exponent_display = c.exponent.to_double();
  return c;
}

Rational SlabDriftCertificate::hitting_bound(std::int64_t x0, std::int64_t y0) const {
  const Rational num = Rational(k) + Rational(x0) - Rational(y0) + Rational(2);
  return num / (-sup_drift / Rational(2)) + Rational(2);
}

SlabDriftCertificate slab_two_step_sup(const Validated<SlabWalkSpec>& spec, bool exclude_stopping_set, int window) {
  if (window < 3) throw Error(ErrorCode::InvalidArgument, "window must be at least 3");
  const SlabWalkSpec& s = spec.spec();
  const int k = s.k;
  SlabDriftCertificate c;
  c.k = k;
  c.parity = k % 2;
  c.stopping_set_excluded = exclude_stopping_set;
  if (k % 2 == 0) {
    c.stopping_set = {{0, 0}, {0, k}};
  } else {
    c.stopping_set = {{0, k}, {1, 0}, {0, 1}};
  }
  LawAt law_at = [&s](std::int64_t x, std::int64_t y) -> const Law& { return s.law(slab_region(x, y, s.k)); };
  bool first = true;
  for (std::int64_t i = 0; i <= window; ++i) {
    for (std::int64_t j = 0; j <= k; ++j) {
      if ((i + j) % 2 != c.parity) continue;
      const Point z{i, j};
      if (exclude_stopping_set &&
          std::find(c.stopping_set.begin(), c.stopping_set.end(), z) != c.stopping_set.end()) {
        continue;
      }
      TwoStepRow row = two_step(law_at, z, std::string(to_string(slab_region(i, j, k))));
      if (first || row.drift > c.sup_drift) c.sup_drift = row.drift;
      first = false;
      c.transcript.push_back(std::move(row));
    }
  }
  std::vector<std::string> regions;
  for (const auto& row : c.transcript) {
    if (row.drift == c.sup_drift) {
      c.tight_states.push_back(row.state);
      regions.push_back(row.region);
    }
  }
  c.tight_regions = distinct(regions);
  return c;
}

SlabDriftCertificate slab_drift_certificate(const Validated<SlabWalkSpec>& spec, int window) {
  SlabDriftCertificate c = slab_two_step_sup(spec, true, window);
  if (c.sup_drift.sign() >= 0) {
    throw Error(ErrorCode::NoCertificate, "two-step drift supremum " + c.sup_drift.str() + " is not negative");
  }
  return c;
}

namespace {

json point_json(const Point& p) { return json::array({p.x, p.y}); }

json points_json(const std::vector<Point>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(point_json(p));
  return a;
}

json row_json(const TwoStepRow& r) {
  return {{"state", point_json(r.state)},
          {"region", r.region},
          {"p_minus2", r.p_minus2.str()},
          {"p_zero", r.p_zero.str()},
          {"p_plus2", r.p_plus2.str()},
          {"drift", r.drift.str()}};
}

json rows_json(const std::vector<TwoStepRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(row_json(r));
  return a;
}

}  // namespace

json to_json(const StationaryReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"state", point_json(f.state)}, {"inflow", f.inflow.str()}, {"weight", f.weight.str()}});
  }
  return {{"verified", r.verified},
          {"window", r.window},
          {"states_checked", r.states_checked},
          {"normalizer", r.normalizer.str()},
          {"failures", failures}};
}

json to_json(const IncrementDominator& d) {
  return {{"p_minus2", d.p_minus2.str()},
          {"p_zero", d.p_zero.str()},
          {"p_plus2", d.p_plus2.str()},
          {"mean", d.mean().str()},
          {"parity", d.parity},
          {"window", d.window},
          {"tight_minus2", points_json(d.tight_minus2)},
          {"tight_plus2", points_json(d.tight_plus2)},
          {"tight_minus2_regions", d.tight_minus2_regions},
          {"tight_plus2_regions", d.tight_plus2_regions},
          {"transcript", rows_json(d.transcript)}};
}

json to_json(const TransienceCertificate& c) {
  return {{"dominator", to_json(c.dominator)},
          {"mu", c.mu.str()},
          {"exponent", c.exponent.str()},
          {"exponent_display", c.exponent_display},
          {"series_bound", c.series_bound.str()},
          {"bound", "P(X_2k = start) <= exp(-exponent * k)"}};
}

json to_json(const SlabDriftCertificate& c) {
  return {{"k", c.k},
          {"parity", c.parity},
          {"stopping_set_excluded", c.stopping_set_excluded},
          {"stopping_set", points_json(c.stopping_set)},
          {"sup_drift", c.sup_drift.str()},
          {"tight_states", points_json(c.tight_states)},
          {"tight_regions", c.tight_regions},
          {"hitting_bound_formula", "(k + x0 - y0 + 2) / (-sup_drift / 2) + 2"},
          {"transcript", rows_json(c.transcript)}};
}

}  // namespace reclab::cert
