#include <algorithm>
#include <map>
#include <set>

#include "toricdvr/polyhedral.hpp"

namespace toricdvr {

Fan Fan::from_cones(std::size_t ambient_dim, const std::vector<Cone>& input) {
  for (const auto& c : input)
    if (c.ambient_dim() != ambient_dim) throw Error(ErrorCode::ShapeMismatch, "cone in wrong ambient space");

  std::vector<Cone> given;
  for (const auto& c : input)
    if (std::find(given.begin(), given.end(), c) == given.end()) given.push_back(c);

  for (std::size_t a = 0; a < given.size(); ++a)
    for (std::size_t b = a + 1; b < given.size(); ++b) {
      Cone meet = given[a].intersect(given[b]);
      if (!given[a].has_face(meet) || !given[b].has_face(meet))
        throw Error(ErrorCode::NotAFan, given[a].to_string() + " and " + given[b].to_string() +
                                            " meet in " + meet.to_string() + ", which is not a common face");
    }

  Fan fan;
  fan.ambient_dim_ = ambient_dim;
  std::set<Cone> all;
  for (const auto& c : given)
    for (auto& f : c.faces()) all.insert(std::move(f));
  if (all.empty()) all.insert(Cone::zero(ambient_dim));
  fan.cones_.assign(all.begin(), all.end());

  std::vector<Cone> maximal;
  for (std::size_t a = 0; a < given.size(); ++a) {
    bool is_max = true;
    for (std::size_t b = 0; b < given.size() && is_max; ++b)
      if (a != b && given[b].dim() > given[a].dim() && given[b].has_face(given[a])) is_max = false;
    if (is_max) maximal.push_back(given[a]);
  }
  if (maximal.empty()) maximal.push_back(Cone::zero(ambient_dim));
  for (const auto& m : maximal) fan.maximal_.push_back(*fan.index_of(m));

  const std::size_t k = maximal.size();
  fan.common_.assign(k, std::vector<std::size_t>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      auto idx = fan.index_of(maximal[a].intersect(maximal[b]));
      if (!idx) throw Error(ErrorCode::InternalError, "intersection of maximal cones missing from fan");
      fan.common_[a][b] = fan.common_[b][a] = *idx;
    }
  return fan;
}

Fan Fan::from_generators(std::size_t ambient_dim, const std::vector<std::vector<IntVec>>& cones) {
  std::vector<Cone> cs;
  cs.reserve(cones.size());
  for (const auto& g : cones) cs.push_back(Cone::from_generators(ambient_dim, g));
  return from_cones(ambient_dim, cs);
}

std::optional<std::size_t> Fan::index_of(const Cone& c) const {
  auto it = std::lower_bound(cones_.begin(), cones_.end(), c);
  if (it == cones_.end() || !(*it == c)) return std::nullopt;
  return static_cast<std::size_t>(it - cones_.begin());
}

std::optional<std::size_t> Fan::maximal_position(const Cone& c) const {
  auto idx = index_of(c);
  if (!idx) return std::nullopt;
  auto it = std::find(maximal_.begin(), maximal_.end(), *idx);
  if (it == maximal_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - maximal_.begin());
}

std::size_t Fan::common_face(std::size_t pos_a, std::size_t pos_b) const { return common_.at(pos_a).at(pos_b); }

std::vector<std::size_t> Fan::maximal_containing(const RatVec& x) const {
  std::vector<std::size_t> out;
  for (std::size_t pos = 0; pos < maximal_.size(); ++pos)
    if (cones_[maximal_[pos]].contains(x)) out.push_back(pos);
  return out;
}

Fan build_fan(std::size_t n, const std::vector<std::vector<IntVec>>& cones) {
  for (const auto& gens : cones)
    for (const auto& g : gens) {
      if (g.size() != n + 1)
        throw Error(ErrorCode::ShapeMismatch, "generator " + to_string(g) + " is not of length n+1");
      if (g.back() < 0)
        throw Error(ErrorCode::InvalidArgument, "generator " + to_string(g) + " has negative height");
    }
  return Fan::from_generators(n + 1, cones);
}

namespace {

// Deterministic lattice points of a box, used to sanity-check the support.
void box_points(std::size_t dim, long long lo_last, long long radius, IntVec& cur,
                std::vector<IntVec>& out) {
  if (cur.size() == dim) {
    out.push_back(cur);
    return;
  }
  long long lo = (cur.size() + 1 == dim) ? lo_last : -radius;
  for (long long v = lo; v <= radius; ++v) {
    cur.push_back(v);
    box_points(dim, lo_last, radius, cur, out);
    cur.pop_back();
  }
}

}  // namespace

FanReport check_regular_complete(const Fan& fan, FanSupport support) {
  FanReport report;
  const std::size_t dim = fan.ambient_dim();

  report.regular = true;
  for (const auto& c : fan.cones()) {
    if (c.rays().empty()) continue;
    IntMatrix m;
    for (const auto& r : c.rays()) {
      std::vector<Integer> row(r.begin(), r.end());
      m.push_back(std::move(row));
    }
    auto inv = smith_invariants(m);
    bool unimodular = std::all_of(inv.begin(), inv.end(), [](const Integer& d) { return d == 1; });
    if (!unimodular) {
      report.regular = false;
      std::string s;
      for (const auto& d : inv) s += (s.empty() ? "" : ",") + d.str();
      report.failures.push_back("not regular: " + c.to_string() + " has invariant factors (" + s + ")");
    }
  }

  bool complete = true;
  for (std::size_t pos = 0; pos < fan.maximal().size(); ++pos) {
    const Cone& m = fan.maximal_cone(pos);
    if (m.dim() != dim) {
      complete = false;
      report.failures.push_back("not complete: maximal cone " + m.to_string() + " is not full-dimensional");
    }
  }
  if (complete) {
    std::map<Cone, std::size_t> facet_count;
    for (std::size_t pos = 0; pos < fan.maximal().size(); ++pos)
      for (auto& f : fan.maximal_cone(pos).facets()) ++facet_count[f];
    for (const auto& [facet, count] : facet_count) {
      // facets inside the height-zero hyperplane bound the half-space
      bool on_boundary = false;
      if (support == FanSupport::HalfSpace)
        on_boundary = facet.rays().empty()
                          ? dim == 1
                          : std::all_of(facet.rays().begin(), facet.rays().end(),
                                        [](const IntVec& r) { return r.back() == 0; });
      if (on_boundary) continue;
      if (count != 2) {
        complete = false;
        report.failures.push_back("not complete: facet " + facet.to_string() + " lies on " +
                                  std::to_string(count) + " maximal cone(s)");
      }
    }
  }
  if (complete && dim > 0) {
    std::vector<IntVec> pts;
    IntVec cur;
    box_points(dim, support == FanSupport::HalfSpace ? 0 : -2, 2, cur, pts);
    for (const auto& x : pts)
      if (fan.maximal_containing(to_rational(x)).empty()) {
        complete = false;
        report.failures.push_back("not complete: " + to_string(x) + " is outside the support");
        break;
      }
  }
  report.complete = complete;
  return report;
}

}  // namespace toricdvr
