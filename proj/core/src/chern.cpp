#include "toricdvr/chern.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace toricdvr {

namespace {

void check_index(const ToricBundleData& e, std::size_t i) {
  if (i > e.rank())
    throw Error(ErrorCode::IndexOutOfRange,
                "Chern index " + std::to_string(i) + " exceeds the rank " + std::to_string(e.rank()));
}

Poly chern_piece(const std::vector<Character>& characters, std::size_t i, std::size_t n) {
  std::vector<Poly> forms;
  for (const auto& ch : characters) forms.push_back(Poly::linear(ch.u));
  return elementary_symmetric(forms, i, n);
}

}  // namespace

PPClass chern_class(const ToricBundleData& e, std::size_t i) {
  check_index(e, i);
  if (i == 0) return PPClass::unit(e.complex());
  const PolyComplex& complex = e.complex();
  std::vector<PiecewisePoly> parts;
  for (const auto& v : complex.vertices()) {
    StarFan star = star_fan(complex, v);
    PiecewisePoly part{star.fan, {}, i};
    for (std::size_t pos = 0; pos < star.fan.maximal().size(); ++pos) {
      const Cell& cell = complex.cells()[star.cell_of_maximal(pos)];
      part.pieces.push_back(chern_piece(e.chart(e.chart_for_cell(cell)).characters, i, e.n()));
    }
    parts.push_back(std::move(part));
  }
  return pp_membership(complex, std::move(parts));
}

GradedClass total_chern_class(const ToricBundleData& e) {
  std::vector<PPClass> c;
  for (std::size_t i = 0; i <= e.rank(); ++i) c.push_back(chern_class(e, i));
  return GradedClass(std::move(c));
}

PiecewisePoly chern_generic(const ToricBundleData& e, std::size_t i) {
  check_index(e, i);
  GenericRestriction g = restrict_to_generic(e);
  PiecewisePoly f{g.fan, {}, i};
  for (const auto& chart : g.charts) {
    if (i == 0) {
      f.pieces.push_back(Poly::constant(e.n(), Rational(1)));
      continue;
    }
    std::vector<Poly> forms;
    for (const auto& u : chart.u) forms.push_back(Poly::linear(u));
    f.pieces.push_back(elementary_symmetric(forms, i, e.n()));
  }
  auto report = continuity_check(f);
  if (!report.ok) throw Error(ErrorCode::ConditionIFailed, "generic fiber: " + report.failures.front());
  return f;
}

ChernResult compute_chern(const ToricBundleData& e) {
  ChernResult out;
  for (std::size_t i = 0; i <= e.rank(); ++i) {
    out.classes.push_back(chern_class(e, i));
    out.generic.push_back(chern_generic(e, i));
  }
  return out;
}

namespace {

// Filtration dimensions by counting: |{e in F_p^r : w(e) >= a}| = p^dim.
std::vector<std::pair<Rational, std::size_t>> counted_multiplicities(const ResidueValuation& w) {
  const long long p = w.p();
  const std::size_t r = w.rank();
  std::map<Rational, std::size_t> attained;  // value -> number of vectors with exactly that value
  ResidueVector e{std::vector<long long>(r, 0)};
  for (;;) {
    std::size_t k = 0;
    while (k < r && e.entries[k] == p - 1) e.entries[k++] = 0;
    if (k == r) break;
    ++e.entries[k];
    ++attained[*w.eval(e)];
  }
  auto log_p = [p](std::size_t count) {
    std::size_t d = 0;
    while (count > 1) {
      count /= static_cast<std::size_t>(p);
      ++d;
    }
    return d;
  };
  std::vector<std::pair<Rational, std::size_t>> out;
  std::size_t at_least = 1;  // the zero vector
  std::vector<std::pair<Rational, std::size_t>> dims;
  for (auto it = attained.rbegin(); it != attained.rend(); ++it) {
    at_least += it->second;
    dims.emplace_back(it->first, log_p(at_least));
  }
  std::size_t above = 0;
  for (const auto& [value, dim] : dims) {
    out.emplace_back(value, dim - above);
    above = dim;
  }
  return out;
}

}  // namespace

Rational epsilon_oracle(const VertexRestriction& restriction, std::size_t i, const RatVec& y) {
  ResidueValuation w = restriction.eval(y);
  const std::size_t r = w.rank();
  if (i < 1 || i > r)
    throw Error(ErrorCode::IndexOutOfRange, "epsilon index " + std::to_string(i) + " outside 1.." + std::to_string(r));
  unsigned long long size = 1;
  for (std::size_t k = 0; k < r && size <= 65536; ++k) size *= static_cast<unsigned long long>(w.p());
  auto mult = size <= 65536 ? counted_multiplicities(w) : value_multiplicities(w);
  RatVec multiset;
  for (const auto& [value, count] : mult)
    for (std::size_t c = 0; c < count; ++c) multiset.push_back(value);
  return elementary_symmetric(multiset, i);
}

Rational epsilon_oracle(const ToricBundleData& e, const IntVec& vertex, std::size_t i, const RatVec& y) {
  return epsilon_oracle(restrict_to_vertex(e, vertex), i, y);
}

std::vector<RatVec> sample_cone(const Cone& c, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t dim = c.ambient_dim();
  const long long half = static_cast<long long>(std::max<std::size_t>(count, 4));
  std::set<RatVec> seen;
  std::vector<RatVec> out;
  RatVec apex(dim);
  seen.insert(apex);
  out.push_back(apex);
  for (std::size_t attempt = 0; out.size() < count && attempt < 400 * count; ++attempt) {
    RatVec x(dim);
    for (auto& xi : x) xi = Rational(static_cast<long long>(rng() % (2 * half + 1)) - half);
    if (c.contains(x) && seen.insert(x).second) out.push_back(x);
  }
  return out;
}

}  // namespace toricdvr
