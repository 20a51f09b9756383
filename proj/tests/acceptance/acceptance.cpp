#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"

using namespace toricdvr;

namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

Rational q(long long a, long long b = 1) { return Rational(Integer(a), Integer(b)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

const std::vector<std::string> kOracleFixtures = {"p1_rank1",           "p1_rank2_split",      "p1_rank2_nonsplit",
                                                  "p1_two_vertex_rank1", "p1_two_vertex_rank2", "p2_tangent",
                                                  "p2_blowup_tangent",  "p2_split_rank2"};

const std::vector<std::string> kSplitFixtures = {"p1_rank1", "p1_rank2_split", "p1_two_vertex_rank2", "p2_split_rank2",
                                                 "p3_trivial"};

std::uint64_t seed_for(const std::string& name, std::size_t salt) {
  return std::hash<std::string>{}(name) % 1000003 + 7919 * salt;
}

const Cell& star_cell(const ToricBundleData& e, const StarFan& star, std::size_t pos) {
  return e.complex().cells()[star.cell_of_maximal(pos)];
}

const BundleChart& chart_of(const ToricBundleData& e, const Cell& cell) { return e.chart(e.chart_for_cell(cell)); }

// 1. Polynomial pieces agree with the dimension-jump oracle.
std::string oracle_equivalence() {
  std::size_t checks = 0;
  for (const auto& name : kOracleFixtures) {
    ToricBundleData e = testing::load_bundle(name);
    for (std::size_t i = 1; i <= e.rank(); ++i) {
      PPClass c = chern_class(e, i);
      for (std::size_t v = 0; v < e.complex().vertices().size(); ++v) {
        const IntVec& vertex = e.complex().vertices()[v];
        VertexRestriction r = restrict_to_vertex(e, vertex);
        const StarFan& star = c.stars()[v];
        for (std::size_t pos = 0; pos < star.fan.maximal().size(); ++pos) {
          auto ys = sample_cone(star.fan.maximal_cone(pos), 100, seed_for(name, 100 * v + pos));
          expect(ys.size() == 100, name + ": fewer than 100 sample points");
          for (const auto& y : ys) {
            Rational poly = c.piece(v, pos).eval(y);
            Rational oracle = epsilon_oracle(r, i, y);
            expect(poly == oracle, name + ", vertex " + to_string(vertex) + ", i=" + std::to_string(i) + ", y=" +
                                       to_string(y) + ": " + poly.to_string() + " vs " + oracle.to_string());
            ++checks;
          }
        }
      }
    }
  }
  return std::to_string(checks) + " exact comparisons on " + std::to_string(kOracleFixtures.size()) + " fixtures";
}

// 2. Certified membership, and mutated tuples are rejected with the right code.
std::string pp_membership_and_mutations() {
  std::size_t mutations = 0;
  for (const auto& name : testing::valid_fixtures()) {
    ToricBundleData e = testing::load_bundle(name);
    const std::size_t n = e.n();
    for (std::size_t i = 0; i <= e.rank(); ++i) {
      PPClass c = chern_class(e, i);
      expect(pp_membership(c.complex(), c.parts()) == c, name + ": class does not re-certify");
      if (i == 0) continue;
      for (std::size_t v = 0; v < c.parts().size(); ++v) {
        const StarFan& star = c.stars()[v];
        for (std::size_t pos = 0; pos < star.fan.maximal().size(); ++pos) {
          const std::string where = name + ", i=" + std::to_string(i) + ", vertex " + std::to_string(v);
          auto constant = c.parts();
          constant[v].pieces[pos] += Poly::constant(n, 1);
          expect(code_of([&] { pp_membership(c.complex(), constant); }) == ErrorCode::ConditionIFailed,
                 where + ": constant perturbation not rejected by condition (i)");
          ++mutations;

          auto monomial = c.parts();
          IntVec exps(n, 0);
          const IntVec& ray = star.fan.maximal_cone(pos).rays().front();
          std::size_t j = 0;
          while (ray[j] == 0) ++j;
          exps[j] = static_cast<long long>(i);
          monomial[v].pieces[pos].add_term(exps, Rational(1));
          ErrorCode got = code_of([&] { pp_membership(c.complex(), monomial); });
          if (n >= 2) {
            expect(got == ErrorCode::ConditionIFailed, where + ": discontinuous perturbation not rejected by (i)");
          } else if (star_cell(e, star, pos).vertices.size() >= 2) {
            expect(got == ErrorCode::ConditionIIFailed, where + ": bounded-cell perturbation not rejected by (ii)");
          } else {
            expect(got == ErrorCode::InternalError, where + ": valid perturbation on an unbounded ray rejected");
          }
          ++mutations;
        }
      }
    }
  }
  return std::to_string(mutations) + " mutations classified";
}

// 3. Rank one: c1 is the chart form, on the special and on the generic fiber.
std::string rank_one_law() {
  std::vector<std::pair<std::string, ToricBundleData>> bundles;
  for (const auto& name : {"p1_rank1", "p1_rank1_trivial", "p1_two_vertex_rank1", "p3_trivial"})
    bundles.emplace_back(name, testing::load_bundle(name));
  for (const auto& name : kSplitFixtures) {
    std::size_t k = 0;
    for (auto& l : line_summands(testing::load_bundle(name)))
      bundles.emplace_back(name + "/L" + std::to_string(k++), std::move(l));
  }
  std::size_t pieces = 0;
  for (const auto& [name, e] : bundles) {
    expect(e.rank() == 1, name + ": not rank one");
    PPClass c1 = chern_class(e, 1);
    for (std::size_t v = 0; v < c1.stars().size(); ++v) {
      const StarFan& star = c1.stars()[v];
      for (std::size_t pos = 0; pos < star.fan.maximal().size(); ++pos) {
        Poly form = Poly::linear(chart_of(e, star_cell(e, star, pos)).characters[0].u);
        expect(c1.piece(v, pos) == form, name + ": special-fiber piece differs from the chart form");
        ++pieces;
      }
    }
    PiecewisePoly g = chern_generic(e, 1);
    for (std::size_t gpos = 0; gpos < g.fan.maximal().size(); ++gpos) {
      std::vector<IntVec> lifted;
      for (auto r : g.fan.maximal_cone(gpos).rays()) {
        r.push_back(0);
        lifted.push_back(r);
      }
      Cone target = Cone::from_generators(e.n() + 1, lifted);
      bool found = false;
      for (std::size_t k = 0; k < e.fan().maximal().size() && !found; ++k)
        if (e.fan().maximal_cone(k).contains_cone(target)) {
          expect(g.pieces[gpos] == Poly::linear(e.chart(k).characters[0].u),
                 name + ": generic piece differs from the chart form");
          found = true;
        }
      expect(found, name + ": no maximal cone over a generic cone");
      ++pieces;
    }
  }
  return std::to_string(pieces) + " pieces on " + std::to_string(bundles.size()) + " line bundles";
}

// 4. Whitney sum on split fixtures.
std::string whitney_sum() {
  for (const auto& name : kSplitFixtures) {
    ToricBundleData e = testing::load_bundle(name);
    GradedClass product = GradedClass::one(e.complex());
    for (const auto& l : line_summands(e))
      product = product * GradedClass({PPClass::unit(l.complex()), chern_class(l, 1)});
    expect(total_chern_class(e) == product, name + ": total class differs from the product");
  }
  return std::to_string(kSplitFixtures.size()) + " split fixtures";
}

ModpMatrix random_invertible_mod_p(std::mt19937_64& rng, std::size_t r, long long p) {
  while (true) {
    ModpMatrix m(r, std::vector<long long>(r));
    for (auto& row : m)
      for (auto& x : row) x = static_cast<long long>(rng() % static_cast<std::uint64_t>(p));
    if (rank_mod_p(m, p) == r) return m;
  }
}

Rational random_fraction(std::mt19937_64& rng) {
  long long den = 1 + static_cast<long long>(rng() % 6);
  return q(static_cast<long long>(rng() % static_cast<std::uint64_t>(den)), den);
}

std::vector<OLattice> fixture_lattices() {
  std::vector<OLattice> out;
  for (const auto& name : testing::valid_fixtures()) {
    ToricBundleData e = testing::load_bundle(name);
    for (const auto& v : e.complex().vertices()) out.push_back(restrict_to_vertex(e, v).lattice);
  }
  out.push_back(OLattice::standard(2, ValuationConfig(3)));
  out.push_back(OLattice(RatMatrix::from_columns({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}, 3), {1, -2, 0}, ValuationConfig(5)));
  return out;
}

// 5. link and unlink are mutually inverse.
std::string link_roundtrip() {
  std::vector<OLattice> lattices = fixture_lattices();
  std::mt19937_64 rng(2024);
  std::size_t norms = 0;
  for (const auto& lat : lattices) {
    const std::size_t r = lat.rank();
    const long long p = lat.cfg().p();
    for (int s = 0; s < 50; ++s) {
      RatVec vals(r);
      for (auto& x : vals) x = random_fraction(rng);
      ResidueValuation bar(p, random_invertible_mod_p(rng, r, p), vals);
      AdaptedNorm up = unlink_norm(lat, bar);
      expect(norms_equal(link_norm(lat, up), bar), "link(unlink(w)) != w");
      for (std::size_t j = 0; j < r; ++j)
        expect(norm_eval(up, up.basis().column(j)) == NormValue(bar.values()[j]), "w(b_i) != wbar(bbar_i) after unlink");

      ModpMatrix u = random_invertible_mod_p(rng, r, p);
      RatMatrix lift(r, r);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) lift(a, b) = Rational(u[a][b] + p * static_cast<long long>(rng() % 3));
      RatMatrix basis = lat.generators() * lift;
      RatVec values(r);
      for (std::size_t j = 0; j < r; ++j) {
        long long k = static_cast<long long>(rng() % 5) - 2;
        values[j] = random_fraction(rng) + Rational(k);
        Rational scale = pow(Rational(p), k);
        for (std::size_t a = 0; a < r; ++a) basis(a, j) *= scale;
      }
      AdaptedNorm w(1, basis, values, lat.cfg());
      ResidueValuation down = link_norm(lat, w);
      expect(norms_equal(unlink_norm(lat, down), w), "unlink(link(w)) != w");
      for (std::size_t j = 0; j < r; ++j) {
        RatVec b = basis.column(j);
        Rational scale = pow(Rational(p), -static_cast<long long>(values[j].floor()));
        for (auto& x : b) x *= scale;
        expect(norm_eval(w, b) == NormValue(down.values()[j]), "w(b_i) != wbar(bbar_i) after link");
        expect(down.eval(down.basis_vector(j)) == NormValue(down.values()[j]), "wbar(bbar_i) != values[i]");
      }
      norms += 2;
    }
  }
  return std::to_string(norms) + " norms over " + std::to_string(lattices.size()) + " lattices";
}

RatVec random_vector(std::mt19937_64& rng, std::size_t r, long long p) {
  RatVec e(r);
  if (rng() % 10 == 0) return e;
  for (auto& x : e) x = pow(Rational(p), static_cast<long long>(rng() % 5) - 2) * Rational(static_cast<long long>(rng() % 7) - 3);
  return e;
}

bool ge(const NormValue& a, const NormValue& b) { return !a || (b && *a >= *b); }

NormValue min_value(const NormValue& a, const NormValue& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

// 6. Norm axioms on fixture norms and dimension-jump epsilon.
std::string building_axioms() {
  std::size_t samples = 0, epsilons = 0;
  std::mt19937_64 rng(99);
  for (const auto& name : testing::valid_fixtures()) {
    ToricBundleData e = testing::load_bundle(name);
    const long long p = e.cfg().p();
    std::vector<AdaptedNorm> norms;
    for (const auto& x : validate_bundle(e, 7, 4).samples) {
      if (std::all_of(x.begin(), x.end(), [](const Rational& t) { return t.is_zero(); })) continue;
      norms.push_back(eval_phi(e, x));
      if (norms.size() == 8) break;
    }
    for (const auto& w : norms) {
      for (int s = 0; s < 1000; ++s, ++samples) {
        RatVec v = random_vector(rng, w.rank(), p), v1 = random_vector(rng, w.rank(), p),
               v2 = random_vector(rng, w.rank(), p);
        Rational lambda = q(static_cast<long long>(rng() % 40) + 1, static_cast<long long>(rng() % 40) + 1);
        if (rng() % 2) lambda = -lambda;
        RatVec lv = v, sum(w.rank());
        for (auto& t : lv) t *= lambda;
        for (std::size_t i = 0; i < w.rank(); ++i) sum[i] = v1[i] + v2[i];
        NormValue wv = norm_eval(w, v);
        bool zero = std::all_of(v.begin(), v.end(), [](const Rational& t) { return t.is_zero(); });
        expect(!wv.has_value() == zero, name + ": w(e) infinite iff e = 0 fails");
        NormValue wl = norm_eval(w, lv);
        if (wv) {
          Rational shift = w.level() * Rational(padic_val(lambda, w.cfg()).value());
          expect(wl == NormValue(shift + *wv), name + ": w(l e) != m val(l) + w(e)");
        } else {
          expect(!wl, name + ": w(l 0) finite");
        }
        expect(ge(norm_eval(w, sum), min_value(norm_eval(w, v1), norm_eval(w, v2))), name + ": ultrametric fails");
      }
      if (w.level().is_zero())
        for (std::size_t i = 1; i <= w.rank(); ++i, ++epsilons)
          expect(epsilon(w, i) == elementary_symmetric(w.values(), i), name + ": epsilon mismatch");
    }
    for (const auto& v : e.complex().vertices()) {
      VertexRestriction r = restrict_to_vertex(e, v);
      for (std::size_t pos = 0; pos < r.star.fan.maximal().size(); ++pos)
        for (const auto& y : sample_cone(r.star.fan.maximal_cone(pos), 10, seed_for(name, pos))) {
          ResidueValuation w = r.eval(y);
          for (std::size_t i = 1; i <= w.rank(); ++i, ++epsilons)
            expect(epsilon(w, i) == elementary_symmetric(w.values(), i), name + ": residue epsilon mismatch");
        }
    }
  }
  return std::to_string(samples) + " axiom samples, " + std::to_string(epsilons) + " epsilon checks";
}

// 7. Coning and slicing round trips, and regularity classification.
std::string combinatorial_round_trips() {
  std::vector<PolyComplex> complexes;
  for (const auto& name : testing::valid_fixtures()) {
    Fan fan = testing::load_document(name).fan;
    PolyComplex c = slice_height_one(fan);
    expect(cone_over(c) == fan, name + ": c(Sigma_1) != Sigma");
    complexes.push_back(c);
  }
  complexes.push_back(PolyComplex::from_cells(1, {Cell::make(1, {{0}}, {{1}}), Cell::make(1, {{0}}, {{-1}})}));
  complexes.push_back(PolyComplex::from_cells(
      1, {Cell::make(1, {{0}}, {{-1}}), Cell::make(1, {{0}, {1}}, {}), Cell::make(1, {{1}}, {{1}})}));
  for (const auto& c : complexes) {
    Fan coned = cone_over(c);
    expect(slice_height_one(coned) == c, "slice(c(Sigma_1), 1) != Sigma_1");
    expect(slice_height_zero(coned) == recession_fan(c), "slice(c(Sigma_1), 0) != rec(Sigma_1)");
  }
  FanReport p1 = check_regular_complete(testing::load_document("p1_rank1").fan);
  expect(p1.complete && p1.regular, "P1 fan misclassified");
  expect(!check_regular_complete(Fan::from_generators(2, {{{1, 1}, {1, -1}}}), FanSupport::FullSpace).regular,
         "cone((1,1),(1,-1)) classified regular");
  expect(!check_regular_complete(build_fan(1, {{{1, 0}}, {{0, 1}}})).complete, "{cone(1,0), cone(0,1)} classified complete");
  for (const auto& name : testing::valid_fixtures()) {
    FanReport r = check_regular_complete(testing::load_document(name).fan);
    expect(r.complete && r.regular, name + ": fixture fan misclassified");
  }
  return std::to_string(complexes.size()) + " complexes";
}

// 8. Vertex restriction charts agree with the link of Phi near the vertex.
std::string restriction_compatibility() {
  std::size_t points = 0;
  for (const auto& name : testing::valid_fixtures()) {
    ToricBundleData e = testing::load_bundle(name);
    const std::size_t n = e.n();
    for (const auto& vertex : e.complex().vertices()) {
      VertexRestriction r = restrict_to_vertex(e, vertex);
      for (std::size_t pos = 0; pos < r.star.fan.maximal().size(); ++pos) {
        const Cell& cell = star_cell(e, r.star, pos);
        const BundleChart& chart = chart_of(e, cell);
        Cone cell_cone = cell.cone(n);
        for (const auto& y : sample_cone(r.star.fan.maximal_cone(pos), 20, seed_for(name, 31 * pos + 1))) {
          Rational slope = 0, lowest = 0;
          for (const auto& ch : chart.characters) {
            Rational s = dot(ch.u, y);
            slope = std::max(slope, s.abs());
          }
          Rational t = Rational(1) / (Rational(2) * (Rational(1) + slope));
          auto point = [&](const Rational& step) {
            RatVec x(n + 1);
            for (std::size_t i = 0; i < n; ++i) x[i] = Rational(vertex[i]) + step * y[i];
            x[n] = 1;
            return x;
          };
          while (!cell_cone.contains(point(t))) t /= 2;
          for (const auto& ch : chart.characters) lowest = std::min(lowest, t * dot(ch.u, y));
          const Rational c = -lowest;
          AdaptedNorm w = eval_phi(e, point(t)).shifted(c);
          ResidueValuation predicted = r.eval(y).scaled(t).shifted(c);
          expect(norms_equal(link_norm(r.lattice, w), predicted),
                 name + ", vertex " + to_string(vertex) + ", y=" + to_string(y) + ": link differs from the chart");
          ++points;
        }
      }
    }
  }
  return std::to_string(points) + " points";
}

// 9. Morphism decisions.
std::string morphism_decisions() {
  ToricBundleData rank1 = testing::load_bundle("p1_rank1");
  ToricBundleData trivial = testing::load_bundle("p1_rank1_trivial");
  expect(check_morphism(rank1, rank1, RatMatrix::identity(1)).ok, "identity on the rank-1 bundle rejected");
  expect(check_morphism(trivial, trivial, RatMatrix::from_rows({{2}}, 1)).ok, "multiplication by p rejected");
  expect(!check_morphism(rank1, trivial, RatMatrix::identity(1)).ok, "identity O(x) -> O accepted");
  std::mt19937_64 rng(5);
  std::size_t scalings = 0;
  for (const auto& name : testing::valid_fixtures()) {
    ToricBundleData e = testing::load_bundle(name);
    expect(check_morphism(e, e, RatMatrix::identity(e.rank())).ok, name + ": identity rejected");
    for (int s = 0; s < 10; ++s, ++scalings) {
      RatMatrix f = RatMatrix::identity(e.rank());
      Rational scale = pow(Rational(e.cfg().p()), static_cast<long long>(rng() % 6));
      for (std::size_t i = 0; i < e.rank(); ++i) f(i, i) = scale;
      expect(check_morphism(e, e, f).ok, name + ": scaling by " + scale.to_string() + " rejected");
    }
  }
  return std::to_string(scalings) + " p-power scalings";
}

struct RunResult {
  int status = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  RunResult out;
  std::string cmd = std::string(TORICDVR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Failure{"cannot start " + cmd};
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.output.append(buf.data(), got);
  out.status = pclose(pipe);
  return out;
}

// 10. Byte-identical CLI output for repeated runs.
std::string cli_determinism() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("toricdvr_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<std::string> names = testing::valid_fixtures();
  names.push_back("p1_rank1_mismatch");
  std::size_t runs = 0;
  for (const auto& name : names) {
    const std::string input = testing::fixture_path(name);
    cli::InputDocument doc = testing::load_document(name);
    std::string vertex;
    for (auto c : doc.bundle->complex().vertices().front()) vertex += (vertex.empty() ? "" : ",") + std::to_string(c);
    std::vector<std::string> commands = {"validate", "chern --total", "chern --i 1", "chern-generic --i 1",
                                         "restrict --vertex=" + vertex};
    if (doc.n <= 2) commands.push_back("plot --out " + (dir / "plot.svg").string());
    for (const auto& c : commands) {
      const std::string args = "--seed 7 " + c + " " + input;
      RunResult a = run_cli(args);
      std::string svg_a = c.rfind("plot", 0) == 0 ? testing::read_text((dir / "plot.svg").string()) : "";
      RunResult b = run_cli(args);
      std::string svg_b = c.rfind("plot", 0) == 0 ? testing::read_text((dir / "plot.svg").string()) : "";
      expect(!a.output.empty(), name + " " + c + ": no output");
      expect(a.status == b.status && a.output == b.output && svg_a == svg_b, name + " " + c + ": outputs differ");
      runs += 2;
    }
  }
  fs::remove_all(dir);
  return std::to_string(runs) + " runs";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"PP membership and mutations", pp_membership_and_mutations},
      {"rank-1 law", rank_one_law},
      {"Whitney sum", whitney_sum},
      {"link roundtrip", link_roundtrip},
      {"building axioms and epsilon", building_axioms},
      {"combinatorial round trips", combinatorial_round_trips},
      {"restriction compatibility", restriction_compatibility},
      {"morphism decisions", morphism_decisions},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    std::string status = "PASS", detail;
    try {
      detail = criteria[k].second();
    } catch (const Failure& f) {
      status = "FAIL";
      detail = f.what;
    } catch (const std::exception& ex) {
      status = "FAIL";
      detail = std::string("exception: ") + ex.what();
    }
    if (status == "FAIL") ++failed;
    std::cout << "criterion " << (k + 1) << " [" << status << "] " << criteria[k].first << ": " << detail << std::endl;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
