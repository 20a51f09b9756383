#include "cli.hpp"

#include <sstream>

namespace toricdvr::cli {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& reason) {
  throw Error(ErrorCode::SchemaError, (path.empty() ? "/" : path) + ": " + reason);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path + "/" + key, "missing");
  return *it;
}

long long as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<long long>();
}

std::size_t as_count(const Json& j, const std::string& path) {
  long long v = as_int(j, path);
  if (v < 0) schema_error(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  return j;
}

IntVec int_vector(const Json& j, const std::string& path, std::size_t length) {
  as_array(j, path);
  if (j.size() != length) schema_error(path, "expected " + std::to_string(length) + " entries");
  IntVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_int(j[i], path + "/" + std::to_string(i)));
  return v;
}

// Columns given as a list of basis vectors.
RatMatrix column_matrix(const Json& j, const std::string& path, std::size_t r) {
  as_array(j, path);
  if (j.size() != r) schema_error(path, "expected " + std::to_string(r) + " basis vectors");
  RatMatrix m(r, r);
  for (std::size_t c = 0; c < r; ++c) {
    const std::string cp = path + "/" + std::to_string(c);
    as_array(j[c], cp);
    if (j[c].size() != r) schema_error(cp, "expected " + std::to_string(r) + " coordinates");
    for (std::size_t i = 0; i < r; ++i) m(i, c) = parse_rational(j[c][i], cp + "/" + std::to_string(i));
  }
  return m;
}

Json columns_json(const RatMatrix& m) {
  Json cols = Json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Json col = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) col.push_back(rational_json(m(i, c)));
    cols.push_back(std::move(col));
  }
  return cols;
}

Json columns_json(const ModpMatrix& m) {
  Json cols = Json::array();
  const std::size_t r = m.size();
  for (std::size_t c = 0; c < r; ++c) {
    Json col = Json::array();
    for (std::size_t i = 0; i < r; ++i) col.push_back(m[i][c]);
    cols.push_back(std::move(col));
  }
  return cols;
}

Json rays_json(const Cone& c) {
  Json out = Json::array();
  for (const auto& r : c.rays()) out.push_back(vector_json(r));
  return out;
}

Json cell_json(const Cell& c) {
  Json vs = Json::array(), rs = Json::array();
  for (const auto& v : c.vertices) vs.push_back(vector_json(v));
  for (const auto& r : c.rays) rs.push_back(vector_json(r));
  return Json{{"vertices", vs}, {"rays", rs}};
}

Json rationals_json(const RatVec& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_json(q));
  return out;
}

const ToricBundleData& need_bundle(const InputDocument& doc) {
  if (!doc.bundle) schema_error("/bundle", "required for this command");
  return *doc.bundle;
}

IntVec need_vertex(const Command& cmd) {
  if (!cmd.vertex) throw Error(ErrorCode::InvalidArgument, "--vertex is required");
  return *cmd.vertex;
}

// The bundle data must glue and the fan must satisfy the standing assumptions
// before Chern classes are meaningful.
std::optional<Outcome> precheck(const Command& cmd, const InputDocument& doc) {
  const ToricBundleData& e = need_bundle(doc);
  auto fan_report = check_regular_complete(e.fan());
  auto bundle_report = validate_bundle(e, doc.seed, doc.sample_density);
  if (fan_report.complete && fan_report.regular && bundle_report.ok) return std::nullopt;
  Outcome out;
  out.exit_code = 1;
  Json failures = Json::array();
  for (const auto& f : fan_report.failures) failures.push_back(f);
  for (const auto& f : bundle_report.failures) failures.push_back(f);
  out.document = Json{{"command", cmd.name}, {"status", "failed"}, {"failures", failures}};
  return out;
}

Json class_json(const PPClass& c, std::string* pretty) {
  Json vertices = Json::array();
  const auto& complex = c.complex();
  for (std::size_t v = 0; v < complex.vertices().size(); ++v) {
    const StarFan& star = c.stars()[v];
    Json pieces = Json::array();
    for (std::size_t pos = 0; pos < star.fan.maximal().size(); ++pos) {
      const std::size_t cell = star.cell_of_maximal(pos);
      pieces.push_back(Json{{"cell", cell},
                            {"cone_rays", rays_json(star.fan.maximal_cone(pos))},
                            {"poly", poly_json(c.piece(v, pos))}});
      if (pretty)
        *pretty += "  vertex " + to_string(complex.vertices()[v]) + ", cell " + complex.cells()[cell].to_string() +
                   ": " + c.piece(v, pos).to_string() + "\n";
    }
    vertices.push_back(Json{{"vertex", vector_json(complex.vertices()[v])}, {"pieces", pieces}});
  }
  return Json{{"degree", c.degree()}, {"vertices", vertices}};
}

Outcome run_validate(const Command& cmd, const InputDocument& doc) {
  Outcome out;
  auto fan_report = check_regular_complete(doc.fan);
  PolyComplex complex = slice_height_one(doc.fan);
  Fan generic = slice_height_zero(doc.fan);

  Json fan_failures = Json::array();
  for (const auto& f : fan_report.failures) fan_failures.push_back(f);
  Json vertices = Json::array(), cells = Json::array(), generic_cones = Json::array();
  for (const auto& v : complex.vertices()) vertices.push_back(vector_json(v));
  for (const auto& c : complex.cells()) cells.push_back(cell_json(c));
  for (std::size_t pos = 0; pos < generic.maximal().size(); ++pos)
    generic_cones.push_back(rays_json(generic.maximal_cone(pos)));

  bool recession_agrees = false;
  try {
    recession_agrees = recession_fan(complex) == generic;
  } catch (const Error&) {
    recession_agrees = false;
  }

  bool ok = fan_report.complete && fan_report.regular;
  out.document = Json{{"command", cmd.name},
                      {"status", "ok"},
                      {"p", doc.cfg.p()},
                      {"fan",
                       {{"complete", fan_report.complete},
                        {"regular", fan_report.regular},
                        {"failures", fan_failures}}},
                      {"complex", {{"vertices", vertices}, {"cells", cells}}},
                      {"generic_fan", {{"maximal_cones", generic_cones}}},
                      {"recession_agrees", recession_agrees}};
  out.pretty = "fan: " + std::string(fan_report.complete ? "complete" : "not complete") + ", " +
               (fan_report.regular ? "regular" : "not regular") + "\n";
  if (doc.bundle) {
    auto report = validate_bundle(*doc.bundle, doc.seed, doc.sample_density);
    Json failures = Json::array();
    for (const auto& f : report.failures) failures.push_back(f);
    out.document["bundle"] = Json{{"rank", doc.bundle->rank()},
                                  {"glues", report.ok},
                                  {"failures", failures},
                                  {"samples", report.samples.size()}};
    out.pretty += "bundle: " + std::string(report.ok ? "charts glue" : "charts do not glue") + " (" +
                  std::to_string(report.samples.size()) + " test points)\n";
    for (const auto& f : report.failures) out.pretty += "  " + f + "\n";
    ok = ok && report.ok;
  }
  for (const auto& f : fan_report.failures) out.pretty += "  " + f + "\n";
  if (!ok) {
    out.exit_code = 1;
    out.document["status"] = "failed";
  }
  return out;
}

Outcome run_chern(const Command& cmd, const InputDocument& doc) {
  if (auto failed = precheck(cmd, doc)) return *failed;
  const ToricBundleData& e = *doc.bundle;
  Outcome out;
  out.document = Json{{"command", cmd.name}, {"status", "ok"}};
  if (cmd.total) {
    Json classes = Json::array();
    for (std::size_t i = 0; i <= e.rank(); ++i) {
      out.pretty += "c_" + std::to_string(i) + ":\n";
      classes.push_back(class_json(chern_class(e, i), &out.pretty));
    }
    out.document["total"] = true;
    out.document["classes"] = classes;
    return out;
  }
  if (!cmd.i) throw Error(ErrorCode::InvalidArgument, "either --i or --total is required");
  out.pretty = "c_" + std::to_string(*cmd.i) + ":\n";
  out.document["i"] = *cmd.i;
  out.document["class"] = class_json(chern_class(e, *cmd.i), &out.pretty);
  return out;
}

Outcome run_chern_generic(const Command& cmd, const InputDocument& doc) {
  if (!cmd.i) throw Error(ErrorCode::InvalidArgument, "--i is required");
  if (auto failed = precheck(cmd, doc)) return *failed;
  PiecewisePoly f = chern_generic(*doc.bundle, *cmd.i);
  Outcome out;
  Json pieces = Json::array();
  out.pretty = "generic c_" + std::to_string(*cmd.i) + ":\n";
  for (std::size_t pos = 0; pos < f.pieces.size(); ++pos) {
    pieces.push_back(Json{{"cone_rays", rays_json(f.fan.maximal_cone(pos))}, {"poly", poly_json(f.pieces[pos])}});
    out.pretty += "  cone " + f.fan.maximal_cone(pos).to_string() + ": " + f.pieces[pos].to_string() + "\n";
  }
  out.document = Json{{"command", cmd.name}, {"status", "ok"}, {"i", *cmd.i}, {"degree", f.degree}, {"pieces", pieces}};
  return out;
}

Json lattice_json(const OLattice& l) {
  Json exps = Json::array();
  for (auto a : l.exponents()) exps.push_back(a);
  return Json{{"basis", columns_json(l.basis())}, {"exponents", exps}};
}

Outcome run_restrict(const Command& cmd, const InputDocument& doc) {
  const ToricBundleData& e = need_bundle(doc);
  VertexRestriction vr = restrict_to_vertex(e, need_vertex(cmd));
  Outcome out;
  Json charts = Json::array();
  out.pretty = "vertex " + to_string(vr.vertex) + "\n";
  for (std::size_t pos = 0; pos < vr.charts.size(); ++pos) {
    const StarChart& c = vr.charts[pos];
    Json us = Json::array();
    for (const auto& u : c.u) us.push_back(vector_json(u));
    charts.push_back(Json{{"cell", c.cell},
                          {"cone_rays", rays_json(vr.star.fan.maximal_cone(pos))},
                          {"basis_mod_p", columns_json(c.basis)},
                          {"characters", us}});
    out.pretty += "  cone " + vr.star.fan.maximal_cone(pos).to_string() + ": u =";
    for (const auto& u : c.u) out.pretty += " " + to_string(u);
    out.pretty += "\n";
  }
  out.document = Json{{"command", cmd.name},
                      {"status", "ok"},
                      {"vertex", vector_json(vr.vertex)},
                      {"lattice", lattice_json(vr.lattice)},
                      {"charts", charts}};
  return out;
}

Outcome run_link(const Command& cmd, const InputDocument& doc) {
  const ToricBundleData& e = need_bundle(doc);
  IntVec vertex = need_vertex(cmd);
  if (!e.complex().vertex_index(vertex)) throw Error(ErrorCode::NotAVertex, to_string(vertex) + " is not a vertex");
  Json j;
  try {
    j = Json::parse(cmd.norm_text);
  } catch (const Json::parse_error& err) {
    schema_error("norm", err.what());
  }
  const std::size_t r = e.rank();
  RatMatrix basis = j.contains("basis") ? column_matrix(j["basis"], "norm/basis", r) : RatMatrix::identity(r);
  const Json& vj = as_array(field(j, "values", "norm"), "norm/values");
  if (vj.size() != r) schema_error("norm/values", "expected " + std::to_string(r) + " values");
  RatVec values;
  for (std::size_t i = 0; i < r; ++i) values.push_back(parse_rational(vj[i], "norm/values/" + std::to_string(i)));
  AdaptedNorm w(Rational(1), basis, values, e.cfg());

  RatVec x = to_rational(vertex);
  x.push_back(Rational(1));
  OLattice lattice = to_lattice(eval_phi(e, x));
  ResidueValuation wbar = link_norm(lattice, w);
  bool roundtrip = norms_equal(unlink_norm(lattice, wbar), w);
  Outcome out;
  out.document = Json{{"command", cmd.name},
                      {"status", "ok"},
                      {"vertex", vector_json(vertex)},
                      {"lattice", lattice_json(lattice)},
                      {"residue", {{"basis_mod_p", columns_json(wbar.basis())}, {"values", rationals_json(wbar.values())}}},
                      {"roundtrip", roundtrip}};
  out.pretty = "link values:";
  for (const auto& v : wbar.values()) out.pretty += " " + v.to_string();
  out.pretty += "\n";
  return out;
}

Outcome run_morphism(const Command& cmd, const InputDocument& doc) {
  const ToricBundleData& e = need_bundle(doc);
  ParseOverrides o;
  o.p = doc.cfg.p();
  InputDocument target = parse_input(cmd.target_text, o);
  const ToricBundleData& t = need_bundle(target);
  Json j;
  try {
    j = Json::parse(cmd.matrix_text);
  } catch (const Json::parse_error& err) {
    schema_error("matrix", err.what());
  }
  as_array(j, "matrix");
  if (j.size() != t.rank()) schema_error("matrix", "expected " + std::to_string(t.rank()) + " rows");
  RatMatrix f(t.rank(), e.rank());
  for (std::size_t i = 0; i < t.rank(); ++i) {
    const std::string rp = "matrix/" + std::to_string(i);
    as_array(j[i], rp);
    if (j[i].size() != e.rank()) schema_error(rp, "expected " + std::to_string(e.rank()) + " entries");
    for (std::size_t k = 0; k < e.rank(); ++k) f(i, k) = parse_rational(j[i][k], rp + "/" + std::to_string(k));
  }
  MorphismReport report = check_morphism(e, t, f);
  Outcome out;
  Json failures = Json::array();
  for (const auto& s : report.failures) failures.push_back(s);
  out.document = Json{{"command", cmd.name},
                      {"status", report.ok ? "ok" : "failed"},
                      {"accepted", report.ok},
                      {"failures", failures}};
  out.pretty = report.ok ? "morphism accepted\n" : "morphism rejected\n";
  if (!report.ok) out.exit_code = 1;
  return out;
}

Outcome run_plot(const Command& cmd, const InputDocument& doc) {
  if (doc.n > 2) throw Error(ErrorCode::Unsupported, "plot supports torus rank 1 or 2, got " + std::to_string(doc.n));
  if (auto failed = precheck(cmd, doc)) return *failed;
  const ToricBundleData& e = *doc.bundle;
  Outcome out;
  out.svg = render_svg(e, chern_class(e, 1));
  out.document = Json{{"command", cmd.name}, {"status", "ok"}, {"cells", e.complex().maximal_cells().size()}};
  return out;
}

}  // namespace

Json rational_json(const Rational& q) { return q.to_string(); }

Rational parse_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) schema_error(path, "expected an integer or a \"num/den\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    schema_error(path, e.what());
  }
}

Json vector_json(const IntVec& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

Json poly_json(const Poly& f) {
  Json out = Json::array();
  for (const auto& [e, c] : f.terms()) out.push_back(Json::array({vector_json(e), rational_json(c)}));
  return out;
}

Poly poly_from_json(const Json& j, std::size_t nvars) {
  as_array(j, "poly");
  Poly f(nvars);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string path = "poly/" + std::to_string(t);
    as_array(j[t], path);
    if (j[t].size() != 2) schema_error(path, "expected [exponents, coefficient]");
    f.add_term(int_vector(j[t][0], path + "/0", nvars), parse_rational(j[t][1], path + "/1"));
  }
  return f;
}

InputDocument parse_input(const std::string& text, const ParseOverrides& overrides) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& err) {
    schema_error("", std::string("invalid JSON: ") + err.what());
  }
  if (!j.is_object()) schema_error("", "expected an object");

  InputDocument doc;
  long long p = j.contains("p") ? as_int(j["p"], "/p") : 2;
  if (overrides.p) p = *overrides.p;
  doc.cfg = ValuationConfig(p);

  doc.n = as_count(field(j, "torus_rank", ""), "/torus_rank");
  if (doc.n == 0) schema_error("/torus_rank", "must be positive");

  const Json& cones = as_array(field(field(j, "fan", ""), "maximal_cones", "/fan"), "/fan/maximal_cones");
  for (std::size_t c = 0; c < cones.size(); ++c) {
    const std::string cp = "/fan/maximal_cones/" + std::to_string(c);
    as_array(cones[c], cp);
    std::vector<IntVec> gens;
    for (std::size_t g = 0; g < cones[c].size(); ++g)
      gens.push_back(int_vector(cones[c][g], cp + "/" + std::to_string(g), doc.n + 1));
    doc.maximal_cones.push_back(std::move(gens));
  }
  if (doc.maximal_cones.empty()) schema_error("/fan/maximal_cones", "must not be empty");
  doc.fan = build_fan(doc.n, doc.maximal_cones);

  if (j.contains("options")) {
    const Json& opt = j["options"];
    if (!opt.is_object()) schema_error("/options", "expected an object");
    if (opt.contains("seed")) doc.seed = static_cast<std::uint64_t>(as_count(opt["seed"], "/options/seed"));
    if (opt.contains("sample_density"))
      doc.sample_density = as_count(opt["sample_density"], "/options/sample_density");
  }
  if (overrides.seed) doc.seed = *overrides.seed;
  if (overrides.sample_density) doc.sample_density = *overrides.sample_density;

  if (j.contains("bundle")) {
    const Json& b = j["bundle"];
    const std::size_t r = as_count(field(b, "rank", "/bundle"), "/bundle/rank");
    if (r == 0) schema_error("/bundle/rank", "must be positive");
    const Json& charts = as_array(field(b, "charts", "/bundle"), "/bundle/charts");
    std::vector<BundleChart> parsed;
    for (std::size_t k = 0; k < charts.size(); ++k) {
      const std::string cp = "/bundle/charts/" + std::to_string(k);
      BundleChart chart;
      std::size_t idx = as_count(field(charts[k], "cone_index", cp), cp + "/cone_index");
      if (idx >= doc.maximal_cones.size()) schema_error(cp + "/cone_index", "out of range");
      auto pos = doc.fan.maximal_position(Cone::from_generators(doc.n + 1, doc.maximal_cones[idx]));
      if (!pos) schema_error(cp + "/cone_index", "cone is not maximal in the fan");
      chart.cone = *pos;
      chart.basis = column_matrix(field(charts[k], "basis", cp), cp + "/basis", r);
      if (determinant(chart.basis).is_zero())
        throw Error(ErrorCode::SingularBasis, cp + "/basis: basis matrix is singular");
      const Json& chars = as_array(field(charts[k], "characters", cp), cp + "/characters");
      if (chars.size() != r) schema_error(cp + "/characters", "expected " + std::to_string(r) + " characters");
      for (std::size_t i = 0; i < r; ++i) {
        IntVec uk = int_vector(chars[i], cp + "/characters/" + std::to_string(i), doc.n + 1);
        chart.characters.push_back(Character{IntVec(uk.begin(), uk.end() - 1), uk.back()});
      }
      parsed.push_back(std::move(chart));
    }
    doc.bundle.emplace(doc.fan, r, std::move(parsed), doc.cfg);
  }
  return doc;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaError:
    case ErrorCode::NotPrime:
    case ErrorCode::SingularBasis:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::ArityMismatch:
    case ErrorCode::Unsupported:
    case ErrorCode::InvalidArgument:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::NotAVertex:
    case ErrorCode::OutsideSupport:
    case ErrorCode::OutsideStar:
      return 2;
    default:
      return 1;
  }
}

Json error_document(const std::string& command, const Error& e) {
  return Json{{"command", command},
              {"status", "error"},
              {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
}

Outcome run(const Command& command, const InputDocument& doc) {
  try {
    if (command.name == "validate") return run_validate(command, doc);
    if (command.name == "chern") return run_chern(command, doc);
    if (command.name == "chern-generic") return run_chern_generic(command, doc);
    if (command.name == "restrict") return run_restrict(command, doc);
    if (command.name == "link") return run_link(command, doc);
    if (command.name == "morphism") return run_morphism(command, doc);
    if (command.name == "plot") return run_plot(command, doc);
    throw Error(ErrorCode::InvalidArgument, "unknown command '" + command.name + "'");
  } catch (const Error& e) {
    Outcome out;
    out.exit_code = exit_code_for(e.code());
    out.document = error_document(command.name, e);
    out.pretty = std::string(e.what()) + "\n";
    return out;
  }
}

}  // namespace toricdvr::cli
