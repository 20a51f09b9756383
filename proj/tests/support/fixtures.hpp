#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace toricdvr::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(TORICDVR_FIXTURE_DIR) + "/" + name + ".json";
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "missing fixture " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline cli::InputDocument load_document(const std::string& name) {
  return cli::parse_input(read_text(fixture_path(name)));
}

inline ToricBundleData load_bundle(const std::string& name) { return *load_document(name).bundle; }

// Fixtures whose charts glue, with complete regular fans.
inline const std::vector<std::string>& valid_fixtures() {
  static const std::vector<std::string> names = {
      "p1_rank1",          "p1_rank1_trivial",    "p1_rank2_split", "p1_rank2_nonsplit",
      "p1_two_vertex_rank1", "p1_two_vertex_rank2", "p2_tangent",     "p2_blowup_tangent", "p2_split_rank2",
      "p3_trivial"};
  return names;
}

inline Poly x(std::size_t nvars, std::size_t i) { return Poly::variable(nvars, i); }

}  // namespace toricdvr::testing
