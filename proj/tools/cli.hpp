#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricdvr/toricdvr.hpp"

namespace toricdvr::cli {

using Json = nlohmann::ordered_json;

struct InputDocument {
  ValuationConfig cfg;
  std::size_t n = 0;
  std::vector<std::vector<IntVec>> maximal_cones;
  Fan fan;
  std::optional<ToricBundleData> bundle;
  std::uint64_t seed = 0;
  std::size_t sample_density = 8;
};

struct ParseOverrides {
  std::optional<long long> p;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sample_density;
};

// Throws SchemaError (with a JSON pointer to the offending field), NotPrime,
// SingularBasis, and the fan construction errors.
InputDocument parse_input(const std::string& text, const ParseOverrides& overrides = {});

struct Command {
  std::string name;  // validate, chern, chern-generic, restrict, link, morphism, plot
  std::optional<std::size_t> i;
  bool total = false;
  std::optional<IntVec> vertex;
  std::string norm_text;    // link: {"basis": [...], "values": [...]}
  std::string target_text;  // morphism: a second input document
  std::string matrix_text;  // morphism: [[...], ...] with r' rows
};

struct Outcome {
  int exit_code = 0;  // 0 ok, 1 mathematical failure, 2 input error
  Json document;
  std::string pretty;
  std::string svg;
};

Outcome run(const Command& command, const InputDocument& doc);

// Exit code for a library error.
int exit_code_for(ErrorCode code);
Json error_document(const std::string& command, const Error& e);

Json rational_json(const Rational& q);
Rational parse_rational(const Json& j, const std::string& path);
Json poly_json(const Poly& f);
Poly poly_from_json(const Json& j, std::size_t nvars);
Json vector_json(const IntVec& v);

std::string render_svg(const ToricBundleData& bundle, const PPClass& c1);

}  // namespace toricdvr::cli
