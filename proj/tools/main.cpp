#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw toricdvr::Error(toricdvr::ErrorCode::SchemaError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace toricdvr;
  CLI::App app{"Equivariant Chern classes of toric vector bundles over a DVR"};
  app.require_subcommand(1);

  std::optional<long long> p;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> density;
  bool pretty = false;
  std::string out_path;
  app.add_option("--p", p, "prime of the p-adic valuation (overrides the input)");
  app.add_option("--seed", seed, "seed for sampled checks");
  app.add_option("--sample-density", density, "random test points per shared face");
  app.add_flag("--pretty", pretty, "render results to stderr");
  app.add_option("--out", out_path, "output file (the SVG for plot, the JSON otherwise)");

  cli::Command cmd;
  std::string input_path, norm_path, target_path, matrix_path;
  std::vector<long long> vertex;
  std::size_t index = 0;

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", input_path, "input JSON document ('-' for stdin)")->required();
    sub->fallthrough();
    return sub;
  };
  add("validate", "check the fan and that the bundle charts glue");
  CLI::App* chern = add("chern", "equivariant Chern class c_i");
  auto* chern_i = chern->add_option("--i", index, "degree");
  auto* chern_total = chern->add_flag("--total", cmd.total, "all degrees 0..r");
  chern_i->excludes(chern_total);
  CLI::App* generic = add("chern-generic", "Chern class of the generic fiber");
  generic->add_option("--i", index, "degree")->required();
  CLI::App* restrict_cmd = add("restrict", "restriction to the component of a vertex");
  restrict_cmd->add_option("--vertex", vertex, "vertex coordinates")->required()->delimiter(',');
  CLI::App* link = add("link", "link of a norm at a vertex lattice");
  link->add_option("--vertex", vertex, "vertex coordinates")->required()->delimiter(',');
  link->add_option("--norm", norm_path, "norm JSON file")->required();
  CLI::App* morphism = add("morphism", "decide whether a matrix is a bundle morphism");
  morphism->add_option("--target", target_path, "target bundle JSON file")->required();
  morphism->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  add("plot", "SVG of the height-one complex shaded by c_1 (torus rank <= 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (chern->parsed() && chern_i->count() == 0 && !cmd.total) {
    std::cerr << "chern: one of --i or --total is required\n";
    return 2;
  }
  cmd.name = app.get_subcommands().front()->get_name();
  if (chern->parsed() && !cmd.total) cmd.i = index;
  if (generic->parsed()) cmd.i = index;
  if (!vertex.empty()) cmd.vertex = vertex;

  cli::Outcome outcome;
  try {
    if (cmd.name == "plot" && out_path.empty())
      throw Error(ErrorCode::InvalidArgument, "plot needs --out FILE.svg");
    if (!norm_path.empty()) cmd.norm_text = read_file(norm_path);
    if (!target_path.empty()) cmd.target_text = read_file(target_path);
    if (!matrix_path.empty()) cmd.matrix_text = read_file(matrix_path);
    cli::ParseOverrides overrides{p, seed, density};
    cli::InputDocument doc = cli::parse_input(read_file(input_path), overrides);
    outcome = cli::run(cmd, doc);
  } catch (const Error& e) {
    outcome.exit_code = cli::exit_code_for(e.code());
    outcome.document = cli::error_document(cmd.name, e);
    outcome.pretty = std::string(e.what()) + "\n";
  }

  if (pretty) std::cerr << outcome.pretty;
  const std::string json = outcome.document.dump(2) + "\n";
  if (cmd.name == "plot") {
    if (!outcome.svg.empty()) std::ofstream(out_path) << outcome.svg;
    std::cout << json;
  } else if (!out_path.empty()) {
    std::ofstream(out_path) << json;
  } else {
    std::cout << json;
  }
  return outcome.exit_code;
}
