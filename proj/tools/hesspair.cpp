#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "hesspair/cli.hpp"

namespace {

using namespace hesspair;
using namespace hesspair::cli;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int finish(const Outcome& outcome) {
  std::cout << outcome.out << std::flush;
  std::cerr << outcome.err << std::flush;
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyze pairs of linear transformations over Q and GF(p)"};
  app.require_subcommand(1);

  std::uint64_t max_orderings = SearchOptions{}.max_orderings;
  std::uint64_t seed = 1;
  std::string format_name = "json";
  bool require_irreducible = false;
  std::string input = "-";
  bool batch = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--max-orderings", max_orderings, "Largest (d+1)! searched per side")->capture_default_str();
    sub->add_option("--seed", seed, "Seed for randomized steps")->capture_default_str();
    sub->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  };
  const auto add_document = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_flag("--require-irreducible", require_irreducible, "Fail when irreducibility is undetermined");
    sub->add_option("input", input, "Document path, or - for stdin")->capture_default_str();
    sub->add_flag("--batch", batch, "Input holds many documents: a JSON array or one per line");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Eigen data, Hessenberg orderings, irreducibility, splits");
  add_document(analyze);
  CLI::App* check = app.add_subcommand("check-split", "Verify a candidate split decomposition");
  add_document(check);
  CLI::App* oracle = app.add_subcommand("oracle", "Compare fast paths with brute force");
  add_document(oracle);

  GenerateRequest request;
  std::string field_name = "Q";
  CLI::App* gen = app.add_subcommand("generate", "Emit a generated instance with its truth block");
  add_common(gen);
  std::string kind_name = "split-form";
  gen->add_option("--kind", kind_name, "Construction")
      ->check(CLI::IsMember({"split-form", "tridiagonal-form", "reducible-sum", "conjugated"}))
      ->capture_default_str();
  gen->add_option("--field", field_name, "Q, GF(p) or p")->capture_default_str();
  gen->add_option("--dims", request.dims, "Block dimensions")->delimiter(',')->required();
  gen->add_option("--theta", request.theta, "Eigenvalues of A; default 0..d")->delimiter(',');
  gen->add_option("--theta-star", request.theta_star, "Eigenvalues of A*; default 0..d")->delimiter(',');
  gen->add_option("--off-diagonal", request.off_diagonal, "Off-diagonal entries")
      ->transform(CLI::CheckedTransformer(std::map<std::string, OffDiagonal>{
          {"nonzero", OffDiagonal::Nonzero}, {"ones", OffDiagonal::Ones}, {"sparse", OffDiagonal::Sparse}}));
  gen->add_option("--blocks", request.blocks, "Summands of a reducible sum")->capture_default_str();
  gen->add_flag("--conjugate", request.conjugate, "Apply a random change of basis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << error_json(Error(ErrorCode::ParseError, e.what())).dump() << '\n';
    return 2;
  }

  const Format format = format_name == "text" ? Format::Text : Format::Json;
  AnalyzeOptions options;
  options.search.max_orderings = max_orderings;
  options.irreducibility.seed = seed;
  options.require_irreducible = require_irreducible;

  try {
    if (gen->parsed()) {
      for (InstanceKind k : {InstanceKind::SplitForm, InstanceKind::TridiagonalForm, InstanceKind::ReducibleSum,
                             InstanceKind::Conjugated}) {
        if (to_string(k) == kind_name) request.kind = k;
      }
      request.field = parse_field_text(field_name);
      request.seed = seed;
      return finish(run_generate(request, format));
    }
    const Command command = analyze->parsed() ? Command::Analyze : check->parsed() ? Command::CheckSplit : Command::Oracle;
    const std::string text = read_input(input);
    return finish(batch ? run_batch(command, text, options, format) : run(command, text, options, format));
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << '\n';
    return exit_code(e.code());
  }
}
