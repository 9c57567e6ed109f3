#ifndef HESSPAIR_CLI_HPP
#define HESSPAIR_CLI_HPP

// JSON documents, analysis reports, and the command layer behind the
// command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hesspair/generate.hpp"
#include "hesspair/irreducible.hpp"

namespace hesspair::cli {

using Json = nlohmann::ordered_json;

/// {"field": ..., "A": [[...]], "Astar": [[...]], "truth": {...}?, "split": {...}?}
struct PairDocument {
  FieldSpec field;
  Matrix a;
  Matrix astar;
  std::optional<Json> truth;
  /// Candidate for check-split: "split" if present, else truth.split.
  std::optional<SplitDecomposition> candidate;
};

/// "Q", "GF(p)", "GFp" or a bare prime p.
FieldSpec parse_field_text(std::string_view text);

Json field_to_json(FieldSpec spec);
FieldSpec parse_field(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix parse_matrix(FieldSpec spec, const Json& j, std::string_view name);
/// Canonical basis rows.
Json subspace_to_json(const Subspace& s);
Subspace parse_subspace(FieldSpec spec, std::size_t n, const Json& j);
/// {"theta": [...], "theta_star": [...], "subspaces": [[rows], ...]}
Json split_to_json(const SplitDecomposition& split);
SplitDecomposition parse_split(FieldSpec spec, std::size_t n, const Json& j);
Json truth_to_json(const InstanceTruth& truth);
Json document_to_json(const GeneratedInstance& instance);

/// All failures are reported as ParseError.
PairDocument parse_document(const Json& j);
PairDocument parse_document_text(std::string_view text);

struct AnalyzeOptions {
  SearchOptions search;
  IrreducibilityOptions irreducibility;
  /// Fail with IrreducibilityUndetermined instead of reporting Undetermined.
  bool require_irreducible = false;
};

Json analyze(const PairDocument& doc, const AnalyzeOptions& options = {});
Json check_split_report(const PairDocument& doc, const AnalyzeOptions& options = {});
/// Fast paths against brute force. "agree" is false on any contradiction.
Json oracle_report(const PairDocument& doc, const AnalyzeOptions& options = {});

struct GenerateRequest {
  InstanceKind kind = InstanceKind::SplitForm;
  FieldSpec field = FieldSpec::rationals();
  std::vector<std::size_t> dims;
  /// Scalar strings; default 0, 1, ..., d.
  std::vector<std::string> theta;
  std::vector<std::string> theta_star;
  OffDiagonal off_diagonal = OffDiagonal::Nonzero;
  /// Number of summands for reducible sums.
  std::size_t blocks = 2;
  bool conjugate = false;
  std::uint64_t seed = 1;
};

GeneratedInstance generate(const GenerateRequest& request);

enum class Command { Analyze, CheckSplit, Oracle };
enum class Format { Json, Text };

/// 2 ParseError, 3 EigenvaluesOutsideField, 4 SearchBudgetExceeded,
/// 5 OracleDisagreement, 1 otherwise.
int exit_code(ErrorCode code);
Json error_json(const Error& error);

/// Human-readable rendering of any report.
std::string render_text(const Json& report);

struct Outcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

Outcome run(Command command, std::string_view input, const AnalyzeOptions& options, Format format);
/// Input is a JSON array of documents or one document per line. Documents
/// are processed concurrently; results are emitted in input order and the
/// exit code is the first nonzero one.
Outcome run_batch(Command command, std::string_view input, const AnalyzeOptions& options, Format format,
                  unsigned threads = 0);
Outcome run_generate(const GenerateRequest& request, Format format);

}  // namespace hesspair::cli

#endif  // HESSPAIR_CLI_HPP
