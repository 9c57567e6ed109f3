#include "hesspair/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <sstream>
#include <thread>

namespace hesspair::cli {

namespace {

[[noreturn]] void parse_fail(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::uint64_t parse_unsigned(std::string_view text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) parse_fail("not an unsigned integer: " + std::string(text));
  return value;
}

Json scalars_to_json(const std::vector<FieldElement>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

std::vector<FieldElement> parse_scalars(FieldSpec spec, const Json& j, std::string_view name) {
  if (!j.is_array()) parse_fail(std::string(name) + " must be an array of scalar strings");
  std::vector<FieldElement> out;
  for (const auto& x : j) {
    if (!x.is_string()) parse_fail(std::string(name) + " entries must be strings");
    out.push_back(FieldElement::parse(spec, x.get<std::string>()));
  }
  return out;
}

std::vector<FieldElement> thetas_of(const EigenStructure& es, const Ordering& order) {
  std::vector<FieldElement> out;
  for (std::size_t k : order) out.push_back(es.eigenvalues[k]);
  return out;
}

Json ordering_pair_to_json(const EigenStructure& ea, const EigenStructure& eas, const OrderingPair& pair) {
  return Json{{"A", scalars_to_json(thetas_of(ea, pair.a))}, {"Astar", scalars_to_json(thetas_of(eas, pair.astar))}};
}

Json eigen_to_json(const EigenStructure& es) {
  Json mult = Json::array();
  for (const auto& u : es.eigenspaces) mult.push_back(u.dim());
  return Json{{"eigenvalues", scalars_to_json(es.eigenvalues)},
              {"multiplicities", std::move(mult)},
              {"diagonalizable", es.diagonalizable}};
}

Json verdict_to_json(const IrreducibilityVerdict& v) {
  Json out{{"status", to_string(v.status)}, {"method", to_string(v.method)}};
  if (v.witness) out["witness"] = subspace_to_json(*v.witness);
  return out;
}

Json null_or(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

IrreducibilityVerdict irreducibility_for(const PairDocument& doc, const AnalyzeOptions& options) {
  IrreducibilityVerdict verdict = decide_irreducible(doc.a, doc.astar, options.irreducibility);
  if (options.require_irreducible && verdict.status == Irreducibility::Undetermined) {
    throw Error(ErrorCode::IrreducibilityUndetermined, "irreducibility could not be decided");
  }
  return verdict;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "null";
  return j.dump();
}

std::string inline_array(const Json& j) {
  std::string out = "[";
  bool first = true;
  for (const auto& x : j) {
    if (!first) out += ", ";
    first = false;
    out += x.is_array() ? inline_array(x) : scalar_text(x);
  }
  return out + "]";
}

bool is_nested_scalars(const Json& j) {
  if (j.is_primitive()) return true;
  if (!j.is_array()) return false;
  return std::all_of(j.begin(), j.end(), [](const Json& x) { return is_nested_scalars(x); });
}

void render(const Json& j, std::size_t indent, std::ostringstream& out) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_nested_scalars(value)) {
        out << pad << key << ": " << (value.is_array() ? inline_array(value) : scalar_text(value)) << '\n';
      } else {
        out << pad << key << ":\n";
        render(value, indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (is_nested_scalars(value)) {
        out << pad << "- " << (value.is_array() ? inline_array(value) : scalar_text(value)) << '\n';
      } else {
        out << pad << "-\n";
        render(value, indent + 2, out);
      }
    }
  } else {
    out << pad << scalar_text(j) << '\n';
  }
}

std::string emit(const Json& j, Format format) { return format == Format::Json ? j.dump(2) + "\n" : render_text(j); }

struct Result {
  int exit_code = 0;
  Json report;
  std::optional<Json> error;
};

Result run_one(Command command, const Json& input, const AnalyzeOptions& options) {
  try {
    const PairDocument doc = parse_document(input);
    switch (command) {
      case Command::Analyze: return {0, analyze(doc, options), std::nullopt};
      case Command::CheckSplit: return {0, check_split_report(doc, options), std::nullopt};
      case Command::Oracle: {
        Json report = oracle_report(doc, options);
        if (report.at("agree").get<bool>()) return {0, std::move(report), std::nullopt};
        const Error e(ErrorCode::OracleDisagreement, "a fast path contradicted its oracle");
        return {exit_code(e.code()), std::move(report), error_json(e)};
      }
    }
  } catch (const Error& e) {
    return {exit_code(e.code()), nullptr, error_json(e)};
  } catch (const std::exception& e) {
    const Error wrapped(ErrorCode::InvalidArgument, e.what());
    return {exit_code(wrapped.code()), nullptr, error_json(wrapped)};
  }
  return {};
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

FieldSpec parse_field_text(std::string_view text) {
  if (text == "Q") return FieldSpec::rationals();
  std::string_view digits = text;
  if (digits.starts_with("GF(") && digits.ends_with(")")) {
    digits = digits.substr(3, digits.size() - 4);
  } else if (digits.starts_with("GF")) {
    digits = digits.substr(2);
  }
  try {
    return FieldSpec::prime(parse_unsigned(digits));
  } catch (const Error& e) {
    parse_fail("bad field \"" + std::string(text) + "\": " + e.what());
  }
}

Json field_to_json(FieldSpec spec) {
  if (!spec.is_prime_field()) return Json{{"kind", "Q"}};
  return Json{{"kind", "GF"}, {"p", spec.p()}};
}

FieldSpec parse_field(const Json& j) {
  const Json& kind = member(j, "kind");
  if (kind == "Q") return FieldSpec::rationals();
  if (kind != "GF") parse_fail("field kind must be \"Q\" or \"GF\"");
  const Json& p = member(j, "p");
  if (!p.is_number_unsigned()) parse_fail("field p must be a positive integer");
  try {
    return FieldSpec::prime(p.get<std::uint64_t>());
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (const auto& row : m.row_vectors()) out.push_back(scalars_to_json(row));
  return out;
}

Matrix parse_matrix(FieldSpec spec, const Json& j, std::string_view name) {
  if (!j.is_array() || j.empty()) parse_fail(std::string(name) + " must be a nonempty array of rows");
  std::vector<Vector> rows;
  for (const auto& row : j) {
    rows.push_back(parse_scalars(spec, row, name));
    if (rows.back().size() != j.size()) parse_fail(std::string(name) + " must be square");
  }
  return Matrix::from_rows(spec, j.size(), rows);
}

Json subspace_to_json(const Subspace& s) { return matrix_to_json(s.basis()); }

Subspace parse_subspace(FieldSpec spec, std::size_t n, const Json& j) {
  if (!j.is_array()) parse_fail("a subspace must be an array of vectors");
  std::vector<Vector> vs;
  for (const auto& v : j) {
    vs.push_back(parse_scalars(spec, v, "subspace vector"));
    if (vs.back().size() != n) parse_fail("subspace vector has the wrong length");
  }
  return Subspace::span(spec, n, vs);
}

Json split_to_json(const SplitDecomposition& split) {
  Json subspaces = Json::array();
  for (const auto& u : split.subspaces) subspaces.push_back(subspace_to_json(u));
  return Json{{"theta", scalars_to_json(split.theta)},
              {"theta_star", scalars_to_json(split.theta_star)},
              {"subspaces", std::move(subspaces)}};
}

SplitDecomposition parse_split(FieldSpec spec, std::size_t n, const Json& j) {
  SplitDecomposition out;
  out.theta = parse_scalars(spec, member(j, "theta"), "theta");
  out.theta_star = parse_scalars(spec, member(j, "theta_star"), "theta_star");
  const Json& subspaces = member(j, "subspaces");
  if (!subspaces.is_array()) parse_fail("subspaces must be an array");
  for (const auto& u : subspaces) out.subspaces.push_back(parse_subspace(spec, n, u));
  return out;
}

Json truth_to_json(const InstanceTruth& truth) {
  Json out{{"kind", to_string(truth.kind)}, {"seed", truth.seed}, {"dims", truth.dims}, {"split", split_to_json(truth.split)}};
  if (truth.conjugator) out["conjugator"] = matrix_to_json(*truth.conjugator);
  if (truth.invariant_subspace) out["invariant_subspace"] = subspace_to_json(*truth.invariant_subspace);
  return out;
}

Json document_to_json(const GeneratedInstance& instance) {
  return Json{{"field", field_to_json(instance.a.spec())},
              {"A", matrix_to_json(instance.a)},
              {"Astar", matrix_to_json(instance.astar)},
              {"truth", truth_to_json(instance.truth)}};
}

PairDocument parse_document(const Json& j) {
  try {
    if (!j.is_object()) parse_fail("a document must be a JSON object");
    const FieldSpec field = parse_field(member(j, "field"));
    Matrix a = parse_matrix(field, member(j, "A"), "A");
    Matrix astar = parse_matrix(field, member(j, "Astar"), "Astar");
    if (a.rows() != astar.rows()) parse_fail("A and Astar differ in size");
    PairDocument doc{field, std::move(a), std::move(astar), std::nullopt, std::nullopt};
    if (j.contains("truth")) doc.truth = j.at("truth");
    if (j.contains("split")) {
      doc.candidate = parse_split(field, doc.a.rows(), j.at("split"));
    } else if (doc.truth && doc.truth->contains("split")) {
      doc.candidate = parse_split(field, doc.a.rows(), doc.truth->at("split"));
    }
    return doc;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    parse_fail(e.what());
  } catch (const Json::exception& e) {
    parse_fail(e.what());
  }
}

PairDocument parse_document_text(std::string_view text) { return parse_document(parse_json_text(text)); }

Json analyze(const PairDocument& doc, const AnalyzeOptions& options) {
  const EigenStructure ea = eigen_structure(doc.a);
  const EigenStructure eas = eigen_structure(doc.astar);
  const bool diagonalizable = ea.diagonalizable && eas.diagonalizable;
  const std::vector<OrderingPair> pairs =
      diagonalizable ? find_hessenberg_orderings(ea, eas, options.search) : std::vector<OrderingPair>{};
  const IrreducibilityVerdict verdict = irreducibility_for(doc, options);

  Json orderings = Json::array();
  Json splits = Json::array();
  for (const auto& pair : pairs) {
    orderings.push_back(ordering_pair_to_json(ea, eas, pair));
    if (verdict.status != Irreducibility::Irreducible || ea.d() != eas.d()) continue;
    const OrderedEigenData ord_a(ea, pair.a);
    const OrderedEigenData ord_astar(eas, pair.astar);
    splits.push_back(split_to_json(construct_split_from_hessenberg(doc.a, doc.astar, ord_a, ord_astar, verdict.status)));
  }
  Json tridiagonal{{"status", to_string(Tridiagonality::NotTridiagonal)}, {"orderings", Json::array()}};
  if (diagonalizable) {
    const TridiagonalVerdict tv = is_tridiagonal_pair(ea, eas, verdict.status, options.search);
    tridiagonal["status"] = to_string(tv.status);
    for (const auto& pair : tv.orderings) tridiagonal["orderings"].push_back(ordering_pair_to_json(ea, eas, pair));
  }
  return Json{{"field", field_to_json(doc.field)},
              {"n", doc.a.rows()},
              {"A", eigen_to_json(ea)},
              {"Astar", eigen_to_json(eas)},
              {"hessenberg", !pairs.empty()},
              {"hessenberg_orderings", std::move(orderings)},
              {"irreducible", verdict_to_json(verdict)},
              {"splits", std::move(splits)},
              {"tridiagonal", std::move(tridiagonal)},
              {"d", ea.d()},
              {"delta", eas.d()},
              {"d_equals_delta", ea.d() == eas.d()}};
}

Json check_split_report(const PairDocument& doc, const AnalyzeOptions& options) {
  if (!doc.candidate) throw Error(ErrorCode::ParseError, "no \"split\" and no truth split to check");
  const SplitDecomposition& candidate = *doc.candidate;
  const SplitCheck check = check_split(doc.a, doc.astar, candidate);
  const IrreducibilityVerdict verdict = irreducibility_for(doc, options);
  Json out{{"valid", check.valid},
           {"violation", check.valid ? Json(nullptr) : Json(check.violation)},
           {"irreducible", to_string(verdict.status)}};
  // The split determined by the orderings its eigenvalue sequences name.
  std::optional<bool> matches;
  Json formula = nullptr;
  if (check.valid) {
    const auto ord_a = OrderedEigenData::from_eigenvalues(eigen_structure(doc.a), candidate.theta);
    const auto ord_astar = OrderedEigenData::from_eigenvalues(eigen_structure(doc.astar), candidate.theta_star);
    const SplitDecomposition expected = split_from_formula(ord_a, ord_astar);
    matches = expected == candidate;
    formula = split_to_json(expected);
  }
  out["matches_formula"] = null_or(matches);
  out["formula_split"] = std::move(formula);
  return out;
}

Json oracle_report(const PairDocument& doc, const AnalyzeOptions& options) {
  const EigenStructure ea = eigen_structure(doc.a);
  const EigenStructure eas = eigen_structure(doc.astar);
  bool agree = true;
  Json out = Json::object();

  Json orderings{{"pruned", nullptr}, {"brute_force", nullptr}, {"agree", nullptr}};
  if (ea.diagonalizable && eas.diagonalizable) {
    const auto pruned = find_hessenberg_orderings(ea, eas, options.search);
    const auto brute = find_hessenberg_orderings_brute_force(ea, eas, options.search);
    orderings["pruned"] = pruned.size();
    orderings["brute_force"] = brute.size();
    orderings["agree"] = pruned == brute;
    agree = agree && pruned == brute;
  }
  out["hessenberg_orderings"] = std::move(orderings);

  const IrreducibilityVerdict fast = irreducibility_for(doc, options);
  const auto exhaustive = decide_irreducible_exhaustive(doc.a, doc.astar, options.irreducibility.brute_force_budget);
  std::optional<bool> irreducible_agree;
  if (fast.witness) {
    irreducible_agree = verify_invariant(*fast.witness, doc.a, doc.astar) && fast.witness->dim() > 0 &&
                        fast.witness->dim() < doc.a.rows();
  }
  if (exhaustive && fast.status != Irreducibility::Undetermined) {
    irreducible_agree = irreducible_agree.value_or(true) && exhaustive->status == fast.status;
  }
  agree = agree && irreducible_agree.value_or(true);
  out["irreducible"] = Json{{"fast", to_string(fast.status)},
                            {"exhaustive", exhaustive ? Json(to_string(exhaustive->status)) : Json(nullptr)},
                            {"agree", null_or(irreducible_agree)}};

  // The tridiagonal search cross-checks itself and throws on disagreement.
  Json tridiagonal{{"status", to_string(Tridiagonality::NotTridiagonal)}, {"agree", true}};
  if (ea.diagonalizable && eas.diagonalizable) {
    try {
      tridiagonal["status"] = to_string(is_tridiagonal_pair(ea, eas, fast.status, options.search).status);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OracleDisagreement) throw;
      tridiagonal["status"] = nullptr;
      tridiagonal["agree"] = false;
      agree = false;
    }
  }
  out["tridiagonal"] = std::move(tridiagonal);
  out["agree"] = agree;
  return out;
}

GeneratedInstance generate(const GenerateRequest& request) {
  const FieldSpec spec = request.field;
  if (request.dims.empty()) throw Error(ErrorCode::EmptyDims, "no blocks");
  const auto sequence = [&](const std::vector<std::string>& given) {
    std::vector<FieldElement> out;
    if (given.empty()) {
      for (std::size_t i = 0; i < request.dims.size(); ++i) out.emplace_back(spec, static_cast<long>(i));
    } else {
      for (const auto& s : given) out.push_back(FieldElement::parse(spec, s));
    }
    return out;
  };
  const SplitFormParams params{request.dims, sequence(request.theta), sequence(request.theta_star),
                               request.off_diagonal};
  GeneratedInstance instance = [&] {
    switch (request.kind) {
      case InstanceKind::TridiagonalForm: return gen_tridiagonal_form(spec, params, request.seed);
      case InstanceKind::ReducibleSum: {
        const std::vector<SplitFormParams> blocks(std::max<std::size_t>(request.blocks, 2), params);
        return gen_reducible(spec, blocks, request.seed);
      }
      case InstanceKind::Conjugated: return conjugate(gen_split_form(spec, params, request.seed), request.seed);
      case InstanceKind::SplitForm: break;
    }
    return gen_split_form(spec, params, request.seed);
  }();
  if (request.conjugate && request.kind != InstanceKind::Conjugated) instance = conjugate(instance, request.seed);
  return instance;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return 2;
    case ErrorCode::EigenvaluesOutsideField: return 3;
    case ErrorCode::SearchBudgetExceeded: return 4;
    case ErrorCode::OracleDisagreement: return 5;
    default: return 1;
  }
}

Json error_json(const Error& error) {
  return Json{{"error", {{"code", to_string(error.code())}, {"message", error.what()}, {"exit_code", exit_code(error.code())}}}};
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  render(report, 0, out);
  return out.str();
}

Outcome run(Command command, std::string_view input, const AnalyzeOptions& options, Format format) {
  Result result;
  try {
    result = run_one(command, parse_json_text(input), options);
  } catch (const Error& e) {
    result = {exit_code(e.code()), nullptr, error_json(e)};
  }
  Outcome out;
  out.exit_code = result.exit_code;
  if (!result.report.is_null()) out.out = emit(result.report, format);
  if (result.error) out.err = result.error->dump() + "\n";
  return out;
}

Outcome run_batch(Command command, std::string_view input, const AnalyzeOptions& options, Format format,
                  unsigned threads) {
  std::vector<Json> docs;
  std::vector<std::optional<Error>> parse_errors;
  const auto trimmed = input.find_first_not_of(" \t\r\n");
  if (trimmed != std::string_view::npos && input[trimmed] == '[') {
    try {
      for (auto& d : parse_json_text(input)) {
        docs.push_back(std::move(d));
        parse_errors.emplace_back();
      }
    } catch (const Error& e) {
      return {exit_code(e.code()), "", error_json(e).dump() + "\n"};
    }
  } else {
    std::istringstream lines{std::string(input)};
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        docs.push_back(parse_json_text(line));
        parse_errors.emplace_back();
      } catch (const Error& e) {
        docs.emplace_back(nullptr);
        parse_errors.emplace_back(e);
      }
    }
  }

  std::vector<Result> results(docs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      if (parse_errors[i]) {
        results[i] = {exit_code(parse_errors[i]->code()), nullptr, error_json(*parse_errors[i])};
      } else {
        results[i] = run_one(command, docs[i], options);
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(docs.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  Outcome out;
  Json all = Json::array();
  for (const auto& r : results) {
    all.push_back(r.error && r.report.is_null() ? *r.error : r.report);
    if (r.error) out.err += r.error->dump() + "\n";
    if (out.exit_code == 0) out.exit_code = r.exit_code;
  }
  out.out = emit(all, format);
  return out;
}

Outcome run_generate(const GenerateRequest& request, Format format) {
  try {
    return {0, emit(document_to_json(generate(request)), format), ""};
  } catch (const Error& e) {
    return {exit_code(e.code()), "", error_json(e).dump() + "\n"};
  }
}

}  // namespace hesspair::cli
