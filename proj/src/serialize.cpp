#include "starpir/serialize.hpp"

namespace starpir {

using nlohmann::json;

json matrix_to_json(const MatrixFp& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixFp matrix_from_json(const FieldSpec& field, const json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix: expected an array of rows");
  std::vector<std::vector<std::uint64_t>> rows;
  for (const json& row : j) {
    if (!row.is_array()) throw InvalidArgument("matrix: expected an array of rows");
    std::vector<std::uint64_t> values;
    for (const json& v : row) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw InvalidArgument("matrix: entries must be nonnegative integers");
      }
      const auto value = v.get<std::uint64_t>();
      if (value >= field.modulus()) {
        throw InvalidArgument("matrix: entry out of range [0, p)");
      }
      values.push_back(value);
    }
    rows.push_back(std::move(values));
  }
  return MatrixFp::from_rows(field, rows);
}

namespace {
std::uint64_t require_positive(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<std::int64_t>() <= 0) {
    throw InvalidArgument(std::string("document: missing or invalid field '") + key + "'");
  }
  return j[key].get<std::uint64_t>();
}
}  // namespace

json database_to_json(const Database& db) {
  json files = json::array();
  for (std::size_t i = 0; i < db.file_count(); ++i) files.push_back(matrix_to_json(db.file(i)));
  return json{{"p", db.field().modulus()},
              {"m", db.file_count()},
              {"b", db.rows_per_file()},
              {"k", db.row_length()},
              {"files", std::move(files)}};
}

Database database_from_json(const json& j) {
  const FieldSpec field(require_positive(j, "p"));
  const std::size_t m = require_positive(j, "m");
  const std::size_t b = require_positive(j, "b");
  const std::size_t k = require_positive(j, "k");
  if (!j.contains("files") || !j["files"].is_array() || j["files"].size() != m) {
    throw InvalidArgument("database: 'files' must list exactly m files");
  }
  std::vector<MatrixFp> files;
  for (const json& fj : j["files"]) {
    MatrixFp file = matrix_from_json(field, fj);
    if (file.rows() != b || file.cols() != k) {
      throw InvalidArgument("database: every file must be b rows of k symbols");
    }
    files.push_back(std::move(file));
  }
  return Database::from_files(field, files);
}

json transcript_to_json(const SchemeParams& params, std::size_t file_count,
                        const RetrievalTranscript& transcript) {
  json iterations = json::array();
  for (const IterationRecord& it : transcript.iterations) {
    json responses = json::array();
    for (std::size_t r = 0; r < it.responses.rows(); ++r)
      responses.push_back(it.responses.at(r, 0));
    iterations.push_back(json{{"u", it.query_set.iteration},
                              {"queries", matrix_to_json(it.query_set.queries)},
                              {"responses", std::move(responses)}});
  }
  return json{{"format", "starpir-transcript-v1"},
              {"p", params.storage_code().field().modulus()},
              {"n", params.storage_code().length()},
              {"m", file_count},
              {"b", params.rows_per_file()},
              {"s", params.iterations()},
              {"c", params.symbols_per_iteration()},
              {"g", params.stride()},
              {"j", params.j_set()},
              {"relaxed_j", params.relaxed_j()},
              {"storage_generator", matrix_to_json(params.storage_code().generator())},
              {"retrieval_generator", matrix_to_json(params.retrieval_code().generator())},
              {"file_index", transcript.file_index},
              {"seed", transcript.seed},
              {"iterations", std::move(iterations)}};
}

ParsedTranscript transcript_from_json(const json& j) {
  if (!j.contains("format") || j["format"] != "starpir-transcript-v1") {
    throw InvalidArgument("transcript: unknown format");
  }
  const FieldSpec field(require_positive(j, "p"));
  const std::size_t n = require_positive(j, "n");
  const std::size_t m = require_positive(j, "m");
  const LinearCode storage =
      LinearCode::from_generator(matrix_from_json(field, j.at("storage_generator")));
  const LinearCode retrieval =
      LinearCode::from_generator(matrix_from_json(field, j.at("retrieval_generator")));
  SchemeOptions opts;
  opts.j_choice = j.at("j").get<std::vector<std::size_t>>();
  opts.relaxed_j = j.value("relaxed_j", false);
  SchemeParams params = derive_params(storage, retrieval, opts);

  RetrievalTranscript transcript;
  transcript.file_index = j.at("file_index").get<std::size_t>();
  transcript.seed = j.at("seed").get<std::uint64_t>();
  for (const json& it : j.at("iterations")) {
    const auto u = it.at("u").get<std::size_t>();
    MatrixFp queries = matrix_from_json(field, it.at("queries"));
    const auto& rj = it.at("responses");
    MatrixFp responses(field, rj.size(), 1);
    for (std::size_t r = 0; r < rj.size(); ++r) {
      responses.set(r, 0, rj[r].get<std::uint64_t>());
    }
    QuerySet qs{u, std::move(queries), MatrixFp(field, 0, 0), MatrixFp(field, 0, 0)};
    transcript.iterations.push_back({std::move(qs), std::move(responses)});
  }
  if (n != params.storage_code().length()) {
    throw InvalidArgument("transcript: declared n does not match the storage generator");
  }
  return {std::move(params), m, std::move(transcript)};
}

json audit_report_to_json(const AuditReport& report) {
  json empirical = json::array();
  for (const EmpiricalAuditResult& e : report.empirical) {
    empirical.push_back(json{{"collusion_set", e.collusion_set},
                             {"trials", e.trials},
                             {"tv_raw", e.tv_raw},
                             {"tv_null", e.tv_null},
                             {"tv_debiased", e.tv_debiased},
                             {"pass", e.tv_debiased <= kEmpiricalTvThreshold}});
  }
  return json{{"algebraic_t", report.algebraic_t},
              {"requested_t", report.requested_t},
              {"passed", report.passed},
              {"empirical", std::move(empirical)},
              {"notes", report.notes}};
}

}  // namespace starpir
