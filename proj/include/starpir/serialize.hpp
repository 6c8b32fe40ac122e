#pragma once

#include <json.hpp>

#include "starpir/audit.hpp"
#include "starpir/scheme.hpp"
#include "starpir/storage.hpp"

namespace starpir {

nlohmann::json matrix_to_json(const MatrixFp& m);
MatrixFp matrix_from_json(const FieldSpec& field, const nlohmann::json& j);

// Database document: {"p", "m", "b", "k", "files": m arrays of b x k
// integers}. Symbols outside [0, p) are rejected, never reduced.
nlohmann::json database_to_json(const Database& db);
Database database_from_json(const nlohmann::json& j);

// Transcript document: scheme parameters, generators, J, seed, and the
// per-iteration queries and responses. Self-contained: enough to re-derive
// the scheme, replay the reconstruction, and feed the privacy audit.
nlohmann::json transcript_to_json(const SchemeParams& params, std::size_t file_count,
                                  const RetrievalTranscript& transcript);

struct ParsedTranscript {
  SchemeParams params;
  std::size_t file_count;
  RetrievalTranscript transcript;
};

ParsedTranscript transcript_from_json(const nlohmann::json& j);

nlohmann::json audit_report_to_json(const AuditReport& report);

}  // namespace starpir
