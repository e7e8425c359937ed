#pragma once

#include <string>

namespace umbilic::cli {

/// Validates a JSON document against a JSON Schema (draft 4). Returns an empty
/// string when valid, otherwise a one-line description of the first violation.
std::string validate_against_schema(const std::string& schema_text, const std::string& document_text);

}  // namespace umbilic::cli
