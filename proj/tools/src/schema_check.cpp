#include "schema_check.hpp"

#include <rapidjson/document.h>
#include <rapidjson/error/en.h>
#include <rapidjson/schema.h>
#include <rapidjson/stringbuffer.h>

namespace umbilic::cli {

std::string validate_against_schema(const std::string& schema_text, const std::string& document_text) {
  rapidjson::Document schema_doc;
  if (schema_doc.Parse(schema_text.c_str()).HasParseError())
    return std::string("schema parse error: ") + rapidjson::GetParseError_En(schema_doc.GetParseError());
  rapidjson::Document doc;
  if (doc.Parse(document_text.c_str()).HasParseError())
    return std::string("document parse error at offset ") + std::to_string(doc.GetErrorOffset()) + ": " +
           rapidjson::GetParseError_En(doc.GetParseError());

  const rapidjson::SchemaDocument schema(schema_doc);
  rapidjson::SchemaValidator validator(schema);
  if (doc.Accept(validator)) return {};

  rapidjson::StringBuffer schema_ptr, doc_ptr;
  validator.GetInvalidSchemaPointer().StringifyUriFragment(schema_ptr);
  validator.GetInvalidDocumentPointer().StringifyUriFragment(doc_ptr);
  return std::string("document ") + doc_ptr.GetString() + " violates '" + validator.GetInvalidSchemaKeyword() +
         "' at schema " + schema_ptr.GetString();
}

}  // namespace umbilic::cli
