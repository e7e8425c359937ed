#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "schema_check.hpp"

namespace {

bool slurp(const char* path, std::string& text) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  text = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: umbilic-schema-check SCHEMA [DOCUMENT]   (reads stdin when DOCUMENT is omitted)\n";
    return 2;
  }
  std::string schema, doc;
  if (!slurp(argv[1], schema)) {
    std::cerr << "cannot read " << argv[1] << "\n";
    return 2;
  }
  if (argc > 2) {
    if (!slurp(argv[2], doc)) {
      std::cerr << "cannot read " << argv[2] << "\n";
      return 2;
    }
  } else {
    doc.assign(std::istreambuf_iterator<char>(std::cin), {});
  }
  const std::string problem = umbilic::cli::validate_against_schema(schema, doc);
  if (!problem.empty()) {
    std::cerr << problem << "\n";
    return 1;
  }
  std::cout << "valid\n";
  return 0;
}
