#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace umbilic::cli {

enum class Bound { AtMost, AtLeast };

struct PropertyResult {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  Bound kind = Bound::AtMost;

  bool pass() const { return kind == Bound::AtMost ? value <= bound : value >= bound; }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int samples = 200;
  /// Test hook: name of a property whose input data is deliberately corrupted.
  std::string corrupt;
};

/// Names accepted by VerifyOptions::corrupt.
const std::vector<std::string>& corruptible_properties();

std::vector<PropertyResult> run_property_suite(const VerifyOptions& options);

void write_table(std::ostream& out, const std::vector<PropertyResult>& results);

}  // namespace umbilic::cli
