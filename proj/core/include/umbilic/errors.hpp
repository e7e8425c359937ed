#pragma once

#include <stdexcept>
#include <string>

namespace umbilic {

/// Parameters outside the domain an operation is defined on.
class ParameterOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The chart fails the immersion bound at the evaluation point.
class DegenerateImmersion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An evaluator was called where its hypothesis (e.g. umbilicity) fails.
class PreconditionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unimodular identities requested on a non-unimodular ambient or vice versa.
class FamilyMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RootFindingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace umbilic
