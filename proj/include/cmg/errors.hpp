#pragma once

#include <stdexcept>
#include <string>

namespace cmg {

// Error hierarchy. Every failure mode surfaces as a subclass of Error so
// callers (CLI, tests) can distinguish bad input from internal trouble.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Incompatible matrix/vector shapes.
struct DimensionError : Error {
  using Error::Error;
};

// Operator family fails the commutativity precondition.
struct CommutativityError : Error {
  using Error::Error;
};

// Numerical procedure could not reach its contract (clustering, rank, ...).
struct NumericalError : Error {
  using Error::Error;
};

// Group closure exceeded the cap or generators were unusable.
struct GenerationError : Error {
  using Error::Error;
};

// Malformed caller input (sizes, ranges, file contents).
struct InputError : Error {
  using Error::Error;
};

// The group is not generated by its reflections.
struct HypothesisError : Error {
  using Error::Error;
};

// Matrix does not normalize the group.
struct NormalizerError : Error {
  using Error::Error;
};

// Automorphism fixes no regular vector, or a base point is not regular.
struct NotRegularError : Error {
  using Error::Error;
};

// Parameter not stable under the requested automorphism, or ill-formed.
struct ParameterError : Error {
  using Error::Error;
};

// Contract that should be unreachable was violated; indicates a bug.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace cmg
