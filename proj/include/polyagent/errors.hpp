#pragma once

#include <stdexcept>
#include <string>

namespace polyagent {

// Base class for all library errors. The CLI maps subclasses to exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lens/system endpoints do not line up (dom != cod, iface != iface).
struct InterfaceMismatch : Error {
  using Error::Error;
};

// Carriers of channels/distributions do not line up.
struct CarrierMismatch : Error {
  using Error::Error;
};

// An enumeration would exceed the configured size guard. Carries the
// computed cardinality (or "overflow" when it does not fit in 64 bits).
struct SizeGuardExceeded : Error {
  SizeGuardExceeded(const std::string& what, std::string cardinality)
      : Error(what), cardinality(std::move(cardinality)) {}
  std::string cardinality;
};

// An observation has (numerically) zero marginal probability.
struct ZeroEvidence : Error {
  using Error::Error;
};

// A FinCategory fails its closure/associativity/unit checks.
struct InvalidCategory : Error {
  using Error::Error;
};

// A morphism label does not exist in the category.
struct UnknownMorphism : Error {
  using Error::Error;
};

// The current position has an empty direction set.
struct NoAvailableAction : Error {
  using Error::Error;
};

// A candidate system morphism carries mass between states whose output
// positions differ, so the dependent domain is ill-typed.
struct IncompatibleOutputs : Error {
  using Error::Error;
};

// Unrolling requested on an interface that is not closed (not y-shaped).
struct InterfaceNotClosed : Error {
  using Error::Error;
};

// A precomputed morphism table is missing for a required object pair.
struct MissingTable : Error {
  using Error::Error;
};

// Scenario file is not syntactically valid JSON / violates the schema.
struct ParseError : Error {
  using Error::Error;
};

// Scenario references a name that is not declared.
struct ReferenceError : Error {
  using Error::Error;
};

// A declared object fails its type invariants.
struct InvariantViolation : Error {
  using Error::Error;
};

}  // namespace polyagent
