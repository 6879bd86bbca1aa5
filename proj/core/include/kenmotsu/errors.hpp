#pragma once

#include <stdexcept>
#include <string>

namespace kenmotsu {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Slot index out of range, or a slot of the wrong variance for the operation.
class SlotError : public Error {
public:
  using Error::Error;
};

/// A point (or a finite-difference stencil around it) leaves the chart domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Metric not symmetric positive definite at the queried point.
class DegenerateMetricError : public Error {
public:
  using Error::Error;
};

/// Rank not supported by an operation.
class RankError : public Error {
public:
  using Error::Error;
};

} // namespace kenmotsu

namespace kenmotsu {

/// An almost contact structure failed its axioms where they are a precondition.
class StructureError : public Error {
public:
  using Error::Error;
};

} // namespace kenmotsu
