#pragma once

#include <stdexcept>
#include <string>

namespace qfex {

/// Base class for all qfex error conditions.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a precondition (bad prime, bad range, ...).
class argument_error : public error {
 public:
  using error::error;
};

/// Operands have incompatible shapes (vector lengths, matrix dimensions, moduli).
class dimension_error : public argument_error {
 public:
  using argument_error::argument_error;
};

/// Input data fails a physical-validity check (trace preservation, complete
/// positivity, probability normalization).
class validation_error : public error {
 public:
  using error::error;
};

/// A requested exact enumeration or dense simulation exceeds the hard caps.
class resource_error : public error {
 public:
  using error::error;
};

/// A quantity the library guarantees internally came out wrong at runtime.
class invariant_violation : public error {
 public:
  using error::error;
};

/// Two independent solvers for the same quantity disagree beyond tolerance.
class solver_inconsistency : public invariant_violation {
 public:
  using invariant_violation::invariant_violation;
};

}  // namespace qfex
