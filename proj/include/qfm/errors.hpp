#pragma once

#include <stdexcept>
#include <string>

namespace qfm {

// Bad input to a mathematical operation (zero coefficient, degenerate form,
// non-prime modulus, out-of-range twist).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation called outside its documented precondition.
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A bounded search or factorization ran out of its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FactorizationBudgetExceeded : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class OracleBudgetExceeded : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class WitnessNotFound : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

// An invariant that the theory guarantees did not hold. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qfm
