#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nomic {

// Base for everything thrown by the library. exit_code() is the process exit
// code the command line tool maps the error to: 1 for malformed or infeasible
// requests, 2 for mathematical gate failures (those carry a witness).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual int exit_code() const { return 1; }
};

class UsageError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 1; }
};

class MathError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

class NotPrimeError : public UsageError {
 public:
  explicit NotPrimeError(long long p)
      : UsageError("field modulus " + std::to_string(p) + " is not prime"), p(p) {}
  long long p;
};

class FieldMismatchError : public UsageError {
 public:
  FieldMismatchError() : UsageError("operands live in different fields") {}
  using UsageError::UsageError;
};

class DimensionError : public UsageError {
 public:
  using UsageError::UsageError;
};

class ParseError : public UsageError {
 public:
  using UsageError::UsageError;
};

class UnknownFactorError : public UsageError {
 public:
  using UsageError::UsageError;
};

// Exhaustive enumeration was requested for a space too large to walk.
class InfeasibleError : public UsageError {
 public:
  using UsageError::UsageError;
};

// M^T.Omega.M != Omega; (row, col) is the first violated entry in row-major
// order and delta its deviation, printed by what().
class NotSymplecticError : public MathError {
 public:
  NotSymplecticError(std::size_t row, std::size_t col, const std::string& delta)
      : MathError("matrix is not symplectic: entry (" + std::to_string(row) + "," +
                  std::to_string(col) + ") of M^T.Omega.M - Omega equals " + delta),
        row(row),
        col(col) {}
  std::size_t row, col;
};

// A generator pair with nonzero symplectic form; (i, j) index the offending rows.
class NotIsotropicError : public MathError {
 public:
  NotIsotropicError(std::size_t i, std::size_t j, const std::string& value)
      : MathError("subspace is not isotropic: omega(b" + std::to_string(i) + ", b" +
                  std::to_string(j) + ") = " + value),
        i(i),
        j(j) {}
  std::size_t i, j;
};

class NotLagrangianError : public MathError {
 public:
  using MathError::MathError;
};

// Z.Omega.Z^T has a nonzero entry at (i, j): rows i and j of Z do not commute.
class NotPoissonError : public MathError {
 public:
  NotPoissonError(std::size_t i, std::size_t j, const std::string& bracket)
      : MathError("variable is not a Poisson variable: bracket of rows " +
                  std::to_string(i) + " and " + std::to_string(j) + " is " + bracket),
        i(i),
        j(j) {}
  std::size_t i, j;
};

class NotPhysicalError : public MathError {
 public:
  using MathError::MathError;
};

class ValueError : public UsageError {
 public:
  using UsageError::UsageError;
};

}  // namespace nomic
