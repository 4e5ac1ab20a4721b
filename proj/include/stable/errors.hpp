#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stable {

enum class ErrorKind {
  AlgebraMismatch,
  ArityError,
  NotEnumerable,
  NotStable,
  NotInSpan,
  DominationViolated,
  TranslatorInvalid,
  RadiusNotStrictlyPositive,
  ConstructionImpossible,
  GridMismatch,
  DimensionUnsupported,
  DimensionOverflow,
  NotDisjoint,
  RateNotContractive,
  MaxIterations,
  ParseError,
  ValidationError,
};

const char* error_kind_name(ErrorKind k);

// Input-shaped failures (bad file, bad scenario) exit the CLI with 2; failures
// of a mathematical precondition or construction exit with 3.
bool is_input_error(ErrorKind k);

class StableError : public std::runtime_error {
 public:
  StableError(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Failure localized to a set of atoms; `atoms` is the largest event on which
// the condition fails.
class EventError : public StableError {
 public:
  EventError(ErrorKind kind, const std::string& msg,
             std::vector<std::size_t> atoms)
      : StableError(kind, msg), atoms_(std::move(atoms)) {}
  const std::vector<std::size_t>& atoms() const { return atoms_; }

 private:
  std::vector<std::size_t> atoms_;
};

class ConstructionImpossibleError : public StableError {
 public:
  ConstructionImpossibleError(const std::string& msg, std::size_t prefix)
      : StableError(ErrorKind::ConstructionImpossible, msg), prefix_(prefix) {}
  // Longest prefix of the requested chain that the algebra admits.
  std::size_t achievable_prefix() const { return prefix_; }

 private:
  std::size_t prefix_;
};

class MaxIterationsError : public EventError {
 public:
  MaxIterationsError(const std::string& msg, std::vector<std::size_t> atoms,
                     std::size_t iterations)
      : EventError(ErrorKind::MaxIterations, msg, std::move(atoms)),
        iterations_(iterations) {}
  std::size_t iterations() const { return iterations_; }

 private:
  std::size_t iterations_;
};

// Parse/validation failure with a JSON-pointer-like location.
class PathError : public StableError {
 public:
  PathError(ErrorKind kind, const std::string& msg, std::string path)
      : StableError(kind, msg + " (at " + path + ")"), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace stable
