#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace delaysl {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- expression language ---

class MalformedExpression : public Error {
 public:
  MalformedExpression(const std::string& what, std::size_t offset)
      : Error("malformed expression at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Division by zero, negative base with fractional exponent, non-finite result.
class DomainError : public Error {
 public:
  using Error::Error;
};

// --- problem validation ---

class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateTransmission : public Error {
 public:
  using Error::Error;
};

class NonpositiveStiffness : public Error {
 public:
  using Error::Error;
};

// Coefficient function failed to evaluate at an admissibility grid point.
class ExpressionEvalError : public Error {
 public:
  using Error::Error;
};

// --- integration ---

class DelayOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonfiniteState : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// --- root finding ---

class NoRootInWindow : public Error {
 public:
  using Error::Error;
};

class MultipleRootsInWindow : public Error {
 public:
  using Error::Error;
};

// --- fitting / reporting ---

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace delaysl
