#ifndef SKEWPBW_ERRORS_HPP
#define SKEWPBW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skewpbw {

// Caller broke a documented precondition (j > m in a q-binomial, empty word
// passed to is_standard, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Line-numbered problems in presentation files and expressions.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Input that parses but is mathematically unusable (inhomogeneous relation,
// non-Hopf relation, non-coideal generator set). `witness` carries the
// rendered counterexample when there is one.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& what, std::string witness = {})
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

// An internal consistency check failed. Seeing one of these means either the
// input violates an unchecked hypothesis or there is a bug in the engine.
class EngineFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A computation would need words longer than the presentation's bound.
class OutOfBound : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Specializing q to a root of unity hit a denominator divisible by the
// cyclotomic polynomial.
class SpecializationPole : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace skewpbw

#endif  // SKEWPBW_ERRORS_HPP
