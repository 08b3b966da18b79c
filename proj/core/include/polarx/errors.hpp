#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polarx {

/// A value violates the hypothesis an operation is stated under.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value is outside the mathematical domain (inverse of zero,
/// a non-isotropic subspace where an isotropic one is required, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration or search was refused because the exactly predicted
/// amount of work exceeds the configured cap. Not a failure: callers
/// report it as "infeasible" together with the predicted size.
class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(std::string what, std::string predicted, std::uint64_t cap)
      : std::runtime_error(std::move(what)),
        predicted_(std::move(predicted)),
        cap_(cap) {}

  /// Exact predicted work size, as a decimal string.
  const std::string& predicted() const { return predicted_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::string predicted_;
  std::uint64_t cap_;
};

/// A cache file failed validation (bad header, malformed line, or a
/// count that disagrees with the closed formula).
class IntegrityError : public std::runtime_error {
 public:
  IntegrityError(std::string what, std::string path)
      : std::runtime_error(std::move(what)), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace polarx
