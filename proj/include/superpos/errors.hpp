#pragma once

#include <stdexcept>
#include <string>

namespace superpos {

/// Input outside the documented domain of an operation.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Evaluation requested at a pole.
class PoleError : public DomainError {
public:
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

/// A numerical routine could not reach the requested tolerance.
/// Carries the best estimate obtained so far.
class AccuracyError : public std::runtime_error {
public:
  AccuracyError(const std::string& what, double best_value, double error_estimate)
      : std::runtime_error(what), best_value(best_value), error_estimate(error_estimate) {}
  double best_value;
  double error_estimate;
};

/// A coefficient table does not extend far enough for the requested computation.
class IncompleteDataError : public std::runtime_error {
public:
  IncompleteDataError(const std::string& what, long long first_missing_index)
      : std::runtime_error(what), first_missing_index(first_missing_index) {}
  long long first_missing_index;
};

/// Ingested data failed a structural or arithmetic invariant.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace superpos
