#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace superpos {

/// Normalized Hecke eigenvalues lambda_f(n) for one weight-2 form of prime
/// level q, indices contiguous from 1.
struct CoefficientTable {
  std::int64_t q = 0;
  int weight = 2;
  std::vector<double> lambda;  // lambda[n-1] = lambda_f(n)
  std::int64_t n_max() const { return static_cast<std::int64_t>(lambda.size()); }

  /// lambda_f(n); throws IncompleteDataError past n_max.
  double operator()(std::int64_t n) const;
};

enum class CoefficientFormat { Auto, Csv, Json };

/// Read and validate a coefficient table.
/// Text format: first line `# q=<prime> weight=2 normalization=unit-first-coefficient`,
/// then `<n>,<lambda_n>` with n contiguous from 1. A JSON mirror
/// {"q":..,"weight":..,"lambda":[..]} is also accepted.
/// Validation: q prime, lambda(1)=1, |lambda(n)| <= tau(n), Hecke relations
/// spot-checked on 100 deterministic random pairs.
CoefficientTable ingest_coefficients(const std::string& path,
                                     CoefficientFormat format = CoefficientFormat::Auto);

/// Validate an in-memory table (same checks as ingestion).
void validate_table(const CoefficientTable& table);

/// Sign of the functional equation: q^{1/2} lambda_f(q) rounded to +-1.
/// Throws ValidationError if |q^{1/2} lambda_f(q)| is not within [0.99, 1.01].
int sign(const CoefficientTable& table);

}  // namespace superpos
