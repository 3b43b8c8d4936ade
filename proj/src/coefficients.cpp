#include "superpos/coefficients.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "superpos/arith.hpp"
#include "superpos/errors.hpp"

namespace superpos {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  const auto f = arith::factorize(n);
  return f.prime_powers.size() == 1 && f.prime_powers[0].second == 1;
}

CoefficientTable parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IncompleteDataError("ingest_coefficients: cannot open " + path, 1);
  std::string header;
  std::getline(in, header);
  CoefficientTable table;
  {
    std::int64_t q = 0;
    int weight = 0;
    if (std::sscanf(header.c_str(), "# q=%lld weight=%d normalization=unit-first-coefficient",
                    (long long*)&q, &weight) != 2)
      throw ValidationError("ingest_coefficients: malformed header line: " + header);
    table.q = q;
    table.weight = weight;
  }
  std::string line;
  std::int64_t expected_n = 1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::int64_t n = 0;
    double value = 0.0;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ValidationError("ingest_coefficients: malformed line: " + line);
    try {
      n = std::stoll(line.substr(0, comma));
      value = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ValidationError("ingest_coefficients: malformed line: " + line);
    }
    if (n != expected_n)
      throw ValidationError("ingest_coefficients: indices not contiguous at n=" +
                            std::to_string(n));
    table.lambda.push_back(value);
    ++expected_n;
  }
  return table;
}

CoefficientTable parse_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IncompleteDataError("ingest_coefficients: cannot open " + path, 1);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("ingest_coefficients: bad JSON: ") + e.what());
  }
  CoefficientTable table;
  table.q = j.at("q").get<std::int64_t>();
  table.weight = j.at("weight").get<int>();
  table.lambda = j.at("lambda").get<std::vector<double>>();
  return table;
}

}  // namespace

double CoefficientTable::operator()(std::int64_t n) const {
  if (n < 1) throw DomainError("CoefficientTable: n must be >= 1");
  if (n > n_max())
    throw IncompleteDataError("CoefficientTable: lambda(" + std::to_string(n) +
                                  ") not stored (n_max=" + std::to_string(n_max()) + ")",
                              n);
  return lambda[static_cast<std::size_t>(n - 1)];
}

void validate_table(const CoefficientTable& table) {
  if (!is_prime(table.q)) throw ValidationError("coefficients: level q must be prime");
  if (table.weight != 2) throw ValidationError("coefficients: weight must be 2");
  if (table.lambda.empty() || std::abs(table.lambda[0] - 1.0) > 1e-12)
    throw ValidationError("coefficients: lambda(1) must equal 1");
  for (std::int64_t n = 1; n <= table.n_max(); ++n) {
    const double cap = static_cast<double>(arith::tau(n));
    if (std::abs(table(n)) > cap + 1e-9)
      throw ValidationError("coefficients: |lambda(" + std::to_string(n) +
                            ")| exceeds tau(n) (Deligne bound)");
  }
  // Hecke relations lambda(m)lambda(n) = sum_{d|(m,n), q∤d} lambda(mn/d^2)
  // on 100 deterministic random pairs with mn inside the table.
  std::mt19937 rng(12345);
  std::uniform_int_distribution<std::int64_t> pick(1, std::max<std::int64_t>(1, table.n_max()));
  int checked = 0;
  int attempts = 0;
  while (checked < 100 && attempts < 100000) {
    ++attempts;
    const std::int64_t m = pick(rng), n = pick(rng);
    if (m * n > table.n_max()) continue;
    double rhs = 0.0;
    for (std::int64_t d : arith::divisors(arith::gcd64(m, n))) {
      if (d % table.q == 0) continue;
      rhs += table(m * n / (d * d));
    }
    if (std::abs(table(m) * table(n) - rhs) > 1e-8)
      throw ValidationError("coefficients: Hecke relation fails at (m,n)=(" + std::to_string(m) +
                            "," + std::to_string(n) + ")");
    ++checked;
  }
}

CoefficientTable ingest_coefficients(const std::string& path, CoefficientFormat format) {
  if (format == CoefficientFormat::Auto) {
    format = (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
                 ? CoefficientFormat::Json
                 : CoefficientFormat::Csv;
  }
  CoefficientTable table =
      (format == CoefficientFormat::Json) ? parse_json(path) : parse_csv(path);
  validate_table(table);
  return table;
}

int sign(const CoefficientTable& table) {
  const double v = std::sqrt(static_cast<double>(table.q)) * table(table.q);
  if (std::abs(std::abs(v) - 1.0) > 0.01)
    throw ValidationError("sign: q^{1/2} lambda(q) = " + std::to_string(v) +
                          " is not within 1% of +-1");
  return v > 0.0 ? 1 : -1;
}

}  // namespace superpos
