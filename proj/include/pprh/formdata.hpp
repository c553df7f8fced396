#pragma once

// Eigenform coefficient data: ingestion, Hecke extension from prime data, and
// the classical discriminant-function fixture.

#include "pprh/numeric.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pprh::formdata {

struct FieldData {
  std::string label;
  int degree = 1;
  long long discriminant = 1;
  std::vector<long long> norms_present;  // optional hint

  /// Throws InvariantViolation on a degree/discriminant pair that cannot occur.
  void validate() const;
};

/// Residue degrees of the primes above a rational prime p, e.g. {1, 1} for a
/// split prime in a quadratic field.
struct Splitting {
  long long prime = 0;
  std::vector<int> residue_degrees;
  bool operator==(const Splitting&) const = default;
};

/// A prime ideal identified by its norm and its position among the prime
/// ideals of that norm.
struct PrimeKey {
  long long norm = 0;
  int index = 0;
  auto operator<=>(const PrimeKey&) const = default;
};

struct EigenformData {
  FieldData field;
  int weight = 0;
  int sign = 1;
  std::optional<Real> conductor_scale;
  std::map<long long, Complex> coefficients;  // c(m), summed over ideals of norm m
  std::map<PrimeKey, Complex> prime_data;
  std::vector<Splitting> splitting;           // explicit splitting data, if any
  bool normalized = true;

  // Filled by extend_hecke (or by generators that produce complete data).
  long long complete_through = 0;             // absent norms <= this are zero
  std::map<long long, Real> gap_bounds;       // |true c(m) - stored c(m)| <= bound
  std::vector<PrimeKey> missing_primes;

  /// C in the functional equation: the explicit value, else D_K (n >= 2) or 1.
  Real effective_conductor_scale() const;
  Complex coefficient(long long norm) const;

  /// Throws InvariantViolation / UnsupportedWeight when an invariant fails.
  void validate() const;
};

enum class DocumentFormat { Json, Table };

DocumentFormat parse_format(const std::string& name);

EigenformData parse_eigenform(const std::string& document, DocumentFormat format);
std::string serialize(const EigenformData& data, DocumentFormat format);

/// Residue degrees above p, from the document, the quadratic character, or the
/// cyclic cubic rule; nullopt when none of these applies.
std::optional<std::vector<int>> residue_degrees(const EigenformData& data, long long p);

struct ExtendOptions {
  long long max_norm = 0;
  bool allow_gaps = false;
};

/// Fills c(m) for every norm up to max_norm from prime data via multiplicativity
/// and the prime-power recursion.
EigenformData extend_hecke(const EigenformData& data, const ExtendOptions& options);

/// Delta = q prod (1 - q^j)^24 with exact integer arithmetic.
EigenformData tau_series(long long count);

/// Critical values Lambda(f, j), j = 1..k-1, transcribed or computed elsewhere.
struct LambdaFixture {
  int weight = 0;
  int degree = 1;
  int sign = 1;
  std::map<int, Complex> values;
  Real tolerance = Real("1e-6");  // relative tolerance of the transcription
  std::string label;

  void validate() const;
  /// Soft checks (nonnegativity past the centre); one message per finding.
  std::vector<std::string> warnings() const;
};

LambdaFixture parse_lambda_fixture(const std::string& document);
std::string serialize(const LambdaFixture& fixture);

std::string read_file(const std::string& path);

/// Smallest-first list of rational primes up to limit.
std::vector<long long> primes_up_to(long long limit);

/// Kronecker symbol (d / p) for a prime p.
int kronecker_symbol(long long d, long long p);

}  // namespace pprh::formdata
