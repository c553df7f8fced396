#include "pprh/errors.hpp"
#include "pprh/formdata.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>

namespace pprh::formdata {

namespace {

long long power_mod(long long base, long long exponent, long long modulus) {
  __int128 result = 1, b = ((base % modulus) + modulus) % modulus;
  while (exponent > 0) {
    if (exponent & 1) result = result * b % modulus;
    b = b * b % modulus;
    exponent >>= 1;
  }
  return static_cast<long long>(result);
}

bool is_square(long long d, long long& root) {
  if (d < 0) return false;
  long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(d))));
  while (r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  root = r;
  return r * r == d;
}

// Number of ideals of norm p^e above p: tuples (r_i) with sum f_i r_i = e.
long long count_ideals(const std::vector<int>& degrees, int e) {
  std::vector<long long> ways(e + 1, 0);
  ways[0] = 1;
  for (int f : degrees) {
    for (int total = f; total <= e; ++total) ways[total] += ways[total - f];
  }
  return ways[e];
}

const Real& relative_consistency() {
  static const Real tol("1e-9");
  return tol;
}

struct LocalValue {
  Complex known;
  Real bound;  // majorant of the unknown remainder
  bool attainable = false;
};

}  // namespace

void FieldData::validate() const {
  if (degree < 1) throw InvariantViolation("field degree must be >= 1");
  if (discriminant < 1) throw InvariantViolation("field discriminant must be >= 1");
  if (degree == 1 && discriminant != 1) throw InvariantViolation("degree 1 requires discriminant 1");
  if (degree >= 2) {
    // Minkowski: D_K >= (n^n / n!)^2
    Real ratio = 1;
    for (int j = 1; j <= degree; ++j) ratio *= Real(degree) / j;
    if (Real(discriminant) < ratio * ratio) {
      throw InvariantViolation("discriminant " + std::to_string(discriminant) +
                               " is below Minkowski's bound for degree " + std::to_string(degree));
    }
  }
  for (std::size_t i = 1; i < norms_present.size(); ++i) {
    if (norms_present[i] <= norms_present[i - 1]) throw InvariantViolation("norms_present must be sorted");
  }
}

Real EigenformData::effective_conductor_scale() const {
  if (conductor_scale) return *conductor_scale;
  return field.degree >= 2 ? Real(field.discriminant) : Real(1);
}

Complex EigenformData::coefficient(long long norm) const {
  const auto it = coefficients.find(norm);
  return it == coefficients.end() ? Complex(0) : it->second;
}

void EigenformData::validate() const {
  field.validate();
  if (weight % 2 != 0 || weight < 4) {
    throw UnsupportedWeight("weight must be even and >= 4, got " + std::to_string(weight));
  }
  if (sign != 1 && sign != -1) throw InvariantViolation("sign must be +1 or -1");
  if (conductor_scale && !(*conductor_scale > 0)) throw InvariantViolation("conductor scale must be positive");
  for (const auto& [norm, value] : coefficients) {
    if (norm <= 0) throw InvariantViolation("coefficient norms must be positive (no constant term)");
  }
  for (const auto& [key, value] : prime_data) {
    if (key.norm < 2 || key.index < 0) throw InvariantViolation("invalid prime key");
  }
  if (normalized) {
    const auto it = coefficients.find(1);
    if (it == coefficients.end()) throw InvariantViolation("normalized form needs the norm-1 coefficient");
    if (abs(it->second - Complex(1)) > Real("1e-12")) {
      throw InvariantViolation("normalized form needs c(1) = 1");
    }
  }
  for (const auto& s : splitting) {
    int total = 0;
    for (int f : s.residue_degrees) {
      if (f < 1) throw InvariantViolation("residue degrees must be positive");
      total += f;
    }
    if (s.residue_degrees.empty() || total > field.degree) {
      throw InvariantViolation("splitting of " + std::to_string(s.prime) + " is inconsistent with the degree");
    }
  }
}

std::vector<long long> primes_up_to(long long limit) {
  std::vector<long long> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (long long p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (long long q = p * p; q <= limit; q += p) composite[q] = true;
  }
  return primes;
}

int kronecker_symbol(long long d, long long p) {
  if (p == 2) {
    if (d % 2 == 0) return 0;
    const long long r = ((d % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const long long r = ((d % p) + p) % p;
  if (r == 0) return 0;
  return power_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::optional<std::vector<int>> residue_degrees(const EigenformData& data, long long p) {
  for (const auto& s : data.splitting) {
    if (s.prime == p) return s.residue_degrees;
  }
  const int n = data.field.degree;
  const long long d = data.field.discriminant;
  if (n == 1) return std::vector<int>{1};
  if (n == 2) {
    switch (kronecker_symbol(d, p)) {
      case 1: return std::vector<int>{1, 1};
      case -1: return std::vector<int>{2};
      default: return std::vector<int>{1};
    }
  }
  long long f = 0;
  if (n == 3 && is_square(d, f) && (f == 7 || f == 9)) {
    // cyclic cubic fields of conductor 7 and 9
    if (p == 7 && f == 7) return std::vector<int>{1};
    if (p == 3 && f == 9) return std::vector<int>{1};
    const long long r = p % f;
    if (r == 1 || r == f - 1) return std::vector<int>{1, 1, 1};
    return std::vector<int>{3};
  }
  return std::nullopt;
}

EigenformData extend_hecke(const EigenformData& data, const ExtendOptions& options) {
  data.validate();
  if (options.max_norm < 1) throw DomainError("max_norm must be >= 1");
  if (!data.normalized) throw InvariantViolation("Hecke extension needs a normalized eigenform");
  const long long limit = options.max_norm;
  const int k = data.weight;

  EigenformData out = data;
  out.gap_bounds.clear();
  out.missing_primes.clear();

  // Per rational prime p: value and gap majorant of c(p^e), e = 0, 1, ...
  std::map<long long, std::vector<LocalValue>> local;
  for (long long p : primes_up_to(limit)) {
    const auto degrees = residue_degrees(data, p);
    if (!degrees) {
      throw MissingPrime("splitting of " + std::to_string(p) + " is unknown; add a splitting entry");
    }
    int top_exponent = 0;
    for (long long q = p; q <= limit; q *= p) ++top_exponent;

    // Prime ideals above p with their coefficient tables a(P^r).
    struct Ideal {
      long long norm;
      int f;
      bool known;
      std::vector<Complex> powers;  // a(P^r), r = 0.. while N^r <= limit
      std::vector<Real> majorant;   // (r+1) N^(r(k-1)/2)
    };
    std::vector<Ideal> ideals;
    std::map<long long, int> next_index;
    for (int f : *degrees) {
      long long norm = 1;
      bool fits = true;
      for (int j = 0; j < f; ++j) {
        if (norm > limit / p) {
          fits = false;
          break;
        }
        norm *= p;
      }
      const int index = next_index[f]++;
      if (!fits) continue;
      Ideal ideal{norm, f, true, {}, {}};
      Complex a;
      const PrimeKey key{norm, index};
      const bool listed_at_norm = std::any_of(data.prime_data.begin(), data.prime_data.end(),
                                              [&](const auto& kv) { return kv.first.norm == norm; });
      if (auto it = data.prime_data.find(key); it != data.prime_data.end()) {
        a = it->second;
      } else if (!listed_at_norm && data.coefficients.count(norm)) {
        if (count_ideals(*degrees, f) != 1) {
          throw AmbiguousSplitClass("norm " + std::to_string(norm) +
                                    " carries several ideals; list the prime coefficients individually");
        }
        a = data.coefficients.at(norm);
      } else if (options.allow_gaps) {
        ideal.known = false;
        out.missing_primes.push_back(key);
      } else {
        throw MissingPrime("no coefficient for the prime ideal of norm " + std::to_string(norm) +
                           " (index " + std::to_string(index) + ")");
      }
      ideal.powers.push_back(Complex(1));
      ideal.majorant.push_back(Real(1));
      const Real norm_power = pow(Real(norm), k - 1);
      for (long long q = norm; q <= limit; q *= norm) {
        const std::size_t r = ideal.powers.size();
        Complex next = a * ideal.powers[r - 1];
        if (r >= 2) next -= Complex(norm_power) * ideal.powers[r - 2];
        ideal.powers.push_back(ideal.known ? next : Complex(0));
        ideal.majorant.push_back(Real(r + 1) * pow(Real(norm), Real(r * (k - 1)) / 2));
        if (q > limit / norm) break;
      }
      ideals.push_back(std::move(ideal));
    }

    std::vector<LocalValue> table(top_exponent + 1);
    table[0] = {Complex(1), Real(0), true};
    for (int e = 1; e <= top_exponent; ++e) {
      LocalValue& cell = table[e];
      cell.known = Complex(0);
      cell.bound = 0;
      // Enumerate exponent tuples with sum f_i r_i = e.
      std::function<void(std::size_t, int, Complex, Real, bool)> walk =
          [&](std::size_t i, int remaining, Complex product, Real magnitude, bool exact) {
            if (i == ideals.size()) {
              if (remaining != 0) return;
              cell.attainable = true;
              if (exact) {
                cell.known += product;
              } else {
                cell.bound += magnitude;
              }
              return;
            }
            const Ideal& ideal = ideals[i];
            for (int r = 0; r * ideal.f <= remaining && r < static_cast<int>(ideal.powers.size()); ++r) {
              const bool unknown = !ideal.known && r > 0;
              walk(i + 1, remaining - r * ideal.f, product * ideal.powers[r],
                   magnitude * (unknown ? ideal.majorant[r] : Real(abs(ideal.powers[r]))), exact && !unknown);
            }
          };
      walk(0, e, Complex(1), Real(1), true);
    }
    local.emplace(p, std::move(table));
  }

  // Multiplicativity across rational primes.
  std::vector<long long> smallest_factor(static_cast<std::size_t>(limit) + 1, 0);
  for (long long p : primes_up_to(limit)) {
    for (long long q = p; q <= limit; q += p) {
      if (smallest_factor[q] == 0) smallest_factor[q] = p;
    }
  }
  std::map<long long, Complex> computed;
  for (long long m = 1; m <= limit; ++m) {
    Complex known(1);
    Real known_abs = 1, widened = 1;
    bool attainable = true;
    long long rest = m;
    while (rest > 1) {
      const long long p = smallest_factor[rest];
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      const LocalValue& cell = local.at(p)[e];
      if (!cell.attainable) {
        attainable = false;
        break;
      }
      known *= cell.known;
      known_abs *= abs(cell.known);
      widened *= abs(cell.known) + cell.bound;
    }
    if (!attainable) continue;
    computed[m] = known;
    const Real bound = widened - known_abs;
    if (bound > 0) out.gap_bounds[m] = bound;
  }

  for (const auto& [norm, listed] : data.coefficients) {
    if (norm > limit) continue;
    const auto it = computed.find(norm);
    const Complex value = it == computed.end() ? Complex(0) : it->second;
    const Real bound = out.gap_bounds.count(norm) ? out.gap_bounds.at(norm) : Real(0);
    const Real scale = std::max({Real(abs(listed)), Real(abs(value)), Real(1)});
    if (abs(listed - value) > bound + relative_consistency() * scale) {
      throw InvariantViolation("listed c(" + std::to_string(norm) + ") = " + to_string(listed.real(), 20) +
                               " disagrees with the Hecke value " + to_string(value.real(), 20));
    }
  }

  out.coefficients.clear();
  for (const auto& [norm, value] : computed) out.coefficients.emplace(norm, value);
  for (const auto& [norm, listed] : data.coefficients) {
    if (norm > limit) out.coefficients.emplace(norm, listed);
  }
  out.complete_through = limit;
  return out;
}

EigenformData tau_series(long long count) {
  using boost::multiprecision::cpp_int;
  if (count < 1) throw DomainError("tau_series needs count >= 1");
  const std::size_t size = static_cast<std::size_t>(count);  // coefficients of q^0 .. q^(count-1)
  // prod (1 - q^j)^3 = sum_k (-1)^k (2k+1) q^(k(k+1)/2)
  std::vector<cpp_int> cube(size, 0);
  for (long long j = 0;; ++j) {
    const long long exponent = j * (j + 1) / 2;
    if (exponent >= count) break;
    cube[exponent] = (j % 2 == 0 ? 1 : -1) * (2 * j + 1);
  }
  auto square = [size](const std::vector<cpp_int>& a) {
    std::vector<cpp_int> out(size, 0);
    for (std::size_t i = 0; i < size; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; i + j < size; ++j) out[i + j] += a[i] * a[j];
    }
    return out;
  };
  const auto power24 = square(square(square(cube)));  // exponent 3 * 2^3

  EigenformData data;
  data.field = FieldData{"Q", 1, 1, {}};
  data.weight = 12;
  data.sign = 1;
  data.normalized = true;
  for (long long m = 1; m <= count; ++m) {
    data.coefficients.emplace(m, Complex(Real(power24[m - 1].str())));
  }
  data.complete_through = count;
  return data;
}

void LambdaFixture::validate() const {
  if (weight % 2 != 0 || weight < 4) throw UnsupportedWeight("fixture weight must be even and >= 4");
  if (degree < 1) throw InvariantViolation("fixture degree must be >= 1");
  if (sign != 1 && sign != -1) throw InvariantViolation("fixture sign must be +1 or -1");
  if (!(tolerance > 0)) throw InvariantViolation("fixture tolerance must be positive");
  Real scale = 0;
  for (const auto& [s, v] : values) {
    if (s < 1 || s > weight - 1) throw InvariantViolation("fixture s outside 1..k-1");
    scale = std::max(scale, Real(abs(v)));
  }
  for (const auto& [s, v] : values) {
    const auto partner = values.find(weight - s);
    if (partner == values.end()) continue;
    if (abs(v - Complex(Real(sign)) * partner->second) > tolerance * scale) {
      throw InvariantViolation("fixture values at s = " + std::to_string(s) + " and " +
                               std::to_string(weight - s) + " violate the functional equation");
    }
  }
}

std::vector<std::string> LambdaFixture::warnings() const {
  std::vector<std::string> out;
  for (const auto& [s, v] : values) {
    if (2 * s >= weight && v.real() < 0) {
      out.push_back("Lambda(" + std::to_string(s) + ") is negative");
    }
  }
  return out;
}

}  // namespace pprh::formdata
