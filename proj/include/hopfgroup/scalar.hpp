#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hopfgroup/error.hpp"

namespace hopfgroup {

/// Exact element of a cyclotomic field Q(zeta_N).
///
/// Stored as sum c_k zeta_N^k over the power basis k < phi(N), reduced modulo
/// the N-th cyclotomic polynomial. The conductor is always the smallest N
/// whose field contains the value (so a rational value has conductor 1) and
/// is never congruent to 2 mod 4. Two values are equal iff their stored forms
/// coincide.
class CycScalar {
 public:
  using Term = std::pair<unsigned, mpq_class>;

  CycScalar() = default;
  CycScalar(long value);  // NOLINT(google-explicit-constructor)
  CycScalar(const mpq_class& value);  // NOLINT(google-explicit-constructor)

  /// zeta_N^k with k taken mod N. Throws Usage for N = 0.
  static CycScalar root_of_unity(unsigned n, long long k);

  /// Build sum c_e zeta_N^e from arbitrary exponents (reduced mod N).
  static CycScalar from_exponents(unsigned n, const std::vector<std::pair<long long, mpq_class>>& terms);

  unsigned conductor() const noexcept { return conductor_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept { return conductor_ == 1; }
  /// Rational value; Usage error if the scalar is not rational.
  mpq_class rational() const;

  CycScalar conjugate() const;
  /// Galois automorphism zeta_N -> zeta_N^a, gcd(a, N) = 1.
  CycScalar galois(long long a) const;
  /// Absolute trace down to Q.
  mpq_class trace() const;
  CycScalar inverse() const;

  CycScalar& operator+=(const CycScalar& other);
  CycScalar& operator-=(const CycScalar& other);
  CycScalar& operator*=(const CycScalar& other);
  CycScalar& operator/=(const CycScalar& other);

  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
  friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }
  CycScalar operator-() const;

  friend bool operator==(const CycScalar& a, const CycScalar& b);
  friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

  /// Text form, e.g. "1/2 + 3*z8^3". Parsed back by parse_scalar (dsl.hpp).
  std::string to_string() const;
  /// True when to_string() is a single signed product (no top-level + or -
  /// between terms), so it can be used as a factor without parentheses.
  bool is_monomial() const noexcept { return terms_.size() <= 1; }

 private:
  CycScalar(unsigned conductor, std::vector<Term> terms)
      : conductor_(conductor), terms_(std::move(terms)) {}

  static CycScalar from_dense(unsigned n, std::vector<mpq_class> dense);
  std::vector<mpq_class> dense(unsigned n) const;

  unsigned conductor_ = 1;
  std::vector<Term> terms_;
};

/// Upper bound on conductors; read once from HOPFGROUP_MAX_CONDUCTOR
/// (default 256). Exceeding it raises ErrorCode::Conductor.
unsigned max_conductor();
void set_max_conductor(unsigned limit);

/// Euler phi.
unsigned euler_phi(unsigned n);

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<long long>& cyclotomic_polynomial(unsigned n);

}  // namespace hopfgroup
