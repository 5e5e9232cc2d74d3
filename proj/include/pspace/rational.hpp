#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pspace {

/// Arbitrary-precision rational, always reduced, denominator > 0.
///
/// Thin value wrapper over GMP's mpq_class; every arithmetic result is
/// canonicalized, so the reduction invariant holds by construction.
class BigRational {
 public:
  BigRational() : q_(0) {}
  BigRational(long num) : q_(num) { q_.canonicalize(); }
  BigRational(long num, long den);
  explicit BigRational(const mpz_class& num) : q_(num) {}
  BigRational(const mpz_class& num, const mpz_class& den);
  explicit BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Parses "num" or "num/den".
  static BigRational from_string(const std::string& s);

  static BigRational factorial(unsigned long n);
  static BigRational binomial(unsigned long n, unsigned long k);
  // 2^e for any (possibly negative) exponent.
  static BigRational pow2(long e);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
  BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
  BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.q_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const BigRational& a, const BigRational& b) { return a.q_ != b.q_; }
  friend bool operator<(const BigRational& a, const BigRational& b) { return a.q_ < b.q_; }

  /// Nearest double; overflows to +-inf for huge operands (use log_abs then).
  double to_double() const { return q_.get_d(); }

  /// ln|value|; value must be nonzero. Safe for operands far outside double range.
  double log_abs() const;

  /// "num/den" (den printed even when 1, so the form round-trips the cache format).
  std::string str() const;

  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

}  // namespace pspace
