#include "pspace/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace pspace {

BigRational::BigRational(long num, long den) : q_(num, den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational::BigRational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational BigRational::from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("BigRational: bad literal '" + s + "'");
  q.canonicalize();
  return BigRational(q);
}

BigRational BigRational::factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return BigRational(f);
}

BigRational BigRational::binomial(unsigned long n, unsigned long k) {
  if (k > n) return BigRational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return BigRational(b);
}

BigRational BigRational::pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e >= 0 ? e : -e));
  return e >= 0 ? BigRational(p) : BigRational(mpz_class(1), p);
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

namespace {
double log_mpz_abs(const mpz_class& z) {
  // mantissa in [0.5, 1), exponent base 2
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * M_LN2;
}
}  // namespace

double BigRational::log_abs() const {
  if (is_zero()) throw std::domain_error("BigRational: log_abs of zero");
  return log_mpz_abs(q_.get_num()) - log_mpz_abs(q_.get_den());
}

std::string BigRational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

}  // namespace pspace
