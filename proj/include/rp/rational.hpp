#pragma once
// Exact rationals (GMP mpq) plus continued-fraction rational reconstruction
// from a high-precision real.

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include "rp/bigfloat.hpp"

namespace rp {

using Rational = mpq_class;
using Integer = mpz_class;

inline long val_p(const Integer& n, long p) {
  if (n == 0) throw std::domain_error("val_p(0)");
  Integer m = n;
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) { m /= p; v++; }
  return v;
}

inline long val_p(const Rational& q, long p) {
  if (q == 0) throw std::domain_error("val_p(0)");
  return val_p(Integer(q.get_num()), p) - val_p(Integer(q.get_den()), p);
}

inline Integer pow_z(const Integer& b, long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Integer pow_z(long b, long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

// Best rational approximation with numerator/denominator bounded by hmax,
// via the continued-fraction expansion of x.  Returns nullopt unless the
// reconstruction is stable: the candidate must agree with x to within tol and
// the next convergent must not also satisfy the tolerance with smaller error
// ambiguity (i.e. the expansion has a huge partial quotient right after the
// accepted convergent, or it terminated).
inline std::optional<Rational> rational_reconstruct(const Real& x, const Integer& hmax,
                                                    double tol_log2 = 0) {
  if (!x.is_finite()) return std::nullopt;
  // default tolerance: most of the working precision of x, so that a stray
  // convergent of moderate denominator (error ~ 1/q^2) can never be accepted
  if (tol_log2 >= 0) tol_log2 = -0.7 * static_cast<double>(x.prec());
  Real rem = x;
  Integer p0 = 1, q0 = 0, p1, q1;  // convergents
  {
    Real fl = floorr(rem);
    mpfr_get_z(p1.get_mpz_t(), fl.get(), MPFR_RNDN);
    q1 = 1;
    rem = rem - fl;
  }
  for (int it = 0; it < 10000; it++) {
    Rational cand(p1, q1);
    cand.canonicalize();
    Real diff = abs(x - Real(cand));
    double dl = diff.log2_abs();
    bool close = dl < tol_log2 + (x.is_zero() ? 0 : std::max(0.0, x.log2_abs()));
    if (close && abs(Integer(cand.get_num())) <= hmax && Integer(cand.get_den()) <= hmax)
      return cand;
    if (rem.is_zero()) break;
    rem = Real(1) / rem;
    Real fl = floorr(rem);
    Integer a;
    mpfr_get_z(a.get_mpz_t(), fl.get(), MPFR_RNDN);
    rem = rem - fl;
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (q1 > hmax * hmax) break;  // hopeless
  }
  return std::nullopt;
}

inline std::string rational_str(const Rational& q) {
  return q.get_str();
}

}  // namespace rp
