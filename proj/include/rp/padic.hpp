#pragma once
// p-adic numbers with explicit finite precision: x = p^val * unit with the
// unit known modulo p^(aprec - val).  `aprec` is the absolute big-O exponent,
// so a value prints as  d0.p^v + d1.p^(v+1) + ... + O(p^aprec).

#include <gmpxx.h>
#include <string>
#include <vector>
#include <stdexcept>
#include "rp/rational.hpp"

namespace rp {

class Padic {
 public:
  long p = 3;
  bool zero = true;   // zero to the stated precision
  long val = 0;       // valuation (meaningful when !zero)
  long aprec = 0;     // value known modulo p^aprec
  Integer unit;       // in [1, p^(aprec-val)), coprime to p

  Padic() = default;

  static Padic zero_to(long p, long aprec) {
    Padic x; x.p = p; x.aprec = aprec;
    return x;
  }

  static Padic from_unit(long p, long val, Integer u, long aprec) {
    Padic x; x.p = p; x.val = val; x.aprec = aprec;
    if (aprec <= val) { x.zero = true; return x; }
    Integer mod = pow_z(p, aprec - val);
    u %= mod; if (u < 0) u += mod;
    if (u == 0) { x.zero = true; return x; }
    long extra = val_p(u, p);
    if (extra > 0) {
      // normalize: fold p-powers of the residue into the valuation
      for (long i = 0; i < extra; i++) u /= p;
      x.val += extra;
      mod = pow_z(p, aprec - x.val);
      u %= mod;
      if (u == 0) { x.zero = true; return x; }
    }
    x.zero = false; x.unit = u;
    return x;
  }

  static Padic from_integer(const Integer& n, long p, long aprec) {
    return from_unit(p, 0, n, aprec);
  }

  // q = a/b with p∤b required unless the valuation is genuinely negative,
  // in which case aprec still refers to the absolute exponent.
  static Padic from_rational(const Rational& q, long p, long aprec) {
    if (q == 0) return zero_to(p, aprec);
    long v = val_p(q, p);
    Integer num = q.get_num(), den = q.get_den();
    // strip p-powers
    long vn = (num != 0) ? val_p(num, p) : 0;
    for (long i = 0; i < vn; i++) num /= p;
    long vd = val_p(den, p);
    for (long i = 0; i < vd; i++) den /= p;
    if (aprec <= v) return zero_to(p, aprec);
    Integer mod = pow_z(p, aprec - v);
    Integer deninv;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw std::domain_error("Padic::from_rational: denominator not invertible");
    return from_unit(p, v, num * deninv, aprec);
  }

  long rel_prec() const { return zero ? 0 : aprec - val; }

  bool is_unit() const { return !zero && val == 0; }

  friend Padic operator*(const Padic& a, const Padic& b) {
    if (a.p != b.p) throw std::invalid_argument("Padic: prime mismatch");
    if (a.zero || b.zero) {
      long ap = a.zero ? a.aprec + (b.zero ? 0 : b.val) : b.aprec + a.val;
      if (a.zero && b.zero) ap = std::min(a.aprec + b.aprec, std::max(a.aprec, b.aprec));
      return zero_to(a.p, ap);
    }
    long rel = std::min(a.rel_prec(), b.rel_prec());
    return from_unit(a.p, a.val + b.val, a.unit * b.unit, a.val + b.val + rel);
  }

  friend Padic operator/(const Padic& a, const Padic& b) {
    if (b.zero) throw std::domain_error("Padic: division by (precision-)zero");
    long rel = std::min(a.zero ? a.aprec : a.rel_prec(), b.rel_prec());
    if (a.zero) return zero_to(a.p, a.aprec - b.val);
    Integer mod = pow_z(a.p, rel);
    Integer binv;
    mpz_invert(binv.get_mpz_t(), b.unit.get_mpz_t(), mod.get_mpz_t());
    return from_unit(a.p, a.val - b.val, a.unit * binv, a.val - b.val + rel);
  }

  friend Padic operator+(const Padic& a, const Padic& b) {
    if (a.p != b.p) throw std::invalid_argument("Padic: prime mismatch");
    long ap = std::min(a.aprec, b.aprec);
    if (a.zero && b.zero) return zero_to(a.p, ap);
    if (a.zero) { Padic r = b; r.clamp(ap); return r; }
    if (b.zero) { Padic r = a; r.clamp(ap); return r; }
    long v = std::min(a.val, b.val);
    Integer s = a.unit * pow_z(a.p, a.val - v) + b.unit * pow_z(b.p, b.val - v);
    return from_unit(a.p, v, s, ap);
  }
  friend Padic operator-(const Padic& a, const Padic& b) { return a + b.negate(); }

  Padic negate() const {
    Padic r = *this;
    if (!r.zero) {
      Integer mod = pow_z(p, aprec - val);
      r.unit = (mod - unit) % mod;
    }
    return r;
  }

  void clamp(long new_aprec) {
    if (new_aprec >= aprec) return;
    *this = zero ? zero_to(p, new_aprec) : from_unit(p, val, unit, new_aprec);
  }

  // p-adic digits d_val, d_{val+1}, ..., d_{aprec-1}
  std::vector<long> digits() const {
    std::vector<long> d;
    if (zero) return d;
    Integer u = unit;
    for (long i = val; i < aprec; i++) {
      d.push_back(mpz_fdiv_ui(u.get_mpz_t(), p));
      u /= p;
    }
    return d;
  }

  // human-readable expansion: "1.3^{0} + 2.3^{1} + O(3^{2})"
  std::string str() const {
    std::string s;
    if (!zero) {
      auto d = digits();
      bool first = true;
      for (size_t i = 0; i < d.size(); i++) {
        if (d[i] == 0) continue;
        if (!first) s += " + ";
        s += std::to_string(d[i]) + "." + std::to_string(p) + "^{" +
             std::to_string(val + (long)i) + "}";
        first = false;
      }
      if (first) s += "0";  // cannot happen for normalized values
      s += " + ";
    }
    s += "O(" + std::to_string(p) + "^{" + std::to_string(aprec) + "})";
    return s;
  }

  // drop to a smaller absolute precision O(p^new_aprec)
  Padic truncated(long new_aprec) const {
    if (new_aprec > aprec)
      throw std::domain_error("Padic::truncated: cannot gain precision");
    if (zero || val >= new_aprec) return zero_to(p, new_aprec);
    return from_unit(p, val, unit, new_aprec);
  }

  // residue modulo p^k (requires val >= 0 and k <= aprec)
  Integer residue(long k) const {
    if (!zero && val < 0) throw std::domain_error("Padic::residue: negative valuation");
    if (k > aprec) throw std::domain_error("Padic::residue: beyond precision");
    if (zero) return 0;
    Integer r = unit * pow_z(p, val);
    return r % pow_z(p, k);
  }

  friend bool congruent(const Padic& a, const Padic& b, long k) {
    Integer m = pow_z(a.p, k);
    return ((a.residue(k) - b.residue(k)) % m) == 0;
  }
};

// Unit root of x^2 - a_p x + eta * p^(k-1) via Hensel lifting.
// Requires p ∤ a_p (ordinarity); seed is a_p mod p.
inline Padic hensel_unit_root(const Integer& ap, long eta, long p, long k, long prec) {
  if (mpz_divisible_ui_p(ap.get_mpz_t(), p))
    throw std::domain_error("hensel_unit_root: form not ordinary at p (p | a_p)");
  Integer c = Integer(eta) * pow_z(p, k - 1);
  Integer x = ap % p; if (x < 0) x += p;
  long have = 1;
  while (have < prec) {
    long next = std::min(2 * have, prec);
    Integer mod = pow_z(p, next);
    // Newton: x <- x - f(x)/f'(x),  f(x) = x^2 - ap x + c
    Integer fx = (x * x - ap * x + c) % mod;
    Integer fpx = (2 * x - ap) % mod;
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), fpx.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw std::domain_error("hensel_unit_root: derivative not invertible");
    x = (x - fx * inv) % mod;
    if (x < 0) x += mod;
    have = next;
  }
  Padic r = Padic::from_unit(p, 0, x, prec);
  // sanity: f(root) ≡ 0
  Integer check = (x * x - ap * x + c) % pow_z(p, prec);
  if (check != 0) throw std::runtime_error("hensel_unit_root: lift verification failed");
  return r;
}

}  // namespace rp
