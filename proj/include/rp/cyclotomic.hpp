#pragma once
// Elements of Q(zeta_m) in the power basis 1, z, ..., z^(phi(m)-1) modulo the
// m-th cyclotomic polynomial.  Orders stay small here (divisors of a few
// hundred), so dense exact arithmetic is plenty.

#include <gmpxx.h>
#include <map>
#include <numeric>
#include <vector>
#include <stdexcept>
#include "rp/rational.hpp"
#include "rp/bigfloat.hpp"

namespace rp {

namespace detail {

using QPoly = std::vector<Rational>;  // coefficient list, low degree first

inline void qpoly_trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
  return r;
}

// division with remainder by a monic divisor
inline void qpoly_divmod(QPoly a, const QPoly& d, QPoly& quo, QPoly& rem) {
  if (d.empty() || d.back() != 1)
    throw std::invalid_argument("qpoly_divmod: divisor must be monic");
  quo.assign(a.size() > d.size() - 1 ? a.size() - d.size() + 1 : 0, Rational(0));
  while (a.size() >= d.size()) {
    Rational c = a.back();
    size_t shift = a.size() - d.size();
    quo[shift] = c;
    for (size_t i = 0; i < d.size(); i++) a[shift + i] -= c * d[i];
    qpoly_trim(a);
    if (!a.empty() && a.size() >= d.size() && a.back() == 0) qpoly_trim(a);
  }
  rem = a;
}

// m-th cyclotomic polynomial, computed by exact division and cached
inline const QPoly& cyclotomic_poly(long m) {
  static std::map<long, QPoly> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  QPoly xm1(m + 1, Rational(0));
  xm1[0] = -1; xm1[m] = 1;
  QPoly acc = xm1;
  for (long d = 1; d < m; d++) {
    if (m % d) continue;
    const QPoly& phd = cyclotomic_poly(d);
    QPoly quo, rem;
    qpoly_divmod(acc, phd, quo, rem);
    if (!rem.empty()) throw std::logic_error("cyclotomic_poly: nonzero remainder");
    acc = quo;
  }
  return cache.emplace(m, acc).first->second;
}

inline QPoly qpoly_mod_cyclo(QPoly a, long m) {
  const QPoly& phi = cyclotomic_poly(m);
  if (a.size() < phi.size()) return a;
  QPoly quo, rem;
  qpoly_divmod(std::move(a), phi, quo, rem);
  return rem;
}

}  // namespace detail

class Cyclotomic {
 public:
  long m = 1;                       // root-of-unity order
  std::vector<Rational> c;          // length deg Phi_m, low degree first

  Cyclotomic() : m(1), c{Rational(0)} {}
  explicit Cyclotomic(const Rational& q, long order = 1) : m(order) {
    c.assign(deg(), Rational(0));
    c[0] = q;
  }

  long deg() const { return static_cast<long>(detail::cyclotomic_poly(m).size()) - 1; }

  static Cyclotomic zeta(long m, long power = 1) {
    Cyclotomic z;
    z.m = m;
    z.c.assign(z.deg(), Rational(0));
    detail::QPoly p(((power % m) + m) % m + 1, Rational(0));
    p.back() = 1;
    z.set_from(p);
    return z;
  }

  void set_from(detail::QPoly p) {
    p = detail::qpoly_mod_cyclo(std::move(p), m);
    c.assign(deg(), Rational(0));
    for (size_t i = 0; i < p.size(); i++) c[i] = p[i];
  }

  // lift both operands into Q(zeta_lcm)
  static long common_order(const Cyclotomic& a, const Cyclotomic& b) {
    return std::lcm(a.m, b.m);
  }
  Cyclotomic to_order(long mm) const {
    if (mm == m) return *this;
    if (mm % m) throw std::invalid_argument("Cyclotomic::to_order: not a multiple");
    long k = mm / m;  // zeta_m = zeta_mm^k
    Cyclotomic r;
    r.m = mm;
    detail::QPoly p;
    for (size_t i = 0; i < c.size(); i++) {
      size_t e = (i * k) % mm;
      if (p.size() <= e) p.resize(e + 1, Rational(0));
      p[e] += c[i];
    }
    r.set_from(std::move(p));
    return r;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    long mm = common_order(a, b);
    Cyclotomic x = a.to_order(mm), y = b.to_order(mm);
    for (size_t i = 0; i < x.c.size(); i++) x.c[i] += y.c[i];
    return x;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    long mm = common_order(a, b);
    Cyclotomic x = a.to_order(mm), y = b.to_order(mm);
    for (size_t i = 0; i < x.c.size(); i++) x.c[i] -= y.c[i];
    return x;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    long mm = common_order(a, b);
    Cyclotomic x = a.to_order(mm), y = b.to_order(mm);
    detail::QPoly p = detail::qpoly_mul(
        detail::QPoly(x.c.begin(), x.c.end()), detail::QPoly(y.c.begin(), y.c.end()));
    Cyclotomic r;
    r.m = mm;
    r.set_from(std::move(p));
    return r;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Rational& q) {
    Cyclotomic r = a;
    for (auto& x : r.c) x *= q;
    return r;
  }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    long mm = common_order(a, b);
    return a.to_order(mm).c == b.to_order(mm).c;
  }
  bool is_zero() const {
    for (auto& x : c) if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c.size(); i++) if (c[i] != 0) return false;
    return true;
  }
  Rational as_rational() const {
    if (!is_rational()) throw std::domain_error("Cyclotomic: not rational");
    return c[0];
  }

  // Galois action zeta -> zeta^a, gcd(a, m) = 1
  Cyclotomic galois(long a) const {
    a = ((a % m) + m) % m;
    if (std::gcd(a, m) != 1) throw std::invalid_argument("Cyclotomic::galois: not coprime");
    detail::QPoly p;
    for (size_t i = 0; i < c.size(); i++) {
      size_t e = (i * a) % m;
      if (p.size() <= e) p.resize(e + 1, Rational(0));
      p[e] += c[i];
    }
    Cyclotomic r;
    r.m = m;
    r.set_from(std::move(p));
    return r;
  }
  Cyclotomic conjugate() const { return m == 1 ? *this : galois(m - 1); }

  Cyclotomic inverse() const {
    // extended Euclid against Phi_m in Q[x]
    if (is_zero()) throw std::domain_error("Cyclotomic: inverse of zero");
    if (is_rational()) return Cyclotomic(Rational(1) / c[0], m);
    detail::QPoly r0 = detail::cyclotomic_poly(m);
    detail::QPoly r1(c.begin(), c.end());
    detail::qpoly_trim(r1);
    detail::QPoly s0{}, s1{Rational(1)};  // track coefficient of our element
    while (true) {
      // make r1 monic for divmod
      Rational lead = r1.back();
      detail::QPoly r1m = r1;
      for (auto& x : r1m) x /= lead;
      detail::QPoly quo, rem;
      detail::qpoly_divmod(r0, r1m, quo, rem);
      for (auto& x : quo) x /= lead;
      // rem = r0 - quo*r1 ; s_new = s0 - quo*s1
      detail::QPoly qs = detail::qpoly_mul(quo, s1);
      detail::QPoly snew = s0;
      if (snew.size() < qs.size()) snew.resize(qs.size(), Rational(0));
      for (size_t i = 0; i < qs.size(); i++) snew[i] -= qs[i];
      detail::qpoly_trim(snew);
      if (rem.empty()) {
        // r1 is the gcd; must be a nonzero constant for invertibility
        if (r1.size() != 1) throw std::domain_error("Cyclotomic: zero divisor (impossible in a field)");
        Cyclotomic out;
        out.m = m;
        for (auto& x : s1) x /= r1[0];
        out.set_from(s1);
        return out;
      }
      r0 = r1; r1 = rem;
      s0 = s1; s1 = snew;
    }
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
    return a * b.inverse();
  }

  Complex embed() const {
    // zeta_m -> exp(2 pi i / m), Horner
    Real theta = Real(2) * Real::pi() / Real(m);
    Complex z(cos(theta), sin(theta));
    Complex acc(Real(0), Real(0));
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + Complex(c[i]);
    return acc;
  }

  std::string str() const {
    std::string s;
    bool first = true;
    for (size_t i = 0; i < c.size(); i++) {
      if (c[i] == 0) continue;
      if (!first) s += " + ";
      s += c[i].get_str();
      if (i > 0) s += "*z" + std::to_string(m) + "^" + std::to_string(i);
      first = false;
    }
    return first ? "0" : s;
  }
};

}  // namespace rp
