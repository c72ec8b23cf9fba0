#pragma once
// Degree-4 Rankin convolution of a newform f (weight k, trivial nebentypus)
// with a weight-1 theta series g, plus the adjoint L-function and Petersson
// norm needed to normalize its critical values.
//
// At a prime q let a = a_q(f), b = C(q, g), Q = eta(q) q^{k-1} with eta the
// trivial character mod level(f), and omega = omega_g(q) the nebentypus of g.
// The local Euler factor of L(f x g, s) is the quartic
//
//   1 - a b X + (omega a^2 + Q b^2 - 2 Q omega) X^2 - Q omega a b X^3
//     + Q^2 omega^2 X^4,
//
// which specializes correctly at every ramified prime (whatever vanishes
// among a's complement, b, omega kills exactly the ramified Satake pairs).

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "rp/lfun.hpp"
#include "rp/modform.hpp"
#include "rp/theta.hpp"
#include "rp/util.hpp"

namespace rp {

inline std::array<Integer, 5> rankin_local_poly(const NewformData& f,
                                                const ThetaSeries& g, long q) {
  Integer a(static_cast<long>(f.a(q)));
  Integer b(static_cast<long>(g.coeff_pp_int(q, 1)));
  Integer Q = (f.level % q == 0) ? Integer(0)
                                 : pow_z(Integer(q), f.weight - 1);
  Integer w(g.omega(q));
  Integer e1 = a * b;
  Integer e2 = w * a * a + Q * b * b - Integer(2) * Q * w;
  Integer e3 = Q * w * a * b;
  Integer e4 = Q * Q * w * w;
  return {Integer(1), -e1, e2, -e3, e4};
}

// Dirichlet coefficients of L(f x g, s) = prod_q P_q(q^{-s})^{-1}
inline std::vector<Integer> convolution_coeffs(const NewformData& f,
                                               const ThetaSeries& g,
                                               long nmax) {
  if (f.count() < nmax)
    throw std::invalid_argument("convolution_coeffs: newform table too short");
  std::vector<int> spf = spf_sieve(nmax);
  std::map<long, std::vector<Integer>> pp;  // q -> c(q^e) ladder
  std::vector<Integer> c(nmax + 1, Integer(0));
  c[1] = 1;
  for (long n = 2; n <= nmax; n++) {
    long q = spf[n], e = 0, m = n;
    while (m % q == 0) { m /= q; e++; }
    auto it = pp.find(q);
    if (it == pp.end())
      it = pp.emplace(q, std::vector<Integer>{Integer(1)}).first;
    auto& lad = it->second;
    if (static_cast<long>(lad.size()) <= e) {
      std::array<Integer, 5> P = rankin_local_poly(f, g, q);
      while (static_cast<long>(lad.size()) <= e) {
        long j = lad.size();
        Integer v(0);
        for (long i = 1; i <= 4 && i <= j; i++) v -= P[i] * lad[j - i];
        lad.push_back(v);
      }
    }
    c[n] = lad[e] * c[m];
  }
  return c;
}

inline Integer rankin_conductor(const NewformData& f, const ThetaSeries& g) {
  long nr = g.conductor_rho();
  if (std::gcd(f.level, nr) != 1)
    throw std::invalid_argument("rankin_conductor: levels must be coprime");
  return pow_z(Integer(f.level) * Integer(nr), 2);
}

// completed convolution Lambda(s) = C^{s/2} GammaC(s)^2 L(f x g, s),
// functional equation s <-> k with a sign solved from the table itself
class RankinEngine {
 public:
  RankinEngine(const NewformData& f, const ThetaSeries& g, long digits,
               double umax = 1.15)
      : level_(f.level), weight_(f.weight), sqrt_cond_(Integer(f.level) *
                                                       Integer(g.conductor_rho())) {
    AfeSpec spec;
    spec.conductor = rankin_conductor(f, g);
    spec.mu = {0, 1, 0, 1};
    spec.w0 = f.weight;
    long need = Afe::coefficient_requirement(spec.conductor, spec.mu, digits, umax);
    std::vector<Integer> c = convolution_coeffs(f, g, need);
    spec.an.assign(need + 1, Rational(0));
    for (long n = 1; n <= need; n++) spec.an[n] = Rational(c[n]);
    afe_.emplace(std::move(spec), digits, umax);
    PrecGuard pg(afe_->precision_bits());
    Real s = Real(f.weight) / Real(2) + Real("0.6");
    w_ = afe_->root_number(s, Real(1), Real("1.1"));
    if (abs(abs(w_) - Real(1)).log2_abs() > -digits * 2.5)
      throw std::runtime_error("RankinEngine: solved root number is not a sign");
  }

  const Afe& afe() const { return *afe_; }
  Real root_number() const { return w_; }

  Real lambda(long r) const {
    PrecGuard pg(afe_->precision_bits());
    return afe_->lambda(Real(r), Real(1), w_);
  }

  // Psi(f, g, s) = (1/4) GammaC(s)^2 L(f x g, s) = Lambda(s) / (4 C^{s/2})
  Real psi(long r) const {
    PrecGuard pg(afe_->precision_bits());
    return lambda(r) / (Real(4) * pow(Real(sqrt_cond_), Real(r)));
  }

  // exact value of the local Euler polynomial at q^{-r}
  static Rational local_factor_at(const NewformData& f, const ThetaSeries& g,
                                  long q, long r) {
    std::array<Integer, 5> P = rankin_local_poly(f, g, q);
    Rational x = Rational(1) / Rational(pow_z(Integer(q), r));
    Rational acc(0);
    for (int i = 4; i >= 0; i--) acc = acc * x + Rational(P[i]);
    return acc;
  }

 private:
  long level_, weight_;
  Integer sqrt_cond_;
  std::optional<Afe> afe_;
  Real w_;
};

// projection polynomial for the holomorphic projection of the weight-k
// convolution kernel at the nonpositive integer s:
//   P_s(x, y) = sum_{i=0}^{-s} (-1)^i binom(-s, i)
//               * prod_{t<i} (k-2+s-t)/(k-2-t) * x^{-s-i} y^i,
// returned as the coefficient list indexed by i; exact over Q.  The
// denominators divide (k-2)!, so (k-2)! P_s is integral and P_s itself is
// p-integral for every prime p > k-2.
inline std::vector<Rational> projection_poly(long s, long k) {
  if (s > 0 || k < 2 || s < 2 - k)
    throw std::domain_error("projection_poly: need 2-k <= s <= 0");
  std::vector<Rational> c;
  Integer binom(1);
  for (long i = 0; i <= -s; i++) {
    if (i) { binom *= -s - i + 1; binom /= i; }
    Rational v(binom);
    for (long t = 0; t < i; t++) {
      Rational fac(k - 2 + s - t, k - 2 - t);
      fac.canonicalize();
      v *= fac;
    }
    if (i % 2) v = -v;
    c.push_back(v);
  }
  return c;
}

// quadratic-character twist f (x) theta, theta the nontrivial character mod 3
inline std::vector<Rational> twisted_coeffs(const NewformData& f, long nmax) {
  if (f.count() < nmax)
    throw std::invalid_argument("twisted_coeffs: newform table too short");
  std::vector<Rational> a(nmax + 1, Rational(0));
  for (long n = 1; n <= nmax; n++) {
    long t = n % 3 == 0 ? 0 : (n % 3 == 1 ? 1 : -1);
    if (t) a[n] = Rational(static_cast<long>(f.a(n)) * t);
  }
  return a;
}

// adjoint L-function of f in the analytic normalization: good Satake roots
// {alpha/beta, 1, beta/alpha}, functional equation s <-> 1 - s, sign +1
inline AfeSpec adjoint_spec(const NewformData& f, long nmax) {
  AfeSpec spec;
  spec.conductor = pow_z(Integer(f.level), 2);
  spec.mu = {1, f.weight - 1, f.weight};
  spec.w0 = 1;
  std::vector<int> spf = spf_sieve(nmax);
  std::map<long, std::vector<Rational>> pp;
  spec.an.assign(nmax + 1, Rational(0));
  spec.an[1] = 1;
  for (long n = 2; n <= nmax; n++) {
    long q = spf[n], e = 0, m = n;
    while (m % q == 0) { m /= q; e++; }
    auto it = pp.find(q);
    if (it == pp.end())
      it = pp.emplace(q, std::vector<Rational>{Rational(1)}).first;
    auto& lad = it->second;
    if (static_cast<long>(lad.size()) <= e) {
      // local polynomial: good q: (1-X)(1-uX)(1-u^{-1}X) = 1 - l X + l X^2 - X^3
      // with l = a_q^2/q^{k-1} - 1; bad q | level: 1 - X/q
      std::vector<Rational> P;
      if (f.level % q == 0) {
        P = {Rational(1), Rational(-1) / Rational(q)};
      } else {
        Rational aq(static_cast<long>(f.a(q)));
        Rational l = aq * aq / Rational(pow_z(Integer(q), f.weight - 1)) -
                     Rational(1);
        P = {Rational(1), -l, l, Rational(-1)};
      }
      while (static_cast<long>(lad.size()) <= e) {
        long j = lad.size();
        Rational v(0);
        for (long i = 1; i < static_cast<long>(P.size()) && i <= j; i++)
          v -= P[i] * lad[j - i];
        lad.push_back(v);
      }
    }
    spec.an[n] = lad[e] * spec.an[m];
  }
  return spec;
}

inline Real adjoint_L1(const NewformData& f, long digits) {
  Integer cond = pow_z(Integer(f.level), 2);
  std::vector<long> mu = {1, f.weight - 1, f.weight};
  long need = Afe::coefficient_requirement(cond, mu, digits, 1.1);
  Afe afe(adjoint_spec(f, need), digits, 1.1);
  PrecGuard pg(afe.precision_bits());
  // self-dual with sign +1; the solved sign is checked rather than assumed
  Real w = afe.root_number(Real("0.4"), Real(1), Real("1.08"));
  if (abs(w - Real(1)).log2_abs() > -digits * 2.5)
    throw std::runtime_error("adjoint_L1: functional equation sign is not +1");
  Real lam = afe.lambda(Real(1), Real(1), Real(1));
  return lam / (Real(f.level) * afe.gamma_factor(Real(1)));
}

// Petersson norm on Gamma_0(N):
//   <f, f> = (k-1)! N phi(N) L(Ad f, 1) / (2^{2k} pi^{k+1})
inline Real petersson_norm(const NewformData& f, long digits) {
  Real L = adjoint_L1(f, digits);
  PrecGuard pg(L.prec());
  long N = f.level, k = f.weight;
  long phi = N;  // prime or 1 in our corpus; general Euler phi
  {
    long m = N;
    phi = 1;
    for (long q = 2; q * q <= m; q++)
      if (m % q == 0) {
        long pk = 1;
        while (m % q == 0) { m /= q; pk *= q; }
        phi *= pk - pk / q;
      }
    if (m > 1) phi *= m - 1;
  }
  Real fact(1);
  for (long i = 2; i <= k - 1; i++) fact = fact * Real(i);
  return fact * Real(N) * Real(phi) * L /
         (pow(Real(2), Real(2 * k)) * pow(Real::pi(), Real(k + 1)));
}

}  // namespace rp
