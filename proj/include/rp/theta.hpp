#pragma once
// Theta lifts of finite-order Hecke characters of K = Q(sqrt(-3)): weight-1
// forms (Eisenstein for the trivial character, cuspidal for the cubic Kummer
// characters) whose coefficients C(n) sum the character over ideals of norm n
// prime to the conductor.

#include <vector>
#include "rp/quadfield.hpp"

namespace rp {

class ThetaSeries {
 public:
  KummerChar chi;
  Eis frak_f;          // conductor of chi
  Integer nf;          // norm of the conductor

  explicit ThetaSeries(const KummerChar& chi_) : chi(chi_), frak_f(chi_.conductor()) {
    nf = frak_f.norm();
  }

  bool eisenstein() const { return nf == 1; }

  // conductor of the induced two-dimensional representation: |d_K| * N(f)
  long conductor_rho() const { return 3 * nf.get_si(); }

  // conductor exponent at 3
  long f_at_3() const {
    long v = 1, n = nf.get_si();
    while (n % 3 == 0) { v++; n /= 3; }
    return v;
  }

  // nebentypus of the lift at q: theta(q) * chi|_Q(q), which is theta(q)
  // away from 3 * N(f) and 0 at ramified primes
  long omega(long q) const {
    if (mpz_divisible_ui_p(Integer(3 * nf).get_mpz_t(), q)) return 0;
    return theta_symbol(q);
  }

  // chi-values at the primes above q that are prime to the conductor
  std::vector<Cyclotomic> unramified_roots(long q) const {
    std::vector<Cyclotomic> roots;
    PrimeIdealK P = prime_above(q);
    auto coprime_to_f = [&](const PrimeIdealK& Q) {
      return !eis_div(frak_f, Q.gen).has_value();
    };
    if (P.type == SplitType::split) {
      for (const PrimeIdealK& Q : {P, conj_prime(P)})
        if (coprime_to_f(Q)) roots.push_back(eval_at(Q));
    } else if (coprime_to_f(P)) {
      roots.push_back(eval_at(P));
    }
    return roots;
  }

  // C(q^e) as an exact cyclotomic: sum of chi over ideals of norm q^e
  Cyclotomic coeff_prime_power(long q, long e) const {
    if (e == 0) return Cyclotomic(Rational(1), 3);
    PrimeIdealK P = prime_above(q);
    auto roots = unramified_roots(q);
    Cyclotomic s(Rational(0), 3);
    if (P.type == SplitType::split && roots.size() == 2) {
      Cyclotomic t(Rational(1), 3);
      for (long i = 0; i <= e; i++) {
        Cyclotomic u = t;
        for (long j = i; j < e; j++) u = u * roots[1];
        s = s + u;
        t = t * roots[0];
      }
    } else if (P.type == SplitType::split && roots.size() == 1) {
      s = Cyclotomic(Rational(1), 3);
      for (long i = 0; i < e; i++) s = s * roots[0];
    } else if (P.type == SplitType::inert && !roots.empty()) {
      if (e % 2 == 0) {
        s = Cyclotomic(Rational(1), 3);
        for (long i = 0; i < e / 2; i++) s = s * roots[0];
      }
    } else if (P.type == SplitType::ramified && !roots.empty()) {
      s = Cyclotomic(Rational(1), 3);
      for (long i = 0; i < e; i++) s = s * roots[0];
    }
    return s;
  }

  long long coeff_pp_int(long q, long e) const {
    Cyclotomic c = coeff_prime_power(q, e);
    if (!c.is_rational()) throw std::logic_error("ThetaSeries: non-integral coefficient");
    Rational r = c.as_rational();
    if (r.get_den() != 1) throw std::logic_error("ThetaSeries: non-integral coefficient");
    return r.get_num().get_si();
  }

  // C(1..N) by multiplicativity over an SPF sieve
  std::vector<long long> coeffs(long N) const {
    std::vector<int> spf = spf_sieve(N);
    std::vector<long long> c(N + 1, 0);
    if (N >= 1) c[1] = 1;
    std::map<std::pair<long, long>, long long> pp;
    for (long n = 2; n <= N; n++) {
      long q = spf[n], m = n, e = 0;
      while (m % q == 0) { m /= q; e++; }
      auto key = std::make_pair(q, e);
      auto it = pp.find(key);
      if (it == pp.end()) it = pp.emplace(key, coeff_pp_int(q, e)).first;
      c[n] = c[m] * it->second;
    }
    return c;
  }

 private:
  Cyclotomic eval_at(const PrimeIdealK& P) const {
    // the trivial character is 1 on every prime, including the ramified one
    if (chi.delta == 1 && !chi.theta_twist) return Cyclotomic(Rational(1), 3);
    return chi.eval_prime(P);
  }
};

}  // namespace rp
