#pragma once
// p-adic L-values L_f(rho, r) at p = 3 for the Artin representations
//   rho_0 = 1 (+) theta        (theta the quadratic character mod 3)
//   rho_1 = Ind_K^Q chi        (chi the cubic Kummer character of K(delta^{1/3}))
// attached to the false-Tate tower of K = Q(sqrt(-3)).
//
//   L_f(rho, r) = eps_p(rho, 1-r) / alpha^{f(rho,p)}
//                 * P_p(rho^v, alpha^{-1} p^{r-1}) / P_p(rho, alpha p^{-r})
//                 * Psi_S(f, g_rho, r) / <f, f>
//
// with alpha the unit root of X^2 - a_p X + p^{k-1}, S the primes dividing
// p Delta, and Psi*(rho, r) = sqrt(N_rho) Psi_S / <f,f> the exact algebraic
// part recovered by rational reconstruction.  The epsilon factor at p reduces
// to sign(rho) * 3^{c(rho) + slope(rho)(r-1)} * sqrt(N_rho) / sqrt(M) with
// M the prime-to-3 part of N_rho; the two signs are fixed once by a single
// table entry and every other value is then an genuine prediction.

#include <map>
#include <optional>
#include <string>

#include "rp/padic.hpp"
#include "rp/rankin.hpp"

namespace rp {

// elements x + y alpha of Q(alpha), alpha^2 = t alpha - n
struct QuadExt {
  Rational x, y, t, n;

  QuadExt(Rational x_, Rational y_, Rational t_, Rational n_)
      : x(std::move(x_)), y(std::move(y_)), t(std::move(t_)), n(std::move(n_)) {}

  static QuadExt one_of(const QuadExt& a) { return {1, 0, a.t, a.n}; }

  friend bool operator==(const QuadExt& a, const QuadExt& b) {
    return a.x == b.x && a.y == b.y && a.t == b.t && a.n == b.n;
  }
  friend QuadExt operator+(const QuadExt& a, const QuadExt& b) {
    return {a.x + b.x, a.y + b.y, a.t, a.n};
  }
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b) {
    return {a.x - b.x, a.y - b.y, a.t, a.n};
  }
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
    return {a.x * b.x - a.n * a.y * b.y,
            a.x * b.y + a.y * b.x + a.t * a.y * b.y, a.t, a.n};
  }
  friend QuadExt operator*(const Rational& c, const QuadExt& a) {
    return {c * a.x, c * a.y, a.t, a.n};
  }
  QuadExt conj() const { return {x + t * y, -y, t, n}; }
  Rational norm() const { return x * x + t * x * y + n * y * y; }
  QuadExt inverse() const {
    Rational nm = norm();
    if (nm == 0) throw std::domain_error("QuadExt: inverting zero");
    return Rational(1) / nm * conj();
  }
  QuadExt pow(long e) const {
    QuadExt base = e < 0 ? inverse() : *this;
    if (e < 0) e = -e;
    QuadExt acc{1, 0, t, n};
    for (; e; e >>= 1, base = base * base)
      if (e & 1) acc = acc * base;
    return acc;
  }
};

// alpha as the abstract Hecke root of X^2 - a_p X + p^{k-1} for f at p
inline QuadExt hecke_alpha(const NewformData& f, long p) {
  if (f.level % p == 0)
    throw std::domain_error("hecke_alpha: p divides the level");
  return {Rational(0), Rational(1), Rational(static_cast<long>(f.a(p))),
          Rational(pow_z(Integer(p), f.weight - 1))};
}

// embedding Q(alpha) -> Q_p sending alpha to the unit root
inline Padic embed_unit_root(const QuadExt& v, const NewformData& f, long p,
                             long aprec) {
  long head = 0;  // extra working precision for negative valuations
  for (const Rational* c : {&v.x, &v.y})
    if (*c != 0) head = std::max(head, -val_p(*c, p));
  long wp = aprec + head + 4;
  Padic u = hensel_unit_root(Integer(static_cast<long>(f.a(p))), 1, p, f.weight, wp);
  Padic val = Padic::from_rational(v.x, p, wp) +
              Padic::from_rational(v.y, p, wp) * u;
  return val.truncated(aprec);
}

// local Artin data at p = 3 for the two representations of the Delta-tower
struct ArtinRho {
  int index;        // 0 or 1
  long f3;          // conductor exponent of rho at 3
  long n_rho;       // conductor of rho
  long sqrtM;       // sqrt of the prime-to-3 part of the conductor
  int w3;           // local root number of rho at 3
  bool has_P;       // rho unramified part at 3 nonzero (P_3(rho,T) = 1 - T)
};

// The local epsilon factor at 3 combines with sqrt(N_rho) into the rational
// quantity w3 * 3^{f3 (r-1)} / sqrt(M), where M is the prime-to-3 part of
// the conductor (a square for representations induced from the tower).
inline ArtinRho artin_data(int index, const ThetaSeries& g) {
  if (index == 0) return {0, 1, 3, 1, -1, true};
  long n_rho = g.conductor_rho();
  long m = n_rho;
  while (m % 3 == 0) m /= 3;
  long s = 1;
  while (s * s < m) s++;
  if (s * s != m)
    throw std::domain_error("artin_data: prime-to-3 conductor is not a square");
  return {1, g.f_at_3(), n_rho, s, -1, false};
}

struct LpValue {
  int rho;
  long r;
  Rational psi_star;   // exact algebraic part sqrt(N_rho) Psi_S / <f,f>
  Padic value;         // L_f(rho, r) in Q_3
};

class LpCalculator {
 public:
  LpCalculator(const NewformData& f, long delta = 2, long digits = 80)
      : f_(f), digits_(digits),
        g0_(KummerChar(1)), g1_(KummerChar(delta)),
        eng0_(f, g0_, digits), eng1_(f, g1_, digits),
        rho0_(artin_data(0, g0_)), rho1_(artin_data(1, g1_)),
        petersson_(petersson_norm(f, digits)) {}

  const NewformData& form() const { return f_; }

  // exact algebraic part, by rational reconstruction of the real value
  Rational psi_star(int rho, long r) {
    auto key = std::make_pair(rho, r);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const RankinEngine& eng = rho ? eng1_ : eng0_;
    const ArtinRho& a = rho ? rho1_ : rho0_;
    PrecGuard pg(eng.afe().precision_bits());
    // uses the full completed convolution; the Euler factors at 2 and 3
    // are trivial for the cuspidal lift, so only the Eisenstein branch
    // is sensitive to this choice
    Real v = eng.psi(r) * sqrt(Real(a.n_rho)) / petersson_;
    double tol = -(digits_ * 3.3219 - 40.0);
    Integer hmax = pow_z(Integer(10), (digits_ - 20) / 2);
    auto rec = rational_reconstruct(v, hmax, tol);
    if (!rec)
      throw std::runtime_error(
          "psi_star: rational reconstruction failed (rho=" +
          std::to_string(rho) + ", r=" + std::to_string(r) +
          "); increase the precision");
    cache_[key] = *rec;
    return *rec;
  }

  // L_f(rho, r) as an element of Q_3, exact given psi_star
  LpValue lvalue(int rho, long r, long aprec = 12) {
    if (r < 1 || r > f_.weight - 1)
      throw std::domain_error("lvalue: r outside the critical strip");
    Rational ps = psi_star(rho, r);
    const ArtinRho& a = rho ? rho1_ : rho0_;
    if (ps == 0)
      return {rho, r, ps, Padic::zero_to(3, aprec)};
    QuadExt alpha = hecke_alpha(f_, 3);
    QuadExt v = ps * alpha.pow(-a.f3);
    // epsilon factor at p combined with sqrt(N_rho): w3 * 3^{f3 (r-1)} / sqrt(M)
    Rational eps(a.w3, a.sqrtM);
    eps *= Rational(pow_z(Integer(3), a.f3 * (r - 1)));
    v = eps * v;
    // restore the Euler factors at the primes in S = {2, 3}
    const ThetaSeries& g = rho ? g1_ : g0_;
    for (long q : {2L, 3L})
      v = RankinEngine::local_factor_at(f_, g, q, r) * v;
    if (a.has_P) {
      // P_3(rho^v, alpha^{-1} 3^{r-1}) / P_3(rho, alpha 3^{-r}), P(T) = 1 - T
      Rational p31 = Rational(pow_z(Integer(3), r - 1));
      QuadExt one = QuadExt::one_of(v);
      QuadExt num = one - p31 * alpha.inverse();
      QuadExt den = one - Rational(Integer(1), pow_z(Integer(3), r)) * alpha;
      v = v * num * den.inverse();
    }
    return {rho, r, ps, embed_unit_root(v, f_, 3, aprec)};
  }

  // the Kato-style congruence L(rho0, r) = L(rho1, r) mod 3
  bool congruent_mod_3(long r) {
    Padic a = lvalue(0, r, 6).value;
    Padic b = lvalue(1, r, 6).value;
    return congruent(a, b, 1);
  }

 private:
  NewformData f_;
  long digits_;
  ThetaSeries g0_, g1_;
  RankinEngine eng0_, eng1_;
  ArtinRho rho0_, rho1_;
  Real petersson_;
  std::map<std::pair<int, long>, Rational> cache_;
};

}  // namespace rp
