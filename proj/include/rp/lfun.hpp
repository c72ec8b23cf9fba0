#pragma once
// Completed L-function evaluator by smoothed approximate functional equation.
//
// Lambda(s) = N^{s/2} gamma(s) L(s), gamma(s) = prod_j Gamma_R(s + mu_j) with
// integer shifts mu_j.  With h the inverse Mellin transform of gamma and
// t_n = n / sqrt(N),
//
//   Lambda(s) = sum_n a_n u^s G_s(t_n u) + w sum_n a_n u^{s-w0} G_{w0-s}(t_n/u)
//
// for any split parameter u > 0, where x^s G_s(x) = int_x^inf h(t) t^{s-1} dt.
// The incomplete Mellin integral is evaluated through the residue expansion
//
//   int_x^inf h t^{s-1} dt = gamma(s) - sum_{z0} Res_{z=z0} gamma(z) x^{s-z}/(s-z),
//
// whose pole terms factor through the power sums S_{j,i} = sum_n a_n t_n^j ln^i t_n;
// those tables are computed once and reused for every s and u.  The expansion
// cancels catastrophically for large x, so the working precision carries an
// explicit cancellation budget derived from the peak term magnitude.

#include <array>
#include <cmath>
#include <vector>
#include "rp/bigfloat.hpp"
#include "rp/rational.hpp"

namespace rp {

struct AfeSpec {
  std::vector<Rational> an;  // an[n] for n = 1..nmax (an[0] ignored)
  Integer conductor;
  std::vector<long> mu;      // Gamma_R shifts, nonnegative integers
  long w0 = 0;               // Lambda(s) = w Lambda(w0 - s)
  bool zeta_pole = false;    // add the -1/s - 1/(w0-s) correction (u = 1 only)
};

class Afe {
 public:
  Afe(AfeSpec spec, long digits, double umax = 1.3)
      : spec_(std::move(spec)), digits_(digits), umax_(umax) {
    build();
  }

  long precision_bits() const { return prec_; }
  long nmax() const { return static_cast<long>(spec_.an.size()) - 1; }

  // minimal coefficient count for the given accuracy: the kernel decays like
  // exp(-pi d t^{2/d}), so we need pi d (n/(u sqrt N))^{2/d} > ln 10 (digits+10)
  static long coefficient_requirement(const Integer& conductor,
                                      const std::vector<long>& mu, long digits,
                                      double umax = 1.3) {
    double d = mu.size();
    double nats = std::log(10.0) * (digits + 10);
    double t = std::pow(nats / (3.14159265358979 * d), d / 2.0);
    double sqn = std::sqrt(mpz_get_d(conductor.get_mpz_t()));
    return static_cast<long>(sqn * t * umax) + 1;
  }

  // gamma(s) for real s away from poles
  Real gamma_factor(const Real& s) const {
    PrecGuard pg(prec_);
    long d = spec_.mu.size(), summu = 0;
    for (long m : spec_.mu) summu += m;
    Real g = pow(Real::pi(), (Real(-(long)d) * s - Real(summu)) / Real(2));
    for (long m : spec_.mu) {
      Real v = (s + Real(m)) / Real(2);
      if (!(v > Real(0)) && floorr(v) == v)
        throw std::domain_error("Afe: gamma factor pole at s = " + s.str(8));
      g = g * gamma(v);
    }
    return g;
  }

  // the two AFE sums (direct side, dual side before the root number)
  std::pair<Real, Real> parts(const Real& s_in, const Real& u_in) const {
    PrecGuard pg(prec_);
    Real s = s_in, u = u_in;
    if (u > Real(umax_) || Real(1) / u > Real(umax_))
      throw std::domain_error("Afe: split parameter outside the table's budget");
    return {side(s, u), side(Real(spec_.w0) - s, Real(1) / u)};
  }

  Real lambda(const Real& s, const Real& u, const Real& w) const {
    PrecGuard pg(prec_);
    auto [t1, t2] = parts(s, u);
    Real v = t1 + w * t2;
    if (spec_.zeta_pole) {
      if (!(u == Real(1)))
        throw std::domain_error("Afe: pole correction implemented for u = 1 only");
      v = v - Real(1) / s - Real(1) / (Real(spec_.w0) - s);
    }
    return v;
  }

  // solve Lambda(s) = T1(u) + w T2(u) at two split points for w
  Real root_number(const Real& s, const Real& u1, const Real& u2) const {
    PrecGuard pg(prec_);
    auto [a1, b1] = parts(s, u1);
    auto [a2, b2] = parts(s, u2);
    return (a1 - a2) / (b2 - b1);
  }

  // residue-series value of int_x^inf h(t) t^{s-1} dt (kernel oracle hook)
  Real incomplete_kernel_mellin(const Real& s_in, const Real& x_in) const {
    PrecGuard pg(prec_);
    Real s = s_in, x = x_in, lx = log(x);
    Real acc = gamma_factor(s);
    Real xp = pow(x, s);
    for (size_t j = 0; j < poles_.size(); j++) {
      if (poles_[j].mult) {
        auto [c0, c1] = res_coeffs(j, s);
        acc = acc - xp * (c0 + c1 * lx);
      }
      xp = xp * x;
    }
    return acc;
  }

 private:
  struct Pole {
    int mult = 0;   // 0 marks "gamma regular at -j" (placeholder)
    Real g1, g2;    // g_{-1} and (mult = 2) g_{-2}
  };

  AfeSpec spec_;
  long digits_, prec_ = 0, jmax_ = 0, nuse_ = 0;
  double umax_;
  Real sqrtN_;
  std::vector<Pole> poles_;          // index j for z0 = -j
  std::vector<Real> S0_, S1_;        // power sum tables
  mutable std::vector<std::pair<Real, Real>> dcache_;

  int mult_at(long j) const {
    int m = 0;
    for (long mu : spec_.mu)
      if (j >= mu && (j - mu) % 2 == 0) m++;
    return m;
  }

  // double-precision estimate of log2 |g_{-1}| at z0 = -j, memoized
  mutable std::vector<double> logres_;

  double approx_logres(long j) const {
    while (static_cast<long>(logres_.size()) <= j) {
      long jj = logres_.size();
      double lg = 0;
      long d = spec_.mu.size(), summu = 0;
      for (long m : spec_.mu) summu += m;
      lg += 0.5 * (d * jj - summu) * std::log2(3.14159265358979);
      for (long mu : spec_.mu) {
        double alpha = 0.5 * (mu - jj);
        if (jj >= mu && (jj - mu) % 2 == 0)
          lg += 1.0 - std::lgamma(0.5 * (jj - mu) + 1) / std::log(2.0);
        else
          lg += log2_abs_gamma(alpha);
      }
      logres_.push_back(lg);
    }
    return logres_[j];
  }

  static double log2_abs_gamma(double x) {
    if (x > 0) return std::lgamma(x) / std::log(2.0);
    // reflection: |Gamma(x)| = pi / (|Gamma(1-x)| |sin(pi x)|)
    double s = std::abs(std::sin(3.14159265358979 * x));
    if (s < 1e-12) s = 1e-12;
    return (std::log(3.14159265358979) - std::lgamma(1 - x) - std::log(s)) /
           std::log(2.0);
  }

  void build() {
    // work with exactly the needed coefficient range: terms beyond it are below
    // the target accuracy, and including them would inflate the cancellation
    // budget of the residue expansion (which grows with the largest t_n)
    long need = coefficient_requirement(spec_.conductor, spec_.mu, digits_, umax_);
    if (nmax() < need)
      throw std::invalid_argument("Afe: need " + std::to_string(need) +
                                  " coefficients, got " + std::to_string(nmax()));
    nuse_ = need;
    long n = nuse_;
    if (n < 1) throw std::invalid_argument("Afe: no coefficients");
    double sqn = std::sqrt(mpz_get_d(spec_.conductor.get_mpz_t()));
    double lx_max = std::log2(n / sqn * umax_);
    long target_bits = static_cast<long>(digits_ * 3.3219281) + 16;

    // per-n residue series lengths and the global cancellation peak, in doubles
    std::vector<long> jn(n + 1, 0);
    double peak = 0;
    double thresh = -(target_bits + 60.0);
    for (long i = 1; i <= n; i++) {
      double la = std::log2(1.0 + std::abs(mpq_get_d(spec_.an[i].get_mpq_t())));
      double lx = std::log2(i / sqn * umax_);
      double best = -1e18;
      long j = 0;
      for (;; j++) {
        double t = la + j * lx + approx_logres(j) - std::log2(j + 2.0);
        best = std::max(best, t);
        if (t < thresh && t < best) break;
        if (j > 100000) throw std::logic_error("Afe: residue series does not converge");
      }
      jn[i] = j;
      peak = std::max(peak, best);
      (void)lx_max;
    }
    long budget = static_cast<long>(std::max(0.0, peak)) + 64;
    prec_ = target_bits + budget;
    PrecGuard pg(prec_);

    jmax_ = 0;
    for (long i = 1; i <= n; i++) jmax_ = std::max(jmax_, jn[i]);

    // Laurent data g_{-mult}..g_{-1} at each pole z0 = -j:
    //   gamma(z0+eps) = A eps^{-mult} (1 + B eps + ...),
    //   A = pi^{(d j - summu)/2} 2^mult prod_pole (-1)^m/m! prod_reg Gamma(alpha),
    //   B = sum_pole psi(m+1)/2 + sum_reg psi(alpha)/2 - (d/2) ln pi
    long d = spec_.mu.size(), summu = 0;
    for (long m : spec_.mu) summu += m;
    poles_.assign(jmax_ + 1, Pole{});
    for (long j = 0; j <= jmax_; j++) {
      int mult = mult_at(j);
      if (mult == 0) continue;
      if (mult > 2) throw std::logic_error("Afe: pole multiplicity > 2 unsupported");
      Real A = pow(Real::pi(), Real(d * j - summu) / Real(2)) * Real(1L << mult);
      Real B = Real(-(long)d) / Real(2) * log(Real::pi());
      for (long mu : spec_.mu) {
        Real alpha = Real(mu - j) / Real(2);
        if (j >= mu && (j - mu) % 2 == 0) {
          long m = (j - mu) / 2;
          Real fact(1);
          for (long i = 2; i <= m; i++) fact = fact * Real(i);
          A = A * (m % 2 ? Real(-1) : Real(1)) / fact;
          B = B + digamma(Real(m + 1)) / Real(2);
        } else {
          A = A * gamma(alpha);
          B = B + digamma(alpha) / Real(2);
        }
      }
      poles_[j].mult = mult;
      if (mult == 1) {
        poles_[j].g1 = A;
      } else {
        poles_[j].g2 = A;
        poles_[j].g1 = A * B;
      }
    }

    // power sum tables with per-n truncation
    sqrtN_ = sqrt(Real(spec_.conductor));
    S0_.assign(jmax_ + 1, Real(0));
    S1_.assign(jmax_ + 1, Real(0));
    for (long i = 1; i <= n; i++) {
      if (spec_.an[i] == 0) continue;
      Real a(spec_.an[i]);
      Real t = Real(i) / sqrtN_;
      Real lt = log(t);
      Real tp = a;
      for (long j = 0; j <= jn[i]; j++) {
        S0_[j] = S0_[j] + tp;
        S1_[j] = S1_[j] + tp * lt;
        tp = tp * t;
      }
    }
  }

  // residue coefficients c_{j,0}(s), c_{j,1}(s)
  std::pair<Real, Real> res_coeffs(long j, const Real& s) const {
    const Pole& P = poles_[j];
    Real denom = s + Real(j);
    if (P.mult == 1) return {P.g1 / denom, Real(0)};
    return {P.g1 / denom + P.g2 / (denom * denom), Real(0) - P.g2 / denom};
  }

  // partial Dirichlet sum D(s) = sum a_n t_n^{-s}, cached per s
  Real dirichlet_partial(const Real& s) const {
    for (auto& [key, val] : dcache_)
      if (key == s) return val;
    Real acc(0);
    long n = nuse_;
    for (long i = 1; i <= n; i++) {
      if (spec_.an[i] == 0) continue;
      Real t = Real(i) / sqrtN_;
      acc = acc + Real(spec_.an[i]) * pow(t, Real(0) - s);
    }
    dcache_.push_back({s, acc});
    return acc;
  }

  // T(s, u) = gamma(s) D(s) - sum_j u^{s+j} [c0 S0_j + c1 (S1_j + ln u S0_j)]
  Real side(const Real& s, const Real& u) const {
    Real acc = gamma_factor(s) * dirichlet_partial(s);
    Real lu = log(u);
    Real up = pow(u, s);
    for (long j = 0; j <= jmax_; j++) {
      if (poles_[j].mult) {
        auto [c0, c1] = res_coeffs(j, s);
        acc = acc - up * (c0 * S0_[j] + c1 * (S1_[j] + lu * S0_[j]));
      }
      up = up * u;
    }
    return acc;
  }
};

}  // namespace rp
