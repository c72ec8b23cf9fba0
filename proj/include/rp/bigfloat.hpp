#pragma once
// Arbitrary-precision real/complex scalars on top of MPFR, plus a cheap
// magnitude type used for conservative error bounds.

#include <mpfr.h>
#include <gmpxx.h>
#include <cmath>
#include <limits>
#include <string>
#include <vector>
#include <stdexcept>
#include <utility>

namespace rp {

inline mpfr_prec_t& default_prec() {
  static thread_local mpfr_prec_t prec = 256;
  return prec;
}

struct PrecGuard {
  mpfr_prec_t saved;
  explicit PrecGuard(mpfr_prec_t p) : saved(default_prec()) { default_prec() = p; }
  ~PrecGuard() { default_prec() = saved; }
};

inline mpfr_prec_t digits_to_bits(long digits) {
  return static_cast<mpfr_prec_t>(digits * 3.3219280948873626 + 16);
}

class Real {
  mpfr_t v_;
 public:
  Real() { mpfr_init2(v_, default_prec()); mpfr_set_zero(v_, 1); }
  explicit Real(mpfr_prec_t prec, int) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(long x) { mpfr_init2(v_, default_prec()); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x) : Real(static_cast<long>(x)) {}
  Real(double x) { mpfr_init2(v_, default_prec()); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const mpz_class& x) { mpfr_init2(v_, default_prec()); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  Real(const mpq_class& x) { mpfr_init2(v_, default_prec()); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
  explicit Real(const std::string& s) {
    mpfr_init2(v_, default_prec());
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("Real: bad literal " + s);
  }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, 32); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  static Real pi() { Real r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
  static Real euler() { Real r; mpfr_const_euler(r.v_, MPFR_RNDN); return r; }
  static Real zeta_ui(unsigned long k) { Real r; mpfr_zeta_ui(r.v_, k, MPFR_RNDN); return r; }

  bool is_zero() const { return mpfr_zero_p(v_); }
  bool is_finite() const { return mpfr_number_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  // log2 of magnitude; -inf for 0.
  double log2_abs() const {
    if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
    long e = mpfr_get_exp(v_);
    mpfr_t t; mpfr_init2(t, 64); mpfr_abs(t, v_, MPFR_RNDN);
    mpfr_set_exp(t, 0);
    double m = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return static_cast<double>(e) + std::log2(m);
  }

#define RP_REAL_BINOP(op, fn)                                          \
  friend Real operator op(const Real& a, const Real& b) {              \
    Real r(std::max(a.prec(), b.prec()), 0);                           \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                   \
    return r;                                                          \
  }
  RP_REAL_BINOP(+, mpfr_add)
  RP_REAL_BINOP(-, mpfr_sub)
  RP_REAL_BINOP(*, mpfr_mul)
  RP_REAL_BINOP(/, mpfr_div)
#undef RP_REAL_BINOP
  friend Real operator-(const Real& a) { Real r(a.prec(), 0); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }
  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

#define RP_REAL_FN(name, fn)                                           \
  friend Real name(const Real& a) {                                    \
    Real r(a.prec(), 0);                                               \
    fn(r.v_, a.v_, MPFR_RNDN);                                         \
    return r;                                                          \
  }
  RP_REAL_FN(abs, mpfr_abs)
  RP_REAL_FN(sqrt, mpfr_sqrt)
  RP_REAL_FN(exp, mpfr_exp)
  RP_REAL_FN(log, mpfr_log)
  RP_REAL_FN(log2r, mpfr_log2)
  RP_REAL_FN(sin, mpfr_sin)
  RP_REAL_FN(cos, mpfr_cos)
  RP_REAL_FN(gamma, mpfr_gamma)
  RP_REAL_FN(lngamma, mpfr_lngamma)
  RP_REAL_FN(digamma, mpfr_digamma)
  RP_REAL_FN(erfc, mpfr_erfc)
  RP_REAL_FN(riemann_zeta, mpfr_zeta)
#undef RP_REAL_FN
  friend Real gamma_inc(const Real& a, const Real& x) {  // upper incomplete gamma
    Real r(std::max(a.prec(), x.prec()), 0);
    mpfr_gamma_inc(r.v_, a.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real floorr(const Real& a) {
    Real r(a.prec(), 0);
    mpfr_rint(r.get(), a.get(), MPFR_RNDD);
    return r;
  }
  friend Real pow(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()), 0);
    mpfr_pow(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
  }
  friend Real pow(const Real& a, long n) {
    Real r(a.prec(), 0);
    mpfr_pow_si(r.get(), a.get(), n, MPFR_RNDN);
    return r;
  }
  friend Real ldexpr(const Real& a, long e) {
    Real r(a.prec(), 0);
    mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN);
    return r;
  }

  std::string str(long digits = 0) const {
    if (digits <= 0) digits = static_cast<long>(prec() / 3.33) - 2;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }
};

// Crude magnitude bound, stored as log2.  Used for interval-style error
// tracking on Complex; cheap and direction-safe (always rounds up).
struct Mag {
  double l2 = -std::numeric_limits<double>::infinity();
  static Mag zero() { return {}; }
  static Mag from_log2(double x) { return {x}; }
  static Mag of(const Real& x) { return {x.log2_abs()}; }
  bool is_zero() const { return l2 == -std::numeric_limits<double>::infinity(); }
  double to_double() const { return is_zero() ? 0.0 : std::exp2(l2); }
  friend Mag operator+(Mag a, Mag b) {  // bound on sum of magnitudes
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double hi = std::max(a.l2, b.l2), lo = std::min(a.l2, b.l2);
    return {hi + std::log2(1.0 + std::exp2(lo - hi)) + 1e-9};
  }
  friend Mag operator*(Mag a, Mag b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.l2 + b.l2 + 1e-9};
  }
};

// Complex number with a propagated absolute-error bound.
class Complex {
 public:
  Real re, im;
  Mag err;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) { roundoff(); }
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) { roundoff(); }
  Complex(Real r, Real i, Mag e) : re(std::move(r)), im(std::move(i)), err(e) {}
  Complex(long x) : re(x), im(0) {}
  Complex(const mpq_class& x) : re(x), im(0) { roundoff(); }

  void roundoff() {
    // one ulp of each component
    Mag u = Mag::from_log2(std::max(re.log2_abs(), im.log2_abs()) -
                           static_cast<double>(std::min(re.prec(), im.prec())) + 2);
    if (!(re.is_zero() && im.is_zero())) err = err + u;
  }
  Mag mag() const { return Mag::of(re) + Mag::of(im) + err; }
  bool is_real_zero() const { return re.is_zero() && im.is_zero(); }

  friend Complex operator+(const Complex& a, const Complex& b) {
    Complex r(a.re + b.re, a.im + b.im, a.err + b.err);
    r.roundoff();
    return r;
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    Complex r(a.re - b.re, a.im - b.im, a.err + b.err);
    r.roundoff();
    return r;
  }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im, a.err); }
  friend Complex operator*(const Complex& a, const Complex& b) {
    Complex r(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re,
              a.mag() * b.err + b.mag() * a.err);
    r.roundoff();
    return r;
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    if (d.is_zero()) throw std::domain_error("Complex: division by zero");
    Complex r((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d,
              Mag::zero());
    // relative errors add under division
    double rel = (a.err * Mag::from_log2(-a.mag().l2)).l2 +
                 (b.err * Mag::from_log2(-b.mag().l2)).l2;
    if (!a.err.is_zero() || !b.err.is_zero())
      r.err = r.mag() * Mag::from_log2(std::log2(std::exp2(rel) + 1e-300) + 1);
    r.roundoff();
    return r;
  }
  Complex& operator+=(const Complex& o) { *this = *this + o; return *this; }
  Complex& operator-=(const Complex& o) { *this = *this - o; return *this; }
  Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }

  friend Complex conj(const Complex& a) { return Complex(a.re, -a.im, a.err); }
  friend Real abs(const Complex& a) { return sqrt(a.re * a.re + a.im * a.im); }
  friend Complex exp(const Complex& a) {
    Real m = exp(a.re);
    Complex r(m * cos(a.im), m * sin(a.im), Mag::zero());
    r.err = r.mag() * (a.err + Mag::from_log2(-static_cast<double>(a.re.prec()) + 2));
    r.roundoff();
    return r;
  }
  friend Complex log(const Complex& a) {
    Real m = log(a.re * a.re + a.im * a.im) / Real(2);
    Real th;
    mpfr_atan2(th.get(), a.im.get(), a.re.get(), MPFR_RNDN);
    Complex r(m, th);
    r.err = r.err + a.err * Mag::from_log2(-a.mag().l2);
    return r;
  }
  friend Complex sqrt(const Complex& a) {
    if (a.im.is_zero() && a.re.sign() >= 0) return Complex(sqrt(a.re), Real(0), a.err);
    Complex l = log(a);
    return exp(Complex(l.re / Real(2), l.im / Real(2), l.err));
  }
  // a^b for real exponent, principal branch
  friend Complex cpow(const Complex& a, const Real& b) {
    if (a.im.is_zero() && a.re.sign() > 0)
      return Complex(pow(a.re, b), Real(0), a.err * Mag::of(b));
    Complex l = log(a);
    return exp(Complex(l.re * b, l.im * b, l.err * Mag::of(b)));
  }

  std::string str(long digits = 12) const {
    if (im.is_zero()) return re.str(digits);
    return re.str(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).str(digits) + "*i";
  }
};

namespace detail {
// Exact Bernoulli numbers B_0, B_2, ..., cached.
inline const mpq_class& bernoulli2(size_t j) {
  static std::vector<mpq_class> cache;  // cache[i] = B_{2i}
  static std::vector<mpq_class> full;   // B_0..B_n scratch
  while (cache.size() <= j) {
    size_t n = 2 * cache.size();
    // recurrence sum_{i=0}^{n} C(n+1,i) B_i = 0
    if (full.empty()) { full.push_back(1); }
    while (full.size() <= n) {
      size_t m = full.size();
      mpq_class s = 0;
      mpz_class binom = 1;  // C(m+1, i), starting at i = 0
      for (size_t i = 0; i < m; i++) {
        if (i > 0) { binom *= (m + 2 - i); binom /= i; }
        s += mpq_class(binom) * full[i];
      }
      full.push_back(-s / mpq_class(m + 1));
    }
    cache.push_back(full[n]);
  }
  return cache[j];
}
}  // namespace detail

// log Gamma(z), principal branch, via Stirling with argument shifting.
inline Complex clngamma(const Complex& z0) {
  mpfr_prec_t p = std::max(z0.re.prec(), default_prec());
  PrecGuard g(p + 32);
  Complex z(Real(z0.re), Real(z0.im));
  double target = std::max(10.0, 0.35 * static_cast<double>(p) + 10.0);
  Complex shift_log(Real(0), Real(0));
  long shifts = 0;
  while (std::hypot(z.re.to_double(), z.im.to_double()) < target || z.re.sign() < 0) {
    shift_log += log(z);
    z = z + Complex(1);
    if (++shifts > 100000) throw std::runtime_error("clngamma: shift overflow");
  }
  Complex half(Real(1) / Real(2), Real(0));
  Complex res = (z - half) * log(z) - z;
  res += Complex((log(Real::pi() * Real(2))) / Real(2), Real(0));
  Complex zinv = Complex(1) / z;
  Complex z2inv = zinv * zinv;
  Complex t = zinv;
  double tol = -static_cast<double>(p) - 16;
  double prev = 1e300;
  for (size_t j = 1; j < 600; j++) {
    Complex term = t * Complex(Real(detail::bernoulli2(j) / mpq_class(2 * j * (2 * j - 1))));
    double sz = term.mag().l2;
    if (sz >= prev) break;  // asymptotic series started diverging
    res += term;
    if (sz < res.mag().l2 + tol) break;
    prev = sz;
    t = t * z2inv;
  }
  return res - shift_log;
}

inline Complex cgamma(const Complex& z) {
  if (z.im.is_zero()) {
    // poles at nonpositive integers
    Real f = floorr(z.re);
    if (f == z.re && z.re.sign() <= 0)
      throw std::domain_error("cgamma: pole at nonpositive integer");
    if (z.re.sign() > 0) return Complex(gamma(z.re), Real(0), z.err);
  }
  return exp(clngamma(z));
}

}  // namespace rp
