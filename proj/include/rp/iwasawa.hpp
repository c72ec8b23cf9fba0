#pragma once

// Finite-level models of the Iwasawa algebras Z_p[[U^(n)]], the norm maps
// between levels, the Frobenius induced by the p-power map, character
// evaluation, and the Kato-style norm-compatibility product.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rp/cyclotomic.hpp"
#include "rp/rational.hpp"

namespace rp {

// The subgroup U^(n) = ker(Z_p^x -> (Z/p^n)^x), truncated to the working
// quotient modulo p^D.  For odd p every such quotient is cyclic: of order
// (p-1) p^(D-1) at n = 0 and p^(D-n) for n >= 1.  Elements are stored as
// powers of a fixed generator.
struct UnitGroupLevel {
  long p;
  long n;
  long D;  // ambient depth: the model lives inside (Z/p^D)^x

  UnitGroupLevel(long p_, long n_, long depth) : p(p_), n(n_) {
    if (p < 3) throw std::domain_error("UnitGroupLevel: odd p required");
    if (n < 0 || depth < 1)
      throw std::domain_error("UnitGroupLevel: bad level or depth");
    D = (n == 0) ? depth + 1 : n + depth;
  }

  static UnitGroupLevel with_ambient(long p, long n, long D) {
    UnitGroupLevel lvl(p, n, 1);
    if (D <= n) throw std::domain_error("UnitGroupLevel: depth too small");
    lvl.D = D;
    return lvl;
  }

  bool compatible(const UnitGroupLevel& o) const {
    return p == o.p && D == o.D;
  }

  Integer modulus() const { return pow_z(Integer(p), D); }

  long order() const {
    long m = 1;
    for (long i = 0; i < D - std::max(n, 1L); i++) m *= p;
    return n == 0 ? (p - 1) * m : m;
  }

  // a generator of the cyclic quotient
  Integer generator() const {
    Integer md = modulus();
    if (n >= 1) return (Integer(1) + pow_z(Integer(p), n)) % md;
    // primitive root mod p lifts to p^D unless its (p-1)-st power is
    // congruent to 1 mod p^2, in which case r + p works instead
    for (long r = 2; r < p; r++) {
      bool prim = true;
      Integer acc(1);
      for (long e = 1; e < p - 1 && prim; e++) {
        acc = (acc * r) % p;
        if (acc == 1) prim = false;
      }
      if (!prim) continue;
      Integer t(1), p2 = Integer(p) * p;
      for (long e = 0; e < p - 1; e++) t = (t * r) % p2;
      Integer g = (t == 1) ? Integer(r + p) : Integer(r);
      return g % md;
    }
    throw std::logic_error("UnitGroupLevel: no primitive root found");
  }

  // generator^e mod p^D
  Integer element(long e) const {
    Integer md = modulus(), g = generator(), acc(1);
    long N = order();
    e %= N;
    if (e < 0) e += N;
    for (; e; e >>= 1, g = (g * g) % md)
      if (e & 1) acc = (acc * g) % md;
    return acc;
  }

  // discrete logarithm base the generator (groups here are tiny)
  long dlog(const Integer& u) const {
    Integer md = modulus(), g = generator(), acc(1);
    Integer v = ((u % md) + md) % md;
    for (long e = 0; e < order(); e++) {
      if (acc == v) return e;
      acc = (acc * g) % md;
    }
    throw std::domain_error("UnitGroupLevel: element not in the group");
  }
};

// An element of (Z/p^A)[U^(n)/truncation]: coefficients indexed by the
// exponent of the group generator.
struct IwasawaElement {
  UnitGroupLevel lvl;
  long A;                   // coefficients live in Z/p^A
  std::vector<Integer> c;   // size lvl.order()

  IwasawaElement(const UnitGroupLevel& l, long A_)
      : lvl(l), A(A_), c(l.order(), Integer(0)) {
    if (A < 1) throw std::domain_error("IwasawaElement: modulus exponent < 1");
  }

  Integer coeff_modulus() const { return pow_z(Integer(lvl.p), A); }

  void reduce() {
    Integer m = coeff_modulus();
    for (auto& x : c) { x %= m; if (x < 0) x += m; }
  }

  static IwasawaElement delta(const UnitGroupLevel& l, long A, long e) {
    IwasawaElement x(l, A);
    long N = l.order();
    e %= N;
    if (e < 0) e += N;
    x.c[e] = 1;
    return x;
  }

  static IwasawaElement one(const UnitGroupLevel& l, long A) {
    return delta(l, A, 0);
  }

  static IwasawaElement scalar(const UnitGroupLevel& l, long A,
                               const Integer& v) {
    IwasawaElement x = one(l, A);
    x.c[0] = v;
    x.reduce();
    return x;
  }

  Integer augmentation() const {
    Integer s(0);
    for (const auto& x : c) s += x;
    return s % coeff_modulus();
  }

  friend bool operator==(const IwasawaElement& a, const IwasawaElement& b) {
    return a.lvl.p == b.lvl.p && a.lvl.n == b.lvl.n && a.lvl.D == b.lvl.D &&
           a.A == b.A && a.c == b.c;
  }

  friend IwasawaElement operator+(const IwasawaElement& a,
                                  const IwasawaElement& b) {
    check_ring(a, b);
    IwasawaElement r = a;
    for (size_t i = 0; i < r.c.size(); i++) r.c[i] += b.c[i];
    r.reduce();
    return r;
  }

  friend IwasawaElement operator-(const IwasawaElement& a,
                                  const IwasawaElement& b) {
    check_ring(a, b);
    IwasawaElement r = a;
    for (size_t i = 0; i < r.c.size(); i++) r.c[i] -= b.c[i];
    r.reduce();
    return r;
  }

  friend IwasawaElement operator*(const IwasawaElement& a,
                                  const IwasawaElement& b) {
    check_ring(a, b);
    long N = a.lvl.order();
    IwasawaElement r(a.lvl, a.A);
    for (long i = 0; i < N; i++) {
      if (a.c[i] == 0) continue;
      for (long j = 0; j < N; j++)
        r.c[(i + j) % N] += a.c[i] * b.c[j];
    }
    r.reduce();
    return r;
  }

  IwasawaElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    IwasawaElement acc = one(lvl, A), base = *this;
    for (; e; e >>= 1, base = base * base)
      if (e & 1) acc = acc * base;
    return acc;
  }

  // the ring (Z/p^A)[C_N] is finite; x is invertible iff the linear system
  // x y = 1 is solvable, which Gaussian elimination over Z/p^A decides
  // because every pivot must be a unit
  IwasawaElement inverse() const { return solve(*this, one(lvl, A)); }

  bool is_unit() const {
    try { (void)inverse(); return true; } catch (const std::domain_error&) {
      return false;
    }
  }

  friend IwasawaElement operator/(const IwasawaElement& a,
                                  const IwasawaElement& b) {
    check_ring(a, b);
    return solve(b, a);
  }

  // evaluation at the character sending the generator to zeta_N^k
  Cyclotomic character_value(long k) const {
    long N = lvl.order();
    Cyclotomic s(Rational(0), 1);
    for (long m = 0; m < N; m++) {
      if (c[m] == 0) continue;
      long e = (static_cast<long>((k % N) * static_cast<long>(m % N))) % N;
      s = s + Cyclotomic::zeta(N, e) * Rational(c[m]);
    }
    return s;
  }

 private:
  static void check_ring(const IwasawaElement& a, const IwasawaElement& b) {
    if (!a.lvl.compatible(b.lvl) || a.lvl.n != b.lvl.n || a.A != b.A)
      throw std::invalid_argument("IwasawaElement: ring mismatch");
  }

  // solve b y = a by Gaussian elimination on the multiplication matrix of b
  static IwasawaElement solve(const IwasawaElement& b,
                              const IwasawaElement& a) {
    long N = b.lvl.order();
    Integer md = b.coeff_modulus();
    // augmented system: column j of the matrix is b * delta(j)
    std::vector<std::vector<Integer>> M(N, std::vector<Integer>(N + 1));
    for (long r = 0; r < N; r++) {
      for (long j = 0; j < N; j++)
        M[r][j] = b.c[((r - j) % N + N) % N];
      M[r][N] = a.c[r];
    }
    std::vector<long> where(N, -1);
    long row = 0;
    for (long col = 0; col < N && row < N; col++) {
      long piv = -1;
      for (long r = row; r < N; r++)
        if (M[r][col] % b.lvl.p != 0) { piv = r; break; }
      if (piv < 0) continue;
      std::swap(M[piv], M[row]);
      Integer inv;
      if (mpz_invert(inv.get_mpz_t(), M[row][col].get_mpz_t(),
                     md.get_mpz_t()) == 0)
        throw std::domain_error("IwasawaElement: pivot not invertible");
      for (long j = col; j <= N; j++) M[row][j] = (M[row][j] * inv) % md;
      for (long r = 0; r < N; r++) {
        if (r == row || M[r][col] == 0) continue;
        Integer f = M[r][col];
        for (long j = col; j <= N; j++) {
          M[r][j] = (M[r][j] - f * M[row][j]) % md;
          if (M[r][j] < 0) M[r][j] += md;
        }
      }
      where[col] = row++;
    }
    IwasawaElement y(b.lvl, b.A);
    for (long col = 0; col < N; col++) {
      if (where[col] < 0) {
        // a free column means b is a zero divisor; the system is only
        // solvable if the corresponding equations vanish, which cannot
        // happen for a = 1 or for a unit right-hand side
        throw std::domain_error("IwasawaElement: not invertible");
      }
      y.c[col] = M[where[col]][N];
    }
    y.reduce();
    return y;
  }
};

namespace detail {

// Berkowitz division-free determinant over a commutative ring, used for
// norms: entries are elements of the subgroup ring (Z/p^A)[C_Nj]
struct SubringOps {
  long Nj;
  Integer md;
  using El = std::vector<Integer>;
  El zero() const { return El(Nj, Integer(0)); }
  El unit() const { El e = zero(); e[0] = 1; return e; }
  El add(const El& a, const El& b) const {
    El r = a;
    for (long i = 0; i < Nj; i++) r[i] = (r[i] + b[i]) % md;
    return r;
  }
  El neg(const El& a) const {
    El r = a;
    for (long i = 0; i < Nj; i++) r[i] = ((md - r[i]) % md);
    return r;
  }
  El mul(const El& a, const El& b) const {
    El r = zero();
    for (long i = 0; i < Nj; i++) {
      if (a[i] == 0) continue;
      for (long j = 0; j < Nj; j++)
        r[(i + j) % Nj] = (r[(i + j) % Nj] + a[i] * b[j]) % md;
    }
    return r;
  }
};

inline SubringOps::El berkowitz_det(
    const std::vector<std::vector<SubringOps::El>>& Mat,
    const SubringOps& R) {
  long n = static_cast<long>(Mat.size());
  using El = SubringOps::El;
  // iteratively build the characteristic-polynomial vector; det is the
  // constant term up to sign
  std::vector<El> poly{R.unit()};
  for (long k = 1; k <= n; k++) {
    // Toeplitz vector for the leading k x k principal submatrix
    // entries: t_0 = -1 (as -unit), t_1 = M[k-1][k-1], and
    // t_{m} = row (k-1) * A^{m-2} * col (k-1) for m >= 2
    std::vector<El> t(k + 1, R.zero());
    t[0] = R.neg(R.unit());
    t[1] = Mat[k - 1][k - 1];
    std::vector<El> v(k - 1);
    for (long i = 0; i < k - 1; i++) v[i] = Mat[i][k - 1];
    for (long m = 2; m <= k; m++) {
      El dot = R.zero();
      for (long i = 0; i < k - 1; i++)
        dot = R.add(dot, R.mul(Mat[k - 1][i], v[i]));
      t[m] = dot;
      if (m < k) {
        std::vector<El> w(k - 1, R.zero());
        for (long i = 0; i < k - 1; i++)
          for (long j = 0; j < k - 1; j++)
            w[i] = R.add(w[i], R.mul(Mat[i][j], v[j]));
        v = w;
      }
    }
    std::vector<El> next(k + 1, R.zero());
    for (long i = 0; i <= k; i++)
      for (long j = 0; j < static_cast<long>(poly.size()); j++)
        if (i + j <= k) next[i + j] = R.add(next[i + j], R.mul(t[i], poly[j]));
    poly = next;
  }
  // with the t_0 = -1 convention the last entry is the determinant itself
  return poly[n];
}

}  // namespace detail

// norm map from level i down the tower to level j >= i: the determinant of
// multiplication by x on the free module of rank [U^(i):U^(j)] over the
// subgroup ring
inline IwasawaElement norm_map(const IwasawaElement& x, long j) {
  const UnitGroupLevel& li = x.lvl;
  if (j < li.n) throw std::domain_error("norm_map: target above the source");
  if (!x.is_unit()) throw std::domain_error("norm_map: input is not a unit");
  UnitGroupLevel lj = UnitGroupLevel::with_ambient(li.p, j, li.D);
  long N = li.order(), Nj = lj.order();
  long e = N / Nj;
  if (e * Nj != N) throw std::logic_error("norm_map: bad index");
  if (e == 1) {
    // same group; re-index powers of g_i as powers of the level-j generator
    IwasawaElement y(lj, x.A);
    long s0 = lj.dlog(li.element(1));
    for (long m = 0; m < N; m++)
      y.c[(s0 * m) % Nj] = (y.c[(s0 * m) % Nj] + x.c[m]) % x.coeff_modulus();
    return y;
  }
  detail::SubringOps R{Nj, x.coeff_modulus()};
  // multiplication matrix over the subgroup <g_i^e> (columns g_i^b)
  std::vector<std::vector<detail::SubringOps::El>> Mat(
      e, std::vector<detail::SubringOps::El>(e, R.zero()));
  for (long b = 0; b < e; b++)
    for (long m = 0; m < N; m++) {
      if (x.c[m] == 0) continue;
      long s = (m + b) % N;
      long a = s % e, t = s / e;
      Mat[a][b][t] = (Mat[a][b][t] + x.c[m]) % R.md;
    }
  detail::SubringOps::El d = detail::berkowitz_det(Mat, R);
  // g_i^e generates the same subgroup as the canonical level-j generator;
  // translate exponents through the discrete logarithm
  IwasawaElement y(lj, x.A);
  long s0 = lj.dlog(li.element(e));
  for (long t = 0; t < Nj; t++)
    y.c[(s0 * t) % Nj] = (y.c[(s0 * t) % Nj] + d[t]) % R.md;
  return y;
}

// ring homomorphism induced by u -> u^p, carrying level i to level i + 1
// (for i = 0 only elements supported on 1 + pZ_p map into U^(1))
inline IwasawaElement frobenius_phi(const IwasawaElement& x) {
  const UnitGroupLevel& li = x.lvl;
  UnitGroupLevel lj = UnitGroupLevel::with_ambient(li.p, li.n + 1, li.D);
  IwasawaElement y(lj, x.A);
  Integer md = li.modulus();
  for (long m = 0; m < li.order(); m++) {
    if (x.c[m] == 0) continue;
    Integer u = li.element(m), up(1);
    for (long i = 0; i < li.p; i++) up = (up * u) % md;
    long t;
    try {
      t = lj.dlog(up);
    } catch (const std::domain_error&) {
      throw std::domain_error(
          "frobenius_phi: image leaves the target group (support not in "
          "1 + p^" + std::to_string(li.n + 1) + ")");
    }
    y.c[t] = (y.c[t] + x.c[m]) % x.coeff_modulus();
  }
  return y;
}

// evaluate_character: the image of x under the character sending the
// level generator to the k-th power of a primitive N-th root of unity
inline Cyclotomic evaluate_character(const IwasawaElement& x, long k) {
  return x.character_value(k);
}

// Kato's norm-compatibility product at level n from the family a_0, ..., a_n
// (a_j at level j, all in one ambient model with one coefficient modulus):
//   prod_{1 <= j <= n} N_{j,n}( a_j / N_{0,j}(a_0)
//                               * phi(N_{0,j-1}(a_0) / a_{j-1}) )^{p^j}
inline IwasawaElement kato_product(const std::vector<IwasawaElement>& a) {
  if (a.empty()) throw std::invalid_argument("kato_product: empty family");
  long n = static_cast<long>(a.size()) - 1;
  for (long j = 0; j <= n; j++) {
    if (a[j].lvl.n != j || !a[j].lvl.compatible(a[0].lvl) || a[j].A != a[0].A)
      throw std::invalid_argument("kato_product: family levels inconsistent");
  }
  UnitGroupLevel ln = UnitGroupLevel::with_ambient(a[0].lvl.p, n, a[0].lvl.D);
  IwasawaElement prod = IwasawaElement::one(ln, a[0].A);
  long pj = 1;
  for (long j = 1; j <= n; j++) {
    pj *= a[0].lvl.p;
    IwasawaElement left = a[j] / norm_map(a[0], j);
    IwasawaElement ratio = norm_map(a[0], j - 1) / a[j - 1];
    IwasawaElement bracket = left * frobenius_phi(ratio);
    prod = prod * norm_map(bracket, n).pow(pj);
  }
  return prod;
}

// true iff x = 1 modulo p^m coefficientwise
inline bool congruence_check(const IwasawaElement& x, long m) {
  if (m > x.A)
    throw std::domain_error("congruence_check: modulus beyond precision");
  IwasawaElement d = x - IwasawaElement::one(x.lvl, x.A);
  Integer pm = pow_z(Integer(x.lvl.p), m);
  for (const auto& v : d.c)
    if (v % pm != 0) return false;
  return true;
}

}  // namespace rp
