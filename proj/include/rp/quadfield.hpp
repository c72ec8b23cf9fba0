#pragma once
// Arithmetic of K = Q(sqrt(-3)): Eisenstein integers Z[w] with w^2+w+1 = 0,
// prime splitting, brute-force ray class groups, the cubic Kummer character
// attached to Delta^(1/3), and Gauss sums of Dirichlet characters.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>
#include "rp/cyclotomic.hpp"
#include "rp/rational.hpp"
#include "rp/util.hpp"

namespace rp {

// a + b*w, w = (-1+sqrt(-3))/2
struct Eis {
  Integer a, b;
  Eis() : a(0), b(0) {}
  Eis(Integer x, Integer y) : a(std::move(x)), b(std::move(y)) {}
  Eis(long x, long y = 0) : a(x), b(y) {}

  friend Eis operator+(const Eis& x, const Eis& y) { return {x.a + y.a, x.b + y.b}; }
  friend Eis operator-(const Eis& x, const Eis& y) { return {x.a - y.a, x.b - y.b}; }
  friend Eis operator*(const Eis& x, const Eis& y) {
    // (a+bw)(c+dw) = ac - bd + (ad + bc - bd) w
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
  }
  Eis conj() const { return {a - b, -b}; }
  Integer norm() const { return a * a - a * b + b * b; }
  bool operator==(const Eis& o) const { return a == o.a && b == o.b; }
  bool operator<(const Eis& o) const { return a < o.a || (a == o.a && b < o.b); }
  bool is_zero() const { return a == 0 && b == 0; }
  std::string str() const { return a.get_str() + (b >= 0 ? "+" : "") + b.get_str() + "w"; }
};

inline const std::vector<Eis>& eis_units() {
  static const std::vector<Eis> u = {{1, 0},  {0, 1},  {-1, -1},
                                     {-1, 0}, {0, -1}, {1, 1}};  // +-1, +-w, +-w^2
  return u;
}

// exact division; nullopt if y does not divide x
inline std::optional<Eis> eis_div(const Eis& x, const Eis& y) {
  Integer n = y.norm();
  if (n == 0) throw std::domain_error("eis_div: division by zero");
  Eis t = x * y.conj();
  if (t.a % n != 0 || t.b % n != 0) return std::nullopt;
  return Eis{t.a / n, t.b / n};
}

enum class SplitType { split, inert, ramified };

inline SplitType split_type(long q) {
  if (q == 3) return SplitType::ramified;
  return kronecker_ll(-3, q) == 1 ? SplitType::split : SplitType::inert;
}

inline int theta_symbol(long q) {
  if (q == 3) return 0;
  return kronecker_ll(-3, q);
}

struct PrimeIdealK {
  long q = 0;           // residue characteristic
  SplitType type;
  Eis gen;              // generator (PID)
  Integer norm() const {
    return type == SplitType::inert ? Integer(q) * q : Integer(q);
  }
};

// one prime above q; for split q this is the one with the canonical generator
// (lexicographically smallest (a,b) with a > 0, b > 0); its conjugate is the
// other prime
inline PrimeIdealK prime_above(long q) {
  PrimeIdealK P;
  P.q = q;
  P.type = split_type(q);
  if (P.type == SplitType::ramified) {
    P.gen = Eis(1, 2);  // sqrt(-3) = 1 + 2w
  } else if (P.type == SplitType::inert) {
    P.gen = Eis(q, 0);
  } else {
    for (long b = 1;; b++) {
      // a^2 - ab + b^2 = q  =>  (2a-b)^2 = 4q - 3b^2
      long long d = 4ll * q - 3ll * b * b;
      if (d < 0) throw std::logic_error("prime_above: no representation found");
      long long s = static_cast<long long>(std::sqrt(static_cast<double>(d)));
      while (s * s > d) s--;
      while ((s + 1) * (s + 1) <= d) s++;
      if (s * s == d && (s + b) % 2 == 0) {
        long a = static_cast<long>((s + b) / 2);
        P.gen = Eis(a, b);
        break;
      }
    }
  }
  return P;
}

inline PrimeIdealK conj_prime(const PrimeIdealK& P) {
  PrimeIdealK Q = P;
  Q.gen = P.gen.conj();
  return Q;
}

// factor a nonzero element into prime ideals (with unit ambiguity discarded)
inline std::vector<std::pair<PrimeIdealK, long>> factor_eis(Eis x) {
  if (x.is_zero()) throw std::domain_error("factor_eis(0)");
  std::vector<std::pair<PrimeIdealK, long>> out;
  Integer n = x.norm();
  for (long q = 2; n > 1; q++) {
    if (!mpz_divisible_ui_p(n.get_mpz_t(), q)) continue;
    PrimeIdealK P = prime_above(q);
    if (P.type == SplitType::split) {
      for (const PrimeIdealK& PP : {P, conj_prime(P)}) {
        long e = 0;
        while (auto d = eis_div(x, PP.gen)) { x = *d; e++; }
        if (e) out.push_back({PP, e});
        for (long i = 0; i < e; i++) n /= q;
      }
    } else {
      long e = 0;
      while (auto d = eis_div(x, P.gen)) { x = *d; e++; }
      if (e) out.push_back({P, e});
      long nq = (P.type == SplitType::inert) ? 2 * e : e;
      for (long i = 0; i < nq; i++) n /= q;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// residues modulo a principal ideal (gamma), with canonical representatives

class ResidueRing {
 public:
  Eis gamma;
  Integer p11, p12, p22;  // HNF basis of the lattice (gamma): (p11,0), (p12,p22)

  explicit ResidueRing(const Eis& g) : gamma(g) {
    // lattice columns: gamma = (a, b), gamma*w = (-b, a-b)
    Integer a = g.a, b = g.b;
    Integer c1x = a, c1y = b, c2x = -b, c2y = a - b;
    // column HNF via gcd on the second row
    while (c2y != 0) {
      Integer t = c1y / c2y;  // floor division toward -inf not needed for gcd loop
      c1x -= t * c2x; c1y -= t * c2y;
      std::swap(c1x, c2x); std::swap(c1y, c2y);
    }
    if (c1y < 0) { c1x = -c1x; c1y = -c1y; }
    // now c2y == 0; make c2x positive
    if (c2x < 0) c2x = -c2x;
    p11 = c2x; p12 = c1x; p22 = c1y;
    if (p22 == 0) throw std::domain_error("ResidueRing: gamma is rational zero divisor?");
    // reduce p12 mod p11
    p12 %= p11; if (p12 < 0) p12 += p11;
    if (p11 * p22 != g.norm()) throw std::logic_error("ResidueRing: HNF determinant mismatch");
  }

  Eis reduce(const Eis& x) const {
    Integer k2 = x.b / p22;
    Integer rb = x.b - k2 * p22;
    if (rb < 0) { rb += p22; k2 -= 1; }
    Integer ra = x.a - k2 * p12;
    Integer k1 = ra / p11;
    ra -= k1 * p11;
    if (ra < 0) ra += p11;
    return Eis{ra, rb};
  }

  bool coprime(const Eis& x) const {
    // coprime iff no prime of gamma divides x
    for (auto& [P, e] : factor_eis(gamma))
      if (eis_div(x, P.gen)) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// brute-force ray class group of K modulo a principal ideal (K has h = 1 and
// no real places): (O/gamma)^x modulo the image of the six units

class RayClassGroup {
 public:
  ResidueRing ring;
  std::vector<Eis> elems;             // orbit representatives, elems[0] = identity
  std::map<std::pair<long, long>, size_t> index;  // canonical rep -> index
  std::vector<long> invariants;       // invariant factors, d_{i+1} | d_i

  explicit RayClassGroup(const Eis& gamma) : ring(gamma) {
    auto fac = factor_eis(gamma);
    std::set<Eis> seen;
    for (Integer i = 0; i < ring.p11; i++)
      for (Integer j = 0; j < ring.p22; j++) {
        Eis x{i, j};
        bool ok = true;
        for (auto& [P, e] : fac)
          if (eis_div(x, P.gen)) { ok = false; break; }
        if (!ok) continue;
        Eis rep = orbit_rep(x);
        if (seen.insert(rep).second) elems.push_back(rep);
      }
    // identity first
    Eis one = orbit_rep(Eis(1, 0));
    auto it = std::find(elems.begin(), elems.end(), one);
    std::iter_swap(elems.begin(), it);
    for (size_t i = 0; i < elems.size(); i++)
      index[key(elems[i])] = i;
    compute_invariants();
  }

  static std::pair<long, long> keyof(const Eis& x) {
    return {x.a.get_si(), x.b.get_si()};
  }
  std::pair<long, long> key(const Eis& x) const { return keyof(x); }

  Eis orbit_rep(const Eis& x) const {
    Eis best;
    bool first = true;
    for (auto& u : eis_units()) {
      Eis c = ring.reduce(x * u);
      if (first || c < best) { best = c; first = false; }
    }
    return best;
  }

  size_t order() const { return elems.size(); }

  size_t id(const Eis& x) const {
    auto it = index.find(keyof(orbit_rep(x)));
    if (it == index.end()) throw std::domain_error("RayClassGroup: element not coprime");
    return it->second;
  }

  size_t mul(size_t i, size_t j) const { return id(elems[i] * elems[j]); }

  long elt_order(size_t i) const {
    long o = 1;
    size_t x = i;
    while (x != 0) { x = mul(x, i); o++; }
    return o;
  }

 private:
  void compute_invariants() {
    // greedy: repeatedly split off a maximal-order cyclic factor
    std::set<size_t> H = {0};
    while (H.size() < elems.size()) {
      long best_o = 0;
      size_t best_g = 0;
      for (size_t g = 0; g < elems.size(); g++) {
        // order of g in G/H
        long o = 1;
        size_t x = g;
        while (!H.count(x)) { x = mul(x, g); o++; }
        if (o > best_o) { best_o = o; best_g = g; }
      }
      invariants.push_back(best_o);
      // close H under multiplication by best_g
      std::vector<size_t> frontier(H.begin(), H.end());
      for (size_t h : frontier) {
        size_t x = h;
        for (long i = 1; i < best_o; i++) { x = mul(x, best_g); H.insert(x); }
      }
    }
  }
};

// ---------------------------------------------------------------------------
// cubic Kummer character: chi(Q) = zeta_3^j with Delta^((NQ-1)/3) = w_img^j
// in the residue field of Q.  Optionally twisted by theta(N(.)) where theta
// is the quadratic character mod 3.

class KummerChar {
 public:
  long delta;
  bool theta_twist;
  long p = 3;

  explicit KummerChar(long delta_, bool theta_twist_ = false)
      : delta(delta_), theta_twist(theta_twist_) {}

  // value at a prime ideal; zero cyclotomic for ramified-in-chi primes
  Cyclotomic eval_prime(const PrimeIdealK& P) const {
    long q = P.q;
    if (q == 3 || delta % q == 0) return Cyclotomic(Rational(0), 3);
    long j;
    if (P.type == SplitType::split) {
      // residue field F_q; image of w is -a/b mod q
      long a = mpz_fdiv_ui(P.gen.a.get_mpz_t(), q), b = mpz_fdiv_ui(P.gen.b.get_mpz_t(), q);
      long w = static_cast<long>(
          (q - (__int128)a * mod_pow_ll(b, q - 2, q) % q) % q);
      long v = mod_pow_ll(delta, (q - 1) / 3, q);
      if (v == 1) j = 0;
      else if (v == w) j = 1;
      else if (v == (long)((__int128)w * w % q)) j = 2;
      else throw std::logic_error("KummerChar: value not a cube root of unity");
    } else {
      // inert: q = 2 mod 3; (q^2-1)/3 is a multiple of q-1, so the symbol,
      // which lies in mu_3 and in F_q, is 1; verify by direct exponentiation
      long e = Integer(((Integer(q) * q - 1) / 3) % (q - 1)).get_si();
      if (mod_pow_ll(delta % q, e, q) != 1)
        throw std::logic_error("KummerChar: inert symbol not 1");
      j = 0;
    }
    Cyclotomic val = Cyclotomic::zeta(3, j);
    // twist by theta(N(P)); theta(q^2) = 1 for inert primes
    if (theta_twist && P.type != SplitType::inert && q % 3 == 2)
      val = val * Rational(-1);
    return val;
  }

  // multiplicative extension to (x); zero if not coprime to the ramified set
  Cyclotomic eval(const Eis& x) const {
    Cyclotomic v(Rational(1), 3);
    for (auto& [P, e] : factor_eis(x)) {
      Cyclotomic c = eval_prime(P);
      if (c.is_zero()) return c;
      for (long i = 0; i < e; i++) v = v * c;
    }
    return v;
  }

  // smallest modulus (by norm, among divisors of (9*delta)) on which the
  // character is trivial on the principal ray; brute-force search
  Eis conductor() const {
    Eis big = Eis(9 * delta, 0);
    std::vector<Eis> divs = ideal_divisors(big);
    std::sort(divs.begin(), divs.end(), [](const Eis& x, const Eis& y) {
      return x.norm() < y.norm();
    });
    for (auto& d : divs)
      if (trivial_on_ray(d)) return d;
    throw std::logic_error("KummerChar: no conductor found below (9 delta)");
  }

  // test chi((g)) = 1 for a batch of g = 1 mod m, g coprime to 3*delta
  bool trivial_on_ray(const Eis& m) const {
    int found = 0;
    for (long s = 1; s <= 8 && found < 25; s++)
      for (long t = -s; t <= s && found < 25; t++) {
        for (auto xy : {std::pair<long, long>{s, t}, {t, s}}) {
          Eis g = Eis(1, 0) + Eis(xy.first, xy.second) * m;
          Integer n = g.norm();
          if (n <= 1 || mpz_gcd_ui(nullptr, n.get_mpz_t(), 3 * delta) != 1) continue;
          found++;
          Cyclotomic v = eval(g);
          if (!(v == Cyclotomic(Rational(1), 3))) return false;
        }
      }
    return found > 0;
  }

  static std::vector<Eis> ideal_divisors(const Eis& x) {
    auto fac = factor_eis(x);
    std::vector<Eis> out = {Eis(1, 0)};
    for (auto& [P, e] : fac) {
      std::vector<Eis> next;
      for (auto& d : out) {
        Eis cur = d;
        for (long i = 0; i <= e; i++) {
          next.push_back(cur);
          cur = cur * P.gen;
        }
      }
      out = std::move(next);
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Dirichlet characters mod M with cyclotomic values, and their Gauss sums

struct DirichletChar {
  long M;                       // modulus
  std::vector<Cyclotomic> vals;  // index a in [0, M); zero cyclotomic off units

  static DirichletChar quadratic_mod3() {
    DirichletChar ch;
    ch.M = 3;
    ch.vals = {Cyclotomic(Rational(0)), Cyclotomic(Rational(1)), Cyclotomic(Rational(-1))};
    return ch;
  }

  // character defined by sending a fixed generator g of (Z/M)^x to zeta_r^k
  static DirichletChar from_generator(long M, long g, long r, long k) {
    DirichletChar ch;
    ch.M = M;
    ch.vals.assign(M, Cyclotomic(Rational(0), r));
    long x = 1 % M;
    long e = 0;
    do {
      ch.vals[x] = Cyclotomic::zeta(r, (e * k) % r);
      x = static_cast<long>((__int128)x * g % M);
      e++;
    } while (x != 1 % M && e < 4 * M);
    // fill check: every unit must be hit
    for (long a = 0; a < M; a++)
      if (std::gcd(a, M) == 1 && ch.vals[a].is_zero() && !(a == 0))
        throw std::invalid_argument("DirichletChar: g does not generate (Z/M)^x");
    return ch;
  }

  const Cyclotomic& operator()(long a) const {
    a %= M; if (a < 0) a += M;
    return vals[a];
  }

  Cyclotomic gauss_sum() const {
    long r = 1;
    for (auto& v : vals) r = std::lcm(r, v.m);
    long big = std::lcm(r, M);
    Cyclotomic s(Rational(0), big);
    for (long a = 1; a < M; a++) {
      if (std::gcd(a, M) != 1) continue;
      s = s + vals[a].to_order(big) * Cyclotomic::zeta(big, (big / M) * a);
    }
    return s;
  }
};

}  // namespace rp
