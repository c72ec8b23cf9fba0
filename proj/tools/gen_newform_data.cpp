// Generates the newform coefficient tables in data/.
//
// Strategy: weight-k spaces on Gamma_0(N) are spanned by products of
// Eisenstein series (classical, dilated, and with the quadratic character
// mod N).  Stage A finds the Hecke eigenvector exactly: short q-expansion
// prefixes with rational coefficients, closure of the span under T_2 (and
// T_3 if needed), then kernel of (T_q - a_q) over Q.  Stage B re-evaluates
// the same linear combination to full length with integer series arithmetic
// mod three 62-bit NTT primes and CRT reconstruction, and validates the
// result (normalization, multiplicativity, Hecke recurrences, Ramanujan
// bounds) before writing the file.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <vector>

#include "rp/modform.hpp"
#include "rp/rational.hpp"

using namespace rp;
using u64 = uint64_t;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// modular arithmetic and NTT

static u64 mulmod(u64 a, u64 b, u64 p) { return (u128)a * b % p; }

static u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

static u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

struct NttPrime {
  u64 p;
  u64 g;  // primitive root
};

// primes p = c * 2^26 + 1 in (2^61, 2^62) with known primitive root
static std::vector<NttPrime> find_ntt_primes(int count) {
  std::vector<NttPrime> out;
  for (u64 c = (1ull << 35) + 1; (int)out.size() < count; c += 2) {
    u64 p = (c << 26) + 1;
    Integer pz(static_cast<unsigned long>(p));
    if (!mpz_probab_prime_p(pz.get_mpz_t(), 30)) continue;
    // factor c (36 bits) by trial division for the primitive root test
    std::vector<u64> fac = {2};
    u64 m = c;
    for (u64 q = 3; q * q <= m; q += 2)
      if (m % q == 0) {
        fac.push_back(q);
        while (m % q == 0) m /= q;
      }
    if (m > 1) fac.push_back(m);
    for (u64 g = 2;; g++) {
      bool ok = true;
      for (u64 q : fac)
        if (powmod(g, (p - 1) / q, p) == 1) { ok = false; break; }
      if (ok) {
        out.push_back({p, g});
        break;
      }
    }
  }
  return out;
}

static void ntt(std::vector<u64>& a, const NttPrime& pr, bool inverse) {
  size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; i++) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    u64 w = powmod(pr.g, (pr.p - 1) / len, pr.p);
    if (inverse) w = invmod(w, pr.p);
    for (size_t i = 0; i < n; i += len) {
      u64 wn = 1;
      for (size_t j = 0; j < len / 2; j++) {
        u64 u = a[i + j], v = mulmod(a[i + j + len / 2], wn, pr.p);
        a[i + j] = u + v < pr.p ? u + v : u + v - pr.p;
        a[i + j + len / 2] = u >= v ? u - v : u + pr.p - v;
        wn = mulmod(wn, w, pr.p);
      }
    }
  }
  if (inverse) {
    u64 ninv = invmod(n % pr.p, pr.p);
    for (auto& x : a) x = mulmod(x, ninv, pr.p);
  }
}

// first L coefficients of the product
static std::vector<u64> polmul_trunc(const std::vector<u64>& a,
                                     const std::vector<u64>& b, size_t L,
                                     const NttPrime& pr) {
  size_t need = std::min(a.size(), L) + std::min(b.size(), L);
  size_t n = 1;
  while (n < need) n <<= 1;
  std::vector<u64> fa(a.begin(), a.begin() + std::min(a.size(), L));
  std::vector<u64> fb(b.begin(), b.begin() + std::min(b.size(), L));
  fa.resize(n, 0);
  fb.resize(n, 0);
  ntt(fa, pr, false);
  ntt(fb, pr, false);
  for (size_t i = 0; i < n; i++) fa[i] = mulmod(fa[i], fb[i], pr.p);
  ntt(fa, pr, true);
  fa.resize(std::min(n, L));
  return fa;
}

// ---------------------------------------------------------------------------
// Eisenstein series atoms

struct Atom {
  int kind;  // 0 = E_k(1,1), 1 = E_k(1,chi_N), 2 = E2* (level N)
  long k;    // weight
  long dil;  // dilation z -> dil*z
};
using Seed = std::vector<Atom>;

static long legendre(long a, long N) {
  a %= N;
  if (a < 0) a += N;
  if (a == 0) return 0;
  long r = mod_pow_ll(a, (N - 1) / 2, N);
  return r == 1 ? 1 : -1;
}

// Bernoulli polynomial value B_k(x), exact
static Rational bernoulli_poly(long k, const Rational& x) {
  Rational s(0), binom(1), xp(1);
  std::vector<Rational> B(k + 1, Rational(0));
  B[0] = 1;
  if (k >= 1) B[1] = Rational(-1, 2);
  for (long i = 2; i <= k; i += 2) B[i] = detail::bernoulli2(i / 2);
  // B_k(x) = sum C(k,i) B_i x^{k-i}
  for (long i = k; i >= 0; i--) {
    // binom = C(k, i) built from the top
    Rational c(1);
    for (long t = 0; t < i; t++) c = c * Rational(k - t) / Rational(t + 1);
    s += c * B[i] * xp;
    xp *= x;
  }
  (void)binom;
  return s;
}

// generalized Bernoulli number B_{k,chi} for the quadratic character mod N
// (N = 1 means the trivial character and plain B_k)
static Rational bernoulli_chi(long k, long N) {
  if (N == 1) {
    if (k == 0) return Rational(1);
    if (k % 2 == 1) return k == 1 ? Rational(-1, 2) : Rational(0);
    return detail::bernoulli2(k / 2);
  }
  Rational s(0);
  for (long a = 1; a <= N; a++)
    s += Rational(legendre(a, N)) * bernoulli_poly(k, Rational(a, N));
  return s * pow_z(Integer(N), k - 1);
}

// constant term of the atom's q-expansion
static Rational atom_c0(const Atom& at, long N) {
  if (at.kind == 2) return Rational(1);  // E2* = (N E2(Nz) - E2(z)) / (N-1)
  long condphi = at.kind == 1 ? N : 1;
  return -bernoulli_chi(at.k, condphi) / Rational(2 * at.k);
}

// exact prefix of the atom, length L
static std::vector<Rational> atom_prefix(const Atom& at, long N, long L) {
  std::vector<Rational> a(L, Rational(0));
  a[0] = atom_c0(at, N);
  if (at.kind == 2) {
    // (N E2(Nz) - E2(z)) / (N-1), E2 = 1 - 24 sum sigma_1(n) q^n
    std::vector<Integer> s1(L, Integer(0));
    for (long d = 1; d < L; d++)
      for (long n = d; n < L; n += d) s1[n] += d;
    for (long n = 1; n < L; n++) {
      Integer t = -s1[n];
      if (n % N == 0) t += Integer(N) * s1[n / N];
      a[n] = Rational(t * (-24)) / Rational(N - 1);
    }
    return a;
  }
  long per = at.dil;
  for (long d = 1; d * per < L; d++) {
    long chi = at.kind == 1 ? legendre(d, N) : 1;
    if (chi == 0) continue;
    Integer w = Integer(chi) * pow_z(Integer(d), at.k - 1);
    for (long n = d * per; n < L; n += d * per) a[n] += Rational(w);
  }
  return a;
}

// atom to full length, mod p
static std::vector<u64> atom_modp(const Atom& at, long N, long L, const NttPrime& pr) {
  u64 p = pr.p;
  std::vector<u64> a(L, 0);
  Rational c0 = atom_c0(at, N);
  u64 num = mpz_fdiv_ui(c0.get_num().get_mpz_t(), p);
  u64 den = mpz_fdiv_ui(c0.get_den().get_mpz_t(), p);
  a[0] = mulmod(num, invmod(den, p), p);
  if (at.kind == 2) {
    std::vector<u64> s1(L, 0);
    for (long d = 1; d < L; d++)
      for (long n = d; n < L; n += d) {
        s1[n] += d;
        if (s1[n] >= p) s1[n] -= p;
      }
    u64 inv24 = mulmod(24 % p, invmod(N - 1, p), p);
    for (long n = 1; n < L; n++) {
      u64 t = s1[n];
      if (n % N == 0) t = (t + p - mulmod(N % p, s1[n / N], p)) % p;
      a[n] = mulmod(t, inv24, p);
    }
    return a;
  }
  long per = at.dil;
  for (long d = 1; d * per < L; d++) {
    long chi = at.kind == 1 ? legendre(d, N) : 1;
    if (chi == 0) continue;
    u64 w = powmod(d, at.k - 1, p);
    if (chi < 0) w = p - w;
    for (long n = d * per; n < L; n += d * per) {
      a[n] += w;
      if (a[n] >= p) a[n] -= p;
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Hecke operator T_q on q-expansions (trivial nebentypus, q coprime to N):
// (T_q g)_n = g_{qn} + q^{k-1} g_{n/q}

static std::vector<Rational> tq_prefix(const std::vector<Rational>& a, long q, long k) {
  long L = static_cast<long>(a.size()) / q;
  std::vector<Rational> b(L);
  Rational qk = Rational(pow_z(Integer(q), k - 1));
  for (long n = 0; n < L; n++) {
    b[n] = a[q * n];
    if (n % q == 0) b[n] += qk * a[n / q];
  }
  return b;
}

static std::vector<u64> tq_modp(const std::vector<u64>& a, long q, long k,
                                const NttPrime& pr) {
  long L = static_cast<long>(a.size()) / q;
  std::vector<u64> b(L);
  u64 qk = powmod(q, k - 1, pr.p);
  for (long n = 0; n < L; n++) {
    b[n] = a[q * n];
    if (n % q == 0) b[n] = (b[n] + mulmod(qk, a[n / q], pr.p)) % pr.p;
  }
  return b;
}

// ---------------------------------------------------------------------------
// rational linear algebra (small dense matrices)

static long rref(std::vector<std::vector<Rational>>& A, std::vector<long>* pivots = nullptr) {
  long rows = A.size(), cols = rows ? A[0].size() : 0, r = 0;
  for (long c = 0; c < cols && r < rows; c++) {
    long piv = -1;
    for (long i = r; i < rows; i++)
      if (A[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(A[r], A[piv]);
    Rational inv = Rational(1) / A[r][c];
    for (long j = c; j < cols; j++) A[r][j] *= inv;
    for (long i = 0; i < rows; i++)
      if (i != r && A[i][c] != 0) {
        Rational f = A[i][c];
        for (long j = c; j < cols; j++) A[i][j] -= f * A[r][j];
      }
    if (pivots) pivots->push_back(c);
    r++;
  }
  return r;
}

// ---------------------------------------------------------------------------
// stage A: exact eigenvector search

struct BasisEntry {
  long seed;              // index into the seed list
  std::vector<long> ops;  // sequence of Hecke primes applied
  std::vector<Rational> prefix;
};

struct Eigenvector {
  std::vector<BasisEntry> support;  // entries with nonzero weight
  std::vector<Rational> weights;
  std::vector<Rational> prefix;     // normalized eigenform prefix
};

struct Target {
  long level, weight, count;
  long a2, a3, a4;
};

static std::vector<Seed> seeds_for(long N, long k) {
  std::vector<Seed> s;
  bool chi_odd = (N % 4 == 3);
  if (k == 6) {
    s.push_back({{0, 6, 1}});
    s.push_back({{0, 6, N}});
    s.push_back({{2, 2, 1}, {0, 4, 1}});
    s.push_back({{2, 2, 1}, {0, 4, N}});
    s.push_back({{2, 2, 1}, {2, 2, 1}, {2, 2, 1}});
    if (chi_odd) {
      s.push_back({{1, 1, 1}, {1, 5, 1}});
      s.push_back({{1, 3, 1}, {1, 3, 1}});
    } else {
      s.push_back({{1, 2, 1}, {1, 4, 1}});
    }
  } else if (k == 4) {
    s.push_back({{0, 4, 1}});
    s.push_back({{0, 4, N}});
    s.push_back({{2, 2, 1}, {2, 2, 1}});
    if (chi_odd) {
      s.push_back({{1, 1, 1}, {1, 3, 1}});
      s.push_back({{1, 1, 1}, {1, 1, 1}, {2, 2, 1}});
      s.push_back({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    } else {
      s.push_back({{1, 2, 1}, {1, 2, 1}});
    }
  } else {
    throw std::runtime_error("seeds_for: unsupported weight");
  }
  return s;
}

static std::vector<Rational> seed_prefix(const Seed& seed, long N, long L) {
  std::vector<Rational> acc = atom_prefix(seed[0], N, L);
  for (size_t i = 1; i < seed.size(); i++) {
    std::vector<Rational> f = atom_prefix(seed[i], N, L);
    std::vector<Rational> out(L, Rational(0));
    for (long a = 0; a < L; a++) {
      if (acc[a] == 0) continue;
      for (long b = 0; a + b < L; b++)
        if (f[b] != 0) out[a + b] += acc[a] * f[b];
    }
    acc = std::move(out);
  }
  return acc;
}

// coordinates of t in the span of basis prefixes; length of agreement is
// checked over every shared coefficient, so a wrong constant term or a
// non-closed span is caught here
static std::vector<Rational> solve_in_span(const std::vector<BasisEntry>& basis,
                                           const std::vector<Rational>& t,
                                           long probe_cols) {
  long d = basis.size();
  long rows = std::min<long>(probe_cols, t.size());
  for (auto& b : basis) rows = std::min<long>(rows, b.prefix.size());
  if (rows < probe_cols / 2)
    throw std::runtime_error("solve_in_span: prefixes too short to probe");
  std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(d + 1));
  for (long r = 0; r < rows; r++) {
    for (long i = 0; i < d; i++) aug[r][i] = basis[i].prefix[r];
    aug[r][d] = t[r];
  }
  std::vector<long> piv;
  rref(aug, &piv);
  for (long c : piv)
    if (c == d) throw std::runtime_error("solve_in_span: inconsistent (span not closed?)");
  std::vector<Rational> x(d, Rational(0));
  for (size_t r = 0; r < piv.size(); r++) x[piv[r]] = aug[r][d];
  // verify on all shared coefficients
  long full = t.size();
  for (long i = 0; i < d; i++) full = std::min<long>(full, basis[i].prefix.size());
  for (long n = 0; n < full; n++) {
    Rational s(0);
    for (long i = 0; i < d; i++) s += x[i] * basis[i].prefix[n];
    if (s != t[n]) throw std::runtime_error("solve_in_span: residual nonzero");
  }
  return x;
}

static Eigenvector stage_a(const Target& tgt) {
  const long P = 2048, C = 96;
  long N = tgt.level, k = tgt.weight;
  auto seeds = seeds_for(N, k);

  std::vector<BasisEntry> basis;
  auto try_add = [&](BasisEntry e) {
    std::vector<std::vector<Rational>> m(basis.size() + 1, std::vector<Rational>(C));
    for (size_t i = 0; i < basis.size(); i++)
      for (long c = 0; c < C; c++) m[i][c] = basis[i].prefix[c];
    for (long c = 0; c < C; c++) m[basis.size()][c] = e.prefix[c];
    if (rref(m) == static_cast<long>(basis.size()) + 1) {
      basis.push_back(std::move(e));
      return true;
    }
    return false;
  };

  for (size_t i = 0; i < seeds.size(); i++)
    try_add({static_cast<long>(i), {}, seed_prefix(seeds[i], N, P)});

  std::vector<long> hecke_primes = {2};
  auto closure = [&]() {
    bool grew = true;
    while (grew) {
      grew = false;
      size_t cur = basis.size();
      for (size_t i = 0; i < cur; i++)
        for (long q : hecke_primes) {
          if (static_cast<long>(basis[i].prefix.size()) / q < 2 * C) continue;
          BasisEntry e{basis[i].seed, basis[i].ops, tq_prefix(basis[i].prefix, q, k)};
          e.ops.push_back(q);
          if (try_add(std::move(e))) grew = true;
        }
    }
  };
  closure();

  auto hecke_matrix = [&](long q) {
    long d = basis.size();
    std::vector<std::vector<Rational>> M(d, std::vector<Rational>(d));
    for (long i = 0; i < d; i++) {
      auto coords = solve_in_span(basis, tq_prefix(basis[i].prefix, q, k), C);
      for (long j = 0; j < d; j++) M[j][i] = coords[j];
    }
    return M;
  };

  auto kernel_of = [&](std::vector<std::vector<Rational>> M) {
    long d = M.size();
    std::vector<long> piv;
    rref(M, &piv);
    std::vector<std::vector<Rational>> ker;
    std::vector<bool> is_piv(d, false);
    for (long c : piv) is_piv[c] = true;
    for (long c = 0; c < d; c++) {
      if (is_piv[c]) continue;
      std::vector<Rational> v(d, Rational(0));
      v[c] = 1;
      for (size_t r = 0; r < piv.size(); r++) v[piv[r]] = -M[r][c];
      ker.push_back(std::move(v));
    }
    return ker;
  };

  auto eigen_kernel = [&]() {
    long d = basis.size();
    auto M = hecke_matrix(2);
    for (long i = 0; i < d; i++) M[i][i] -= Rational(tgt.a2);
    return kernel_of(std::move(M));
  };

  auto ker = eigen_kernel();
  if (ker.size() > 1) {
    // separate with T_3 as well
    hecke_primes.push_back(3);
    closure();
    auto M2 = hecke_matrix(2);
    auto M3 = hecke_matrix(3);
    long d = basis.size();
    std::vector<std::vector<Rational>> stacked(2 * d, std::vector<Rational>(d));
    for (long i = 0; i < d; i++)
      for (long j = 0; j < d; j++) {
        stacked[i][j] = M2[i][j] - (i == j ? Rational(tgt.a2) : Rational(0));
        stacked[d + i][j] = M3[i][j] - (i == j ? Rational(tgt.a3) : Rational(0));
      }
    ker = kernel_of(std::move(stacked));
  }
  if (ker.size() != 1)
    throw std::runtime_error("stage_a: eigenspace dimension " + std::to_string(ker.size()));

  Eigenvector ev;
  long d = basis.size();
  long minlen = P;
  for (auto& b : basis) minlen = std::min<long>(minlen, b.prefix.size());
  ev.prefix.assign(minlen, Rational(0));
  for (long n = 0; n < minlen; n++)
    for (long i = 0; i < d; i++) ev.prefix[n] += ker[0][i] * basis[i].prefix[n];
  if (ev.prefix[1] == 0) throw std::runtime_error("stage_a: eigenform has a_1 = 0");
  Rational scale = Rational(1) / ev.prefix[1];
  for (auto& x : ev.prefix) x *= scale;
  for (long i = 0; i < d; i++) {
    Rational w = ker[0][i] * scale;
    if (w != 0) {
      ev.support.push_back(basis[i]);
      ev.weights.push_back(w);
    }
  }

  // sanity on the prefix
  if (ev.prefix[0] != 0) throw std::runtime_error("stage_a: nonzero constant term");
  if (ev.prefix[2] != Rational(tgt.a2) || ev.prefix[3] != Rational(tgt.a3) ||
      ev.prefix[4] != Rational(tgt.a4))
    throw std::runtime_error("stage_a: eigenform does not match expected a_2..a_4");
  for (long n = 0; n < minlen; n++)
    if (ev.prefix[n].get_den() != 1)
      throw std::runtime_error("stage_a: non-integral coefficient");
  for (long m = 2; m < 40; m++)
    for (long n = m + 1; m * n < minlen; n++)
      if (std::gcd(m, n) == 1 &&
          ev.prefix[m * n] != ev.prefix[m] * ev.prefix[n])
        throw std::runtime_error("stage_a: multiplicativity failure");
  return ev;
}

// ---------------------------------------------------------------------------
// stage B: full-length evaluation

static std::vector<long long> stage_b(const Target& tgt, const Eigenvector& ev,
                                      const std::vector<NttPrime>& primes) {
  long N = tgt.level, k = tgt.weight, LF = tgt.count + 1;
  auto seeds = seeds_for(N, k);

  // base length: enough for the deepest operator chain
  long depth = 1;
  for (auto& e : ev.support) {
    long d = 1;
    for (long q : e.ops) d *= q;
    depth = std::max(depth, d);
  }
  long LB = LF * depth;

  Integer D(1);  // common denominator
  for (auto& w : ev.weights) D = lcm(D, Integer(w.get_den()));

  std::vector<std::vector<u64>> residues;
  for (auto& pr : primes) {
    // group support entries by seed so each base is computed once
    std::vector<u64> acc(LF, 0);
    std::map<long, std::vector<size_t>> by_seed;
    for (size_t i = 0; i < ev.support.size(); i++)
      by_seed[ev.support[i].seed].push_back(i);
    for (auto& [si, idxs] : by_seed) {
      std::vector<u64> base = atom_modp(seeds[si][0], N, LB, pr);
      for (size_t a = 1; a < seeds[si].size(); a++)
        base = polmul_trunc(base, atom_modp(seeds[si][a], N, LB, pr), LB, pr);
      for (size_t i : idxs) {
        std::vector<u64> cur = base;
        for (long q : ev.support[i].ops) cur = tq_modp(cur, q, k, pr);
        if (static_cast<long>(cur.size()) < LF)
          throw std::runtime_error("stage_b: operator chain exhausted base length");
        Rational w = ev.weights[i] * Rational(D);
        if (w.get_den() != 1) throw std::runtime_error("stage_b: denominator");
        u64 wm = mpz_fdiv_ui(w.get_num().get_mpz_t(), pr.p);
        for (long n = 0; n < LF; n++)
          acc[n] = (acc[n] + mulmod(wm, cur[n], pr.p)) % pr.p;
      }
    }
    residues.push_back(std::move(acc));
  }

  // CRT and exact division by D
  Integer M(1);
  for (auto& pr : primes) M *= Integer(pr.p);
  std::vector<Integer> crt_mult;
  for (auto& pr : primes) {
    Integer Mi = M / Integer(pr.p);
    u64 mi = mpz_fdiv_ui(Mi.get_mpz_t(), pr.p);
    crt_mult.push_back(Mi * Integer(invmod(mi, pr.p)));
  }
  std::vector<long long> an(LF, 0);
  Integer half = M / 2;
  for (long n = 1; n < LF; n++) {
    Integer x(0);
    for (size_t i = 0; i < primes.size(); i++)
      x += crt_mult[i] * Integer(static_cast<unsigned long>(residues[i][n]));
    x %= M;
    if (x < 0) x += M;
    if (x > half) x -= M;
    if (x % D != 0) throw std::runtime_error("stage_b: CRT result not divisible by denominator");
    x /= D;
    if (!x.fits_slong_p()) throw std::runtime_error("stage_b: coefficient overflows int64");
    an[n] = x.get_si();
  }
  return an;
}

static void validate(const Target& tgt, const Eigenvector& ev,
                     const std::vector<long long>& an) {
  long LF = tgt.count;
  long k = tgt.weight;
  if (an[1] != 1) throw std::runtime_error("validate: a_1 != 1");
  // prefix agreement with stage A
  for (size_t n = 1; n < ev.prefix.size() && n <= static_cast<size_t>(LF); n++)
    if (Rational(static_cast<long>(an[n])) != ev.prefix[n])
      throw std::runtime_error("validate: prefix mismatch at n=" + std::to_string(n));
  // multiplicativity across the full range
  for (long m = 2; m <= 1000; m += 7)
    for (long n = m + 1; m * n <= LF; n = n * 3 + 1)
      if (std::gcd(m, n) == 1 && an[m * n] != an[m] * an[n])
        throw std::runtime_error("validate: multiplicativity at " + std::to_string(m * n));
  // Hecke recurrence at prime squares, and Ramanujan bound at primes
  for (long q = 2; q * q <= LF; q++) {
    bool prime = true;
    for (long d = 2; d * d <= q; d++)
      if (q % d == 0) { prime = false; break; }
    if (!prime) continue;
    if (tgt.level % q != 0) {
      long long qk = 1;
      for (long i = 0; i < k - 1; i++) qk *= q;
      if (an[q * q] != an[q] * an[q] - qk)
        throw std::runtime_error("validate: Hecke recurrence at q=" + std::to_string(q));
    }
    double bound = (tgt.level % q == 0 ? 1.0 : 2.0) * std::pow(q, (k - 1) / 2.0) + 0.5;
    if (std::abs(static_cast<double>(an[q])) > bound)
      throw std::runtime_error("validate: Ramanujan bound at q=" + std::to_string(q));
  }
}

int main(int argc, char** argv) {
  std::string outdir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(outdir);
  std::vector<Target> targets = {
      {5, 6, 260000, 2, -4, -28},
      {7, 6, 360000, -10, -14, 68},
      {19, 4, 1000000, -3, -5, 1},
  };
  auto primes = find_ntt_primes(3);
  for (auto& pr : primes)
    std::cout << "ntt prime " << pr.p << " root " << pr.g << "\n";
  for (auto& tgt : targets) {
    std::cout << "level " << tgt.level << " weight " << tgt.weight << ": stage A... "
              << std::flush;
    Eigenvector ev = stage_a(tgt);
    std::cout << ev.support.size() << " basis terms; stage B... " << std::flush;
    auto an = stage_b(tgt, ev, primes);
    validate(tgt, ev, an);
    NewformData f;
    f.level = tgt.level;
    f.weight = tgt.weight;
    f.an = std::vector<long long>(an.begin(), an.end());
    std::string path = outdir + "/" + newform_filename(tgt.level, tgt.weight);
    write_newform(f, path);
    std::cout << "wrote " << path << " (" << f.count() << " coefficients)\n";
  }
  return 0;
}
