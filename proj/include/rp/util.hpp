#pragma once
#include <cstdint>
#include <gmpxx.h>
#include <numeric>
#include <string>
#include <vector>

namespace rp {

// smallest-prime-factor sieve; spf[1] = 1
inline std::vector<int32_t> spf_sieve(int32_t n) {
  std::vector<int32_t> spf(n + 1, 0);
  if (n >= 1) spf[1] = 1;
  for (int64_t i = 2; i <= n; i++) {
    if (spf[i] == 0) {
      for (int64_t j = i; j <= n; j += i)
        if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
    }
  }
  return spf;
}

inline std::vector<int32_t> primes_up_to(int32_t n) {
  auto spf = spf_sieve(n);
  std::vector<int32_t> ps;
  for (int32_t i = 2; i <= n; i++)
    if (spf[i] == i) ps.push_back(i);
  return ps;
}

inline int64_t pow_ll(int64_t b, int e) {
  int64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Kronecker symbol (a|n), delegated to GMP
inline int kronecker_ll(int64_t a, int64_t n) {
  mpz_class za(static_cast<long>(a)), zn(static_cast<long>(n));
  return mpz_kronecker(za.get_mpz_t(), zn.get_mpz_t());
}

inline int64_t mod_pow_ll(int64_t b, int64_t e, int64_t m) {
  __int128 r = 1, base = ((b % m) + m) % m;
  while (e > 0) {
    if (e & 1) r = (r * base) % m;
    base = (base * static_cast<int64_t>(base)) % m;
    e >>= 1;
  }
  return static_cast<int64_t>(r);
}

// sqrt of a mod odd prime p (Tonelli–Shanks); returns -1 if non-residue
inline int64_t sqrt_mod_p(int64_t a, int64_t p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  if (mod_pow_ll(a, (p - 1) / 2, p) != 1) return -1;
  if (p % 4 == 3) return mod_pow_ll(a, (p + 1) / 4, p);
  int64_t q = p - 1, s = 0;
  while (q % 2 == 0) { q /= 2; s++; }
  int64_t z = 2;
  while (mod_pow_ll(z, (p - 1) / 2, p) != p - 1) z++;
  int64_t m = s, c = mod_pow_ll(z, q, p), t = mod_pow_ll(a, q, p),
          r = mod_pow_ll(a, (q + 1) / 2, p);
  while (t != 1) {
    int64_t i = 0, tt = t;
    while (tt != 1) { tt = static_cast<int64_t>((__int128)tt * tt % p); i++; }
    int64_t b = c;
    for (int64_t j = 0; j < m - i - 1; j++) b = static_cast<int64_t>((__int128)b * b % p);
    m = i;
    c = static_cast<int64_t>((__int128)b * b % p);
    t = static_cast<int64_t>((__int128)t * c % p);
    r = static_cast<int64_t>((__int128)r * b % p);
  }
  return r;
}

// FNV-1a 64-bit, used for coefficient-file checksums
inline uint64_t fnv1a(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(uint64_t x) {
  static const char* d = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; i--) { s[i] = d[x & 15]; x >>= 4; }
  return s;
}

}  // namespace rp
