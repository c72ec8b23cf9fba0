#pragma once
// Newform coefficient data: file format, ingestion, remote fetch with local
// cache, and elementary Hecke-side operations (local polynomials, Euler
// factor manipulation on Dirichlet series, Sturm-bound congruences).

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include "rp/rational.hpp"
#include "rp/util.hpp"

namespace rp {

struct NewformData {
  long level = 0;
  long weight = 0;
  std::string nebentypus = "trivial";
  std::vector<long long> an;  // an[n], an[0] unused, an[1] = 1

  long long a(long n) const { return an.at(n); }
  long count() const { return static_cast<long>(an.size()) - 1; }
};

inline std::string newform_filename(long level, long weight) {
  return "newform_" + std::to_string(level) + "_" + std::to_string(weight) + ".txt";
}

inline std::string coeff_checksum(const std::vector<long long>& an) {
  std::string blob;
  for (size_t n = 1; n < an.size(); n++) {
    blob += std::to_string(an[n]);
    blob += '\n';
  }
  return hex64(fnv1a(blob));
}

inline void write_newform(const NewformData& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_newform: cannot open " + path);
  out << "# newform coefficient table\n";
  out << "level " << f.level << "\n";
  out << "weight " << f.weight << "\n";
  out << "nebentypus " << f.nebentypus << "\n";
  out << "count " << f.count() << "\n";
  out << "checksum " << coeff_checksum(f.an) << "\n";
  out << "\n";
  for (long n = 1; n <= f.count(); n++) out << f.an[n] << "\n";
}

inline NewformData ingest_newform(std::istream& in, const std::string& what) {
  NewformData f;
  std::string line;
  long count = -1;
  std::string checksum;
  while (std::getline(in, line)) {
    if (line.empty()) break;
    if (line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "level") ls >> f.level;
    else if (key == "weight") ls >> f.weight;
    else if (key == "nebentypus") ls >> f.nebentypus;
    else if (key == "count") ls >> count;
    else if (key == "checksum") ls >> checksum;
    else throw std::runtime_error("ingest_newform: bad header line in " + what);
  }
  if (f.level <= 0 || f.weight <= 0 || count <= 0 || checksum.empty())
    throw std::runtime_error("ingest_newform: incomplete header in " + what);
  f.an.assign(1, 0);
  f.an.reserve(count + 1);
  long long v;
  while (in >> v) f.an.push_back(v);
  if (f.count() != count)
    throw std::runtime_error("ingest_newform: coefficient count mismatch in " + what);
  if (coeff_checksum(f.an) != checksum)
    throw std::runtime_error("ingest_newform: checksum mismatch in " + what);
  if (f.an[1] != 1)
    throw std::runtime_error("ingest_newform: not normalized (a_1 != 1) in " + what);
  return f;
}

inline NewformData read_newform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_newform: cannot open " + path);
  return ingest_newform(in, path);
}

// fetch from cache_dir, falling back to GET <endpoint>/newform/<level>/<weight>
// (endpoint = "host:port" or "http://host:port"); throws on offline cache miss
NewformData fetch_newform(long level, long weight, const std::string& cache_dir,
                          const std::string& endpoint, bool offline);

// Hecke polynomial of f at q: x^2 - a_q x + q^{k-1} for q coprime to the
// level, x - a_q for q | level (exact newform convention at prime level)
inline std::vector<Integer> hecke_local_poly(const NewformData& f, long q) {
  Integer aq(static_cast<long>(f.a(q)));
  if (f.level % q == 0) return {Integer(1), -aq};
  return {Integer(1), -aq, pow_z(Integer(q), f.weight - 1)};
}

// b_n = sum_j c_j a_{n / q^j}: applies a polynomial in the shift-by-q
// operator to a Dirichlet series (used for Euler factor surgery)
inline std::vector<Rational> dirichlet_apply_poly(const std::vector<Rational>& a,
                                                  long q,
                                                  const std::vector<Rational>& c) {
  std::vector<Rational> b(a.size(), Rational(0));
  for (size_t n = 1; n < a.size(); n++) {
    Rational s(0);
    long qq = 1;
    for (size_t j = 0; j < c.size(); j++) {
      if (n % qq == 0) s += c[j] * a[n / qq];
      if (qq > static_cast<long>(n) / q) break;
      qq *= q;
    }
    b[n] = s;
  }
  return b;
}

// remove one Euler root: b_n = a_n - r a_{n/q}
inline std::vector<Rational> stabilize_at(const std::vector<Rational>& a, long q,
                                          const Rational& root) {
  return dirichlet_apply_poly(a, q, {Rational(1), -root});
}

// remove the full Euler factor of f at q
inline std::vector<Rational> strip_euler_factor(const std::vector<Rational>& a,
                                                const NewformData& f, long q) {
  std::vector<Rational> c;
  for (auto& z : hecke_local_poly(f, q)) c.push_back(Rational(z));
  // hecke_local_poly is in x = q^{s}-dual ordering already: 1, -a_q, q^{k-1}
  return dirichlet_apply_poly(a, q, c);
}

// Sturm bound for Gamma_0(N), weight k: k * [SL_2(Z) : Gamma_0(N)] / 12
inline long sturm_bound(long N, long k) {
  long mu = N;
  long n = N;
  for (long q = 2; q * q <= n; q++)
    if (n % q == 0) {
      mu = mu / q * (q + 1);
      while (n % q == 0) n /= q;
    }
  if (n > 1) mu = mu / n * (n + 1);
  return (k * mu + 11) / 12;  // ceiling
}

// coefficientwise congruence a_n = b_n mod p for n up to the max Sturm bound
inline bool congruent_mod_p(const NewformData& f, const std::vector<long long>& bn,
                            long bn_level, long bn_weight, long p) {
  long B = std::max(sturm_bound(f.level, f.weight), sturm_bound(bn_level, bn_weight));
  if (f.count() < B || static_cast<long>(bn.size()) - 1 < B)
    throw std::runtime_error("congruent_mod_p: not enough coefficients for Sturm bound");
  for (long n = 1; n <= B; n++)
    if (((f.an[n] - bn[n]) % p + p) % p != 0) return false;
  return true;
}

}  // namespace rp
