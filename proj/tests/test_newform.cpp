#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>
#include "rp/fetch.hpp"
#include "rp/modform.hpp"

using namespace rp;
namespace fs = std::filesystem;

static const std::string kData = RP_DATA_DIR;

static std::vector<long long> sigma3_series(long N) {
  std::vector<long long> s(N + 1, 0);
  for (long d = 1; d <= N; d++)
    for (long n = d; n <= N; n += d) s[n] += (long long)d * d * d;
  return s;
}

TEST_CASE("newform tables load and match known eigenvalues") {
  struct Row { long level, weight, count; long long a2, a3, a4; };
  for (Row r : {Row{5, 6, 260000, 2, -4, -28}, Row{7, 6, 360000, -10, -14, 68},
                Row{19, 4, 1000000, -3, -5, 1}}) {
    NewformData f = read_newform(kData + "/" + newform_filename(r.level, r.weight));
    REQUIRE(f.level == r.level);
    REQUIRE(f.weight == r.weight);
    REQUIRE(f.nebentypus == "trivial");
    REQUIRE(f.count() == r.count);
    REQUIRE(f.a(1) == 1);
    REQUIRE(f.a(2) == r.a2);
    REQUIRE(f.a(3) == r.a3);
    REQUIRE(f.a(4) == r.a4);
    // multiplicativity and Hecke recurrence spot checks
    REQUIRE(f.a(6) == f.a(2) * f.a(3));
    REQUIRE(f.a(35) == f.a(5) * f.a(7));
    long long qk = 1;
    for (long i = 0; i < r.weight - 1; i++) qk *= 11;
    REQUIRE(f.a(121) == f.a(11) * f.a(11) - qk);
    // Deligne bound at a large prime
    long q = 99991;  // prime
    REQUIRE(std::abs((double)f.a(q)) <= 2 * std::pow(q, (r.weight - 1) / 2.0));
  }
}

TEST_CASE("coefficient file roundtrip and tamper detection") {
  NewformData f;
  f.level = 11;
  f.weight = 2;
  f.an = {0, 1, -2, -1, 2, 1, 2, -2, 0, -2, -2};
  fs::path tmp = fs::temp_directory_path() / "rp_test_newform.txt";
  write_newform(f, tmp.string());
  NewformData g = read_newform(tmp.string());
  REQUIRE(g.level == 11);
  REQUIRE(g.an == f.an);
  // corrupt one coefficient: checksum must catch it
  std::string text;
  {
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  size_t pos = text.rfind("-2");
  text.replace(pos, 2, "-3");
  {
    std::ofstream out(tmp);
    out << text;
  }
  REQUIRE_THROWS_WITH(read_newform(tmp.string()),
                      Catch::Matchers::ContainsSubstring("checksum"));
  fs::remove(tmp);
}

TEST_CASE("sturm bounds") {
  REQUIRE(sturm_bound(5, 6) == 3);
  REQUIRE(sturm_bound(7, 6) == 4);
  REQUIRE(sturm_bound(19, 4) == 7);
  REQUIRE(sturm_bound(1, 12) == 1);
}

TEST_CASE("weight-4 level-19 form is congruent to the sigma_3 eisenstein series mod 3") {
  NewformData f = read_newform(kData + "/" + newform_filename(19, 4));
  auto e = sigma3_series(10);
  REQUIRE(congruent_mod_p(f, e, 19, 4, 3));
  // and visibly: a_2 = -3 = 0 = sigma_3(2) mod 3, a_3 = -5 = 1 = 28 mod 3
  REQUIRE((f.a(3) - 28) % 3 == 0);
}

TEST_CASE("dirichlet series euler factor surgery") {
  // zeta-like series a_n = 1; removing (1 - 2^{-s}) leaves indicator of odd n
  std::vector<Rational> a(50, Rational(1));
  a[0] = 0;
  auto b = dirichlet_apply_poly(a, 2, {Rational(1), Rational(-1)});
  for (long n = 1; n < 50; n++) REQUIRE(b[n] == (n % 2 ? Rational(1) : Rational(0)));
  // sigma_1: removing the full degree-2 factor at 3 kills sigma_1 on multiples of 3
  std::vector<Rational> s(100, Rational(0));
  for (long d = 1; d < 100; d++)
    for (long n = d; n < 100; n += d) s[n] += d;
  // local roots of sigma_1 at q: 1 and q, so poly 1 - (q+1)x + qx^2
  auto t = dirichlet_apply_poly(s, 3, {Rational(1), Rational(-4), Rational(3)});
  for (long n = 1; n < 100; n++)
    if (n % 3 == 0) REQUIRE(t[n] == 0);
  REQUIRE(t[5] == s[5]);
  // stabilize_at removes a single root: applying both roots equals full factor
  auto u = stabilize_at(stabilize_at(s, 3, Rational(1)), 3, Rational(3));
  REQUIRE(u == t);
}

TEST_CASE("hecke local polynomials") {
  NewformData f = read_newform(kData + "/" + newform_filename(5, 6));
  auto good = hecke_local_poly(f, 2);
  REQUIRE(good == std::vector<Integer>{Integer(1), Integer(-2), Integer(32)});
  auto bad = hecke_local_poly(f, 5);
  REQUIRE(bad == std::vector<Integer>{Integer(1), Integer(static_cast<long>(-f.a(5)))});
  // a_5 at the prime level has |a_5| = 5^{(k-2)/2} = 25
  REQUIRE(std::abs((double)f.a(5)) == 25.0);
}

TEST_CASE("fetch with cache and stub server") {
  NewformData small;
  small.level = 5;
  small.weight = 6;
  {
    NewformData full = read_newform(kData + "/" + newform_filename(5, 6));
    small.an.assign(full.an.begin(), full.an.begin() + 101);
  }
  std::string body;
  {
    std::ostringstream ss;
    fs::path tmp = fs::temp_directory_path() / "rp_serve_newform.txt";
    write_newform(small, tmp.string());
    std::ifstream in(tmp);
    std::stringstream s2;
    s2 << in.rdbuf();
    body = s2.str();
    fs::remove(tmp);
  }

  httplib::Server srv;
  int hits = 0;
  srv.Get("/newform/5/6", [&](const httplib::Request&, httplib::Response& res) {
    hits++;
    res.set_content(body, "text/plain");
  });
  int port = srv.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread th([&] { srv.listen_after_bind(); });
  srv.wait_until_ready();

  fs::path cache = fs::temp_directory_path() / "rp_test_cache";
  fs::remove_all(cache);

  // offline miss throws
  REQUIRE_THROWS_WITH(fetch_newform(5, 6, cache.string(),
                                    "127.0.0.1:" + std::to_string(port), true),
                      Catch::Matchers::ContainsSubstring("offline"));
  // online fetch populates the cache
  NewformData f = fetch_newform(5, 6, cache.string(),
                                "127.0.0.1:" + std::to_string(port), false);
  REQUIRE(f.count() == 100);
  REQUIRE(f.a(2) == 2);
  REQUIRE(hits == 1);
  // second call is served from cache, even offline
  NewformData g = fetch_newform(5, 6, cache.string(),
                                "127.0.0.1:" + std::to_string(port), true);
  REQUIRE(g.an == f.an);
  REQUIRE(hits == 1);
  // a request the server cannot satisfy
  REQUIRE_THROWS(fetch_newform(101, 2, cache.string(),
                               "127.0.0.1:" + std::to_string(port), false));

  srv.stop();
  th.join();
  fs::remove_all(cache);
}
