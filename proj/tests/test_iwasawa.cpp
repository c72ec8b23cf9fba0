#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "rp/iwasawa.hpp"
#include "rp/padicL.hpp"

using namespace rp;

namespace {

std::mt19937 rng(20260826);

// a random unit of the group ring: a delta element plus p times noise
IwasawaElement random_unit(const UnitGroupLevel& l, long A) {
  std::uniform_int_distribution<long> coeff(0, 8), idx(0, l.order() - 1);
  IwasawaElement x = IwasawaElement::delta(l, A, idx(rng));
  Integer md = x.coeff_modulus();
  for (auto& c : x.c) c = (c + l.p * coeff(rng)) % md;
  // the leading digit can be any unit
  x.c[idx(rng)] = (x.c[idx(rng)] + 1) % md;
  if (!x.is_unit()) return random_unit(l, A);  // rare; retry
  return x;
}

IwasawaElement random_element(const UnitGroupLevel& l, long A) {
  std::uniform_int_distribution<long> coeff(0, 26);
  IwasawaElement x(l, A);
  Integer md = x.coeff_modulus();
  for (auto& c : x.c) c = Integer(coeff(rng)) % md;
  return x;
}

// character values are integral and only well defined modulo the coefficient
// modulus of the group-ring element being evaluated
bool cyclo_congruent(const Cyclotomic& a, const Cyclotomic& b, const Integer& md) {
  Cyclotomic d = a - b;
  for (const Rational& q : d.c) {
    if (q.get_den() != 1) return false;
    if (q.get_num() % md != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("truncated unit group structure") {
  UnitGroupLevel l0(3, 0, 2);  // Z_3^x modulo U^(3): order 2 * 9
  UnitGroupLevel l1(3, 1, 2);  // U^(1)/U^(3): order 9
  CHECK(l0.order() == 18);
  CHECK(l1.order() == 9);
  CHECK(l0.D == 3);
  CHECK(l1.D == 3);
  CHECK(l0.compatible(l1));

  SECTION("generators generate") {
    for (const UnitGroupLevel& l : {l0, l1}) {
      std::vector<Integer> seen;
      for (long e = 0; e < l.order(); e++) seen.push_back(l.element(e));
      std::sort(seen.begin(), seen.end());
      CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
      // every element is congruent to 1 mod 3^n
      Integer pn = pow_z(Integer(3), l.n);
      for (const auto& u : seen) CHECK(u % pn == 1 % pn);
    }
  }
  SECTION("discrete logarithm inverts exponentiation") {
    for (long e = 0; e < l0.order(); e++)
      CHECK(l0.dlog(l0.element(e)) == e);
  }
}

TEST_CASE("group ring arithmetic") {
  UnitGroupLevel l(3, 1, 2);
  long A = 3;

  SECTION("delta elements multiply by adding exponents") {
    for (long a = 0; a < 9; a++)
      for (long b = 0; b < 9; b++)
        CHECK(IwasawaElement::delta(l, A, a) * IwasawaElement::delta(l, A, b) ==
              IwasawaElement::delta(l, A, a + b));
  }
  SECTION("ring axioms on random elements") {
    for (int t = 0; t < 20; t++) {
      IwasawaElement x = random_element(l, A), y = random_element(l, A),
                     z = random_element(l, A);
      CHECK(x * y == y * x);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
    }
  }
  SECTION("units invert; zero divisors are rejected") {
    for (int t = 0; t < 20; t++) {
      IwasawaElement x = random_unit(l, A);
      CHECK(x * x.inverse() == IwasawaElement::one(l, A));
    }
    // the sum over the whole group is annihilated by (g - 1)
    IwasawaElement s(l, A);
    for (auto& c : s.c) c = 1;
    CHECK_FALSE(s.is_unit());
    CHECK_THROWS_AS(s.inverse(), std::domain_error);
  }
}

TEST_CASE("norm maps") {
  long A = 3;
  UnitGroupLevel l0(3, 0, 2), l1 = UnitGroupLevel::with_ambient(3, 1, 3),
                 l2 = UnitGroupLevel::with_ambient(3, 2, 3);

  SECTION("identity maps to one") {
    CHECK(norm_map(IwasawaElement::one(l0, A), 1) ==
          IwasawaElement::one(l1, A));
    CHECK(norm_map(IwasawaElement::one(l1, A), 2) ==
          IwasawaElement::one(l2, A));
  }
  SECTION("scalars map to the power given by the index") {
    // [U^(0):U^(1)] = 2, [U^(0):U^(2)] = 6, [U^(1):U^(2)] = 3
    Integer c(5);
    CHECK(norm_map(IwasawaElement::scalar(l0, A, c), 1) ==
          IwasawaElement::scalar(l1, A, c * c));
    CHECK(norm_map(IwasawaElement::scalar(l1, A, c), 2) ==
          IwasawaElement::scalar(l2, A, (c * c * c) % pow_z(Integer(3), A)));
  }
  SECTION("norms compose transitively") {
    for (int t = 0; t < 100; t++) {
      IwasawaElement x = random_unit(l0, A);
      CHECK(norm_map(norm_map(x, 1), 2) == norm_map(x, 2));
    }
  }
  SECTION("non-units are rejected") {
    IwasawaElement s(l1, A);
    for (auto& c : s.c) c = 1;
    CHECK_THROWS_AS(norm_map(s, 2), std::domain_error);
  }
}

TEST_CASE("frobenius") {
  long A = 3;
  UnitGroupLevel l1 = UnitGroupLevel::with_ambient(3, 1, 4),
                 l2 = UnitGroupLevel::with_ambient(3, 2, 4);

  SECTION("delta elements map to the cube of the group element") {
    for (long e = 0; e < l1.order(); e++) {
      Integer md = l1.modulus();
      Integer u = l1.element(e);
      Integer u3 = (((u * u) % md) * u) % md;
      CHECK(frobenius_phi(IwasawaElement::delta(l1, A, e)) ==
            IwasawaElement::delta(l2, A, l2.dlog(u3)));
    }
  }
  SECTION("ring homomorphism on random pairs") {
    for (int t = 0; t < 20; t++) {
      IwasawaElement x = random_element(l1, A), y = random_element(l1, A);
      CHECK(frobenius_phi(x * y) == frobenius_phi(x) * frobenius_phi(y));
      CHECK(frobenius_phi(x + y) == frobenius_phi(x) + frobenius_phi(y));
    }
  }
  SECTION("character pullback is composition with the cube map") {
    long N = l1.order(), Nj = l2.order();
    Integer md = l1.modulus();
    Integer g = l1.element(1);
    Integer g3 = (((g * g) % md) * g) % md;
    long s = l2.dlog(g3);
    IwasawaElement x = random_element(l1, A);
    for (long k = 0; k < Nj; k++) {
      Cyclotomic lhs = evaluate_character(frobenius_phi(x), k);
      Cyclotomic rhs = evaluate_character(x, (k * s * (N / Nj)) % N);
      // the cube map collapses support, so the sums agree modulo 3^A only
      CHECK(cyclo_congruent(lhs, rhs, x.coeff_modulus()));
    }
  }
  SECTION("torsion support cannot enter the principal units") {
    UnitGroupLevel l0(3, 0, 3);
    // the element 2 is not congruent to 1 mod 3, so its cube leaves U^(1)
    IwasawaElement x = IwasawaElement::delta(l0, A, 1);
    CHECK_THROWS_AS(frobenius_phi(x), std::domain_error);
  }
}

TEST_CASE("character evaluation") {
  long A = 3;
  UnitGroupLevel l(3, 1, 2);
  long N = l.order();

  SECTION("trivial character gives the augmentation") {
    IwasawaElement x = random_element(l, A);
    CHECK(cyclo_congruent(evaluate_character(x, 0),
                          Cyclotomic(Rational(x.augmentation())), x.coeff_modulus()));
  }
  SECTION("delta at an element evaluates to a root of unity") {
    for (long k = 0; k < N; k++)
      CHECK(evaluate_character(IwasawaElement::delta(l, A, 2), k) ==
            Cyclotomic::zeta(N, (2 * k) % N));
  }
  SECTION("all characters together determine the element") {
    IwasawaElement x = random_element(l, A);
    // discrete Fourier inversion over Q(zeta_N)
    for (long m = 0; m < N; m++) {
      Cyclotomic acc(Rational(0));
      for (long k = 0; k < N; k++)
        acc = acc + evaluate_character(x, k) *
                        Cyclotomic::zeta(N, ((N - m) * k) % N) *
                        Rational(1, N);
      CHECK(acc == Cyclotomic(Rational(x.c[m])));
    }
  }
}

TEST_CASE("kato product") {
  long A = 3;
  long D = 4;
  UnitGroupLevel l0 = UnitGroupLevel::with_ambient(3, 0, D),
                 l1 = UnitGroupLevel::with_ambient(3, 1, D),
                 l2 = UnitGroupLevel::with_ambient(3, 2, D);

  SECTION("a single-term family gives the empty product") {
    IwasawaElement a0 = random_unit(l0, A);
    CHECK(kato_product({a0}) == IwasawaElement::one(l0, A));
  }
  SECTION("a norm-and-frobenius consistent family gives exactly one") {
    IwasawaElement a0 = random_unit(l0, A);
    IwasawaElement a1 = norm_map(a0, 1);
    IwasawaElement a2 =
        norm_map(a0, 2) * frobenius_phi(a1) / frobenius_phi(norm_map(a0, 1));
    CHECK(kato_product({a0, a1}) == IwasawaElement::one(l1, A));
    CHECK(kato_product({a0, a1, a2}) == IwasawaElement::one(l2, A));
  }
  SECTION("random families produce well-defined answers") {
    for (int t = 0; t < 5; t++) {
      IwasawaElement a0 = random_unit(l0, A), a1 = random_unit(l1, A),
                     a2 = random_unit(l2, A);
      IwasawaElement prod = kato_product({a0, a1, a2});
      CHECK(prod.is_unit());
      (void)congruence_check(prod, 1);
    }
  }
}

TEST_CASE("congruence check") {
  long A = 4;
  UnitGroupLevel l(3, 1, 3);

  SECTION("the identity passes at every modulus") {
    IwasawaElement one = IwasawaElement::one(l, A);
    for (long m = 1; m <= A; m++) CHECK(congruence_check(one, m));
    CHECK_THROWS_AS(congruence_check(one, A + 1), std::domain_error);
  }
  SECTION("a constructed witness separates consecutive moduli") {
    for (long m = 1; m < A; m++) {
      IwasawaElement x = IwasawaElement::one(l, A);
      x.c[2] = (x.c[2] + pow_z(Integer(3), m)) % x.coeff_modulus();
      CHECK(congruence_check(x, m));
      CHECK_FALSE(congruence_check(x, m + 1));
    }
  }
}

TEST_CASE("first-layer reduction of the product congruence") {
  long A = 3, D = 3;
  UnitGroupLevel l0 = UnitGroupLevel::with_ambient(3, 0, D),
                 l1 = UnitGroupLevel::with_ambient(3, 1, D);

  // an element of the level-0 algebra with prescribed evaluations L0 at the
  // trivial character and Lt at the tame quadratic character
  auto tame_pair = [&](const Integer& L0, const Integer& Lt) {
    Integer md = pow_z(Integer(3), A);
    Integer inv2;
    mpz_invert(inv2.get_mpz_t(), Integer(2).get_mpz_t(), md.get_mpz_t());
    IwasawaElement x(l0, A);
    long half = l0.order() / 2;  // the order-two group element
    x.c[0] = ((L0 + Lt) * inv2) % md;
    x.c[half] = ((L0 - Lt) * inv2 % md + md) % md;
    return x;
  };

  SECTION("prescribed evaluations are hit") {
    IwasawaElement a0 = tame_pair(Integer(7), Integer(4));
    long N = l0.order();
    Integer md = a0.coeff_modulus();
    CHECK(cyclo_congruent(evaluate_character(a0, 0), Cyclotomic(Rational(7)), md));
    // the tame quadratic character sends the generator to -1
    CHECK(cyclo_congruent(evaluate_character(a0, N / 2), Cyclotomic(Rational(4)), md));
  }

  SECTION("modulus-3 check is the scalar congruence L1 = L0 Lt") {
    for (long L0 : {1, 2, 4, 5, 7, 8})
      for (long Lt : {1, 2, 4, 8})
        for (long L1 : {1, 2, 5, 7}) {
          IwasawaElement a0 = tame_pair(Integer(L0), Integer(Lt));
          IwasawaElement a1 = IwasawaElement::scalar(l1, A, Integer(L1));
          bool checked = congruence_check(kato_product({a0, a1}), 1);
          bool scalar = ((L1 - L0 * Lt) % 3 + 3) % 3 == 0;
          CHECK(checked == scalar);
        }
  }

  SECTION("with measured values it is the mod-3 congruence of L-values") {
    // the tame evaluation of the level-0 measure is a unit congruent to 1
    // mod 3, so the check reduces to L(rho0, r) = L(rho1, r) mod 3
    LpCalculator calc(read_newform(std::string(RP_DATA_DIR) + "/" +
                                   newform_filename(5, 6)),
                      2, 60);
    for (long r : {1L, 2L}) {
      Integer L0 = calc.lvalue(0, r, A).value.residue(A);
      Integer L1 = calc.lvalue(1, r, A).value.residue(A);
      IwasawaElement a0 = tame_pair(L0, Integer(1));
      IwasawaElement a1 = IwasawaElement::scalar(l1, A, L1);
      bool checked = congruence_check(kato_product({a0, a1}), 1);
      CHECK(checked == calc.congruent_mod_3(r));
      CHECK(checked);
    }
  }
}
