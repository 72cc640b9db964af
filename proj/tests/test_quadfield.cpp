#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lsq/quadfield.hpp"

#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

using namespace lsq;

namespace {

const PrimeOfF& only_prime(const std::vector<PrimeOfF>& v) {
  REQUIRE(v.size() == 1);
  return v.front();
}

}  // namespace

TEST_CASE("field construction and element arithmetic") {
  RealQuadField f5(5);
  CHECK(f5.trace_omega() == 5);
  CHECK(f5.norm_omega() == 5);

  RealQuadField f12(12);
  CHECK(f12.norm_omega() == 33);

  RealQuadField f21(21);
  CHECK(field_norm(f21, 0, 1) == 105);
  CHECK(field_trace(f21, 0, 1) == 21);
  CHECK(field_norm(f21, 1, 0) == 1);
  CHECK(field_norm(f21, -3, 0) == 9);

  // norm is multiplicative: (x+y*omega)(u+v*omega) expanded by hand
  // for a couple of pairs via omega^2 = 21*omega - 105.
  auto mul = [&](int64_t x, int64_t y, int64_t u, int64_t v) {
    return std::pair<mpz_class, mpz_class>(mpz_class(x) * u - mpz_class(y) * v * 105,
                              mpz_class(x) * v + mpz_class(y) * u + mpz_class(y) * v * 21);
  };
  auto [px, py] = mul(2, -1, 3, 4);
  CHECK(field_norm(f21, px, py) == field_norm(f21, 2, -1) * field_norm(f21, 3, 4));

  CHECK_THROWS_AS(RealQuadField(7), Error);   // 7 = 3 mod 4
  CHECK_THROWS_AS(RealQuadField(20), Error);  // 4 * (1 mod 4)
  CHECK_THROWS_AS(RealQuadField(1), Error);
  CHECK_THROWS_AS(RealQuadField(-3), Error);
}

TEST_CASE("signs at the two real embeddings") {
  RealQuadField f5(5);
  // omega = (5 + sqrt 5)/2 is positive at both embeddings
  CHECK(sign_at_embedding(f5, 0, 1, 1) == 1);
  CHECK(sign_at_embedding(f5, 0, 1, -1) == 1);
  CHECK(totally_positive(f5, 0, 1));
  // 1 - omega is negative at both
  CHECK(sign_at_embedding(f5, 1, -1, 1) == -1);
  CHECK(sign_at_embedding(f5, 1, -1, -1) == -1);
  // 2 - omega = (-1 -+ sqrt 5)/2 changes sign
  CHECK(sign_at_embedding(f5, 2, -1, 1) == -1);
  CHECK(sign_at_embedding(f5, 2, -1, -1) == 1);
  CHECK_FALSE(totally_positive(f5, 2, -1));
  // rationals
  CHECK(sign_at_embedding(f5, -3, 0, 1) == -1);
  CHECK(sign_at_embedding(f5, 3, 0, -1) == 1);

  // norm sign = product of embedding signs, trace sign consistency
  RealQuadField f21(21);
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int64_t> coef(-30, 30);
  for (int i = 0; i < 200; ++i) {
    int64_t x = coef(rng), y = coef(rng);
    if (x == 0 && y == 0) continue;
    int s1 = sign_at_embedding(f21, x, y, 1);
    int s2 = sign_at_embedding(f21, x, y, -1);
    CHECK(s1 * s2 == sgn(field_norm(f21, x, y)));
  }
}

TEST_CASE("splitting types") {
  RealQuadField f12(12);
  CHECK(splitting_type(f12, 11) == SplitType::split);
  CHECK(splitting_type(f12, 5) == SplitType::inert);
  CHECK(splitting_type(f12, 3) == SplitType::ramified);
  CHECK(splitting_type(f12, 2) == SplitType::ramified);

  RealQuadField f21(21);
  CHECK(splitting_type(f21, 2) == SplitType::inert);  // 21 = 5 mod 8
  CHECK(splitting_type(f21, 3) == SplitType::ramified);
  CHECK(splitting_type(f21, 5) == SplitType::split);
  CHECK(splitting_type(f21, 7) == SplitType::ramified);
  CHECK(splitting_type(f21, 11) == SplitType::inert);

  RealQuadField f17(17);
  CHECK(splitting_type(f17, 2) == SplitType::split);  // 17 = 1 mod 8

  CHECK_THROWS_AS(splitting_type(f12, 4), Error);
  CHECK_THROWS_AS(splitting_type(f12, 1), Error);
}

TEST_CASE("primes over p carry correct residue data") {
  RealQuadField f21(21);

  auto over5 = primes_over(f21, 5);
  REQUIRE(over5.size() == 2);
  CHECK(over5[0].root != over5[1].root);
  for (const auto& pr : over5) {
    CHECK(pr.residue_degree == 1);
    CHECK(pr.norm() == 5);
    // root satisfies the minimal polynomial of omega mod 5
    int64_t r = pr.root;
    CHECK((r * r - 21 * r + 105) % 5 == 0);
  }
  CHECK((over5[0].root + over5[1].root) % 5 == 21 % 5);

  auto over11 = primes_over(f21, 11);
  CHECK(only_prime(over11).residue_degree == 2);
  CHECK(only_prime(over11).norm() == 121);

  auto over7 = primes_over(f21, 7);
  CHECK(only_prime(over7).residue_degree == 1);
  CHECK(only_prime(over7).norm() == 7);

  RealQuadField f17(17);
  auto over2 = primes_over(f17, 2);
  REQUIRE(over2.size() == 2);
  std::set<int64_t> roots{over2[0].root, over2[1].root};
  CHECK(roots == std::set<int64_t>{0, 1});
}

TEST_CASE("ideal counts match the divisor-sum formula") {
  for (int64_t d : {5, 8, 12, 21, 33}) {
    RealQuadField f(d);
    auto counts = ideals_up_to(f, 300);
    REQUIRE(counts.size() == 301);
    for (int64_t n = 1; n <= 300; ++n) {
      int64_t expected = 0;
      for (int64_t e = 1; e <= n; ++e)
        if (n % e == 0) expected += kronecker_ll(d, e);
      CHECK_MESSAGE(counts[n] == expected, "d=", d, " n=", n);
    }
  }
}

TEST_CASE("beta validation") {
  RealQuadField f21(21);
  CHECK_THROWS_AS(make_hecke_char(f21, 0, 0), Error);
  CHECK_THROWS_AS(make_hecke_char(f21, 4, 8), Error);   // divisible by 4
  CHECK_THROWS_AS(make_hecke_char(f21, 9, 0), Error);   // divisible by 9
  CHECK_THROWS_AS(make_hecke_char(f21, 0, 25), Error);  // divisible by 25
  CHECK_NOTHROW(make_hecke_char(f21, 2, 4));  // content 2 is squarefree
  CHECK_NOTHROW(make_hecke_char(f21, 6, 0));

  RealQuadField f8(8);
  CHECK_THROWS_AS(make_hecke_char(f8, 1, 0), Error);  // 2 ramifies in F
}

TEST_CASE("genus character of Q(sqrt 21) is unramified with classical values") {
  RealQuadField f21(21);
  GenusPair gp = genus_pair(-3, -7);
  HeckeQuadChar chi = genus_hecke_char(f21, gp);

  CHECK(chi.conductor_norm == 1);
  CHECK(chi.sign_plus == -1);
  CHECK(chi.sign_minus == -1);

  // split p (p prime to 21): value = chi_{-3}(p) = chi_{-7}(p) at both primes
  for (int64_t p : {5, 17, 37}) {
    REQUIRE(splitting_type(f21, p) == SplitType::split);
    int expected = kronecker_ll(-3, p);
    CHECK(expected == kronecker_ll(-7, p));
    for (const auto& pr : primes_over(f21, p))
      CHECK(hecke_char_value(chi, pr) == expected);
  }
  // inert q: norms are squares in the quadratic residue field, value +1
  for (int64_t q : {2, 11, 13}) {
    REQUIRE(splitting_type(f21, q) == SplitType::inert);
    CHECK(hecke_char_value(chi, only_prime(primes_over(f21, q))) == 1);
  }
  // ramified l | d1: value is chi_{d2}(l), and symmetrically
  CHECK(hecke_char_value(chi, only_prime(primes_over(f21, 3))) ==
        kronecker_ll(-7, 3));
  CHECK(hecke_char_value(chi, only_prime(primes_over(f21, 7))) ==
        kronecker_ll(-3, 7));

  // the trivial factorization gives the trivial character
  HeckeQuadChar triv = genus_hecke_char(f21, genus_pair(1, 21));
  CHECK(triv.conductor_norm == 1);
  CHECK(triv.sign_plus == 1);
  CHECK(triv.sign_minus == 1);
  for (int64_t p : {2, 3, 5, 7, 11, 13})
    for (const auto& pr : primes_over(f21, p))
      CHECK(hecke_char_value(triv, pr) == 1);

  CHECK_THROWS_AS(genus_hecke_char(RealQuadField(5), gp), Error);
  // even-discriminant genus field is rejected by the dyadic machinery
  CHECK_THROWS_AS(genus_hecke_char(RealQuadField(12), genus_pair(-3, -4)),
                  Error);
}

TEST_CASE("genus character of Q(sqrt 65)") {
  RealQuadField f65(65);
  HeckeQuadChar chi = genus_hecke_char(f65, genus_pair(5, 13));
  CHECK(chi.conductor_norm == 1);
  CHECK(chi.sign_plus == 1);
  CHECK(chi.sign_minus == 1);
  // 2 splits (65 = 1 mod 8); value chi_5(2) = chi_13(2) = -1
  for (const auto& pr : primes_over(f65, 2))
    CHECK(hecke_char_value(chi, pr) == -1);
  CHECK(hecke_char_value(chi, only_prime(primes_over(f65, 5))) ==
        kronecker_ll(13, 5));
  CHECK(hecke_char_value(chi, only_prime(primes_over(f65, 13))) ==
        kronecker_ll(5, 13));
  for (int64_t p : {3, 7, 29}) {
    int expected = kronecker_ll(5, p);
    if (splitting_type(f65, p) == SplitType::split) {
      CHECK(expected == kronecker_ll(13, p));
      for (const auto& pr : primes_over(f65, p))
        CHECK(hecke_char_value(chi, pr) == expected);
    } else {
      CHECK(hecke_char_value(chi, only_prime(primes_over(f65, p))) == 1);
    }
  }
}

TEST_CASE("split primes: value product equals the norm's Legendre symbol") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int64_t> coef(-9, 9);
  for (int64_t d : {5, 21, 33}) {
    RealQuadField f(d);
    int done = 0;
    while (done < 40) {
      int64_t x = coef(rng), y = coef(rng);
      if (x == 0 && y == 0) continue;
      int64_t g = std::gcd(std::abs(x), std::abs(y));
      if (g % 4 == 0 || g % 9 == 0 || g % 25 == 0 || g % 49 == 0) continue;
      HeckeQuadChar chi = make_hecke_char(f, x, y);
      mpz_class nb = field_norm(f, x, y);
      for (int64_t p : {7, 11, 13, 17, 19, 23}) {
        if (splitting_type(f, p) != SplitType::split) continue;
        if (nb % p == 0) continue;
        auto primes = primes_over(f, p);
        int prod = hecke_char_value(chi, primes[0]) *
                   hecke_char_value(chi, primes[1]);
        CHECK(prod == kronecker(nb, p));
      }
      ++done;
    }
  }
}

TEST_CASE("inert values agree with brute-force squares in the residue field") {
  const std::vector<std::pair<int64_t, int64_t>> cases = {
      {5, 3}, {5, 7}, {21, 11}, {33, 5}};
  for (auto [d, q] : cases) {
    RealQuadField f(d);
    REQUIRE(splitting_type(f, q) == SplitType::inert);
    const PrimeOfF pr = only_prime(primes_over(f, q));
    // all squares of F_{q^2} = F_q[t]/(t^2 - d t + c)
    std::set<std::pair<int64_t, int64_t>> squares;
    for (int64_t a = 0; a < q; ++a)
      for (int64_t b = 0; b < q; ++b) {
        mpz_class re =
            mod_pos(mpz_class(a) * a - mpz_class(b) * b * f.norm_omega(), q);
        mpz_class im = mod_pos(2 * mpz_class(a) * b + mpz_class(b) * b * d, q);
        squares.insert({re.get_si(), im.get_si()});
      }
    for (int64_t a = 0; a < q; ++a)
      for (int64_t b = 0; b < q; ++b) {
        if (a == 0 && b == 0) continue;
        int64_t g = std::gcd(a, b);
        if (g % 4 == 0 || g % 9 == 0) continue;  // not a valid beta
        HeckeQuadChar chi = make_hecke_char(f, a, b);
        int expected = squares.count({a, b}) ? 1 : -1;
        CHECK(hecke_char_value(chi, pr) == expected);
      }
  }
}

TEST_CASE("dyadic values certified by Hensel square roots mod 32") {
  RealQuadField f21(21);
  const PrimeOfF two = only_prime(primes_over(f21, 2));
  int64_t c = f21.norm_omega();
  for (int64_t a = 0; a < 8; ++a)
    for (int64_t b = 0; b < 8; ++b) {
      if (a % 2 == 0 && b % 2 == 0) continue;  // not a unit at 2
      HeckeQuadChar chi = make_hecke_char(f21, a, b);
      int v = hecke_char_value(chi, two);
      // beta is a square in the completion iff it is a square mod 32
      bool square = false;
      for (int64_t e = 0; e < 32 && !square; ++e)
        for (int64_t g = 0; g < 32 && !square; ++g) {
          mpz_class re = mod_pos(mpz_class(e) * e - mpz_class(g) * g * c, 32);
          mpz_class im = mod_pos(2 * mpz_class(e) * g + mpz_class(g) * g * 21, 32);
          if (re == a % 32 && im == b % 32) square = true;
        }
      CHECK((v == 1) == square);
      // the value vanishes exactly when 2 divides the conductor
      CHECK((v == 0) == (chi.conductor_norm % 2 == 0));
    }
}

TEST_CASE("split values at positive valuation and dyadic ramification") {
  // 17 = 1 mod 8: 2 splits; units 5 and 7 mod 8 behave differently
  RealQuadField f17(17);
  auto over2 = primes_over(f17, 2);
  HeckeQuadChar chi5 = make_hecke_char(f17, 5, 0);
  CHECK(hecke_char_value(chi5, over2[0]) == -1);
  CHECK(hecke_char_value(chi5, over2[1]) == -1);
  CHECK(chi5.conductor_norm % 2 != 0);

  HeckeQuadChar chi7 = make_hecke_char(f17, 7, 0);
  CHECK(hecke_char_value(chi7, over2[0]) == 0);
  CHECK(hecke_char_value(chi7, over2[1]) == 0);
  // conductor: 2^2 at each of the two even primes, and the inert prime 7
  // (where 7 has odd valuation) contributes 7^2
  CHECK(chi7.conductor_norm == 16 * 49);

  // beta = 5*omega in Q(sqrt 21): valuations (2, 1) at the two primes over 5
  RealQuadField f21(21);
  HeckeQuadChar chi = make_hecke_char(f21, 0, 5);
  auto over5 = primes_over(f21, 5);
  int v0 = hecke_char_value(chi, over5[0]);
  int v1 = hecke_char_value(chi, over5[1]);
  CHECK(((v0 == 0) != (v1 == 0)));  // exactly one side is ramified
  CHECK(chi.conductor_norm % 5 == 0);
}

TEST_CASE("delta search under local constraints") {
  RealQuadField f21(21);
  const PrimeOfF q11 = only_prime(primes_over(f21, 11));

  // a rational beta = -1 has square norm, hence value +1 at the inert prime
  HeckeQuadChar minus_one = make_hecke_char(f21, -1, 0);
  CHECK(minus_one.sign_plus == -1);
  CHECK(minus_one.sign_minus == -1);
  CHECK(hecke_char_value(minus_one, q11) == 1);

  DeltaConstraints dc;
  dc.arch_sign = -1;
  dc.value_at = {{11, -1}};
  dc.coprime_to = 11;
  dc.height_bound = 12;
  auto found = search_delta(f21, dc);
  CHECK(found.size() >= 2);
  for (size_t i = 0; i + 1 < found.size(); ++i)
    CHECK(found[i].conductor_norm <= found[i + 1].conductor_norm);
  for (const auto& chi : found) {
    CHECK(chi.sign_plus == -1);
    CHECK(chi.sign_minus == -1);
    CHECK(hecke_char_value(chi, q11) == -1);
    CHECK(gcd(chi.conductor_norm, mpz_class(11)) == 1);
    CHECK(abs(chi.bx) <= 12);
    CHECK(abs(chi.by) <= 12);
  }

  // contradictory constraints yield nothing
  DeltaConstraints bad = dc;
  bad.value_at = {{5, 1}, {5, -1}};
  CHECK(search_delta(f21, bad).empty());
}
