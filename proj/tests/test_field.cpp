#include <doctest.h>

#include <set>

#include "osc/field.hpp"

using namespace osc;

namespace {

// Independent oracle: multiplicative order by repeated multiplication.
int order_mod(int g, int p) {
  int x = g % p, n = 1;
  while (x != 1) {
    x = static_cast<int>(static_cast<long long>(x) * g % p);
    ++n;
  }
  return n;
}

int smallest_generator(int p) {
  for (int g = 2; g < p; ++g) {
    if (order_mod(g, p) == p - 1) return g;
  }
  return 0;
}

std::set<int> squares_mod(int p) {
  std::set<int> s;
  for (long long x = 1; x < p; ++x) s.insert(static_cast<int>(x * x % p));
  return s;
}

}  // namespace

TEST_CASE("field setup caches smallest generator and non-square") {
  PrimeField f5(5);
  CHECK(f5.generator() == 2);
  CHECK(f5.nonsquare() == 2);
  PrimeField f7(7);
  CHECK(f7.generator() == 3);
  CHECK(f7.nonsquare() == 3);

  for (int p : {5, 7, 11, 13, 17, 101, 257}) {
    PrimeField F(p);
    CHECK(F.generator() == smallest_generator(p));
    auto sq = squares_mod(p);
    int expected_nonsquare = 0;
    for (int a = 2; a < p; ++a) {
      if (!sq.count(a)) {
        expected_nonsquare = a;
        break;
      }
    }
    CHECK(F.nonsquare() == expected_nonsquare);
    CHECK(F.mul(F.half(), 2) == 1);
    CHECK(F.mul(F.quarter(), 4) == 1);
  }
}

TEST_CASE("field setup rejects bad inputs") {
  CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(3), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(-5), std::invalid_argument);
}

TEST_CASE("legendre symbol against brute-force squares") {
  PrimeField f5(5);
  CHECK(f5.legendre(4) == 1);
  CHECK(f5.legendre(2) == -1);
  CHECK(f5.legendre(0) == 0);

  for (int p : {5, 7, 11, 13}) {
    PrimeField F(p);
    auto sq = squares_mod(p);
    for (int a = 1; a < p; ++a) {
      CHECK(F.legendre(a) == (sq.count(a) ? 1 : -1));
    }
    // Multiplicativity, exhaustive.
    for (int a = 1; a < p; ++a) {
      for (int b = 1; b < p; ++b) {
        CHECK(F.legendre(a) * F.legendre(b) == F.legendre(F.mul(a, b)));
      }
    }
  }
}

TEST_CASE("psi is the additive character") {
  PrimeField F(5);
  CHECK(std::abs(F.psi(0) - std::complex<double>(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(F.psi(5) - std::complex<double>(1.0, 0.0)) < 1e-15);
  for (int a = 0; a < 5; ++a) {
    CHECK(std::abs(std::abs(F.psi(a)) - 1.0) < 1e-15);
    for (int b = 0; b < 5; ++b) {
      CHECK(std::abs(F.psi(a) * F.psi(b) - F.psi(a + b)) < 1e-12);
    }
  }
}

TEST_CASE("sl2 group operations") {
  PrimeField F(5);
  const Sl2 w = weyl_element(F);
  CHECK(sl2_mul(F, w, w) == Sl2{4, 0, 0, 4});  // -I

  const Sl2 g = sl2_make(F, 1, 1, 1, 2);
  CHECK(sl2_inv(F, g) == Sl2{2, 4, 4, 1});
  CHECK(sl2_mul(F, g, sl2_inv(F, g)) == Sl2{});

  CHECK_THROWS_AS(sl2_make(F, 1, 1, 1, 1), std::invalid_argument);

  CHECK(sl2_order(F, Sl2{}) == 1);
  CHECK(sl2_order(F, w) == 4);
  CHECK(sl2_pow(F, w, 4) == Sl2{});
  CHECK(sl2_pow(F, w, -1) == sl2_inv(F, w));

  CHECK(sl2_elements(F).size() == 120);  // p(p^2-1)
  for (const auto& e : sl2_elements(F)) {
    CHECK(F.sub(F.mul(e.a, e.d), F.mul(e.b, e.c)) == 1);
    CHECK(sl2_mul(F, e, sl2_inv(F, e)) == Sl2{});
  }
}

TEST_CASE("bruhat decomposition closed forms") {
  PrimeField F(5);

  // Big cell: u2 = d/b, a = b, u1 = a/b.
  BruhatForm f = bruhat_decompose(F, sl2_make(F, 1, 1, 1, 2));
  CHECK(f.big_cell);
  CHECK(f.u2 == 2);
  CHECK(f.a == 1);
  CHECK(f.u1 == 1);

  // Lower unipotent stays in the torus-unipotent branch.
  for (int u = 0; u < 5; ++u) {
    BruhatForm fu = bruhat_decompose(F, sl2_make(F, 1, 0, u, 1));
    CHECK_FALSE(fu.big_cell);
    CHECK(fu.a == 1);
    CHECK(fu.u2 == u);
  }

  // Pure Weyl element.
  BruhatForm fw = bruhat_decompose(F, weyl_element(F));
  CHECK(fw.big_cell);
  CHECK(fw.u2 == 0);
  CHECK(fw.a == 1);
  CHECK(fw.u1 == 0);
}

TEST_CASE("bruhat recomposition is exact on all of SL2") {
  for (int p : {5, 7}) {
    PrimeField F(p);
    for (const auto& g : sl2_elements(F)) {
      CHECK(bruhat_recompose(F, bruhat_decompose(F, g)) == g);
    }
  }
}
