#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "ltwist/arith.hpp"

using namespace ltwist;

TEST_CASE("characters: group order is phi(c)", "[arith][chars]") {
  for (std::int64_t c : {2, 3, 4, 5, 8, 12, 16, 30, 97, 360}) {
    CHECK(static_cast<std::int64_t>(character_group(c).size()) ==
          euler_phi(c));
  }
}

TEST_CASE("characters: parity split mod 5", "[arith][chars]") {
  auto g = character_group(5);
  int even = 0, odd = 0;
  bool principal_even = false;
  for (const auto& chi : g) {
    if (chi.parity() == +1) {
      ++even;
      if (chi.is_principal()) principal_even = true;
    } else {
      ++odd;
    }
  }
  CHECK(even == 2);
  CHECK(odd == 2);
  CHECK(principal_even);
}

TEST_CASE("characters: principal has conductor 1", "[arith][chars]") {
  for (std::int64_t c : {4, 9, 12, 40}) {
    CHECK(DirichletChar::principal(c).conductor() == 1);
  }
}

TEST_CASE("characters: multiplicativity and vanishing", "[arith][chars]") {
  for (const auto& chi : character_group(24)) {
    for (std::int64_t m = 1; m <= 24; ++m) {
      for (std::int64_t n = 1; n <= 24; ++n) {
        Complex lhs = chi(m * n);
        Complex rhs = chi(m) * chi(n);
        CHECK(std::abs(lhs - rhs) < 1e-13);
      }
    }
    for (std::int64_t n : {2, 3, 4, 6, 8}) {
      CHECK(chi(n) == Complex(0.0, 0.0));
    }
  }
}

TEST_CASE("characters: orthogonality rows", "[arith][chars]") {
  std::int64_t c = 36;
  auto g = character_group(c);
  for (const auto& chi : g) {
    Complex s(0.0, 0.0);
    for (std::int64_t a = 1; a <= c; ++a) s += chi(a);
    double expect = chi.is_principal() ? static_cast<double>(euler_phi(c)) : 0.0;
    CHECK(std::abs(s - Complex(expect, 0.0)) < 1e-10);
  }
}

TEST_CASE("characters: primitive part induces the original", "[arith][chars]") {
  for (std::int64_t c : {12, 16, 45, 72}) {
    for (const auto& chi : character_group(c)) {
      DirichletChar star = chi.primitive();
      CHECK(star.modulus() == chi.conductor());
      CHECK(star.is_primitive());
      for (std::int64_t n = 1; n <= c; ++n) {
        if (std::gcd(n, c) != 1) continue;
        CHECK(std::abs(chi(n) - star(n)) < 1e-12);
      }
    }
  }
}

TEST_CASE("characters: conductor is multiplicative sanity mod 8",
          "[arith][chars]") {
  // mod 8 has chars of conductor 1, 4, 8, 8
  std::vector<std::int64_t> conductors;
  for (const auto& chi : character_group(8))
    conductors.push_back(chi.conductor());
  std::sort(conductors.begin(), conductors.end());
  CHECK(conductors == std::vector<std::int64_t>{1, 4, 8, 8});
}

TEST_CASE("gauss sums: anchors", "[arith][gauss]") {
  CHECK(gauss_sum(DirichletChar::principal(1)) == Complex(1.0, 0.0));
  // quadratic character mod 5: tau = sqrt(5)
  for (const auto& chi : character_group(5)) {
    if (chi.is_principal()) continue;
    bool quadratic = std::abs(chi(2) * chi(2) - chi(4)) < 1e-13 &&
                     std::abs(chi(2).imag()) < 1e-13;
    if (quadratic) {
      Complex tau = gauss_sum(chi);
      CHECK(std::abs(tau - Complex(std::sqrt(5.0), 0.0)) < 1e-12);
    }
  }
  for (const auto& chi : character_group(7)) {
    if (chi.is_principal()) continue;
    CHECK(std::abs(std::abs(gauss_sum(chi)) - std::sqrt(7.0)) < 1e-12);
  }
}

TEST_CASE("dirichlet L: mod-4 odd character anchors", "[arith][dirichletL]") {
  // the odd character mod 4: L(chi, 1) = pi/4
  DirichletChar chi4({}, {});
  bool found = false;
  for (const auto& chi : character_group(4)) {
    if (!chi.is_principal()) {
      chi4 = chi;
      found = true;
    }
  }
  REQUIRE(found);
  CHECK(chi4.parity() == -1);
  Complex l1 = dirichlet_l(chi4, Complex(1.0, 0.0));
  CHECK(std::abs(l1 - Complex(kPi / 4.0, 0.0)) < 1e-12);
  // Catalan-type check at s=2: L(chi4, 2) = Catalan's constant
  Complex l2 = dirichlet_l(chi4, Complex(2.0, 0.0));
  CHECK(std::abs(l2 - Complex(0.91596559417721901505, 0.0)) < 1e-12);
}

TEST_CASE("ramanujan sums: closed form vs direct unit sums",
          "[arith][ramanujan]") {
  CHECK(ramanujan_sum(1, 5) == 1);
  CHECK(ramanujan_sum(6, 0) == euler_phi(6));
  // direct check on a grid
  for (std::int64_t q = 1; q <= 30; ++q) {
    for (std::int64_t n = -7; n <= 12; ++n) {
      Complex direct(0.0, 0.0);
      for (std::int64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        direct += std::polar(1.0, kTwoPi * static_cast<double>(a * n) / q);
      }
      CHECK(std::abs(direct - Complex(static_cast<double>(ramanujan_sum(q, n)),
                                      0.0)) < 1e-9);
    }
  }
  // c_6(4): units {1,5}: e(4/6) + e(20/6) = -1
  CHECK(ramanujan_sum(6, 4) == -1);
}
