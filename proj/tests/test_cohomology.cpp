#include "ahcert/cohomology.hpp"

#include <doctest.h>

#include <bit>

using namespace ahcert;

TEST_CASE("total class expansion, small cases") {
  SUBCASE("k = 2, all plus: 1 + x1 + x2 + x1 x2") {
    const auto c = total_chern_external_sum(2, {1, 1});
    CHECK(c.terms().size() == 4);
    CHECK(c.coeff(0b00) == 1);
    CHECK(c.coeff(0b01) == 1);
    CHECK(c.coeff(0b10) == 1);
    CHECK(c.coeff(0b11) == 1);
  }
  SUBCASE("k = 0: empty product") {
    CHECK(total_chern_external_sum(0, {}).is_one());
  }
  SUBCASE("k = 3, all minus: degree 2 coefficients +1, degree 3 coefficient -1") {
    const auto c = total_chern_external_sum(3, {-1, -1, -1});
    CHECK(c.coeff(0b011) == 1);
    CHECK(c.coeff(0b101) == 1);
    CHECK(c.coeff(0b110) == 1);
    CHECK(c.coeff(0b111) == -1);
  }
}

TEST_CASE("expansion cap") {
  CHECK_THROWS_WITH_AS(total_chern_external_sum(15, std::vector<int>(15, 1)),
                       doctest::Contains("chern_inverse_coeff"), std::invalid_argument);
}

TEST_CASE("closed-form inverse coefficients") {
  CHECK(chern_inverse_coeff(4, 2) == 6);
  CHECK(chern_inverse_coeff(7, 7) == -1);
  CHECK(chern_inverse_coeff(5, 0) == 1);
  CHECK(chern_inverse_coeff(5, 9) == 0);  // beyond top degree, zero by convention
  // huge k, small j stays exact
  CHECK(chern_inverse_coeff(Int("1000000000000"), 1) == Int("-1000000000000"));
}

TEST_CASE("brute force vs closed form, per monomial, k <= 12") {
  for (int k = 1; k <= 12; ++k) {
    const auto inverse = total_chern_external_sum(k, std::vector<int>(k, -1));
    std::vector<Int> degree_sum(static_cast<std::size_t>(k) + 1, 0);
    for (const auto& [mask, coeff] : inverse.terms()) {
      const int j = std::popcount(mask);
      // every degree-j monomial carries exactly (-1)^j = closed form / C(k, j)
      CHECK(Int(coeff) == chern_inverse_coeff(k, j) / binomial(k, j));
      degree_sum[static_cast<std::size_t>(j)] += coeff;
    }
    for (int j = 0; j <= k; ++j) {
      CHECK(degree_sum[static_cast<std::size_t>(j)] == chern_inverse_coeff(k, j));
    }
  }
}

TEST_CASE("plus and minus expansions are ring inverses, k <= 12") {
  for (int k = 0; k <= 12; ++k) {
    const auto plus = total_chern_external_sum(k, std::vector<int>(k, 1));
    const auto minus = total_chern_external_sum(k, std::vector<int>(k, -1));
    CHECK((plus * minus).is_one());
  }
}

TEST_CASE("embedding obstruction threshold") {
  SUBCASE("stated cases") {
    CHECK(embeds_in_trivial(1, 1).obstructed);
    CHECK_FALSE(embeds_in_trivial(1, 2).obstructed);
    CHECK(embeds_in_trivial(5, 9).obstructed);
    CHECK_FALSE(embeds_in_trivial(5, 10).obstructed);
  }
  SUBCASE("witness data") {
    const auto cert = embeds_in_trivial(3, 5);
    CHECK(cert.obstructed);
    CHECK(cert.witness_degree == 3);
    CHECK(cert.coefficient_sign == -1);
    CHECK(embeds_in_trivial(4, 7).coefficient_sign == 1);
  }
  SUBCASE("threshold at exactly 2k, cross-validated by expansion") {
    for (int k = 1; k <= 12; ++k) {
      const auto inverse = total_chern_external_sum(k, std::vector<int>(k, -1));
      // top nonzero degree of the would-be complement's total class
      int top = 0;
      for (const auto& [mask, coeff] : inverse.terms()) top = std::max(top, std::popcount(mask));
      CHECK(top == k);
      for (int r = 0; r <= 2 * k + 2; ++r) {
        // embeddable demands complement rank r - k >= top degree k, i.e. r >= 2k
        const bool brute_obstructed = r - k < top;
        CHECK(embeds_in_trivial(k, r).obstructed == brute_obstructed);
      }
    }
  }
  SUBCASE("monotone in r") {
    for (int k = 1; k <= 12; ++k) {
      for (int r = 0; r <= 2 * k + 1; ++r) {
        if (!embeds_in_trivial(k, r).obstructed) {
          CHECK_FALSE(embeds_in_trivial(k, r + 1).obstructed);
        }
      }
    }
  }
  SUBCASE("argument checks") {
    CHECK_THROWS_AS(embeds_in_trivial(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(embeds_in_trivial(2, -1), std::invalid_argument);
  }
}
