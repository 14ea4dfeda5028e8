#include <doctest.h>

#include "mrfoptics/alpha_poly.hpp"

using namespace mrfoptics;

TEST_CASE("alpha weights multiply by adding powers") {
  const AlphaWeight a(2.0, 1);
  const AlphaWeight b(3.0, 2);
  const AlphaWeight p = a * b;
  CHECK(p.coeff == 6.0);
  CHECK(p.power == 3);
}

TEST_CASE("alpha weights add only within one power") {
  CHECK((AlphaWeight(1.0, 2) + AlphaWeight(2.5, 2)).coeff == 3.5);
  CHECK_THROWS_AS(AlphaWeight(1.0, 1) + AlphaWeight(1.0, 2), std::invalid_argument);
}

TEST_CASE("negative coefficients and powers are rejected") {
  CHECK_THROWS_AS(AlphaWeight(-0.1, 0), std::invalid_argument);
  CHECK_THROWS_AS(AlphaWeight(1.0, -1), std::invalid_argument);
}

TEST_CASE("polynomials keep distinct powers sorted and merge duplicates") {
  AlphaPolynomial p;
  p.add(AlphaWeight(1.0, 3));
  p.add(AlphaWeight(2.0, 1));
  p.add(AlphaWeight(4.0, 3));
  REQUIRE(p.terms().size() == 2);
  CHECK(p.terms()[0].power == 1);
  CHECK(p.terms()[1].power == 3);
  CHECK(p.coefficient_at(3) == 5.0);

  const double alpha = 0.01;
  CHECK(p.evaluate(alpha) == doctest::Approx(2.0 * alpha + 5.0 * alpha * alpha * alpha));
}

TEST_CASE("leading term is the minimal power with positive coefficient") {
  AlphaPolynomial p;
  p.add(AlphaWeight(0.0, 0));
  p.add(AlphaWeight(7.0, 2));
  p.add(AlphaWeight(1.0, 4));
  auto lead = p.leading_term();
  REQUIRE(lead.has_value());
  CHECK(lead->power == 2);
  CHECK(lead->coeff == 7.0);

  CHECK_FALSE(AlphaPolynomial{}.leading_term().has_value());
}
