#include <cmath>

#include <doctest.h>

#include "csgreen/basis.hpp"
#include "oracles.hpp"

using csgreen::BasisSpec;
using csgreen::DomainError;

TEST_CASE("basis validates its parameters") {
  CHECK_THROWS_AS(BasisSpec(1, 0, 1.0), DomainError);
  CHECK_THROWS_AS(BasisSpec(3, -1, 1.0), DomainError);
  CHECK_THROWS_AS(BasisSpec(3, 0, 0.0), DomainError);
  CHECK_THROWS_AS(BasisSpec(3, 0, -2.0), DomainError);
  CHECK_NOTHROW(BasisSpec(2, 0, 0.5));
}

TEST_CASE("effective angular momentum and Laguerre order") {
  for (int d = 2; d <= 7; ++d) {
    for (int l = 0; l <= 3; ++l) {
      const BasisSpec basis(d, l, 1.0);
      CHECK(basis.effective_l() == doctest::Approx(l + 0.5 * (d - 3)));
      // alpha = 2L+1 = 2l+D-2 is a nonnegative integer even when L is
      // half-integer, which is what keeps every moment integral polynomial.
      CHECK(basis.alpha() == 2 * l + d - 2);
      CHECK(basis.alpha() >= 0);
    }
  }
  CHECK(BasisSpec(2, 0, 1.0).effective_l() == doctest::Approx(-0.5));
}

TEST_CASE("Sturmian eigenvalues lambda_n = (n+L+1) b") {
  const BasisSpec basis(3, 1, 1.7);  // L = 1
  for (int n = 0; n < 5; ++n) {
    CHECK(basis.lambda(n) == doctest::Approx((n + 2) * 1.7));
  }
  const BasisSpec planar(2, 0, 0.25);  // L = -1/2
  CHECK(planar.lambda(0) == doctest::Approx(0.5 * 0.25));
  CHECK(planar.lambda(3) == doctest::Approx(3.5 * 0.25));
}

TEST_CASE("normalization constants") {
  // alpha = 0: Gamma(n+1)/Gamma(n+1) = 1 for every n.
  const BasisSpec flat(2, 0, 1.0);
  for (long n : {0L, 1L, 7L, 100L}) {
    CHECK(csgreen::cs_norm(flat, n) == doctest::Approx(1.0));
  }
  // alpha = 1 (D=3, l=0): c_n = 1/sqrt(n+1).
  const BasisSpec hyd(3, 0, 1.0);
  for (long n : {0L, 1L, 2L, 9L}) {
    CHECK(csgreen::cs_norm(hyd, n) == doctest::Approx(1.0 / std::sqrt(n + 1.0)));
  }
  // alpha = 2 (D=2, l=1): c_n = 1/sqrt((n+1)(n+2)).
  const BasisSpec planar(2, 1, 1.0);
  for (long n : {0L, 1L, 2L, 9L}) {
    CHECK(csgreen::cs_norm(planar, n) ==
          doctest::Approx(1.0 / std::sqrt((n + 1.0) * (n + 2.0))));
  }
  // large n and alpha: must stay finite and positive (naive Gamma overflows).
  const BasisSpec big(3, 5, 1.0);
  const double c = csgreen::cs_norm(big, 400);
  CHECK(std::isfinite(c));
  CHECK(c > 0.0);
}

TEST_CASE("gamma ratio against lgamma") {
  for (int alpha : {1, 2, 5, 11}) {
    for (long n : {0L, 3L, 40L, 160L}) {
      const double expected =
          std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0));
      CHECK(csgreen::gamma_ratio(n, alpha) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("radial basis functions") {
  const BasisSpec basis(3, 0, 1.0);
  // <r|0> at b=1, l=0, D=3 is exactly 2 r e^-r.
  for (double r : {0.1, 0.5, 1.0, 3.0, 8.0}) {
    CHECK(csgreen::cs_radial_eval(basis, 0, r) ==
          doctest::Approx(2.0 * r * std::exp(-r)).epsilon(1e-14));
  }
  CHECK(csgreen::cs_radial_eval(basis, 0, 0.0) == 0.0);
  CHECK_THROWS_AS(csgreen::cs_radial_eval(basis, -1, 1.0), DomainError);
  CHECK_THROWS_AS(csgreen::cs_radial_eval(basis, 0, -0.5), DomainError);
}

TEST_CASE("radial evaluation against long-double reference") {
  for (const BasisSpec& basis :
       {BasisSpec(3, 0, 1.0), BasisSpec(2, 0, 0.7), BasisSpec(4, 2, 2.3)}) {
    for (int n : {0, 1, 5, 20}) {
      for (double r : {0.05, 1.0, 4.0, 11.0}) {
        const double ref = oracles::cs_radial_ld(basis, n, r);
        CHECK(csgreen::cs_radial_eval(basis, n, r) ==
              doctest::Approx(ref).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("basis functions are orthonormal under the 1/r weight") {
  // integral phi_n (1/r) phi_n' dr = delta; checked by exact quadrature.
  for (const BasisSpec& basis : {BasisSpec(3, 0, 1.0), BasisSpec(2, 1, 1.9)}) {
    for (long n = 0; n < 6; ++n) {
      for (long np = n; np < 6; ++np) {
        const double v = oracles::power_quadrature(basis, -1, n, np);
        CHECK(v == doctest::Approx(n == np ? 1.0 : 0.0).epsilon(1e-13));
      }
    }
  }
}
