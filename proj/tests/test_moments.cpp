#include <cmath>

#include <doctest.h>

#include "csgreen/moments.hpp"
#include "oracles.hpp"

using csgreen::BasisSpec;
using csgreen::DomainError;
using csgreen::moment_matrices;
using csgreen::MomentTable;
using csgreen::MomentWindow;

namespace {

/// Unnormalized moment by quadrature: integral e^-x x^{alpha+p} L_n L_n' dx.
double moment_quadrature(int alpha, int p, long n, long np) {
  const int points = static_cast<int>((n + np + p) / 2 + 6);
  const oracles::Quadrature q = oracles::gauss_laguerre(points, alpha);
  long double sum = 0.0L;
  for (int j = 0; j < points; ++j) {
    long double f = oracles::laguerre_ld(static_cast<int>(n), alpha, q.nodes[j]) *
                    oracles::laguerre_ld(static_cast<int>(np), alpha, q.nodes[j]);
    for (int e = 0; e < p; ++e) f *= q.nodes[j];
    sum += q.weights[j] * f;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("level zero is Laguerre orthogonality") {
  const BasisSpec basis(3, 0, 1.0);  // alpha = 1
  const MomentTable table = moment_matrices(basis, 8, 0);
  for (long n = 0; n < 8; ++n) {
    for (long np = 0; np < 8; ++np) {
      const double expected =
          n == np ? csgreen::gamma_ratio(n, basis.alpha()) : 0.0;
      CHECK(table.value(0, n, np) == expected);
    }
  }
}

TEST_CASE("moments match quadrature") {
  for (int alpha : {0, 2, 3, 6}) {
    const int d = alpha + 2;  // l = 0 basis with this alpha
    const MomentTable table = moment_matrices(BasisSpec(d, 0, 1.0), 10, 4);
    for (int p = 0; p <= 4; ++p) {
      for (long n = 0; n < 10; ++n) {
        const double scale = moment_quadrature(alpha, p, n, n);
        for (long np = n; np < 10; ++np) {
          const double ref = moment_quadrature(alpha, p, n, np);
          if (np - n > p) {
            // Outside the band the table is exactly zero; the quadrature
            // only reaches zero up to roundoff of its cancelling terms.
            CHECK(table.value(p, n, np) == 0.0);
            CHECK(std::abs(ref) <= 1e-8 * scale);
          } else {
            CHECK(table.value(p, n, np) ==
                  doctest::Approx(ref).epsilon(1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("band structure: zero beyond |n - n'| = p") {
  const MomentTable table = moment_matrices(BasisSpec(3, 1, 1.0), 12, 3);
  for (int p = 0; p <= 3; ++p) {
    for (long n = 0; n < 12; ++n) {
      for (long np = 0; np < 12; ++np) {
        if (std::labs(n - np) > p) CHECK(table.value(p, n, np) == 0.0);
      }
    }
  }
}

TEST_CASE("symmetry of the table") {
  const MomentTable table = moment_matrices(BasisSpec(4, 1, 1.0), 9, 3);
  for (int p = 0; p <= 3; ++p) {
    for (long n = 0; n < 9; ++n) {
      for (long np = 0; np < 9; ++np) {
        CHECK(table.value(p, n, np) == table.value(p, np, n));
      }
    }
  }
}

TEST_CASE("windowed recursion is bit-identical to a wider window") {
  // The recursion value at (p, n, n') depends only on (p, n, n', alpha),
  // so any window containing the entry must produce the same bits.
  for (int alpha : {0, 2, 5}) {
    for (int p_max : {1, 3, 5}) {
      const MomentWindow wide(alpha, 0, 40, p_max);
      const MomentWindow narrow(alpha, 17, 29, p_max);
      for (int p = 0; p <= p_max; ++p) {
        for (long n = 17; n < 29; ++n) {
          for (long np = n - p; np <= n + p; ++np) {
            if (np < 0) continue;
            CHECK(narrow.value(p, n, np) == wide.value(p, n, np));
          }
        }
      }
    }
  }
}

TEST_CASE("normalized window equals rescaled unnormalized table") {
  const BasisSpec basis(3, 0, 1.0);
  const MomentTable table = moment_matrices(basis, 14, 3);
  const MomentWindow window(basis.alpha(), 0, 14, 3);
  for (int p = 0; p <= 3; ++p) {
    for (long n = 0; n < 14; ++n) {
      for (long np = std::max(0L, n - p); np <= std::min(13L, n + p); ++np) {
        const double scaled = csgreen::cs_norm(basis, n) *
                              csgreen::cs_norm(basis, np) *
                              table.value(p, n, np);
        CHECK(window.value(p, n, np) ==
              doctest::Approx(scaled).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("window rejects rows outside its range") {
  const MomentWindow window(2, 5, 9, 2);
  CHECK_NOTHROW(window.value(1, 5, 6));
  CHECK_NOTHROW(window.value(2, 8, 6));
  // levels below p_max keep a few padded rows as recursion workspace, so the
  // guaranteed rejection boundary is the requested range at p = p_max
  CHECK_THROWS_AS(window.value(2, 4, 5), DomainError);
  CHECK_THROWS_AS(window.value(2, 9, 8), DomainError);
  CHECK_THROWS_AS(window.value(3, 5, 5), DomainError);
}

TEST_CASE("first recursion level against the explicit tridiagonal form") {
  // I^(1)(n, n) = (2n+alpha+1) I^(0)(n, n) and the two off-diagonal values
  // follow directly from the three-term recurrence applied once.
  for (int alpha : {0, 1, 4}) {
    const int d = alpha + 2;
    const MomentTable table = moment_matrices(BasisSpec(d, 0, 1.0), 8, 1);
    for (long n = 0; n < 8; ++n) {
      const double g = csgreen::gamma_ratio(n, alpha);
      CHECK(table.value(1, n, n) ==
            doctest::Approx((2.0 * n + alpha + 1.0) * g));
      if (n + 1 < 8) {
        CHECK(table.value(1, n, n + 1) ==
              doctest::Approx(-(n + 1.0) *
                              csgreen::gamma_ratio(n + 1, alpha)));
      }
    }
  }
}
