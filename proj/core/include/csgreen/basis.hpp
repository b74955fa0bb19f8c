#pragma once

#include "csgreen/errors.hpp"

namespace csgreen {

/// Coulomb-Sturmian radial basis in D dimensions.
///
/// The basis functions are weighted associated Laguerre polynomials,
///   <r|n> = c_n e^{-br} (2br)^{L+1} L_n^{2L+1}(2br),
/// with effective angular momentum L = l + (D-3)/2 and normalization
/// c_n = [Gamma(n+1)/Gamma(n+2L+2)]^{1/2}.  They solve the Coulomb
/// Sturm-Liouville problem (H0 - lambda_n/r)|n> = -(b^2/2)|n> with
/// lambda_n = (n+L+1) b.
struct BasisSpec {
  int dimension;  // D >= 2
  int l;          // orbital quantum number, >= 0
  double b;       // inverse-length scale, > 0

  BasisSpec(int dimension, int l, double b);

  /// L = l + (D-3)/2; half-integer for even D.  L > -1 for all D>=2, l>=0.
  double effective_l() const { return l + 0.5 * (dimension - 3); }

  /// Laguerre order 2L+1 = 2l + D - 2, always a nonnegative integer.
  int alpha() const { return 2 * l + dimension - 2; }

  /// Sturmian eigenvalue lambda_n = (n+L+1) b.
  double lambda(int n) const { return (n + effective_l() + 1.0) * b; }
};

/// Gamma(n+alpha+1)/Gamma(n+1) = (n+1)(n+2)...(n+alpha) for integer alpha >= 0.
/// Falls back to exp(lgamma) when the plain product would overflow.
double gamma_ratio(long n, int alpha);

/// Normalization c_n = [Gamma(n+1)/Gamma(n+2L+2)]^{1/2} = gamma_ratio^{-1/2}.
double cs_norm(const BasisSpec& basis, long n);

/// Radial value <r|n>.  Vanishes at r = 0; throws DomainError for r < 0.
double cs_radial_eval(const BasisSpec& basis, int n, double r);

}  // namespace csgreen
