#include "csgreen/basis.hpp"

#include <cmath>
#include <string>

namespace csgreen {

BasisSpec::BasisSpec(int dimension_, int l_, double b_)
    : dimension(dimension_), l(l_), b(b_) {
  if (dimension < 2)
    throw DomainError("BasisSpec: dimension must be >= 2, got " +
                      std::to_string(dimension));
  if (l < 0)
    throw DomainError("BasisSpec: l must be >= 0, got " + std::to_string(l));
  if (!(b > 0.0))
    throw DomainError("BasisSpec: scale b must be positive, got " +
                      std::to_string(b));
  // alpha = 2L+1 >= 0 and L > -1 follow from D >= 2, l >= 0.
}

double gamma_ratio(long n, int alpha) {
  // Product of alpha factors, each <= n+alpha; switch to lgamma when the
  // result would leave the double range.
  if (alpha * std::log(static_cast<double>(n + alpha) + 1.0) > 650.0)
    return std::exp(std::lgamma(static_cast<double>(n + alpha + 1)) -
                    std::lgamma(static_cast<double>(n + 1)));
  double prod = 1.0;
  for (int j = 1; j <= alpha; ++j) prod *= static_cast<double>(n + j);
  return prod;
}

double cs_norm(const BasisSpec& basis, long n) {
  return 1.0 / std::sqrt(gamma_ratio(n, basis.alpha()));
}

double cs_radial_eval(const BasisSpec& basis, int n, double r) {
  if (n < 0) throw DomainError("cs_radial_eval: n must be >= 0");
  if (r < 0.0) throw DomainError("cs_radial_eval: r must be >= 0");
  if (r == 0.0) return 0.0;  // (2br)^{L+1} with L+1 > 0
  const double x = 2.0 * basis.b * r;
  const double big_l = basis.effective_l();
  return cs_norm(basis, n) * std::exp(-basis.b * r) * std::pow(x, big_l + 1.0) *
         std::assoc_laguerre(static_cast<unsigned>(n),
                             static_cast<unsigned>(basis.alpha()), x);
}

}  // namespace csgreen
