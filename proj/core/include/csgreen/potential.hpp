#pragma once

#include <map>

#include "csgreen/errors.hpp"

namespace csgreen {

/// Radial potential v(r) = sum_{i=-1}^{k} a_i r^i: an optional attractive or
/// repulsive 1/r term plus a polynomial.  The degree k is the highest power
/// with a nonzero coefficient; the discrete-spectrum solvers require a
/// confining potential (positive leading polynomial coefficient, or a pure
/// attractive 1/r).
class PotentialSpec {
public:
  PotentialSpec() = default;

  /// Set a_i.  Powers below -1 are not representable on this basis.
  void set(int power, double value);

  /// Coefficient a_i; zero when the power was never set.
  double coeff(int power) const;

  /// Highest power with a nonzero coefficient; -1 for the free particle
  /// (all coefficients zero) and for a pure 1/r potential.
  int degree() const;

  /// True when the spectrum below any energy is purely discrete:
  /// (k >= 1 and a_k > 0) or (k <= 0 and a_{-1} < 0).
  bool confining() const;

  /// All stored coefficients, keyed by power (zeros may be present).
  const std::map<int, double>& coeffs() const { return coeffs_; }

private:
  std::map<int, double> coeffs_;
};

}  // namespace csgreen
