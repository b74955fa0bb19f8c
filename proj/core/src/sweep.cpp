#include "csgreen/sweep.hpp"

namespace csgreen {

SweepResult sweep_b(const BasisSpec& base, const PotentialSpec& pot,
                    const std::vector<double>& b_values, double e_lo,
                    double e_hi, const FindOptions& opts) {
  SweepResult result;
  for (const double b : b_values) {
    try {
      const BasisSpec basis(base.dimension, base.l, b);
      const SpectrumResult spectrum =
          find_eigenvalues(basis, pot, e_lo, e_hi, opts);
      for (const EigenvalueRecord& level : spectrum.levels) {
        result.rows.push_back({b, level.index, level.energy});
      }
    } catch (const Error& err) {
      result.failures.push_back({b, err.what()});
    }
  }
  return result;
}

}  // namespace csgreen
