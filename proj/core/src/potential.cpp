#include "csgreen/potential.hpp"

#include <string>

namespace csgreen {

void PotentialSpec::set(int power, double value) {
  if (power < -1)
    throw DomainError("PotentialSpec: unsupported power r^" +
                      std::to_string(power) + "; the lowest allowed is r^-1");
  coeffs_[power] = value;
}

double PotentialSpec::coeff(int power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? 0.0 : it->second;
}

int PotentialSpec::degree() const {
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    if (it->second != 0.0) return it->first;
  return -1;
}

bool PotentialSpec::confining() const {
  const int k = degree();
  if (k >= 1) return coeff(k) > 0.0;
  return coeff(-1) < 0.0;
}

}  // namespace csgreen
