#pragma once

#include <complex>

#include "csgreen/banded.hpp"
#include "csgreen/basis.hpp"
#include "csgreen/moments.hpp"
#include "csgreen/potential.hpp"

namespace csgreen {

/// Overlap <n|n'>: tridiagonal, diagonal (n+L+1)/b, first off-diagonal
/// -sqrt(n'(n'+2L+1))/(2b) at n' = n+1.
BandedSymmetric<double> overlap_matrix(const BasisSpec& basis, long M);

/// Kinetic energy <n|H0|n'>: tridiagonal, diagonal b(n+L+1)/2, first
/// off-diagonal +b sqrt(n'(n'+2L+1))/4 at n' = n+1.
BandedSymmetric<double> kinetic_matrix(const BasisSpec& basis, long M);

/// <n|r^i|n'> for i >= -1.  i = -1 is the identity (the basis is orthonormal
/// under the 1/r weight), i = 0 is the overlap, and i >= 1 is the normalized
/// moment table scaled by (2b)^-(i+1), a band matrix of half-bandwidth i+1.
BandedSymmetric<double> power_matrix(const BasisSpec& basis, long M, int i);

/// H = H0 + sum_i a_i r^i as a real symmetric band matrix of half-bandwidth
/// max(1, k+1).
BandedSymmetric<double> hamiltonian_matrix(const BasisSpec& basis,
                                           const PotentialSpec& pot, long M);

/// J(z) = z S - H, complex symmetric, half-bandwidth max(1, k+1).
BandedSymmetric<std::complex<double>> assemble_j(const BasisSpec& basis,
                                                 const PotentialSpec& pot,
                                                 std::complex<double> z,
                                                 long M);

/// Rows [row_begin, row_end) of the overlap and Hamiltonian band matrices,
/// generated directly at depth (no leading block is materialized).  J(z) rows
/// are z * overlap - hamiltonian entrywise, so a single pair of real rows
/// serves every energy.
struct HamiltonianBandRows {
  BandRows<double> overlap;
  BandRows<double> hamiltonian;
};

HamiltonianBandRows hamiltonian_band_rows(const BasisSpec& basis,
                                          const PotentialSpec& pot,
                                          long row_begin, long row_end);

/// Rows [row_begin, row_end) of J(z).  Entries are bit-identical to
/// assemble_j over any truncation that contains them: both are composed from
/// hamiltonian_band_rows by the same arithmetic.
BandRows<std::complex<double>> j_band_rows(const BasisSpec& basis,
                                           const PotentialSpec& pot,
                                           std::complex<double> z,
                                           long row_begin, long row_end);

}  // namespace csgreen
