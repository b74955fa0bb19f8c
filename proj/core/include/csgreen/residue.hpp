#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "csgreen/spectrum.hpp"

namespace csgreen {

/// Controls for the contour-integral residue extraction.
struct ResidueOptions {
  /// Retained block rows N; -1 means: inherit from the spectrum record in
  /// residue_for_level, and use N = 3 elsewhere.
  long blocks = -1;
  /// Initial number of quadrature points on the circle; doubled until the
  /// integral is stable, up to max_quadrature.
  long quadrature = 32;
  long max_quadrature = 1L << 13;
  /// Relative stabilization target for the quadrature and the tail depth.
  double tol = 1e-12;
  long k_max = 1L << 20;
};

/// The residue of the resolvent at a simple eigenvalue, reduced to the
/// normalized coefficient vector of the eigenstate.
struct Eigenstate {
  double energy = 0;
  Eigen::VectorXd coeffs;
  /// |c^T S c - 1| of the raw residue factor, before the final rescale.
  /// Small values mean the contour really captured a rank-one residue of a
  /// correctly normalized spectral decomposition.
  double norm_defect = 0;
  /// Second-to-first singular value ratio of the residue matrix.
  double rank_defect = 0;
  long blocks = 0;
  long quadrature_points = 0;
  double radius = 0;
};

/// Integrate the resolvent around the circle |z - center| = radius and return
/// the (symmetrized, real) residue matrix -(1/2\pi i) \oint G dz.  Quadrature
/// points come in conjugate pairs, so only the upper semicircle is evaluated
/// and the result is exactly real.  A circle enclosing no pole yields a
/// matrix of quadrature-noise size.
Eigen::MatrixXd residue_projector(const BasisSpec& basis,
                                  const PotentialSpec& pot, double center,
                                  double radius,
                                  const ResidueOptions& opts = {});

/// Extract the eigenstate whose eigenvalue lies inside the given circle.
/// The residue matrix must be numerically rank one (rank defect above 1e-6
/// raises DegenerateResidueError); a circle enclosing nothing raises
/// ContourError.
Eigenstate residue_at(const BasisSpec& basis, const PotentialSpec& pot,
                      double energy, double radius,
                      const ResidueOptions& opts = {});

/// residue_at for one level of a computed spectrum, with the radius chosen
/// as a quarter of the gap to the nearest other level.  Refuses to integrate
/// when another level or a flagged point sits within the contour.
Eigenstate residue_for_level(const BasisSpec& basis, const PotentialSpec& pot,
                             const SpectrumResult& spectrum, int index,
                             const ResidueOptions& opts = {});

/// Run residue_for_level over all levels, marking each record validated when
/// its residue passes the rank test.  Levels whose extraction fails keep
/// validated = false and get an empty slot in the returned vector, aligned
/// with spectrum.levels.
std::vector<std::optional<Eigenstate>> validate_spectrum(
    const BasisSpec& basis, const PotentialSpec& pot, SpectrumResult& spectrum,
    const ResidueOptions& opts = {});

/// Radial wavefunction u(r) of an extracted eigenstate.
double eigenstate_eval(const BasisSpec& basis, const Eigenstate& state,
                       double r);

}  // namespace csgreen
