#pragma once

#include <vector>

#include "csgreen/mcf.hpp"

namespace csgreen {

/// Controls for the eigenvalue search.
struct FindOptions {
  /// Retained block rows N; -1 keeps four block rows (N = 3).  The block size
  /// itself is always the smallest one that makes J block-tridiagonal.
  long blocks = -1;
  /// Number of scan intervals across the energy window.
  long grid_points = 2000;
  /// Bisection stops when the bracket width is below tol * max(1, |E|).
  double tol = 1e-12;
  /// Cap on the continued-fraction depth.
  long k_max = 1L << 20;
  /// Keep at most this many levels, lowest first; -1 keeps all found.
  long count_limit = -1;
};

struct EigenvalueRecord {
  int index = 0;        // 0-based level counter within the window
  double energy = 0;
  double bracket = 0;   // final bracket width (0 for an exact grid hit)
  long tail_depth = 0;  // continued-fraction depth the root was accepted at
  long blocks = 0;      // N used
  bool validated = false;  // set by the residue rank test, not by the search
};

struct SpectrumResult {
  /// Accepted eigenvalues, strictly increasing.
  std::vector<EigenvalueRecord> levels;
  /// Sign changes that did not survive re-verification at doubled depth and
  /// grid density (typically artifacts of a finite tail depth).
  std::vector<EigenvalueRecord> rejected;
  /// Energies where |det| dips below e^-30 without a sign change: suspected
  /// even-multiplicity poles, reported for review rather than resolved.
  std::vector<double> flagged;
  /// Grid energies skipped because the tail evaluation failed there.
  std::vector<double> skipped;
};

/// Locate eigenvalues inside [e_lo, e_hi] as sign changes of the determinant
/// of the tail-corrected truncated matrix, refined by bisection.  The scan
/// depth is chosen by stabilizing the determinant under depth doubling at a
/// few interior energies; every root is then re-verified at doubled depth and
/// doubled grid density and rejected if it moves.  The potential must be
/// confining so the spectrum in the window is discrete.
SpectrumResult find_eigenvalues(const BasisSpec& basis,
                                const PotentialSpec& pot, double e_lo,
                                double e_hi, const FindOptions& opts = {});

}  // namespace csgreen
