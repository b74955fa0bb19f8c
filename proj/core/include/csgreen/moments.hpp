#pragma once

#include <vector>

#include "csgreen/banded.hpp"
#include "csgreen/basis.hpp"

namespace csgreen {

/// Laguerre moment integrals
///   I^(p)(n,n') = Int_0^inf e^{-x} x^{alpha+p} L_n^alpha(x) L_{n'}^alpha(x) dx,
/// alpha = 2L+1, for p = 0..p_max.  I^(0) is the orthogonality diagonal
/// Gamma(n+alpha+1)/Gamma(n+1); each further power is one application of the
/// tridiagonal multiplication-by-x matrix, so I^(p) is a symmetric band
/// matrix of half-bandwidth exactly p.
class MomentTable {
public:
  explicit MomentTable(std::vector<BandedSymmetric<double>> tables);

  int p_max() const { return static_cast<int>(tables_.size()) - 1; }
  long order() const { return tables_.front().order(); }

  const BandedSymmetric<double>& table(int p) const;
  double value(int p, long n, long np) const { return table(p)(n, np); }

private:
  std::vector<BandedSymmetric<double>> tables_;
};

/// Build the M x M moment tables for p = 0..p_max.  The recursion is run with
/// M + p_max internal rows so every returned entry is exact (each power mixes
/// a row only with its immediate neighbours).
MomentTable moment_matrices(const BasisSpec& basis, long M, int p_max);

/// Normalized variant of the moment recursion on a window of rows: the values
/// c_n c_{n'} I^(p)(n,n') with c_n the basis normalization.  These are the
/// entries of X^p where X is the symmetric tridiagonal multiplication-by-x
/// matrix (diagonal 2n+alpha+1, off-diagonal -sqrt((n+1)(n+alpha+1))), and
/// they grow only polynomially in n, so rows may be generated at arbitrary
/// depth without overflow.
///
/// The value at (p, n, n') is an intrinsic function of its arguments: windows
/// with different bounds (including the full table starting at row 0) produce
/// bit-identical entries wherever they overlap, because the recursion
/// consumes the same inputs in the same order regardless of the window.
class MomentWindow {
public:
  MomentWindow(int alpha, long row_begin, long row_end, int p_max);

  int alpha() const { return alpha_; }
  int p_max() const { return static_cast<int>(levels_.size()) - 1; }
  long row_begin() const { return row_begin_; }
  long row_end() const { return row_end_; }

  /// c_n c_{n'} I^(p)(n,n') for n in [row_begin, row_end); zero outside the
  /// band |n-n'| <= p.
  double value(int p, long n, long np) const;

private:
  struct Level {
    long begin;
    long end;
    int band;
    std::vector<double> data;  // (end-begin) rows x (2 band + 1) offsets

    double at(long n, long np) const {
      const long d = np - n;
      if (np < 0 || d > band || d < -band) return 0.0;
      return data[static_cast<size_t>(n - begin) * (2 * band + 1) +
                  (d + band)];
    }
  };

  int alpha_;
  long row_begin_;
  long row_end_;
  std::vector<Level> levels_;
};

}  // namespace csgreen
