#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "csgreen/block_jacobi.hpp"

namespace csgreen {

/// Truncated Green's matrix at a complex energy: the (N+1)m x (N+1)m upper
/// left corner of J(z)^-1, obtained by inverting the truncated block-Jacobi
/// matrix whose last diagonal block carries the continued-fraction tail
/// correction.  Because the correction accounts exactly for the eliminated
/// infinite remainder (up to the evaluation depth K), the poles of the
/// corner are the eigenvalues of the full Hamiltonian, not of a truncation.
struct GreenBlockMatrix {
  std::complex<double> z;
  long blocks_retained = 0;  // N: block rows 0..N are kept
  int block_size = 0;        // m

  Eigen::MatrixXcd values;  // <n~|G(z)|n'~> for n,n' < (N+1)m
  Eigen::MatrixXcd tail;    // C_{N+1} at the accepted depth

  long tail_depth = 0;              // K the tail was evaluated at
  double convergence_estimate = 0;  // relative max-norm change over last doubling
  std::vector<std::pair<long, double>> convergence_history;  // (K, estimate)
};

/// Backward evaluation of the matrix continued fraction: C_{K+1} = 0, then
///   C_j = (D_j - E_j C_{j+1} E_j^T)^-1   for j = K down to N+1,
/// returning C_{N+1}.  Each inversion uses a pivoted dense factorization; a
/// pivot magnitude below 1e-300 raises TailSingularError with the depth.
Eigen::MatrixXcd tail_cf(const BlockTridiagonal& blocks, long N, long K);

/// Tail-corrected truncated Green's matrix.  The depth starts at max(2N, 64)
/// and doubles (restarting the backward evaluation) until the relative
/// max-norm change of G^(N) falls below tol; exceeding k_max raises
/// NonConvergenceError with the last estimate.  A singular corrected matrix
/// raises AtPoleError: z is an eigenvalue to working precision.
GreenBlockMatrix green_matrix(const BlockTridiagonal& blocks,
                              std::complex<double> z, long N,
                              double tol = 1e-12, long k_max = 1L << 20);

/// Determinant of the tail-corrected truncated matrix in factored form,
/// log_abs = log|det| and phase = det/|det|, so sign changes can be tracked
/// across hundreds of orders of magnitude.  For real z the arithmetic stays
/// exactly real and sign() is reliable: -1, 0 (an exact zero pivot), or +1.
struct LogDet {
  std::complex<double> phase;  // 0 when the determinant is exactly zero
  double log_abs;              // -infinity when the determinant is zero

  int sign() const {
    if (phase == std::complex<double>(0.0, 0.0)) return 0;
    return phase.real() > 0.0 ? 1 : -1;
  }
};

LogDet logdet_corrected(const BlockTridiagonal& blocks, std::complex<double> z,
                        long N, long K);

/// Largest absolute residual of the defining block equations
///   J_{n,n-1} G_{n-1,n'} + J_{n,n} G_{n,n'} + J_{n,n+1} G_{n+1,n'} = delta,
/// over all rows n <= N and columns n' <= N, with the exterior row
/// G_{N+1,n'} = -C_{N+1} J_{N+1,N} G_{N,n'} reconstructed from the stored
/// tail.  Near zero when the tail has converged.
double defect_residual(const BlockTridiagonal& blocks,
                       const GreenBlockMatrix& g);

}  // namespace csgreen
