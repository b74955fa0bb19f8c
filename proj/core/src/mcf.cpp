#include "csgreen/mcf.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace csgreen {
namespace {

constexpr double kTailPivotFloor = 1e-300;

// Margin over dim * eps * max|pivot| below which the corrected matrix is
// treated as singular.  Rounding of the matrix entries alone can lift the
// smallest pivot at an exact eigenvalue to ~100 eps relative, so the margin
// must sit above that; evaluations a legitimate distance delta from a pole
// keep a relative pivot of order delta, far above this cutoff.
constexpr double kAtPoleFactor = 64.0;

// Uncorrected truncated block matrix from the cached rows 0..N.
Eigen::MatrixXcd assemble_truncated(const std::vector<BlockRow>& rows, int m) {
  const long blocks = static_cast<long>(rows.size());
  const long dim = blocks * m;
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(dim, dim);
  for (long n = 0; n < blocks; ++n) {
    j.block(n * m, n * m, m, m) = rows[n].diag;
    if (n + 1 < blocks) {
      j.block(n * m, (n + 1) * m, m, m) = rows[n].super;
      j.block((n + 1) * m, n * m, m, m) = rows[n].super.transpose();
    }
  }
  return j;
}

}  // namespace

Eigen::MatrixXcd tail_cf(const BlockTridiagonal& blocks, long N, long K) {
  if (N < 0) throw DomainError("tail_cf: N must be >= 0");
  if (K <= N)
    throw DomainError("tail_cf: depth K must exceed the retained rows N");

  const int m = blocks.block_size();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd a(m, m);
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(m, m);

  for (long j = K; j > N; --j) {
    const BlockRow row = blocks.row(j);
    a = row.diag;
    a.noalias() -= row.super * c * row.super.transpose();

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    double min_pivot = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
      min_pivot = std::min(min_pivot, std::abs(lu.matrixLU()(i, i)));
    if (min_pivot < kTailPivotFloor)
      throw TailSingularError(
          j, "tail_cf: singular inner matrix at depth " + std::to_string(j));

    c = lu.solve(identity);
  }
  return c;
}

GreenBlockMatrix green_matrix(const BlockTridiagonal& blocks,
                              std::complex<double> z, long N, double tol,
                              long k_max) {
  if (N < 0) throw DomainError("green_matrix: N must be >= 0");
  if (tol <= 0) throw DomainError("green_matrix: tol must be positive");

  const int m = blocks.block_size();
  const long dim = (N + 1) * m;

  std::vector<BlockRow> rows;
  rows.reserve(N + 1);
  for (long n = 0; n <= N; ++n) rows.push_back(blocks.row(n));
  const Eigen::MatrixXcd j_base = assemble_truncated(rows, m);
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);

  long K = std::max(2 * N, 64L);
  if (K > k_max)
    throw NonConvergenceError(
        std::numeric_limits<double>::infinity(),
        "green_matrix: depth cap " + std::to_string(k_max) +
            " below the starting depth " + std::to_string(K));

  GreenBlockMatrix out;
  out.z = z;
  out.blocks_retained = N;
  out.block_size = m;

  Eigen::MatrixXcd g_prev;
  bool have_prev = false;
  double estimate = std::numeric_limits<double>::infinity();

  for (;;) {
    Eigen::MatrixXcd c = tail_cf(blocks, N, K);
    Eigen::MatrixXcd j = j_base;
    j.block(N * m, N * m, m, m).noalias() -=
        rows[N].super * c * rows[N].super.transpose();

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(j);
    double min_pivot = std::numeric_limits<double>::infinity();
    double max_pivot = 0.0;
    for (long i = 0; i < dim; ++i) {
      const double a = std::abs(lu.matrixLU()(i, i));
      min_pivot = std::min(min_pivot, a);
      max_pivot = std::max(max_pivot, a);
    }
    if (min_pivot <=
        kAtPoleFactor * dim * std::numeric_limits<double>::epsilon() *
            max_pivot)
      throw AtPoleError(z,
                        "green_matrix: corrected matrix singular: the energy "
                        "is an eigenvalue to working precision");

    Eigen::MatrixXcd g = lu.solve(identity);

    if (have_prev) {
      estimate = (g - g_prev).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff();
      out.convergence_history.emplace_back(K, estimate);
      if (estimate < tol) {
        out.values = std::move(g);
        out.tail = std::move(c);
        out.tail_depth = K;
        out.convergence_estimate = estimate;
        return out;
      }
    }
    g_prev = std::move(g);
    have_prev = true;

    if (2 * K > k_max)
      throw NonConvergenceError(
          estimate, "green_matrix: tail not stabilized within depth cap " +
                        std::to_string(k_max) + " (last relative change " +
                        std::to_string(estimate) + ")");
    K *= 2;
  }
}

LogDet logdet_corrected(const BlockTridiagonal& blocks, std::complex<double> z,
                        long N, long K) {
  if (N < 0) throw DomainError("logdet_corrected: N must be >= 0");
  (void)z;  // the provider is already bound to z; kept for diagnostics

  const int m = blocks.block_size();
  const long dim = (N + 1) * m;

  std::vector<BlockRow> rows;
  rows.reserve(N + 1);
  for (long n = 0; n <= N; ++n) rows.push_back(blocks.row(n));

  const Eigen::MatrixXcd c = tail_cf(blocks, N, K);
  Eigen::MatrixXcd j = assemble_truncated(rows, m);
  j.block(N * m, N * m, m, m).noalias() -=
      rows[N].super * c * rows[N].super.transpose();

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(j);

  LogDet out;
  out.phase = static_cast<double>(lu.permutationP().determinant());
  out.log_abs = 0.0;
  for (long i = 0; i < dim; ++i) {
    const std::complex<double> d = lu.matrixLU()(i, i);
    const double a = std::abs(d);
    if (a == 0.0) {
      out.phase = 0.0;
      out.log_abs = -std::numeric_limits<double>::infinity();
      return out;
    }
    out.log_abs += std::log(a);
    out.phase *= d / a;
  }
  return out;
}

double defect_residual(const BlockTridiagonal& blocks,
                       const GreenBlockMatrix& g) {
  const int m = g.block_size;
  const long N = g.blocks_retained;

  std::vector<BlockRow> rows;
  rows.reserve(N + 1);
  for (long n = 0; n <= N; ++n) rows.push_back(blocks.row(n));

  // Exterior block row from the stored tail: G_{N+1,n'} = -C E_N^T G_{N,n'}.
  const Eigen::MatrixXcd exterior =
      -(g.tail * rows[N].super.transpose()) * g.values.middleRows(N * m, m);

  double worst = 0.0;
  for (long n = 0; n <= N; ++n) {
    Eigen::MatrixXcd r = rows[n].diag * g.values.middleRows(n * m, m);
    if (n > 0)
      r.noalias() +=
          rows[n - 1].super.transpose() * g.values.middleRows((n - 1) * m, m);
    if (n < N)
      r.noalias() += rows[n].super * g.values.middleRows((n + 1) * m, m);
    else
      r.noalias() += rows[N].super * exterior;
    r.block(0, n * m, m, m) -= Eigen::MatrixXcd::Identity(m, m);
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace csgreen
