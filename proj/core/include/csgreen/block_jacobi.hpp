#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <mutex>
#include <vector>

#include "csgreen/matrix_elements.hpp"

namespace csgreen {

/// One block row of a block-Jacobi matrix: the diagonal block J_{j,j} and the
/// super-diagonal block J_{j,j+1}.  The sub-diagonal block J_{j+1,j} is the
/// transpose of E_j because the source matrix is complex symmetric.
struct BlockRow {
  Eigen::MatrixXcd diag;   // D_j = J_{j,j}
  Eigen::MatrixXcd super;  // E_j = J_{j,j+1}
};

/// An infinite symmetric band matrix viewed as a block-tridiagonal matrix of
/// m x m blocks.  Rows are produced lazily by a pure function of the block
/// index, so arbitrarily deep rows are available without a truncation; the
/// provider must be safe to call from several threads.
class BlockTridiagonal {
public:
  using RowFn = std::function<BlockRow(long)>;

  BlockTridiagonal(int block_size, RowFn rows);

  int block_size() const { return m_; }
  BlockRow row(long j) const { return rows_(j); }

private:
  int m_;
  RowFn rows_;
};

/// Smallest block size that makes J(z) block-tridiagonal: max(1, k+1) for
/// potential degree k (1 for a pure Coulomb term, 2 for a linear potential,
/// 3 for a quadratic one).
int default_block_size(const PotentialSpec& pot);

/// Partition J(z) = zS - H into m x m block rows, generated on demand from
/// j_band_rows.  m = 0 picks default_block_size; m below the half-bandwidth
/// of J makes the partition couple non-adjacent block rows and is rejected.
BlockTridiagonal blockify(const BasisSpec& basis, const PotentialSpec& pot,
                          std::complex<double> z, int m = 0);

/// Partition an arbitrary symmetric band matrix given by an entry function
/// (which must be symmetric and vanish for |n-n'| > half_bandwidth).
BlockTridiagonal blockify(std::function<std::complex<double>(long, long)> entry,
                          int half_bandwidth, int m);

/// Caching block-row factory for evaluating J(z) at many energies: the
/// z-independent overlap and Hamiltonian blocks of each row are built once
/// and J(z) rows are composed per energy as z * S - H entrywise, exactly the
/// arithmetic blockify performs, so the two routes give bit-identical blocks.
/// Row templates grow on demand under a lock; the cache must outlive every
/// BlockTridiagonal obtained from it.
class JacobiCache {
public:
  JacobiCache(const BasisSpec& basis, const PotentialSpec& pot, int m = 0);

  int block_size() const { return m_; }
  const BasisSpec& basis() const { return basis_; }
  const PotentialSpec& potential() const { return pot_; }

  BlockTridiagonal at(std::complex<double> z) const;

private:
  struct RowTemplate {
    Eigen::MatrixXd s_diag, s_super;  // overlap blocks
    Eigen::MatrixXd h_diag, h_super;  // Hamiltonian blocks
  };

  BlockRow compose(std::complex<double> z, long j) const;

  BasisSpec basis_;
  PotentialSpec pot_;
  int m_;
  mutable std::mutex mutex_;
  mutable std::vector<RowTemplate> rows_;
};

}  // namespace csgreen
