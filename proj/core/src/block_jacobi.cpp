#include "csgreen/block_jacobi.hpp"

#include <string>
#include <utility>

namespace csgreen {
namespace {

// Copy the m x m diagonal and super-diagonal blocks of block row j out of a
// band-row slab covering [j m, (j+1) m).  Lower-triangle entries of the
// diagonal block mirror the stored upper band.
template <class Scalar, class Matrix>
void blocks_from_band_rows(const BandRows<Scalar>& rows, long j, int m,
                           Matrix& diag, Matrix& super) {
  const long base = j * static_cast<long>(m);
  const int w = rows.half_bandwidth();
  diag.setZero(m, m);
  super.setZero(m, m);
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      if (q >= p) {
        if (q - p <= w) diag(p, q) = rows.entry(base + p, q - p);
      } else {
        if (p - q <= w) diag(p, q) = rows.entry(base + q, p - q);
      }
      const int d = m + q - p;
      if (d <= w) super(p, q) = rows.entry(base + p, d);
    }
  }
}

}  // namespace

BlockTridiagonal::BlockTridiagonal(int block_size, RowFn rows)
    : m_(block_size), rows_(std::move(rows)) {
  if (m_ < 1) throw DomainError("BlockTridiagonal: block size must be >= 1");
  if (!rows_) throw DomainError("BlockTridiagonal: missing row provider");
}

int default_block_size(const PotentialSpec& pot) {
  return std::max(1, pot.degree() + 1);
}

BlockTridiagonal blockify(const BasisSpec& basis, const PotentialSpec& pot,
                          std::complex<double> z, int m) {
  const int w = std::max(1, pot.degree() + 1);
  if (m == 0) m = w;
  if (m < w)
    throw PartitionError("blockify: block size " + std::to_string(m) +
                         " below half-bandwidth " + std::to_string(w));
  return BlockTridiagonal(m, [basis, pot, z, m](long j) {
    const auto rows = j_band_rows(basis, pot, z, j * static_cast<long>(m),
                                  (j + 1) * static_cast<long>(m));
    BlockRow out;
    blocks_from_band_rows(rows, j, m, out.diag, out.super);
    return out;
  });
}

BlockTridiagonal blockify(std::function<std::complex<double>(long, long)> entry,
                          int half_bandwidth, int m) {
  if (half_bandwidth < 0)
    throw DomainError("blockify: half-bandwidth must be >= 0");
  if (m < std::max(1, half_bandwidth))
    throw PartitionError("blockify: block size " + std::to_string(m) +
                         " below half-bandwidth " +
                         std::to_string(half_bandwidth));
  return BlockTridiagonal(m, [entry = std::move(entry), m](long j) {
    const long base = j * static_cast<long>(m);
    BlockRow out;
    out.diag.setZero(m, m);
    out.super.setZero(m, m);
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        out.diag(p, q) = entry(base + p, base + q);
        out.super(p, q) = entry(base + p, base + m + q);
      }
    return out;
  });
}

JacobiCache::JacobiCache(const BasisSpec& basis, const PotentialSpec& pot,
                         int m)
    : basis_(basis), pot_(pot), m_(m) {
  const int w = std::max(1, pot.degree() + 1);
  if (m_ == 0) m_ = w;
  if (m_ < w)
    throw PartitionError("JacobiCache: block size " + std::to_string(m_) +
                         " below half-bandwidth " + std::to_string(w));
}

BlockRow JacobiCache::compose(std::complex<double> z, long j) const {
  std::lock_guard<std::mutex> lock(mutex_);
  while (static_cast<long>(rows_.size()) <= j) {
    const long next = static_cast<long>(rows_.size());
    const auto sh = hamiltonian_band_rows(basis_, pot_, next * m_,
                                          (next + 1) * static_cast<long>(m_));
    RowTemplate t;
    blocks_from_band_rows(sh.overlap, next, m_, t.s_diag, t.s_super);
    blocks_from_band_rows(sh.hamiltonian, next, m_, t.h_diag, t.h_super);
    rows_.push_back(std::move(t));
  }
  const RowTemplate& t = rows_[j];
  BlockRow out;
  out.diag.resize(m_, m_);
  out.super.resize(m_, m_);
  for (int p = 0; p < m_; ++p)
    for (int q = 0; q < m_; ++q) {
      out.diag(p, q) = z * t.s_diag(p, q) - t.h_diag(p, q);
      out.super(p, q) = z * t.s_super(p, q) - t.h_super(p, q);
    }
  return out;
}

BlockTridiagonal JacobiCache::at(std::complex<double> z) const {
  return BlockTridiagonal(m_,
                          [this, z](long j) { return compose(z, j); });
}

}  // namespace csgreen
