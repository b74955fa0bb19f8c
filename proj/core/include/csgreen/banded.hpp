#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "csgreen/errors.hpp"

namespace csgreen {

/// Truncated symmetric band matrix.  Only the upper band is stored: the value
/// for the pair (n, n+d) with 0 <= d <= half_bandwidth lives at row n, offset
/// d, so entry(n, n') == entry(n', n) holds by construction and everything
/// beyond the band reads as zero.
template <class Scalar>
class BandedSymmetric {
public:
  BandedSymmetric(long order, int half_bandwidth)
      : order_(order),
        w_(half_bandwidth),
        data_(static_cast<size_t>(order) * (half_bandwidth + 1), Scalar(0)) {
    if (order < 1) throw DomainError("BandedSymmetric: order must be >= 1");
    if (half_bandwidth < 0)
      throw DomainError("BandedSymmetric: half-bandwidth must be >= 0");
  }

  long order() const { return order_; }
  int half_bandwidth() const { return w_; }

  /// Symmetric lookup; zero outside the band.
  Scalar operator()(long n, long np) const {
    check(n);
    check(np);
    if (np < n) std::swap(n, np);
    const long d = np - n;
    if (d > w_) return Scalar(0);
    return data_[static_cast<size_t>(n) * (w_ + 1) + d];
  }

  /// Store the value for the pair (n, n'); the mirrored entry follows.
  void set(long n, long np, Scalar value) {
    check(n);
    check(np);
    if (np < n) std::swap(n, np);
    const long d = np - n;
    if (d > w_)
      throw DomainError("BandedSymmetric: (" + std::to_string(n) + "," +
                        std::to_string(np) + ") lies outside the band");
    data_[static_cast<size_t>(n) * (w_ + 1) + d] = value;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(order_,
                                                                    order_);
    for (long n = 0; n < order_; ++n)
      for (long np = n; np < std::min(order_, n + w_ + 1); ++np) {
        out(n, np) = (*this)(n, np);
        out(np, n) = out(n, np);
      }
    return out;
  }

private:
  void check(long n) const {
    if (n < 0 || n >= order_)
      throw DomainError("BandedSymmetric: index " + std::to_string(n) +
                        " outside order " + std::to_string(order_));
  }

  long order_;
  int w_;
  std::vector<Scalar> data_;
};

/// A slab of consecutive rows of an infinite symmetric band matrix, in the
/// same upper-band layout as BandedSymmetric: entry(n, d) is the value for
/// the pair (n, n+d).  Used to generate matrix rows beyond any truncation
/// without materializing the leading block.
template <class Scalar>
class BandRows {
public:
  BandRows(long row_begin, long row_end, int half_bandwidth)
      : begin_(row_begin),
        end_(row_end),
        w_(half_bandwidth),
        data_(static_cast<size_t>(row_end - row_begin) * (half_bandwidth + 1),
              Scalar(0)) {
    if (row_begin < 0 || row_end <= row_begin)
      throw DomainError("BandRows: empty or negative row range");
    if (half_bandwidth < 0)
      throw DomainError("BandRows: half-bandwidth must be >= 0");
  }

  long row_begin() const { return begin_; }
  long row_end() const { return end_; }
  int half_bandwidth() const { return w_; }

  /// Value for the pair (n, n+d); n must lie in [row_begin, row_end).
  Scalar entry(long n, int d) const {
    check(n, d);
    return data_[static_cast<size_t>(n - begin_) * (w_ + 1) + d];
  }

  Scalar& entry(long n, int d) {
    check(n, d);
    return data_[static_cast<size_t>(n - begin_) * (w_ + 1) + d];
  }

private:
  void check(long n, int d) const {
    if (n < begin_ || n >= end_)
      throw DomainError("BandRows: row " + std::to_string(n) +
                        " outside stored range");
    if (d < 0 || d > w_)
      throw DomainError("BandRows: offset " + std::to_string(d) +
                        " outside band");
  }

  long begin_;
  long end_;
  int w_;
  std::vector<Scalar> data_;
};

}  // namespace csgreen
