#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace csgreen {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or precondition violation (r < 0, unsupported power, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Block size smaller than the half-bandwidth: the partition is not tridiagonal.
class PartitionError : public Error {
public:
  using Error::Error;
};

/// An inner matrix of the continued fraction was numerically singular.
class TailSingularError : public Error {
public:
  TailSingularError(long depth, const std::string& what)
      : Error(what), depth_(depth) {}
  long depth() const { return depth_; }

private:
  long depth_;
};

/// Doubling the tail depth did not stabilize the result within the depth cap.
class NonConvergenceError : public Error {
public:
  NonConvergenceError(double estimate, const std::string& what)
      : Error(what), estimate_(estimate) {}
  /// Relative change over the last doubling.
  double estimate() const { return estimate_; }

private:
  double estimate_;
};

/// The truncated, tail-corrected matrix is singular: z is an eigenvalue to
/// working precision.
class AtPoleError : public Error {
public:
  AtPoleError(std::complex<double> z, const std::string& what)
      : Error(what), z_(z) {}
  std::complex<double> energy() const { return z_; }

private:
  std::complex<double> z_;
};

/// The integration contour is unusable (encloses no pole, or touches a
/// known/flagged one).
class ContourError : public Error {
public:
  using Error::Error;
};

/// The residue matrix is not rank-1: degenerate level or contaminated contour.
class DegenerateResidueError : public Error {
public:
  DegenerateResidueError(double rank_defect, const std::string& what)
      : Error(what), rank_defect_(rank_defect) {}
  double rank_defect() const { return rank_defect_; }

private:
  double rank_defect_;
};

}  // namespace csgreen
