#include "csgreen/residue.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "csgreen/matrix_elements.hpp"

namespace csgreen {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

/// One trapezoidal pass over the contour with Q points.  The nodes
/// z_q = center + radius e^{i theta_q}, theta_q = 2 pi (q + 1/2) / Q avoid
/// the real axis and come in conjugate pairs z_{Q-1-q} = conj(z_q); since
/// G(conj z) = conj G(z) for a real symmetric pencil, each pair contributes
/// 2 Re[G(z_q) e^{i theta_q}], so only the upper half circle is evaluated
/// and the sum is exactly real.
Eigen::MatrixXd contour_pass(const JacobiCache& cache, double center,
                             double radius, long q_total, long blocks,
                             double tol, long k_max) {
  const long dim = (blocks + 1) * cache.block_size();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, dim);
  for (long q = 0; q < q_total / 2; ++q) {
    const double theta = 2.0 * kPi * (static_cast<double>(q) + 0.5) /
                         static_cast<double>(q_total);
    const std::complex<double> phase(std::cos(theta), std::sin(theta));
    const std::complex<double> z = center + radius * phase;
    const GreenBlockMatrix g =
        green_matrix(cache.at(z), z, blocks, tol, k_max);
    acc += (g.values * phase).real();
  }
  // -(1/2 pi i) \oint G dz with dz = i radius e^{i theta} dtheta and the
  // sign convention G = (zS - H)^{-1}: the residue at a pole is +|psi><psi|
  // under this sweep orientation.
  return acc * (2.0 * radius / static_cast<double>(q_total));
}

/// Contour integral with the point count doubled until stable.
Eigen::MatrixXd converged_projector(const JacobiCache& cache, double center,
                                    double radius, const ResidueOptions& opts,
                                    long blocks, long* points_used) {
  if (!(radius > 0)) throw DomainError("contour radius must be positive");
  long q = std::max<long>(4, opts.quadrature);
  if (q % 2 != 0) ++q;  // conjugate pairing needs an even count
  if (q > opts.max_quadrature) {
    throw NonConvergenceError(
        std::numeric_limits<double>::infinity(),
        "max_quadrature below the starting quadrature order");
  }
  Eigen::MatrixXd prev;
  try {
    prev = contour_pass(cache, center, radius, q, blocks, opts.tol,
                        opts.k_max);
  } catch (const AtPoleError&) {
    throw ContourError("contour passes through a pole of the resolvent");
  }
  while (true) {
    if (2 * q > opts.max_quadrature) {
      throw NonConvergenceError(
          prev.cwiseAbs().maxCoeff(),
          "contour integral did not stabilize within max_quadrature points");
    }
    q *= 2;
    Eigen::MatrixXd cur;
    try {
      cur = contour_pass(cache, center, radius, q, blocks, opts.tol,
                         opts.k_max);
    } catch (const AtPoleError&) {
      throw ContourError("contour passes through a pole of the resolvent");
    }
    const double scale = std::max(1.0, cur.cwiseAbs().maxCoeff());
    const double change = (cur - prev).cwiseAbs().maxCoeff();
    prev.swap(cur);
    if (change <= opts.tol * scale) break;
  }
  if (points_used != nullptr) *points_used = q;
  return prev;
}

long resolve_blocks(const ResidueOptions& opts, long fallback) {
  const long blocks = opts.blocks < 0 ? fallback : opts.blocks;
  if (blocks < 0) throw DomainError("blocks must be nonnegative");
  return blocks;
}

}  // namespace

Eigen::MatrixXd residue_projector(const BasisSpec& basis,
                                  const PotentialSpec& pot, double center,
                                  double radius, const ResidueOptions& opts) {
  const long blocks = resolve_blocks(opts, 3);
  const JacobiCache cache(basis, pot);
  Eigen::MatrixXd p =
      converged_projector(cache, center, radius, opts, blocks, nullptr);
  return 0.5 * (p + p.transpose()).eval();
}

Eigenstate residue_at(const BasisSpec& basis, const PotentialSpec& pot,
                      double energy, double radius,
                      const ResidueOptions& opts) {
  const long blocks = resolve_blocks(opts, 3);
  const JacobiCache cache(basis, pot);
  long points = 0;
  Eigen::MatrixXd p =
      converged_projector(cache, energy, radius, opts, blocks, &points);
  p = 0.5 * (p + p.transpose()).eval();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double lead = sv(0);
  // An empty contour integrates to quadrature noise; there is no state to
  // return.  The threshold is far above noise yet far below the O(1)
  // leading singular value of a genuine rank-one residue.
  if (!(lead > 1e-10)) {
    throw ContourError("contour encloses no pole: residue is numerically 0");
  }
  const double rank_defect = sv.size() > 1 ? sv(1) / lead : 0.0;
  if (rank_defect > 1e-6) {
    throw DegenerateResidueError(
        rank_defect,
        "residue matrix is not rank one: the contour likely encloses "
        "several poles or a degenerate level");
  }

  Eigenstate state;
  state.energy = energy;
  state.rank_defect = rank_defect;
  state.blocks = blocks;
  state.quadrature_points = points;
  state.radius = radius;

  Eigen::VectorXd c = std::sqrt(lead) * svd.matrixU().col(0);
  const Eigen::MatrixXd s = overlap_matrix(basis, c.size()).dense();
  const double quad = c.dot(s * c);
  state.norm_defect = std::abs(quad - 1.0);
  if (!(quad > 0)) {
    throw ContourError(
        "residue factor has nonpositive overlap norm; contour result is "
        "not a valid state");
  }
  c /= std::sqrt(quad);
  // Fix the overall sign: largest-magnitude coefficient positive.
  Eigen::Index imax = 0;
  c.cwiseAbs().maxCoeff(&imax);
  if (c(imax) < 0) c = -c;
  state.coeffs = std::move(c);
  return state;
}

Eigenstate residue_for_level(const BasisSpec& basis, const PotentialSpec& pot,
                             const SpectrumResult& spectrum, int index,
                             const ResidueOptions& opts) {
  if (index < 0 || static_cast<std::size_t>(index) >= spectrum.levels.size()) {
    throw DomainError("level index out of range");
  }
  const EigenvalueRecord& level = spectrum.levels[index];
  const double energy = level.energy;

  double gap = std::numeric_limits<double>::infinity();
  for (const EigenvalueRecord& other : spectrum.levels) {
    if (other.index == level.index) continue;
    gap = std::min(gap, std::abs(other.energy - energy));
  }
  if (!std::isfinite(gap)) {
    throw DomainError(
        "cannot choose a contour radius: the spectrum holds a single level, "
        "so the neighbor gap is undefined; use residue_at with an explicit "
        "radius");
  }
  const double radius = 0.25 * gap;

  for (const double bad : spectrum.flagged) {
    if (std::abs(bad - energy) <= radius) {
      throw ContourError(
          "a flagged determinant dip lies within the contour radius");
    }
  }
  for (const EigenvalueRecord& other : spectrum.rejected) {
    if (std::abs(other.energy - energy) <= radius) {
      throw ContourError(
          "a rejected sign change lies within the contour radius");
    }
  }

  ResidueOptions local = opts;
  if (local.blocks < 0) local.blocks = level.blocks;
  return residue_at(basis, pot, energy, radius, local);
}

std::vector<std::optional<Eigenstate>> validate_spectrum(
    const BasisSpec& basis, const PotentialSpec& pot, SpectrumResult& spectrum,
    const ResidueOptions& opts) {
  std::vector<std::optional<Eigenstate>> states(spectrum.levels.size());
  for (std::size_t i = 0; i < spectrum.levels.size(); ++i) {
    try {
      states[i] = residue_for_level(basis, pot, spectrum,
                                    static_cast<int>(i), opts);
      spectrum.levels[i].validated = true;
    } catch (const Error&) {
      spectrum.levels[i].validated = false;
    }
  }
  return states;
}

double eigenstate_eval(const BasisSpec& basis, const Eigenstate& state,
                       double r) {
  if (r < 0) throw DomainError("radial coordinate must be nonnegative");
  double value = 0;
  for (Eigen::Index n = 0; n < state.coeffs.size(); ++n) {
    value += state.coeffs(n) *
             cs_radial_eval(basis, static_cast<int>(n), r);
  }
  return value;
}

}  // namespace csgreen
