#include "csgreen/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace csgreen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// A determinant sample at real energy: sign in {-1, 0, +1} and log|det|.
/// `ok` is false when the tail hit an exactly singular pivot at this energy.
struct DetSample {
  bool ok = false;
  int sign = 0;
  double log_abs = 0;
};

/// Evaluates the tail-corrected determinant at real energies for one fixed
/// (basis, potential, N), reusing the cached energy-independent band rows.
class DetScanner {
 public:
  DetScanner(const BasisSpec& basis, const PotentialSpec& pot, long blocks)
      : cache_(basis, pot), blocks_(blocks) {}

  DetSample eval(double e, long depth) const {
    const std::complex<double> z(e, 0.0);
    try {
      const LogDet ld = logdet_corrected(cache_.at(z), z, blocks_, depth);
      return {true, ld.sign(), ld.log_abs};
    } catch (const TailSingularError&) {
      return {};
    }
  }

  long blocks() const { return blocks_; }

 private:
  JacobiCache cache_;
  long blocks_;
};

/// Pick a tail depth that makes the determinant stable under doubling at a
/// few interior energies.  Each trial point is accepted once doubling the
/// depth keeps the sign and moves log|det| by less than a fixed relative
/// amount; points sitting on a singularity are nudged aside and, failing
/// that, dropped.  At least one point must stabilize.
long probe_depth(const DetScanner& det, double e_lo, double e_hi,
                 long k_start, long k_max) {
  // Irregular fractions so the probes don't land on symmetry points of
  // common windows (integers, half-integers, midpoints).
  constexpr double kFractions[3] = {0.2137, 0.4723, 0.8311};
  constexpr double kNudge = 0.0173;
  const double width = e_hi - e_lo;

  long best = 0;
  int stabilized = 0;
  double last_change = kInf;
  for (const double frac : kFractions) {
    for (int shift = 0; shift < 4; ++shift) {
      const double e = e_lo + (frac + kNudge * shift) * width;
      long k = k_start;
      DetSample prev = det.eval(e, k);
      if (!prev.ok || !std::isfinite(prev.log_abs)) continue;
      bool done = false;
      while (2 * k <= k_max) {
        k *= 2;
        const DetSample cur = det.eval(e, k);
        if (!cur.ok || !std::isfinite(cur.log_abs)) break;
        const double change = std::abs(cur.log_abs - prev.log_abs);
        if (cur.sign == prev.sign &&
            change <= 1e-9 * std::max(1.0, std::abs(cur.log_abs))) {
          done = true;
          break;
        }
        last_change = change;
        prev = cur;
      }
      if (done) {
        best = std::max(best, k);
        ++stabilized;
        break;  // this fraction is settled; move to the next one
      }
    }
  }
  if (stabilized == 0) {
    throw NonConvergenceError(
        last_change,
        "determinant did not stabilize under depth doubling at any probe "
        "energy within the depth cap");
  }
  return best;
}

struct BisectOutcome {
  enum class Status { kConverged, kExactZero, kTailFailure, kPoleSuspect };
  Status status = Status::kTailFailure;
  double energy = 0;
  double width = 0;
  double failed_at = 0;  // energy of the singular midpoint on kTailFailure
};

/// Bisect a sign change of the determinant down to width tol * max(1, |E|).
/// `log_lo`/`log_hi` are log|det| at the endpoints; a genuine root makes
/// |det| collapse between them, so if no midpoint ever drops well below the
/// endpoint level the "root" is re-classified as a pole crossing (the
/// determinant of the corrected matrix also changes sign across a pole of
/// the tail).
BisectOutcome bisect_root(const DetScanner& det, long depth, double lo,
                          double hi, int sign_lo, double log_lo,
                          double log_hi, double tol) {
  constexpr double kMinDip = 5.0;  // required drop of log|det|, in nats
  const double reference = std::max(log_lo, log_hi);
  double deepest = kInf;
  BisectOutcome out;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi) ||
        hi - lo <= tol * std::max(1.0, std::abs(mid))) {
      out.energy = mid;
      out.width = hi - lo;
      out.status = deepest <= reference - kMinDip
                       ? BisectOutcome::Status::kConverged
                       : BisectOutcome::Status::kPoleSuspect;
      return out;
    }
    const DetSample s = det.eval(mid, depth);
    if (!s.ok) {
      out.status = BisectOutcome::Status::kTailFailure;
      out.failed_at = mid;
      return out;
    }
    if (s.sign == 0) {
      out.status = BisectOutcome::Status::kExactZero;
      out.energy = mid;
      out.width = 0;
      return out;
    }
    deepest = std::min(deepest, s.log_abs);
    if (s.sign == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

/// A root candidate from the scan, together with the grid interval it came
/// from so re-verification can re-derive it independently.
struct Candidate {
  double energy = 0;
  double width = 0;
  double interval_lo = 0;
  double interval_hi = 0;
  bool exact = false;  // determinant sign was exactly zero
};

/// Re-locate a candidate near its grid interval at doubled depth, sampling
/// twice as finely so a root that drifted slightly is still bracketed.  The
/// sampled range is padded past the interval by the drift the verification
/// pass tolerates: deepening the tail moves a root by parts in 1e13, and a
/// root sitting on a grid point can hop across the interval endpoint, which
/// must not read as the sign change having vanished.  Of all rediscovered
/// roots the one closest to the candidate is returned; nothing is returned
/// if every sign change in the padded range is gone or fails the dip test
/// at the deeper tail.
std::optional<Candidate> relocate(const DetScanner& det, long depth,
                                  const Candidate& c, double tol,
                                  double drift,
                                  std::vector<double>* skipped) {
  constexpr int kSubdiv = 4;
  double xs[kSubdiv + 1];
  DetSample ss[kSubdiv + 1];
  const double lo = c.interval_lo - drift;
  const double hi = c.interval_hi + drift;
  const double h = (hi - lo) / kSubdiv;
  for (int i = 0; i <= kSubdiv; ++i) {
    xs[i] = (i == kSubdiv) ? hi : lo + i * h;
    ss[i] = det.eval(xs[i], depth);
    if (ss[i].ok && ss[i].sign == 0) {
      Candidate hit = c;
      hit.energy = xs[i];
      hit.width = 0;
      hit.exact = true;
      return hit;
    }
  }
  std::optional<Candidate> best;
  for (int i = 0; i < kSubdiv; ++i) {
    if (!ss[i].ok || !ss[i + 1].ok) continue;
    if (ss[i].sign * ss[i + 1].sign != -1) continue;
    const BisectOutcome out =
        bisect_root(det, depth, xs[i], xs[i + 1], ss[i].sign, ss[i].log_abs,
                    ss[i + 1].log_abs, tol);
    switch (out.status) {
      case BisectOutcome::Status::kConverged:
      case BisectOutcome::Status::kExactZero: {
        Candidate hit = c;
        hit.energy = out.energy;
        hit.width = out.width;
        hit.exact = out.status == BisectOutcome::Status::kExactZero;
        if (!best || std::abs(hit.energy - c.energy) <
                         std::abs(best->energy - c.energy)) {
          best = hit;
        }
        break;
      }
      case BisectOutcome::Status::kTailFailure:
        skipped->push_back(out.failed_at);
        break;
      case BisectOutcome::Status::kPoleSuspect:
        break;
    }
  }
  return best;
}

}  // namespace

SpectrumResult find_eigenvalues(const BasisSpec& basis,
                                const PotentialSpec& pot, double e_lo,
                                double e_hi, const FindOptions& opts) {
  if (!(e_lo < e_hi)) {
    throw DomainError("energy window is empty: require e_lo < e_hi");
  }
  if (!pot.confining()) {
    throw DomainError(
        "eigenvalue search requires a confining potential; the spectrum is "
        "otherwise not discrete inside an arbitrary window");
  }
  if (opts.grid_points < 1) {
    throw DomainError("grid_points must be at least 1");
  }
  if (!(opts.tol > 0)) {
    throw DomainError("tol must be positive");
  }
  const long blocks = opts.blocks < 0 ? 3 : opts.blocks;
  const DetScanner det(basis, pot, blocks);

  const long k_start = std::max(2 * blocks, 64L);
  if (k_start > opts.k_max) {
    throw NonConvergenceError(kInf, "k_max below the minimum usable depth");
  }
  const long depth = probe_depth(det, e_lo, e_hi, k_start, opts.k_max);
  const long depth2 = std::min(2 * depth, opts.k_max);

  SpectrumResult result;

  // Scan pass: determinant sign and magnitude on a uniform grid.
  const long n = opts.grid_points;
  std::vector<double> xs(n + 1);
  std::vector<DetSample> ss(n + 1);
  const double h = (e_hi - e_lo) / static_cast<double>(n);
  for (long i = 0; i <= n; ++i) {
    xs[i] = (i == n) ? e_hi : e_lo + static_cast<double>(i) * h;
    ss[i] = det.eval(xs[i], depth);
    if (!ss[i].ok) result.skipped.push_back(xs[i]);
  }

  // Dips of |det| below e^-30 without a sign change suggest a pole of even
  // multiplicity straddled by the grid; report them instead of guessing.
  constexpr double kDipLog = -30.0;
  for (long i = 1; i < n; ++i) {
    if (!ss[i - 1].ok || !ss[i].ok || !ss[i + 1].ok) continue;
    if (ss[i].sign == 0) continue;
    if (ss[i - 1].sign != ss[i].sign || ss[i].sign != ss[i + 1].sign) continue;
    if (ss[i].log_abs < kDipLog && ss[i].log_abs <= ss[i - 1].log_abs &&
        ss[i].log_abs <= ss[i + 1].log_abs) {
      result.flagged.push_back(xs[i]);
    }
  }

  // Collect candidates: exact zeros of the determinant sign, then ordinary
  // sign changes refined by bisection.
  std::vector<Candidate> candidates;
  for (long i = 0; i <= n; ++i) {
    if (!ss[i].ok || ss[i].sign != 0) continue;
    Candidate c;
    c.energy = xs[i];
    c.width = 0;
    c.exact = true;
    c.interval_lo = xs[std::max<long>(i - 1, 0)];
    c.interval_hi = xs[std::min<long>(i + 1, n)];
    candidates.push_back(c);
  }
  for (long i = 0; i < n; ++i) {
    if (!ss[i].ok || !ss[i + 1].ok) continue;
    if (ss[i].sign * ss[i + 1].sign != -1) continue;
    const BisectOutcome out =
        bisect_root(det, depth, xs[i], xs[i + 1], ss[i].sign, ss[i].log_abs,
                    ss[i + 1].log_abs, opts.tol);
    if (out.status == BisectOutcome::Status::kTailFailure) {
      result.skipped.push_back(out.failed_at);
      continue;
    }
    if (out.status == BisectOutcome::Status::kPoleSuspect) {
      continue;  // sign change of the tail correction, not an eigenvalue
    }
    Candidate c;
    c.energy = out.energy;
    c.width = out.width;
    c.exact = out.status == BisectOutcome::Status::kExactZero;
    c.interval_lo = xs[i];
    c.interval_hi = xs[i + 1];
    candidates.push_back(c);
  }

  // Verification pass: every candidate must reappear at doubled depth, within
  // a tolerance dominated by the depth stabilization target.  The deeper
  // value is the one reported.
  const double stability = std::max(1e-9, 8 * opts.tol);
  for (const Candidate& c : candidates) {
    EigenvalueRecord rec;
    rec.blocks = blocks;
    std::optional<Candidate> again;
    if (depth2 > depth) {
      const double drift =
          stability * std::max(1.0, std::abs(c.energy));
      again = relocate(det, depth2, c, opts.tol, drift, &result.skipped);
    } else {
      again = c;  // depth cap reached; nothing deeper to compare against
    }
    if (again && std::abs(again->energy - c.energy) <=
                     stability * std::max(1.0, std::abs(again->energy))) {
      rec.energy = again->energy;
      rec.bracket = again->width;
      rec.tail_depth = depth2;
      result.levels.push_back(rec);
    } else {
      rec.energy = again ? again->energy : c.energy;
      rec.bracket = again ? again->width : c.width;
      rec.tail_depth = again ? depth2 : depth;
      result.rejected.push_back(rec);
    }
  }

  std::sort(result.levels.begin(), result.levels.end(),
            [](const EigenvalueRecord& a, const EigenvalueRecord& b) {
              return a.energy < b.energy;
            });
  if (opts.count_limit >= 0 &&
      static_cast<long>(result.levels.size()) > opts.count_limit) {
    result.levels.resize(opts.count_limit);
  }
  for (std::size_t i = 0; i < result.levels.size(); ++i) {
    result.levels[i].index = static_cast<int>(i);
  }
  std::sort(result.skipped.begin(), result.skipped.end());
  return result;
}

}  // namespace csgreen
