#pragma once

#include <string>
#include <vector>

#include "csgreen/spectrum.hpp"

namespace csgreen {

struct SweepRecord {
  double b = 0;
  int level = 0;
  double energy = 0;
};

struct SweepFailure {
  double b = 0;
  std::string reason;
};

struct SweepResult {
  /// One row per (b, level), grouped by b in input order, levels ascending.
  std::vector<SweepRecord> rows;
  /// Parameters whose search failed, with the error text; the sweep goes on.
  std::vector<SweepFailure> failures;
};

/// Run the eigenvalue search over a list of basis scale parameters.  The
/// physical spectrum must not depend on b, so the spread of each level across
/// the sweep measures the quality of the truncation-plus-tail treatment.
SweepResult sweep_b(const BasisSpec& base, const PotentialSpec& pot,
                    const std::vector<double>& b_values, double e_lo,
                    double e_hi, const FindOptions& opts = {});

}  // namespace csgreen
