#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "csgreen/basis.hpp"
#include "csgreen/potential.hpp"

namespace csgreen::cli {

/// Config-file syntax or validation failure; line 0 means the file as a
/// whole (e.g. required keys missing).
class ParseError : public std::runtime_error {
 public:
  ParseError(long line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          what
                                    : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// One run description: the physical problem plus numeric knobs.  Parsed
/// from `key = value` lines; see parse_config for the key set.
struct RunConfig {
  int dimension = 0;
  int l = 0;
  double b = 0;
  /// (power, coefficient) pairs, ascending power, deduplicated.
  std::vector<std::pair<int, double>> coefficients;
  long blocks = -1;   // retained block rows N; -1 = library default
  long k_max = 1L << 20;
  double tol = 1e-12;
  bool has_window = false;
  double e_lo = 0;
  double e_hi = 0;
  bool has_sweep = false;
  double b_min = 0;
  double b_max = 0;
  long sweep_steps = 0;
  std::string out;

  BasisSpec basis() const { return BasisSpec(dimension, l, b); }
  PotentialSpec potential() const {
    PotentialSpec pot;
    for (const auto& [power, value] : coefficients) pot.set(power, value);
    return pot;
  }
};

/// Parse `key = value` config text.  Keys: dimension, l, b, coeff.<i>
/// (i >= -1), blocks, k_max, tol, window (two reals), sweep (b_min b_max
/// steps), out.  `#` starts a comment; later duplicates override earlier
/// ones; unknown keys and malformed values are rejected with line numbers.
/// dimension, l and b are required.
RunConfig parse_config(const std::string& text);

/// parse_config on the contents of a file.
RunConfig load_config(const std::string& path);

}  // namespace csgreen::cli
