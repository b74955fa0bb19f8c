#include "csgreen/matrix_elements.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace csgreen {
namespace {

double overlap_entry(const BasisSpec& basis, long n, int d) {
  if (d == 0) return (n + basis.effective_l() + 1.0) / basis.b;
  if (d == 1)
    return -std::sqrt((n + 1.0) * (n + basis.alpha() + 1.0)) / (2.0 * basis.b);
  return 0.0;
}

double kinetic_entry(const BasisSpec& basis, long n, int d) {
  if (d == 0) return basis.b * (n + basis.effective_l() + 1.0) / 2.0;
  if (d == 1)
    return basis.b * std::sqrt((n + 1.0) * (n + basis.alpha() + 1.0)) / 4.0;
  return 0.0;
}

}  // namespace

BandedSymmetric<double> overlap_matrix(const BasisSpec& basis, long M) {
  if (M < 1) throw DomainError("overlap_matrix: M must be >= 1");
  BandedSymmetric<double> s(M, 1);
  for (long n = 0; n < M; ++n) {
    s.set(n, n, overlap_entry(basis, n, 0));
    if (n + 1 < M) s.set(n, n + 1, overlap_entry(basis, n, 1));
  }
  return s;
}

BandedSymmetric<double> kinetic_matrix(const BasisSpec& basis, long M) {
  if (M < 1) throw DomainError("kinetic_matrix: M must be >= 1");
  BandedSymmetric<double> t(M, 1);
  for (long n = 0; n < M; ++n) {
    t.set(n, n, kinetic_entry(basis, n, 0));
    if (n + 1 < M) t.set(n, n + 1, kinetic_entry(basis, n, 1));
  }
  return t;
}

BandedSymmetric<double> power_matrix(const BasisSpec& basis, long M, int i) {
  if (M < 1) throw DomainError("power_matrix: M must be >= 1");
  if (i < -1)
    throw DomainError("power_matrix: unsupported power r^" + std::to_string(i));
  if (i == -1) {
    BandedSymmetric<double> r(M, 0);
    for (long n = 0; n < M; ++n) r.set(n, n, 1.0);
    return r;
  }
  if (i == 0) return overlap_matrix(basis, M);

  const int w = i + 1;
  const MomentWindow win(basis.alpha(), 0, M, w);
  const double scale = std::pow(2.0 * basis.b, -w);
  BandedSymmetric<double> r(M, w);
  for (long n = 0; n < M; ++n)
    for (int d = 0; d <= w && n + d < M; ++d)
      r.set(n, n + d, win.value(w, n, n + d) * scale);
  return r;
}

HamiltonianBandRows hamiltonian_band_rows(const BasisSpec& basis,
                                          const PotentialSpec& pot,
                                          long row_begin, long row_end) {
  const int k = pot.degree();
  const int w = std::max(1, k + 1);

  HamiltonianBandRows rows{BandRows<double>(row_begin, row_end, w),
                           BandRows<double>(row_begin, row_end, w)};

  std::optional<MomentWindow> win;
  if (k >= 1) win.emplace(basis.alpha(), row_begin, row_end, k + 1);

  // (2b)^-(i+1) for each polynomial power present.
  std::vector<double> scale(k >= 1 ? k + 1 : 0, 0.0);
  for (int i = 1; i <= k; ++i) scale[i] = std::pow(2.0 * basis.b, -(i + 1));

  for (long n = row_begin; n < row_end; ++n) {
    for (int d = 0; d <= w; ++d) {
      const double sv = overlap_entry(basis, n, d);
      double hv = kinetic_entry(basis, n, d);
      for (const auto& [i, a] : pot.coeffs()) {
        if (a == 0.0) continue;
        if (i == -1) {
          if (d == 0) hv += a;  // <n|1/r|n'> = delta
        } else if (i == 0) {
          hv += a * sv;  // r^0 acts as the overlap
        } else {
          hv += a * (win->value(i + 1, n, n + d) * scale[i]);
        }
      }
      rows.overlap.entry(n, d) = sv;
      rows.hamiltonian.entry(n, d) = hv;
    }
  }
  return rows;
}

BandRows<std::complex<double>> j_band_rows(const BasisSpec& basis,
                                           const PotentialSpec& pot,
                                           std::complex<double> z,
                                           long row_begin, long row_end) {
  const auto sh = hamiltonian_band_rows(basis, pot, row_begin, row_end);
  const int w = sh.overlap.half_bandwidth();
  BandRows<std::complex<double>> j(row_begin, row_end, w);
  for (long n = row_begin; n < row_end; ++n)
    for (int d = 0; d <= w; ++d)
      j.entry(n, d) = z * sh.overlap.entry(n, d) - sh.hamiltonian.entry(n, d);
  return j;
}

BandedSymmetric<double> hamiltonian_matrix(const BasisSpec& basis,
                                           const PotentialSpec& pot, long M) {
  if (M < 1) throw DomainError("hamiltonian_matrix: M must be >= 1");
  const auto sh = hamiltonian_band_rows(basis, pot, 0, M);
  const int w = sh.hamiltonian.half_bandwidth();
  BandedSymmetric<double> h(M, w);
  for (long n = 0; n < M; ++n)
    for (int d = 0; d <= w && n + d < M; ++d)
      h.set(n, n + d, sh.hamiltonian.entry(n, d));
  return h;
}

BandedSymmetric<std::complex<double>> assemble_j(const BasisSpec& basis,
                                                 const PotentialSpec& pot,
                                                 std::complex<double> z,
                                                 long M) {
  if (M < 1) throw DomainError("assemble_j: M must be >= 1");
  const auto rows = j_band_rows(basis, pot, z, 0, M);
  const int w = rows.half_bandwidth();
  BandedSymmetric<std::complex<double>> j(M, w);
  for (long n = 0; n < M; ++n)
    for (int d = 0; d <= w && n + d < M; ++d)
      j.set(n, n + d, rows.entry(n, d));
  return j;
}

}  // namespace csgreen
