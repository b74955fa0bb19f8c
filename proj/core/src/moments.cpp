#include "csgreen/moments.hpp"

#include <cmath>
#include <string>

namespace csgreen {
namespace {

// One slab of rows of the moment matrices at a fixed power, with the full
// signed band stored.  Shared by the normalized and unnormalized recursions;
// they differ only in the base diagonal and the recursion coefficients.
struct Slab {
  long begin = 0;
  long end = 0;
  int band = 0;
  std::vector<double> data;

  double at(long n, long np) const {
    const long d = np - n;
    if (np < 0 || d > band || d < -band) return 0.0;
    return data[static_cast<size_t>(n - begin) * (2 * band + 1) + (d + band)];
  }

  double& ref(long n, long d) {
    return data[static_cast<size_t>(n - begin) * (2 * band + 1) + (d + band)];
  }
};

// Multiplication by x in terms of Laguerre polynomials of the same order:
//   x L_n = (2n+alpha+1) L_n - (n+1) L_{n+1} - (n+alpha) L_{n-1},
// applied to the first index of the previous power's table.  In the
// normalized convention both off-diagonal weights become
// sqrt((n+1)(n+alpha+1)) / sqrt(n(n+alpha)), keeping the matrix symmetric and
// its entries of polynomial size.
std::vector<Slab> build_slabs(int alpha, long row_begin, long row_end,
                              int p_max, bool normalized) {
  std::vector<Slab> levels(p_max + 1);

  for (int p = 0; p <= p_max; ++p) {
    Slab& lev = levels[p];
    lev.begin = std::max(0L, row_begin - (p_max - p));
    lev.end = row_end + (p_max - p);
    lev.band = p;
    lev.data.assign(static_cast<size_t>(lev.end - lev.begin) * (2 * p + 1),
                    0.0);
  }

  for (long n = levels[0].begin; n < levels[0].end; ++n)
    levels[0].ref(n, 0) =
        normalized ? 1.0 : gamma_ratio(n, alpha);

  for (int p = 0; p < p_max; ++p) {
    const Slab& prev = levels[p];
    Slab& next = levels[p + 1];
    for (long n = next.begin; n < next.end; ++n) {
      const double diag = 2.0 * n + alpha + 1.0;
      const double up = normalized
                            ? std::sqrt((n + 1.0) * (n + alpha + 1.0))
                            : (n + 1.0);
      const double down = normalized
                              ? std::sqrt(static_cast<double>(n) * (n + alpha))
                              : (n + static_cast<double>(alpha));
      for (long d = -(p + 1); d <= p + 1; ++d) {
        const long np = n + d;
        if (np < 0) continue;
        double v = diag * prev.at(n, np) - up * prev.at(n + 1, np);
        if (n >= 1) v -= down * prev.at(n - 1, np);
        next.ref(n, d) = v;
      }
    }
  }
  return levels;
}

}  // namespace

MomentTable::MomentTable(std::vector<BandedSymmetric<double>> tables)
    : tables_(std::move(tables)) {
  if (tables_.empty()) throw DomainError("MomentTable: no tables");
}

const BandedSymmetric<double>& MomentTable::table(int p) const {
  if (p < 0 || p > p_max())
    throw DomainError("MomentTable: power " + std::to_string(p) +
                      " outside 0.." + std::to_string(p_max()));
  return tables_[p];
}

MomentTable moment_matrices(const BasisSpec& basis, long M, int p_max) {
  if (M < 1) throw DomainError("moment_matrices: M must be >= 1");
  if (p_max < 0) throw DomainError("moment_matrices: p_max must be >= 0");

  const auto slabs =
      build_slabs(basis.alpha(), 0, M, p_max, /*normalized=*/false);

  std::vector<BandedSymmetric<double>> tables;
  tables.reserve(p_max + 1);
  for (int p = 0; p <= p_max; ++p) {
    BandedSymmetric<double> t(M, p);
    for (long n = 0; n < M; ++n)
      for (long d = 0; d <= p && n + d < M; ++d)
        t.set(n, n + d, slabs[p].at(n, n + d));
    tables.push_back(std::move(t));
  }
  return MomentTable(std::move(tables));
}

MomentWindow::MomentWindow(int alpha, long row_begin, long row_end, int p_max)
    : alpha_(alpha), row_begin_(row_begin), row_end_(row_end) {
  if (alpha < 0) throw DomainError("MomentWindow: alpha must be >= 0");
  if (row_begin < 0 || row_end <= row_begin)
    throw DomainError("MomentWindow: empty or negative row range");
  if (p_max < 0) throw DomainError("MomentWindow: p_max must be >= 0");

  auto slabs =
      build_slabs(alpha, row_begin, row_end, p_max, /*normalized=*/true);
  levels_.resize(slabs.size());
  for (size_t p = 0; p < slabs.size(); ++p) {
    levels_[p].begin = slabs[p].begin;
    levels_[p].end = slabs[p].end;
    levels_[p].band = slabs[p].band;
    levels_[p].data = std::move(slabs[p].data);
  }
}

double MomentWindow::value(int p, long n, long np) const {
  if (p < 0 || p > p_max())
    throw DomainError("MomentWindow: power " + std::to_string(p) +
                      " outside 0.." + std::to_string(p_max()));
  const Level& lev = levels_[p];
  if (n < lev.begin || n >= lev.end)
    throw DomainError("MomentWindow: row " + std::to_string(n) +
                      " outside stored range");
  return lev.at(n, np);
}

}  // namespace csgreen
