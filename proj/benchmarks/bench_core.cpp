// Microbenchmarks for the inner loops: moment tables, tail sweeps, corrected
// Green's matrices, determinant evaluations, and a small end-to-end search.

#include <benchmark/benchmark.h>

#include <complex>

#include "csgreen/matrix_elements.hpp"
#include "csgreen/mcf.hpp"
#include "csgreen/spectrum.hpp"

namespace {

using csgreen::BasisSpec;
using csgreen::PotentialSpec;

PotentialSpec coulomb_linear() {
  PotentialSpec pot;
  pot.set(-1, -1.0);
  pot.set(1, 1.0);
  return pot;
}

void BM_PowerMatrix(benchmark::State& state) {
  const BasisSpec basis(3, 0, 1.0);
  const long order = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(csgreen::power_matrix(basis, order, 2));
  }
}
BENCHMARK(BM_PowerMatrix)->Arg(64)->Arg(256)->Arg(1024);

void BM_TailSweep(benchmark::State& state) {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = coulomb_linear();
  const std::complex<double> z(2.5, 1.0);
  const auto blocks = csgreen::blockify(basis, pot, z);
  const long depth = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(csgreen::tail_cf(blocks, 0, depth));
  }
}
BENCHMARK(BM_TailSweep)->Arg(256)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_GreenMatrix(benchmark::State& state) {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = coulomb_linear();
  const std::complex<double> z(2.5, 1.0);
  const auto blocks = csgreen::blockify(basis, pot, z);
  const long retained = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(csgreen::green_matrix(blocks, z, retained));
  }
}
BENCHMARK(BM_GreenMatrix)->Arg(0)->Arg(3)->Arg(7);

void BM_LogdetCorrected(benchmark::State& state) {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = coulomb_linear();
  const std::complex<double> z(3.1, 0.0);  // between the first two levels
  const auto blocks = csgreen::blockify(basis, pot, z);
  for (auto _ : state) {
    benchmark::DoNotOptimize(csgreen::logdet_corrected(blocks, z, 3, 1024));
  }
}
BENCHMARK(BM_LogdetCorrected);

void BM_FindEigenvalues(benchmark::State& state) {
  const BasisSpec basis(3, 0, 1.0);
  PotentialSpec pot;
  pot.set(2, 0.5);
  csgreen::FindOptions opts;
  opts.blocks = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        csgreen::find_eigenvalues(basis, pot, 0.0, 4.0, opts));
  }
}
BENCHMARK(BM_FindEigenvalues);

}  // namespace

BENCHMARK_MAIN();
