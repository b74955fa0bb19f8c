#include <complex>
#include <cstdlib>

#include <doctest.h>

#include "csgreen/block_jacobi.hpp"
#include "oracles.hpp"

using csgreen::BasisSpec;
using csgreen::BlockTridiagonal;
using csgreen::PartitionError;
using csgreen::PotentialSpec;

namespace {

PotentialSpec make_potential(std::initializer_list<std::pair<int, double>> cs) {
  PotentialSpec pot;
  for (const auto& [i, a] : cs) pot.set(i, a);
  return pot;
}

}  // namespace

TEST_CASE("default block size follows the potential degree") {
  CHECK(csgreen::default_block_size(make_potential({{-1, -1.0}})) == 1);
  CHECK(csgreen::default_block_size(make_potential({{-1, -1.0}, {1, 1.0}})) ==
        2);
  CHECK(csgreen::default_block_size(make_potential({{2, 0.5}})) == 3);
  CHECK(csgreen::default_block_size(make_potential({{-1, -1.0}, {4, 0.1}})) ==
        5);
  CHECK(csgreen::default_block_size(PotentialSpec()) == 1);
}

TEST_CASE("block rows reassemble the band matrix exactly") {
  const BasisSpec basis(3, 0, 1.2);
  const auto pot = make_potential({{-1, -1.0}, {2, 0.5}});
  const std::complex<double> z(0.9, 0.3);
  const int m = 4;  // above the half-bandwidth 3

  const auto blocks = csgreen::blockify(basis, pot, z, m);
  CHECK(blocks.block_size() == m);

  const long nblocks = 5;
  const auto j = csgreen::assemble_j(basis, pot, z, nblocks * m);
  for (long jb = 0; jb < nblocks; ++jb) {
    const auto row = blocks.row(jb);
    REQUIRE(row.diag.rows() == m);
    REQUIRE(row.diag.cols() == m);
    REQUIRE(row.super.rows() == m);
    for (int a = 0; a < m; ++a) {
      for (int c = 0; c < m; ++c) {
        CHECK(row.diag(a, c) == j(jb * m + a, jb * m + c));
        if (jb + 1 < nblocks)
          CHECK(row.super(a, c) == j(jb * m + a, (jb + 1) * m + c));
      }
    }
    // complex symmetric source: diagonal blocks are symmetric
    CHECK((row.diag - row.diag.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("block size below the bandwidth is rejected") {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{2, 0.5}});  // half-bandwidth 3
  CHECK_THROWS_AS(csgreen::blockify(basis, pot, {1.0, 0.0}, 2), PartitionError);
  CHECK_THROWS_AS(csgreen::blockify(basis, pot, {1.0, 0.0}, 1), PartitionError);
  CHECK_NOTHROW(csgreen::blockify(basis, pot, {1.0, 0.0}, 3));
}

TEST_CASE("generic entry-function partition") {
  // A small synthetic band matrix: entry(n, n') = 1/(1+n+n') inside the band.
  const int w = 2;
  const auto entry = [](long n, long np) -> std::complex<double> {
    if (std::abs(n - np) > 2) return 0.0;
    return {1.0 / (1.0 + n + np), 0.25 * (n == np)};
  };
  const auto blocks = csgreen::blockify(entry, w, 3);
  const auto row = blocks.row(2);
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) {
      CHECK(row.diag(a, c) == entry(6 + a, 6 + c));
      CHECK(row.super(a, c) == entry(6 + a, 9 + c));
    }
  CHECK_THROWS_AS(csgreen::blockify(entry, w, 1), PartitionError);
}

TEST_CASE("cached rows match direct partition bitwise") {
  const BasisSpec basis(2, 0, 0.8);
  const auto pot = make_potential({{-1, -1.0}, {1, 0.6}, {2, 0.3}});
  const csgreen::JacobiCache cache(basis, pot);
  CHECK(cache.block_size() == csgreen::default_block_size(pot));

  for (const std::complex<double> z : {std::complex<double>(2.0, 1.0),
                                       std::complex<double>(-0.4, 0.0)}) {
    const auto cached = cache.at(z);
    const auto direct = csgreen::blockify(basis, pot, z);
    for (long jb : {0L, 1L, 7L, 3L}) {  // out-of-order to exercise growth
      const auto a = cached.row(jb);
      const auto b = direct.row(jb);
      CHECK((a.diag.array() == b.diag.array()).all());
      CHECK((a.super.array() == b.super.array()).all());
    }
  }
}

TEST_CASE("explicit cache block size overrides the default") {
  const BasisSpec basis(3, 1, 1.0);
  const auto pot = make_potential({{1, 1.0}});
  const csgreen::JacobiCache cache(basis, pot, 5);
  CHECK(cache.block_size() == 5);
  const auto blocks = cache.at({0.5, 0.1});
  const auto direct = csgreen::blockify(basis, pot, {0.5, 0.1}, 5);
  const auto a = blocks.row(1);
  const auto b = direct.row(1);
  CHECK((a.diag.array() == b.diag.array()).all());
  CHECK((a.super.array() == b.super.array()).all());
}
