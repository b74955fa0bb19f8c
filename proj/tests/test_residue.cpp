#include <cmath>

#include <doctest.h>

#include "csgreen/matrix_elements.hpp"
#include "csgreen/residue.hpp"
#include "oracles.hpp"

using csgreen::BasisSpec;
using csgreen::ContourError;
using csgreen::DegenerateResidueError;
using csgreen::DomainError;
using csgreen::Eigenstate;
using csgreen::PotentialSpec;
using csgreen::ResidueOptions;

namespace {

PotentialSpec make_potential(std::initializer_list<std::pair<int, double>> cs) {
  PotentialSpec pot;
  for (const auto& [i, a] : cs) pot.set(i, a);
  return pot;
}

double s_norm(const BasisSpec& basis, const Eigen::VectorXd& c) {
  const auto s = csgreen::overlap_matrix(basis, c.size()).dense();
  return c.dot(s * c);
}

double s_dot(const BasisSpec& basis, const Eigen::VectorXd& a,
             const Eigen::VectorXd& b) {
  const auto s = csgreen::overlap_matrix(basis, a.size()).dense();
  return a.dot(s * b);
}

// |c^T H c / E - 1| for an S-normalized coefficient vector: how well the
// extracted state reproduces its eigenvalue as a Rayleigh quotient.  Limited
// by the basis truncation, not by the contour integral.
double rayleigh_defect(const BasisSpec& basis, const PotentialSpec& pot,
                       const Eigenstate& state) {
  const long dim = state.coeffs.size();
  const auto h = csgreen::hamiltonian_matrix(basis, pot, dim).dense();
  return std::abs(state.coeffs.dot(h * state.coeffs) / state.energy - 1.0);
}

}  // namespace

TEST_CASE("oscillator ground state from a contour") {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{2, 0.5}});
  ResidueOptions opts;
  opts.blocks = 15;  // 48 basis functions
  const auto state = csgreen::residue_at(basis, pot, 1.5, 0.5, opts);

  CHECK(state.energy == 1.5);
  CHECK(state.blocks == 15);
  CHECK(state.radius == 0.5);
  CHECK(state.quadrature_points >= 4);
  CHECK(state.rank_defect < 1e-8);
  CHECK(state.norm_defect < 1e-10);

  // exact S-normalization is restored by the final rescale
  CHECK(std::abs(s_norm(basis, state.coeffs) - 1.0) <= 1e-13);
  // sign convention: the largest-magnitude coefficient is positive
  double lead = 0.0;
  for (long n = 0; n < state.coeffs.size(); ++n)
    if (std::abs(state.coeffs(n)) > std::abs(lead)) lead = state.coeffs(n);
  CHECK(lead > 0.0);

  CHECK(rayleigh_defect(basis, pot, state) <= 1e-7);
}

TEST_CASE("norm defect tracks the basis truncation") {
  // The rank test is truncation-independent (any corner of a rank-one matrix
  // is rank one), but the raw residue trace measures how much of the state
  // the retained corner captures.
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{2, 0.5}});
  const auto shallow = csgreen::residue_at(basis, pot, 1.5, 0.5);  // N = 3
  CHECK(shallow.blocks == 3);
  CHECK(shallow.rank_defect < 1e-8);
  CHECK(shallow.norm_defect < 1e-3);

  ResidueOptions deep;
  deep.blocks = 15;
  const auto full = csgreen::residue_at(basis, pot, 1.5, 0.5, deep);
  CHECK(full.norm_defect < shallow.norm_defect);
}

TEST_CASE("wavefunction matches the closed-form oscillator ground state") {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{2, 0.5}});
  ResidueOptions opts;
  opts.blocks = 15;
  const auto state = csgreen::residue_at(basis, pot, 1.5, 0.5, opts);

  for (double r : {0.3, 0.8, 1.5, 2.4, 3.5}) {
    const double u = csgreen::eigenstate_eval(basis, state, r);
    CHECK(std::abs(u - oracles::osc3d_ground(r)) <= 1e-6);
  }
  CHECK(csgreen::eigenstate_eval(basis, state, 0.0) == 0.0);
  CHECK_THROWS_AS(csgreen::eigenstate_eval(basis, state, -0.1), DomainError);
}

TEST_CASE("hydrogen ground state is a single basis function") {
  // At b = 1 the n = 0 Sturmian equals the hydrogen 1s orbital, so the
  // coefficient vector is the first unit vector to solver precision.
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{-1, -1.0}});
  const auto state = csgreen::residue_at(basis, pot, -0.5, 0.2);
  REQUIRE(state.coeffs.size() >= 2);
  CHECK(std::abs(state.coeffs(0) - 1.0) <= 1e-12);
  for (long n = 1; n < state.coeffs.size(); ++n)
    CHECK(std::abs(state.coeffs(n)) <= 1e-12);
  CHECK(state.norm_defect <= 1e-12);
}

TEST_CASE("contour enclosing no pole integrates to noise") {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{2, 0.5}});
  const auto p = csgreen::residue_projector(basis, pot, 2.5, 0.4);
  CHECK(p.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS_AS(csgreen::residue_at(basis, pot, 2.5, 0.4), ContourError);
}

TEST_CASE("contour around two poles is rejected as degenerate") {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{2, 0.5}});
  try {
    csgreen::residue_at(basis, pot, 2.5, 1.2);  // encloses 1.5 and 3.5
    FAIL("expected DegenerateResidueError");
  } catch (const DegenerateResidueError& e) {
    CHECK(e.rank_defect() > 1e-6);
  }
}

TEST_CASE("residue is stable under contour radius") {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{-1, -1.0}, {1, 1.0}});
  ResidueOptions opts;
  opts.blocks = 7;
  const auto a = csgreen::residue_at(basis, pot, 0.578, 0.5, opts);
  const auto b = csgreen::residue_at(basis, pot, 0.578, 0.25, opts);
  REQUIRE(a.coeffs.size() == b.coeffs.size());
  for (long n = 0; n < a.coeffs.size(); ++n)
    CHECK(std::abs(a.coeffs(n) - b.coeffs(n)) <= 1e-10);
}

TEST_CASE("distinct states are orthogonal in the overlap metric") {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{2, 0.5}});
  ResidueOptions opts;
  opts.blocks = 15;
  const auto g0 = csgreen::residue_at(basis, pot, 1.5, 0.5, opts);
  const auto g1 = csgreen::residue_at(basis, pot, 3.5, 0.5, opts);
  CHECK(g1.energy == 3.5);
  CHECK(std::abs(s_dot(basis, g0.coeffs, g1.coeffs)) <= 1e-9);
  CHECK(g1.norm_defect <= 1e-9);
  CHECK(rayleigh_defect(basis, pot, g1) <= 1e-6);
}

TEST_CASE("level-aware extraction uses the spectrum geometry") {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{2, 0.5}});
  csgreen::FindOptions fopts;
  fopts.blocks = 2;
  auto spectrum = csgreen::find_eigenvalues(basis, pot, 0.0, 8.0, fopts);
  REQUIRE(spectrum.levels.size() == 4);

  const auto state = csgreen::residue_for_level(basis, pot, spectrum, 1);
  CHECK(state.energy == spectrum.levels[1].energy);
  CHECK(state.blocks == 2);  // inherited from the record
  CHECK(state.radius == doctest::Approx(0.5).epsilon(1e-9));  // gap 2 over 4
  CHECK(state.rank_defect < 1e-8);

  CHECK_THROWS_AS(csgreen::residue_for_level(basis, pot, spectrum, 17),
                  DomainError);
}

TEST_CASE("single-level spectrum has no gap to set the radius") {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{2, 0.5}});
  csgreen::FindOptions fopts;
  fopts.blocks = 0;
  auto spectrum = csgreen::find_eigenvalues(basis, pot, 1.0, 2.0, fopts);
  REQUIRE(spectrum.levels.size() == 1);
  CHECK_THROWS_AS(csgreen::residue_for_level(basis, pot, spectrum, 0),
                  DomainError);
}

TEST_CASE("spectrum validation marks every clean level") {
  const BasisSpec basis(3, 0, 1.0);
  const auto pot = make_potential({{2, 0.5}});
  csgreen::FindOptions fopts;
  fopts.blocks = 9;
  auto spectrum = csgreen::find_eigenvalues(basis, pot, 0.0, 8.0, fopts);
  REQUIRE(spectrum.levels.size() == 4);

  const auto states = csgreen::validate_spectrum(basis, pot, spectrum);
  REQUIRE(states.size() == spectrum.levels.size());
  for (size_t i = 0; i < states.size(); ++i) {
    REQUIRE(states[i].has_value());
    CHECK(spectrum.levels[i].validated);
    CHECK(states[i]->energy == spectrum.levels[i].energy);
    CHECK(states[i]->rank_defect < 1e-8);
    CHECK(std::abs(s_norm(basis, states[i]->coeffs) - 1.0) <= 1e-12);
  }
  // the two best-converged states are orthogonal to truncation accuracy
  CHECK(std::abs(s_dot(basis, states[0]->coeffs, states[1]->coeffs)) <= 1e-6);
}
