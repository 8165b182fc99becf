#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "jcpure/entropy.hpp"
#include "jcpure/purification.hpp"
#include "jcpure/two_atom.hpp"
#include "oracles.hpp"

using namespace jcpure;

namespace {

double diff(const FockVector& a, const FockVector& b) { return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff(); }

double diff(const TwoAtomState& a, const TwoAtomState& b) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) worst = std::max(worst, diff(a.field(i, j), b.field(i, j)));
  return worst;
}

double diff(const PurifiedState& a, const PurifiedState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, diff(a.components[i], b.components[i]));
  return worst;
}

const double kH = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("labelled access follows the tensor order") {
  TwoAtomState s(4);
  s.field(1, 0)[0] = 1.0;  // g1 e2
  CHECK(s.component(AtomPair::ge)[0] == complex(1.0, 0.0));
  CHECK(s.component(AtomPair::eg).norm_squared() == 0.0);
  s.field(0, 1)[1] = 2.0;  // e1 g2
  CHECK(s.component(AtomPair::eg)[1] == complex(2.0, 0.0));
  CHECK(s.norm_squared() == 5.0);
}

TEST_CASE("initial Bell atom pair") {
  const auto s = initial_bell_atom_pair(4.0, 128);
  const auto alpha = coherent(4.0, 128);
  CHECK(diff(s.component(AtomPair::ee), kH * alpha) < 1e-16);
  CHECK(s.component(AtomPair::ge).norm_squared() == 0.0);
  CHECK(s.component(AtomPair::eg).norm_squared() == 0.0);
  CHECK(diff(s.component(AtomPair::gg), kH * alpha) < 1e-16);
  CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
  CHECK(diff(to_artificial(s), purify(branches_atom_mixture(0.5, 4.0, 0.0, 128))) < 1e-16);
  CHECK_THROWS_AS(initial_bell_atom_pair(4.0, 128, 2.0), InvalidArgument);
}

TEST_CASE("initial atom-field entangled state") {
  const auto s = initial_atom_field_entangled(4.0, 128);
  CHECK(diff(s.component(AtomPair::ee), kH * coherent(4.0, 128)) < 1e-16);
  CHECK(s.component(AtomPair::ge).norm_squared() == 0.0);
  CHECK(diff(s.component(AtomPair::eg), kH * coherent(-4.0, 128)) < 1e-16);
  CHECK(s.component(AtomPair::gg).norm_squared() == 0.0);
  CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
  CHECK(diff(to_artificial(s), purify(branches_field_mixture(0.5, 4.0, -4.0, 0.0, 128))) < 1e-16);

  const auto general = initial_atom_field_entangled(complex(1.0, 2.0), complex(0.0, -3.0), 128, 0.3);
  CHECK(diff(to_artificial(general), purify(branches_field_mixture(0.3, complex(1.0, 2.0), complex(0.0, -3.0), 0.0, 128))) <
        1e-16);
}

TEST_CASE("evolve_two_atom") {
  std::mt19937_64 rng(1);
  TwoAtomState s(48);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s.field(i, j) = oracle::random_fock(rng, 48, 30) * complex(0.5, 0.0);

  CHECK(diff(evolve_two_atom(s, 0.0), s) == 0.0);
  for (double lt : {0.4, 3.3, 17.0}) {
    const auto out = evolve_two_atom(s, lt);
    CHECK(std::abs(out.norm_squared() - 1.0) < 2e-12);
    CHECK(diff(to_artificial(out), evolve_artificial(to_artificial(s), lt)) < 1e-13);
  }

  SUBCASE("spectator in |e2> stays there") {
    TwoAtomState e(64);
    e.field(0, 0) = coherent(3.0, 64);
    for (double lt : {1.0, 5.0, 9.0}) {
      const auto out = evolve_two_atom(e, lt);
      CHECK(out.field(0, 1).norm_squared() == 0.0);
      CHECK(out.field(1, 1).norm_squared() == 0.0);
    }
  }
}

TEST_CASE("closed-form evolved states") {
  for (double lt : {0.0, 0.9, 7.3, 24.0}) {
    CHECK(diff(evolve_two_atom(initial_bell_atom_pair(4.0, 128), lt), closed_form_bell_evolution(4.0, lt, 128)) < 1e-12);
    CHECK(diff(evolve_two_atom(initial_atom_field_entangled(4.0, 128), lt),
               closed_form_entangled_evolution(4.0, lt, 128)) < 1e-12);
  }
}

TEST_CASE("spectator populations are constant") {
  for (auto start : {initial_bell_atom_pair(4.0, 128), initial_atom_field_entangled(4.0, 128, 0.3)}) {
    const auto p0 = spectator_populations(start);
    for (double lt : {1.0, 6.0, 12.54, 30.0}) {
      const auto p = spectator_populations(evolve_two_atom(start, lt));
      CHECK(std::abs(p[0] - p0[0]) < 1e-12);
      CHECK(std::abs(p[1] - p0[1]) < 1e-12);
    }
  }
}

TEST_CASE("equivalence report") {
  std::vector<double> grid;
  for (int k = 0; k < 200; ++k) grid.push_back(0.1 * k);
  grid.push_back(7.3);
  for (auto start : {TwoAtomStart::BellPair, TwoAtomStart::AtomFieldEntangled}) {
    const auto report = equivalence_report(start, 4.0, grid, 128);
    CHECK(report.size() == grid.size());
    CHECK(std::abs(report.front().fidelity - 1.0) < 1e-12);
    for (const auto& point : report) {
      CHECK(std::abs(point.fidelity - 1.0) < 1e-10);
      CHECK(point.max_abs_diff < 1e-13);
    }
  }

  SUBCASE("a swapped mapping is detected") {
    BasisMap bad = default_basis_map();
    std::swap(bad[1], bad[2]);
    const std::vector<double> times{2.0, 9.0};
    for (auto start : {TwoAtomStart::BellPair, TwoAtomStart::AtomFieldEntangled}) {
      const auto report = equivalence_report(start, 4.0, times, 128, bad);
      CHECK(report[1].fidelity < 1.0 - 1e-3);
    }
  }
}

TEST_CASE("field entropy from the two-atom run matches the mixed-state run") {
  for (double lt : {0.5, 6.0, 12.54, 21.0}) {
    const auto two = to_artificial(evolve_two_atom(initial_atom_field_entangled(4.0, 128), lt));
    const auto from_two = entropies_at(branches_of(two, Scenario::FieldMixture));
    const auto mixed = entropies_at(branches_field_mixture(0.5, 4.0, -4.0, lt, 128));
    CHECK(std::abs(from_two.S_F - mixed.S_F) < 1e-8);

    const auto bell = to_artificial(evolve_two_atom(initial_bell_atom_pair(4.0, 128), lt));
    CHECK(std::abs(entropies_at(branches_of(bell, Scenario::AtomMixture)).S_F -
                   entropies_at(branches_atom_mixture(0.5, 4.0, lt, 128)).S_F) < 1e-8);
  }
}
