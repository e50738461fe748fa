#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "qfilab/bounds.hpp"
#include "support.hpp"

using namespace qfilab;
using namespace qfilab::testing;

TEST_CASE("rank-2 gap identity") {
  const Observable sx{pauli_x()};
  const DensityMatrix rho = qubit_diag(0.75);
  const Rank2Identity id = rank2_gap_identity(rho, sx);
  CHECK(id.sigma1 == doctest::Approx(1.0));
  CHECK(id.sigma2 == doctest::Approx(-1.0));
  CHECK(id.value == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(id.value == doctest::Approx(gap(rho, sx).gap).epsilon(1e-12));

  CHECK_THROWS_AS(
      rank2_gap_identity(random_density_matrix(3, 1, 1), random_observable(3, 1)),
      NotRankTwo);
  CHECK_THROWS_AS(
      rank2_gap_identity(random_density_matrix(4, 3, 1), random_observable(4, 1)),
      NotRankTwo);

  // Degenerate restriction: A proportional to the identity on range(rho).
  Matrix a4 = Matrix::Zero(4, 4);
  a4(0, 0) = a4(1, 1) = 2.0;
  a4(2, 2) = -1.0;
  a4(3, 3) = -3.0;
  RealVector l = RealVector::Zero(4);
  l(0) = 0.6;
  l(1) = 0.4;
  const DensityMatrix rank2 =
      DensityMatrix::from_spectrum(l, Matrix::Identity(4, 4));
  CHECK(rank2_gap_identity(rank2, Observable(a4)).value ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rank-2 identity holds for random rank-2 states") {
  for (int d : {2, 3, 4, 6}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const DensityMatrix rho = random_density_matrix(d, 2, seed);
      const Observable a = random_observable(d, seed + 1000);
      CHECK(std::abs(gap(rho, a).gap - rank2_gap_identity(rho, a).value) <
            1e-9);
    }
  }
}

TEST_CASE("saturating states") {
  const Observable sz{pauli_z()};
  const DensityMatrix balanced = rank2_saturating_state(sz, 0.5);
  CHECK(max_abs(balanced.matrix() - 0.5 * Matrix::Identity(2, 2)) < 1e-12);

  const Observable sx{pauli_x()};
  const DensityMatrix tilted = rank2_saturating_state(sx, 0.75);
  CHECK(gap(tilted, sx).gap == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(rank2_gap_identity(tilted, sx).value ==
        doctest::Approx(gap(tilted, sx).gap).epsilon(1e-12));

  // Purity limit: the gap closes.
  CHECK(gap(rank2_saturating_state(sx, 0.999999), sx).gap ==
        doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("H-weighted and linear-entropy bounds") {
  const Observable sz{pauli_z()};

  const BoundCheck pure =
      bound_h_times_sigma(random_density_matrix(3, 1, 5), random_observable(3, 5));
  CHECK(pure.holds);

  const BoundCheck mixed_h = bound_h_times_sigma(maximally_mixed(2), sz);
  CHECK(mixed_h.bound == doctest::Approx(2.0));
  CHECK(mixed_h.gap == doctest::Approx(1.0));
  CHECK(mixed_h.holds);

  const BoundCheck saturated =
      bound_linear_entropy(qubit_diag(0.75), Observable{pauli_x()});
  CHECK(saturated.bound == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(saturated.gap == doctest::Approx(saturated.bound).epsilon(1e-12));

  const BoundCheck pure_lin =
      bound_linear_entropy(random_density_matrix(4, 1, 6), random_observable(4, 6));
  CHECK(pure_lin.bound == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(std::abs(pure_lin.gap) < 1e-9);

  const BoundCheck mixed_lin = bound_linear_entropy(maximally_mixed(2), sz);
  CHECK(mixed_lin.bound == doctest::Approx(1.0));
  CHECK(mixed_lin.gap == doctest::Approx(1.0));
}

namespace {

// Independent brute-force oracle for the permutation maxima.
double brute_force_gap_max(const RealVector& l, const RealVector& s) {
  std::vector<int> idx(static_cast<std::size_t>(l.size()));
  std::iota(idx.begin(), idx.end(), 0);
  double best = -1e300;
  do {
    double m2 = 0.0, m1 = 0.0;
    for (int k = 0; k < l.size(); ++k) {
      m2 += l(k) * s(idx[static_cast<std::size_t>(k)]) * s(idx[static_cast<std::size_t>(k)]);
      m1 += l(k) * s(idx[static_cast<std::size_t>(k)]);
    }
    best = std::max(best, m2 - m1 * m1);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

}  // namespace

TEST_CASE("permutation maximum of the gap") {
  RealVector pure(3), sig(3);
  pure << 1, 0, 0;
  sig << 0.3, -1.7, 0.4;
  CHECK(max_gap_over_spectrum(pure, sig).value ==
        doctest::Approx(0.0).epsilon(1e-12));

  RealVector l2(2), s2(2);
  l2 << 0.75, 0.25;
  s2 << 1, -1;
  CHECK(max_gap_over_spectrum(l2, s2).value == doctest::Approx(0.75));

  RealVector l3(3), s3(3);
  l3 << 0.5, 0.3, 0.2;
  s3 << 1, 0, -1;
  const SpectrumMax best = max_gap_over_spectrum(l3, s3);
  CHECK(best.value == doctest::Approx(0.76).epsilon(1e-12));
  CHECK(best.value == doctest::Approx(brute_force_gap_max(l3, s3)));

  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 4);
    const DensityMatrix rho = random_density_matrix(d, d, rng.next_u64());
    RealVector sig_r(d);
    for (int k = 0; k < d; ++k) sig_r(k) = rng.gaussian();
    CHECK(max_gap_over_spectrum(rho.eigenvalues(), sig_r).value ==
          doctest::Approx(brute_force_gap_max(rho.eigenvalues(), sig_r)));
  }

  RealVector l9 = RealVector::Constant(9, 1.0 / 9);
  CHECK_THROWS_AS(max_gap_over_spectrum(l9, RealVector::Zero(9)), TooLarge);
  RealVector bad(2);
  bad << 0.3, 0.3;
  CHECK_THROWS_AS(max_gap_over_spectrum(bad, s2), InvalidSpectrum);
}

TEST_CASE("permutation maximum of V'") {
  RealVector l(2), s_unit(2), s_two(2);
  l << 0.75, 0.25;
  s_unit << 1, -1;
  s_two << 2, 1;
  CHECK(max_vprime_over_spectrum(l, s_unit) == doctest::Approx(1.0));
  CHECK(max_vprime_over_spectrum(l, s_two) == doctest::Approx(3.25));

  RealVector uni = RealVector::Constant(4, 0.25);
  RealVector sig(4);
  sig << 0.2, -1.0, 0.7, 0.1;
  CHECK(max_vprime_over_spectrum(uni, sig) ==
        doctest::Approx(sig.cwiseAbs2().mean()).epsilon(1e-12));
}
