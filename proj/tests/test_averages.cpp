#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qfilab/averages.hpp"
#include "qfilab/entropy.hpp"
#include "support.hpp"

using namespace qfilab;
using namespace qfilab::testing;

namespace {
constexpr long kQuickSamples = 20000;
}

TEST_CASE("covariance matrix") {
  const GeneratorBasis basis(2);
  const RealMatrix c = covariance_matrix(maximally_mixed(2), basis);
  CHECK(max_abs((c - RealMatrix::Identity(3, 3)).cast<Complex>()) < 1e-12);

  // Trace identity against per-generator variances.
  const DensityMatrix psi = random_density_matrix(2, 1, 3);
  const RealMatrix cp = covariance_matrix(psi, basis);
  double sum = 0.0;
  for (int m = 0; m < basis.count(); ++m) sum += variance(psi, basis[m]);
  CHECK(cp.trace() == doctest::Approx(sum).epsilon(1e-12));

  for (int d : {2, 3, 4}) {
    const GeneratorBasis b(d);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const DensityMatrix rho = random_density_matrix(d, d, seed);
      const double expected =
          2.0 * (d - 1.0 / d) - 2.0 * (rho.purity() - 1.0 / d);
      CHECK(covariance_matrix(rho, b).trace() ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("fisher matrix") {
  const GeneratorBasis basis(2);
  CHECK(fisher_matrix(maximally_mixed(2), basis).cwiseAbs().maxCoeff() < 1e-12);

  const DensityMatrix psi = random_density_matrix(3, 1, 9);
  const GeneratorBasis b3(3);
  const RealMatrix f = fisher_matrix(psi, b3);
  const RealMatrix c = covariance_matrix(psi, b3);
  CHECK(max_abs((f - 4.0 * c).cast<Complex>()) < 1e-9);

  const RealMatrix fb = fisher_matrix(qubit_diag(0.75), basis);
  CHECK(fb(0, 0) == doctest::Approx(1.0).epsilon(1e-12));   // sigma_x
  CHECK(fb(1, 1) == doctest::Approx(1.0).epsilon(1e-12));   // sigma_y
  CHECK(fb(2, 2) == doctest::Approx(0.0).epsilon(1e-12));   // sigma_z
  CHECK(std::abs(fb(0, 1)) < 1e-12);
  CHECK(std::abs(fb(0, 2)) < 1e-12);
}

TEST_CASE("quadratic forms reproduce variance and qfi") {
  Rng rng(5);
  for (int d : {2, 3}) {
    const GeneratorBasis basis(d);
    const DensityMatrix rho = random_density_matrix(d, d, 31 + d);
    const RealMatrix c = covariance_matrix(rho, basis);
    const RealMatrix f = fisher_matrix(rho, basis);
    for (int rep = 0; rep < 25; ++rep) {
      const UnitVector n = random_unit_vector(basis.count(), rng);
      const Observable an = observable_from_unit_vector(basis, n);
      CHECK(n.components.dot(c * n.components) ==
            doctest::Approx(variance(rho, an)).epsilon(1e-9));
      CHECK(n.components.dot(f * n.components) ==
            doctest::Approx(qfi(rho, an)).epsilon(1e-9));
    }
  }
}

TEST_CASE("average variance") {
  CHECK(avg_variance_analytic(random_density_matrix(2, 1, 1).eigenvalues()) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(avg_variance_analytic(maximally_mixed(2).eigenvalues()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (int d : {2, 3, 5}) {
    const double ng = d * d - 1.0;
    CHECK(avg_variance_analytic(maximally_mixed(d).eigenvalues()) ==
          doctest::Approx(2.0 / ng * (1.0 - 1.0 / d + d - 1.0)).epsilon(1e-12));
  }

  const AverageReport r =
      avg_variance(random_density_matrix(3, 2, 17), kQuickSamples, 5);
  CHECK(r.samples == kQuickSamples);
  CHECK(r.monte_carlo_stderr > 0.0);
  CHECK(r.consistent());
}

TEST_CASE("average qfi") {
  for (int d : {2, 3, 4}) {
    CHECK(avg_qfi_analytic(maximally_mixed(d).eigenvalues()) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(avg_qfi_analytic(random_density_matrix(2, 1, 1).eigenvalues()) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK(avg_qfi_analytic(qubit_diag(0.75).eigenvalues()) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const AverageReport r = avg_qfi(qubit_diag(0.75), kQuickSamples, 6);
  CHECK(r.consistent());

  // Pure states: avg F_Q = 4 avg var, with the Monte-Carlo oracle agreeing.
  for (int d : {2, 3}) {
    const DensityMatrix psi = random_density_matrix(d, 1, 40 + d);
    const AverageReport fq = avg_qfi(psi, kQuickSamples, 41);
    CHECK(fq.analytic ==
          doctest::Approx(4.0 * avg_variance_analytic(psi.eigenvalues()))
              .epsilon(1e-12));
    CHECK(fq.consistent());
  }
}

TEST_CASE("average gap") {
  CHECK(avg_gap_analytic(random_density_matrix(4, 1, 2).eigenvalues()) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(avg_gap_analytic(qubit_diag(0.75).eigenvalues()) ==
        doctest::Approx(0.75).epsilon(1e-12));

  // Isotropy: V(I/2, A_n) = 1 for every direction, so the MC mean is exact.
  const AverageReport iso = avg_gap(maximally_mixed(2), kQuickSamples, 7);
  CHECK(iso.analytic == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(iso.monte_carlo_mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(iso.consistent());

  const AverageReport r = avg_gap(qubit_diag(0.75), kQuickSamples, 8);
  CHECK(r.consistent());

  // Analytic triangle identity.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RealVector l = random_density_matrix(4, 4, seed).eigenvalues();
    CHECK(avg_variance_analytic(l) - 0.25 * avg_qfi_analytic(l) ==
          doctest::Approx(avg_gap_analytic(l)).epsilon(1e-12));
  }
}

TEST_CASE("average mathematical qfi") {
  for (int d : {2, 3, 5}) {
    CHECK(avg_qfi_math_analytic(maximally_mixed(d).eigenvalues()) ==
          doctest::Approx(2.0 * d).epsilon(1e-12));
  }
  CHECK(avg_qfi_math_analytic(qubit_diag(0.75).eigenvalues()) ==
        doctest::Approx(40.0 / 9.0).epsilon(1e-12));

  CHECK_THROWS_AS(avg_qfi_math(random_density_matrix(3, 2, 3), 100, 1),
                  SingularState);

  const AverageReport r = avg_qfi_math(qubit_diag(0.75), kQuickSamples, 9);
  CHECK(r.consistent());
}

TEST_CASE("average KMB qfi") {
  for (int d : {2, 3}) {
    CHECK(avg_qfi_kmb_analytic(maximally_mixed(d).eigenvalues()) ==
          doctest::Approx(2.0 * d).epsilon(1e-12));
  }
  // Direct sum for diag(0.75, 0.25): 16/9 + (8/3) ln 3.
  CHECK(avg_qfi_kmb_analytic(qubit_diag(0.75).eigenvalues()) ==
        doctest::Approx(16.0 / 9.0 + 8.0 / 3.0 * std::log(3.0)).epsilon(1e-12));

  const AverageReport r = avg_qfi_kmb(qubit_diag(0.75), kQuickSamples, 10);
  CHECK(r.consistent());
}

TEST_CASE("average reports are deterministic") {
  const DensityMatrix rho = random_density_matrix(3, 3, 12);
  const AverageReport a = avg_gap(rho, 5000, 77);
  const AverageReport b = avg_gap(rho, 5000, 77);
  CHECK(a.monte_carlo_mean == b.monte_carlo_mean);
  CHECK(a.monte_carlo_stderr == b.monte_carlo_stderr);
}

TEST_CASE("element averages") {
  for (int d : {2, 3}) {
    const GeneratorBasis basis(d);
    const ElementAverages ea = element_averages(basis, 50000, 13);
    const double ng = d * d - 1.0;
    CHECK(ea.offdiag_target == doctest::Approx(2.0 / ng));
    CHECK(ea.diag_target == doctest::Approx(2.0 / ng * (1.0 - 1.0 / d)));
    CHECK(std::abs(ea.offdiag_sq - ea.offdiag_target) <
          5.0 * ea.offdiag_stderr + 1e-12);
    CHECK(std::abs(ea.diag_sq - ea.diag_target) <
          5.0 * ea.diag_stderr + 1e-12);
  }

  // d=3 plug-in targets: 2/8 and (2/8)(2/3).
  const ElementAverages e3 = element_averages(GeneratorBasis(3), 50000, 14);
  CHECK(std::abs(e3.offdiag_sq - 0.25) < 5.0 * e3.offdiag_stderr);
  CHECK(std::abs(e3.diag_sq - 1.0 / 6.0) < 5.0 * e3.diag_stderr);
}
