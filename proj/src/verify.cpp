#include "qfilab/verify.hpp"

#include <cmath>
#include <functional>

#include "qfilab/bounds.hpp"
#include "qfilab/landscape.hpp"
#include "qfilab/spin.hpp"

namespace qfilab {

namespace {

struct Suite {
  std::vector<CheckResult> results;
  std::uint64_t seed = 42;
  std::uint64_t counter = 0;

  std::uint64_t next_seed() { return derive_seed(seed, counter++); }

  void add(const std::string& name, double max_error, double tol) {
    results.push_back({name, max_error, tol, max_error <= tol});
  }
  void add_flag(const std::string& name, bool pass) {
    results.push_back({name, pass ? 0.0 : 1.0, 0.5, pass});
  }
};

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// Least-squares slope of ln|y| against ln(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DensityMatrix random_state_any_rank(int d, Rng& rng, std::uint64_t seed) {
  const int rank = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d));
  return random_density_matrix(d, rank, seed);
}

// ---------------------------------------------------------------- core ----

void check_generators(Suite& s, const VerifyOptions& opts) {
  double worst_orth = 0.0;
  bool counts_ok = true;
  for (int d = opts.d_min; d <= opts.d_max; ++d) {
    const GeneratorBasis basis(d);
    counts_ok = counts_ok && basis.count() == d * d - 1;
    for (int k = 0; k < basis.count(); ++k) {
      worst_orth = std::max(worst_orth, std::abs(basis[k].matrix().trace()));
      for (int l = k; l < basis.count(); ++l) {
        const double ip =
            trace_product(basis[k].matrix(), basis[l].matrix()).real();
        worst_orth = std::max(worst_orth, std::abs(ip - (k == l ? 2.0 : 0.0)));
      }
    }
  }
  s.add("generators: Tr(A^k A^l) = 2 delta_kl, traceless", worst_orth, 1e-12);
  s.add_flag("generators: count = d^2-1", counts_ok);

  GeneratorBasis pauli(2);
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  sz << 1, 0, 0, -1;
  const double pauli_err = std::max({max_abs(pauli[0].matrix() - sx),
                                     max_abs(pauli[1].matrix() - sy),
                                     max_abs(pauli[2].matrix() - sz)});
  s.add("generators: d=2 basis is sigma_x, sigma_y, sigma_z", pauli_err, 0.0);

  double worst = 0.0;
  for (int d = opts.d_min; d <= opts.d_max; ++d) {
    const GeneratorBasis basis(d);
    for (int rep = 0; rep < 20; ++rep) {
      const Observable a = random_observable(d, s.next_seed(), true);
      const RealVector n = generator_coefficients(basis, a);
      worst = std::max(worst, std::abs(n.squaredNorm() - 1.0));
      const Observable back =
          observable_from_unit_vector(basis, UnitVector(n));
      worst = std::max(worst, max_abs(back.matrix() - a.matrix()));
    }
  }
  s.add("generators: coefficient round trip for traceless A", worst, 1e-10);
}

void check_spectral(Suite& s, const VerifyOptions& opts) {
  double worst = 0.0;
  for (int d = 2; d <= 10; ++d) {
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 1000; ++rep) {
      const Matrix h = random_hermitian(d, rng);
      const Spectral spec = spectral_decompose(h);
      const Matrix back = spec.eigenvectors *
                          spec.eigenvalues.asDiagonal() *
                          spec.eigenvectors.adjoint();
      worst = std::max(worst, max_abs(back - h));
      for (Eigen::Index k = 0; k + 1 < spec.eigenvalues.size(); ++k) {
        if (spec.eigenvalues(k) < spec.eigenvalues(k + 1) - 1e-12) worst = 1.0;
      }
    }
  }
  s.add("spectral: round trip on random Hermitian, d = 2..10", worst, 1e-9);

  double worst_rec = 0.0;
  for (int d = opts.d_min; d <= opts.d_max; ++d) {
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 50; ++rep) {
      const DensityMatrix rho = random_state_any_rank(d, rng, s.next_seed());
      const int size = rho.rank() + static_cast<int>(rng.next_u64() % 3);
      const Decomposition dec = random_decomposition(rho, size, s.next_seed());
      worst_rec = std::max(worst_rec, decomposition_residual(rho, dec));
      worst_rec = std::max(worst_rec, std::abs(dec.probabilities.sum() - 1.0));
    }
  }
  s.add("decompositions: random mixtures reconstruct the state", worst_rec,
        1e-10);
}

void check_unit_vectors(Suite& s, const VerifyOptions& opts) {
  const int ng = 8;  // d = 3 sphere
  Rng rng(s.next_seed());
  double worst_norm = 0.0;
  RealMatrix second = RealMatrix::Zero(ng, ng);
  const long n = std::max<long>(opts.samples, 10000);
  for (long i = 0; i < n; ++i) {
    const UnitVector u = random_unit_vector(ng, rng);
    worst_norm = std::max(worst_norm, std::abs(u.components.squaredNorm() - 1.0));
    second += u.components * u.components.transpose();
  }
  second /= static_cast<double>(n);
  // Var(n_m^2) ~ 2/ng^2 per entry; 5 standard errors.
  const double se = std::sqrt(2.0) / ng / std::sqrt(static_cast<double>(n));
  const double dev =
      max_abs((second - RealMatrix::Identity(ng, ng) / ng).cast<Complex>());
  s.add("unit vectors: norms are 1", worst_norm, 1e-12);
  s.add("unit vectors: avg(n n^T) = I/N_g within 5 SE", dev, 5.0 * se);
}

void check_metrology(Suite& s, const VerifyOptions& opts) {
  double worst_rearr = 0.0, worst_har = 0.0, worst_arith = 0.0;
  double worst_sandwich = 0.0, worst_pure_gap = 0.0;
  double worst_shift = 0.0, worst_unitary = 0.0, worst_concave = 0.0;
  for (int d : {2, 3, 4, 6}) {
    if (d < opts.d_min || d > opts.d_max) continue;
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 50; ++rep) {
      const DensityMatrix rho = random_state_any_rank(d, rng, s.next_seed());
      const Observable a = random_observable(d, s.next_seed());

      worst_rearr = std::max(worst_rearr,
                             std::abs(qfi(rho, a) - qfi_rearranged(rho, a)));
      const GapReport g = gap(rho, a);
      worst_har = std::max(
          worst_har,
          std::abs(generalized_variance(rho, a, MonotoneMean::harmonic()) -
                   g.gap));
      worst_arith = std::max(
          worst_arith,
          std::abs(generalized_variance(rho, a, MonotoneMean::arithmetic()) -
                   g.variance));

      const int size = rho.rank() + static_cast<int>(rng.next_u64() % 3);
      const SandwichReport sw = decomposition_sandwich(
          rho, a, random_decomposition(rho, size, s.next_seed()));
      worst_sandwich =
          std::max({worst_sandwich, sw.lower - sw.mixture,
                    sw.mixture - sw.upper});

      // Shift invariance and unitary covariance of the gap.
      const double c = rng.gaussian();
      const Observable shifted(a.matrix() + c * Matrix::Identity(d, d));
      worst_shift = std::max(worst_shift,
                             std::abs(gap(rho, shifted).gap - g.gap));
      const Matrix u = haar_unitary(d, rng);
      const DensityMatrix rho_u(u * rho.matrix() * u.adjoint());
      const Observable a_u(u.adjoint() * a.matrix() * u);
      worst_unitary =
          std::max(worst_unitary, std::abs(gap(rho_u, a).gap - gap(rho, a_u).gap));

      // Pure states have vanishing gap.
      const DensityMatrix pure = random_density_matrix(d, 1, s.next_seed());
      worst_pure_gap = std::max(worst_pure_gap, std::abs(gap(pure, a).gap));

      // Concavity in the state.
      const DensityMatrix rho2 = random_state_any_rank(d, rng, s.next_seed());
      const DensityMatrix mix(0.5 * (rho.matrix() + rho2.matrix()));
      worst_concave = std::max(
          worst_concave,
          0.5 * gap(rho, a).gap + 0.5 * gap(rho2, a).gap - gap(mix, a).gap);
    }
  }
  // Mixed states always expose a generator with a strictly positive gap.
  double worst_witness = 0.0;
  for (int d : {2, 3, 4}) {
    if (d < opts.d_min || d > opts.d_max) continue;
    const GeneratorBasis basis(d);
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 10; ++rep) {
      const int rank = 2 + static_cast<int>(rng.next_u64() %
                                            static_cast<std::uint64_t>(d - 1));
      const DensityMatrix rho = random_density_matrix(d, rank, s.next_seed());
      if (rho.purity() > 1.0 - 1e-8) continue;
      double largest = 0.0;
      for (int m = 0; m < basis.count(); ++m) {
        largest = std::max(largest, gap(rho, basis[m]).gap);
      }
      worst_witness = std::max(worst_witness, 1e-8 - largest);
    }
  }
  s.add("metrology: vanishing gap on every generator implies purity",
        worst_witness, 0.0);
  s.add("metrology: qfi equals rearranged form", worst_rearr, 1e-9);
  s.add("metrology: harmonic generalized variance equals the gap", worst_har,
        1e-9);
  s.add("metrology: arithmetic generalized variance equals the variance",
        worst_arith, 1e-10);
  s.add("metrology: sandwich F_Q/4 <= mixture <= variance", worst_sandwich,
        1e-9);
  s.add("metrology: gap vanishes on pure states", worst_pure_gap, 1e-9);
  s.add("metrology: gap is shift invariant", worst_shift, 1e-9);
  s.add("metrology: gap is unitarily covariant", worst_unitary, 1e-9);
  s.add("metrology: gap is concave under mixing", worst_concave, 1e-9);
}

void check_qfi_commutation(Suite& s, const VerifyOptions& opts) {
  double worst_commuting_qfi = 0.0;
  double worst_comm_norm = 0.0;
  bool noncommuting_positive = true;
  for (int d = opts.d_min; d <= opts.d_max; ++d) {
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 30; ++rep) {
      const DensityMatrix rho = random_density_matrix(d, d, s.next_seed());
      // A diagonal in the eigenbasis of rho commutes with it.
      RealVector diag(d);
      for (int k = 0; k < d; ++k) diag(k) = rng.gaussian();
      const Matrix v = rho.eigenvectors();
      const Observable commuting(v * diag.asDiagonal().toDenseMatrix().cast<Complex>() * v.adjoint());
      worst_commuting_qfi = std::max(worst_commuting_qfi, qfi(rho, commuting));

      const Observable a = random_observable(d, s.next_seed());
      const Matrix comm = rho.matrix() * a.matrix() - a.matrix() * rho.matrix();
      if (max_abs(comm) > 1e-6) {
        noncommuting_positive = noncommuting_positive && qfi(rho, a) > 1e-10;
      }
      if (qfi(rho, a) < 1e-12) {
        worst_comm_norm = std::max(worst_comm_norm, max_abs(comm));
      }
    }
  }
  s.add("metrology: [rho,A] = 0 implies F_Q = 0", worst_commuting_qfi, 1e-8);
  s.add("metrology: F_Q = 0 implies [rho,A] = 0", worst_comm_norm, 1e-8);
  s.add_flag("metrology: noncommuting pairs have F_Q > 0",
             noncommuting_positive);
}

void check_qfi_math_family(Suite& s, const VerifyOptions& opts) {
  double worst_arith = 0.0, worst_diag = 0.0;
  bool singular_raises = true;
  for (int d = opts.d_min; d <= opts.d_max; ++d) {
    for (int rep = 0; rep < 20; ++rep) {
      const DensityMatrix rho = random_density_matrix(d, d, s.next_seed());
      const Observable a = random_observable(d, s.next_seed());
      worst_arith = std::max(
          worst_arith,
          rel_err(qfi_generalized(rho, a, MonotoneMean::arithmetic()),
                  qfi_math(rho, a)));

      // Diagonal observables: every mean reduces to sum |A_kk|^2 / l_k.
      RealVector diag(d);
      Rng rng(s.next_seed());
      for (int k = 0; k < d; ++k) diag(k) = rng.gaussian();
      const Matrix v = rho.eigenvectors();
      const Observable ad(v * diag.asDiagonal().toDenseMatrix().cast<Complex>() * v.adjoint());
      double direct = 0.0;
      for (int k = 0; k < d; ++k) {
        direct += diag(k) * diag(k) / rho.eigenvalues()(k);
      }
      worst_diag = std::max(
          {worst_diag,
           rel_err(qfi_generalized(rho, ad, MonotoneMean::logarithmic()), direct),
           rel_err(qfi_math(rho, ad), direct)});
    }
    try {
      qfi_math(random_density_matrix(d, 1, s.next_seed()),
               random_observable(d, s.next_seed()));
      singular_raises = false;
    } catch (const SingularState&) {
    }
  }
  s.add("metrology: arithmetic generalized QFI equals qfi_math", worst_arith,
        1e-9);
  s.add("metrology: diagonal observables give sum |A_kk|^2/l_k", worst_diag,
        1e-9);
  s.add_flag("metrology: qfi_math rejects singular states", singular_raises);
}

// -------------------------------------------------------------- bounds ----

void check_observation1(Suite& s, const VerifyOptions& opts) {
  double worst = 0.0;
  for (int d = opts.d_min; d <= opts.d_max; ++d) {
    for (int rep = 0; rep < 200; ++rep) {
      const DensityMatrix rho = random_density_matrix(d, 2, s.next_seed());
      const Observable a = random_observable(d, s.next_seed());
      worst = std::max(worst, std::abs(gap(rho, a).gap -
                                       rank2_gap_identity(rho, a).value));
    }
  }
  s.add("bounds: rank-2 purity identity is exact", worst, 1e-9);

  double worst_sat = 0.0;
  Rng rng(s.next_seed());
  for (int rep = 0; rep < 50; ++rep) {
    const Observable a2 = random_observable(2, s.next_seed());
    const double l = 0.05 + 0.9 * rng.uniform();
    const DensityMatrix rho = rank2_saturating_state(a2, l);
    worst_sat = std::max(worst_sat, std::abs(gap(rho, a2).gap -
                                             rank2_gap_identity(rho, a2).value));
  }
  s.add("bounds: saturating family satisfies the identity", worst_sat, 1e-9);
}

void check_observation2(Suite& s, const VerifyOptions& opts) {
  double worst = 0.0, worst_h = 0.0;
  for (int d = opts.d_min; d <= opts.d_max; ++d) {
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 500; ++rep) {
      const DensityMatrix rho = random_state_any_rank(d, rng, s.next_seed());
      const Observable a = random_observable(d, s.next_seed());
      const BoundCheck lin = bound_linear_entropy(rho, a);
      worst = std::max(worst, lin.gap - lin.bound);
      const BoundCheck h = bound_h_times_sigma(rho, a);
      worst_h = std::max(worst_h, h.gap - h.bound);
    }
  }
  s.add("bounds: gap <= 2 S_lin sigma_max(A^2)", worst, 1e-9);
  s.add("bounds: gap <= sigma_max(A^2) H(rho)", worst_h, 1e-9);

  // The d=2 completely mixed state saturates the linear-entropy bound.
  Matrix sz(2, 2);
  sz << 1, 0, 0, -1;
  const BoundCheck mixed =
      bound_linear_entropy(DensityMatrix(0.5 * Matrix::Identity(2, 2)),
                           Observable(sz));
  s.add("bounds: qubit completely mixed state saturates the bound",
        std::abs(mixed.gap - mixed.bound), 1e-12);
}

void check_permutation_bounds(Suite& s, const VerifyOptions& opts) {
  double worst_orbit = 0.0, worst_jz = 0.0, worst_vprime_qfi = 0.0;
  for (int d : {2, 3, 4}) {
    if (d < opts.d_min || d > opts.d_max) continue;
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 10; ++rep) {
      const DensityMatrix rho = random_density_matrix(d, d, s.next_seed());
      RealVector sigmas(d);
      for (int k = 0; k < d; ++k) sigmas(k) = rng.gaussian();

      const SpectrumMax best = max_gap_over_spectrum(rho.eigenvalues(), sigmas);

      // Haar samples of the unitary orbit never exceed the permutation max.
      const Matrix sig = sigmas.asDiagonal().toDenseMatrix().cast<Complex>();
      for (int u_rep = 0; u_rep < 100; ++u_rep) {
        const Matrix u = haar_unitary(d, rng);
        const Observable a(u * sig * u.adjoint());
        worst_orbit = std::max(worst_orbit, gap(rho, a).gap - best.value);
      }

      // Permutation-level restatement of the proof chain.
      const double s_lin = 1.0 - rho.eigenvalues().squaredNorm();
      const double sig_max = sigmas.cwiseAbs2().maxCoeff();
      worst_jz = std::max(worst_jz, best.value - 2.0 * s_lin * sig_max);

      // The V' maximizer is diagonal in the eigenbasis, so its QFI vanishes.
      max_vprime_over_spectrum(rho.eigenvalues(), sigmas);
      RealVector best_diag(d);
      for (int k = 0; k < d; ++k) best_diag(k) = sigmas(best.permutation[k]);
      const Observable a_diag(rho.eigenvectors() *
                              best_diag.asDiagonal().toDenseMatrix().cast<Complex>() *
                              rho.eigenvectors().adjoint());
      worst_vprime_qfi = std::max(worst_vprime_qfi, qfi(rho, a_diag));
    }
  }
  s.add("bounds: Haar orbit samples never exceed the permutation maximum",
        worst_orbit, 1e-9);
  s.add("bounds: permutation maximum obeys the linear-entropy bound", worst_jz,
        1e-9);
  s.add("bounds: permutation-diagonal maximizer has F_Q = 0", worst_vprime_qfi,
        1e-8);
}

// ------------------------------------------------------------ averages ----

void check_quadratic_forms(Suite& s, const VerifyOptions& opts) {
  double worst_c = 0.0, worst_f = 0.0, worst_psd = 0.0, worst_diag = 0.0;
  double worst_trc = 0.0;
  for (int d : {2, 3, 4}) {
    if (d < opts.d_min || d > opts.d_max) continue;
    const GeneratorBasis basis(d);
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 5; ++rep) {
      const DensityMatrix rho = random_state_any_rank(d, rng, s.next_seed());
      const RealMatrix c = covariance_matrix(rho, basis);
      const RealMatrix f = fisher_matrix(rho, basis);
      for (int k = 0; k < 20; ++k) {
        const UnitVector n = random_unit_vector(basis.count(), rng);
        const Observable an = observable_from_unit_vector(basis, n);
        worst_c = std::max(
            worst_c, std::abs(n.components.dot(c * n.components) -
                              variance(rho, an)));
        worst_f = std::max(worst_f, std::abs(n.components.dot(f * n.components) -
                                             qfi(rho, an)));
      }
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(c);
      worst_psd = std::max(worst_psd, -es.eigenvalues().minCoeff());
      for (int m = 0; m < basis.count(); ++m) {
        worst_diag = std::max(worst_diag, std::abs(f(m, m) - qfi(rho, basis[m])));
      }
      const double tr_expected =
          2.0 * (d - 1.0 / d) - 2.0 * (rho.purity() - 1.0 / d);
      worst_trc = std::max(worst_trc, std::abs(c.trace() - tr_expected));
    }
  }
  s.add("averages: n^T C n reproduces the variance", worst_c, 1e-9);
  s.add("averages: n^T F n reproduces the QFI", worst_f, 1e-9);
  s.add("averages: covariance matrix is PSD", worst_psd, 1e-9);
  s.add("averages: Fisher matrix diagonal matches per-generator QFI",
        worst_diag, 1e-9);
  s.add("averages: Tr C = 2(d - 1/d) - 2(Tr rho^2 - 1/d)", worst_trc, 1e-10);
}

void check_average_reports(Suite& s, const VerifyOptions& opts) {
  double worst_trace_c = 0.0, worst_trace_f = 0.0, worst_triangle = 0.0;
  bool mc_ok = true;
  double worst_endpoint = 0.0;
  for (int d : {2, 3, 5}) {
    const GeneratorBasis basis(d);
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 2; ++rep) {
      const DensityMatrix rho = random_density_matrix(d, d, s.next_seed());
      const std::uint64_t mc_seed = s.next_seed();
      const AverageReport var = avg_variance(rho, opts.samples, mc_seed);
      const AverageReport fis = avg_qfi(rho, opts.samples, mc_seed + 1);
      const AverageReport gp = avg_gap(rho, opts.samples, mc_seed + 2);
      const AverageReport math = avg_qfi_math(rho, opts.samples, mc_seed + 3);
      const AverageReport kmb = avg_qfi_kmb(rho, opts.samples, mc_seed + 4);
      mc_ok = mc_ok && var.consistent() && fis.consistent() &&
              gp.consistent() && math.consistent() && kmb.consistent();

      const int ng = basis.count();
      worst_trace_c = std::max(
          worst_trace_c,
          std::abs(var.analytic * ng - covariance_matrix(rho, basis).trace()));
      worst_trace_f = std::max(
          worst_trace_f,
          std::abs(fis.analytic * ng - fisher_matrix(rho, basis).trace()));
      worst_triangle = std::max(
          worst_triangle,
          std::abs(var.analytic - 0.25 * fis.analytic - gp.analytic));
    }

    // Completely mixed endpoints are exact.
    const DensityMatrix cm(Matrix::Identity(d, d) / d);
    worst_endpoint = std::max(
        {worst_endpoint,
         std::abs(avg_qfi_math_analytic(cm.eigenvalues()) - 2.0 * d),
         std::abs(avg_qfi_kmb_analytic(cm.eigenvalues()) - 2.0 * d)});
  }
  s.add_flag("averages: analytic values within 5 sigma of Monte Carlo", mc_ok);
  s.add("averages: avg variance x N_g = Tr C", worst_trace_c, 1e-10);
  s.add("averages: avg QFI x N_g = Tr F", worst_trace_f, 1e-10);
  s.add("averages: avg variance - avg QFI/4 = avg gap", worst_triangle, 1e-12);
  s.add("averages: completely mixed avg F_Q and F^log equal 2d",
        worst_endpoint, 1e-10);
}

void check_element_averages(Suite& s, const VerifyOptions& opts) {
  bool ok = true;
  double worst_sum = 0.0;
  for (int d : {2, 3, 5}) {
    const GeneratorBasis basis(d);
    const ElementAverages ea =
        element_averages(basis, opts.samples, s.next_seed());
    ok = ok && std::abs(ea.offdiag_sq - ea.offdiag_target) <=
                   5.0 * ea.offdiag_stderr + 1e-12;
    ok = ok &&
         std::abs(ea.diag_sq - ea.diag_target) <= 5.0 * ea.diag_stderr + 1e-12;

    // Other index pairs share the same averages by isotropy.
    if (d >= 3) {
      const ElementAverages eb =
          element_averages(basis, opts.samples, s.next_seed(), 1, 0, 2);
      ok = ok && std::abs(eb.offdiag_sq - ea.offdiag_target) <=
                     5.0 * eb.offdiag_stderr + 1e-12;
      ok = ok && std::abs(eb.diag_sq - ea.diag_target) <=
                     5.0 * eb.diag_stderr + 1e-12;
    }

    // Second-moment decomposition: d avg|A_11|^2 + d(d-1) avg|A_12|^2 = 2.
    const double total = d * ea.diag_sq + d * (d - 1.0) * ea.offdiag_sq;
    const double se = d * ea.diag_stderr + d * (d - 1.0) * ea.offdiag_stderr;
    worst_sum = std::max(worst_sum, std::abs(total - 2.0) - 5.0 * se);
  }
  s.add_flag("averages: element averages hit 2/N_g and (2/N_g)(1-1/d)", ok);
  s.add("averages: second-moment decomposition sums to Tr(A^2) = 2",
        worst_sum, 0.0);
}

void check_average_convexity(Suite& s, const VerifyOptions& opts) {
  double worst_convex = 0.0, worst_concave = 0.0, worst_h_concave = 0.0;
  for (int d : {2, 3, 4}) {
    if (d < opts.d_min || d > opts.d_max) continue;
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 20; ++rep) {
      const DensityMatrix r1 = random_state_any_rank(d, rng, s.next_seed());
      const DensityMatrix r2 = random_state_any_rank(d, rng, s.next_seed());
      const DensityMatrix mix(0.5 * (r1.matrix() + r2.matrix()));
      const auto l1 = r1.eigenvalues(), l2 = r2.eigenvalues(),
                 lm = mix.eigenvalues();
      worst_convex =
          std::max(worst_convex, avg_qfi_analytic(lm) -
                                     0.5 * (avg_qfi_analytic(l1) +
                                            avg_qfi_analytic(l2)));
      worst_concave =
          std::max(worst_concave, 0.5 * (avg_gap_analytic(l1) +
                                         avg_gap_analytic(l2)) -
                                      avg_gap_analytic(lm));
      worst_h_concave = std::max(
          worst_h_concave, 0.5 * (harmonic_purity(l1) + harmonic_purity(l2)) -
                               harmonic_purity(lm));
    }
  }
  s.add("averages: avg QFI is convex in the state", worst_convex, 1e-9);
  s.add("averages: avg gap is concave in the state", worst_concave, 1e-9);
  s.add("averages: H is concave in the state", worst_h_concave, 1e-9);
}

// ----------------------------------------------------------- landscape ----

void check_entropies(Suite& s, const VerifyOptions&) {
  RealVector qubit(2);
  qubit << 0.75, 0.25;
  const SpectrumPoint p = entropies(qubit);
  const double expected_s = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  const double err = std::max({std::abs(p.s_lin - 0.375),
                               std::abs(p.s_vn - expected_s),
                               std::abs(p.exp_s - std::exp(expected_s)),
                               std::abs(p.h - 1.75)});
  s.add("entropy: diag(0.75, 0.25) reference values", err, 1e-12);

  double worst_extreme = 0.0;
  for (int d = 2; d <= 10; ++d) {
    RealVector pure = RealVector::Zero(d);
    pure(0) = 1.0;
    const SpectrumPoint pp = entropies(pure);
    const SpectrumPoint pm = entropies(RealVector::Constant(d, 1.0 / d));
    worst_extreme = std::max(
        {worst_extreme, std::abs(pp.h - 1.0), std::abs(pp.exp_s - 1.0),
         std::abs(pm.h - d), std::abs(pm.exp_s - d)});
  }
  s.add("entropy: H and exp(S) coincide at the pure and uniform points",
        worst_extreme, 1e-12);
}

void check_h_exp_s_scaling(Suite& s, const VerifyOptions&) {
  double worst_slope = 10.0;
  for (int d : {3, 10}) {
    RealVector direction = RealVector::Zero(d);
    direction(0) = 1.0;
    direction(1) = -0.5;
    direction(2) = -0.5;
    const std::vector<double> eps =
        d == 3 ? std::vector<double>{1e-1, 1e-2, 1e-3}
               : std::vector<double>{1e-2, 3e-3, 1e-3};
    std::vector<double> gaps;
    for (double e : eps) {
      RealVector l = RealVector::Constant(d, 1.0 / d) + e * direction;
      gaps.push_back(h_exp_s_gap(l));
    }
    worst_slope = std::min(worst_slope, loglog_slope(eps, gaps));
  }
  s.add("entropy: |H - exp(S)| slope vs perturbation >= 2.5", 2.5 - worst_slope,
        0.0);
}

void check_white_noise(Suite& s, const VerifyOptions&) {
  double worst = 0.0, worst_end = 0.0;
  for (int d : {3, 5, 10}) {
    RealVector grid(40);
    for (int i = 0; i < 40; ++i) grid(i) = (i + 1) / 40.0 / d;
    for (const WhiteNoisePoint& p : white_noise_curve(d, grid)) {
      const RealVector l = WhiteNoiseFamily(d, p.lambda).eigenvalues();
      worst = std::max({worst,
                        std::abs(p.avg_qfi_math - avg_qfi_math_analytic(l)),
                        std::abs(p.avg_qfi_kmb - avg_qfi_kmb_analytic(l))});
    }
    worst_end = std::max(
        {worst_end,
         std::abs(white_noise_avg_closed_form(d, 1.0 / d,
                                              MonotoneMean::arithmetic()) -
                  2.0 * d),
         std::abs(white_noise_avg_closed_form(d, 1.0 / d,
                                              MonotoneMean::logarithmic()) -
                  2.0 * d)});
  }
  s.add("landscape: closed-form curve equals spectrum sums", worst, 1e-8);
  s.add("landscape: curve endpoint at Lambda = 1/d equals 2d", worst_end,
        1e-12);
}

void check_hessian_and_stationarity(Suite& s, const VerifyOptions&) {
  double worst_eig = 0.0, worst_resid = 0.0, worst_fd = 0.0;
  for (int d = 3; d <= 25; ++d) {
    for (int i = 1; i <= 50; ++i) {
      const double lambda = i / 50.0 / d;
      worst_eig = std::max(worst_eig, -hessian_min_eig(d, lambda));
      if (i < 50) {  // gradients vanish at the uniform endpoint
        const Stationarity st = lagrange_stationarity(d, lambda);
        worst_resid = std::max(worst_resid, st.residual / st.grad_f_norm);
      }
    }
    for (double lambda : {0.3 / d, 0.7 / d}) {
      const RealMatrix ha = landscape_hessian(d, lambda);
      const RealMatrix hf = landscape_hessian_fd(d, lambda);
      worst_fd = std::max(worst_fd, (ha - hf).norm() / ha.norm());
    }
  }
  s.add("landscape: Hessian min eigenvalue >= -1e-8 on the Lambda grid",
        worst_eig, 1e-8);
  s.add("landscape: tangent-space gradient residual (relative)", worst_resid,
        1e-8);
  s.add("landscape: analytic Hessian matches finite differences", worst_fd,
        1e-5);

  bool degenerate_raises = false;
  try {
    lagrange_stationarity(4, 0.25);
  } catch (const DegenerateGradient&) {
    degenerate_raises = true;
  }
  s.add_flag("landscape: uniform point raises DegenerateGradient",
             degenerate_raises);
}

void check_relative_entropy(Suite& s, const VerifyOptions& opts) {
  RealVector mixed(2), biased(2);
  mixed << 0.5, 0.5;
  biased << 0.75, 0.25;
  const DensityMatrix rho_m =
      DensityMatrix::from_spectrum(mixed, Matrix::Identity(2, 2));
  const DensityMatrix rho_b =
      DensityMatrix::from_spectrum(biased, Matrix::Identity(2, 2));
  const double expected = 0.5 * std::log(0.5 / 0.75) + 0.5 * std::log(0.5 / 0.25);
  double err = std::abs(relative_entropy(rho_m, rho_b) - expected);
  err = std::max(err, std::abs(relative_entropy(rho_b, rho_b)));
  s.add("entropy: relative entropy closed form for commuting qubit pair", err,
        1e-12);

  double worst_neg = 0.0;
  for (int d = opts.d_min; d <= std::min(opts.d_max, 4); ++d) {
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 20; ++rep) {
      const DensityMatrix a = random_density_matrix(d, d, s.next_seed());
      const DensityMatrix b = random_density_matrix(d, d, s.next_seed());
      worst_neg = std::max(worst_neg, -relative_entropy(a, b));
      (void)rng;
    }
  }
  s.add("entropy: relative entropy is nonnegative", worst_neg, 1e-12);
}

void check_kmb_derivative(Suite& s, const VerifyOptions&) {
  double worst = 0.0;
  std::vector<double> ratios;
  for (int d : {2, 3, 4}) {
    for (int rep = 0; rep < 25; ++rep) {
      // A spectral floor keeps the finite differences clear of roundoff.
      const DensityMatrix raw = random_density_matrix(d, d, s.next_seed());
      const DensityMatrix rho(0.75 * raw.matrix() +
                              0.25 * Matrix::Identity(d, d) / d);
      const Observable a = random_observable(d, s.next_seed(), true);
      const double scale = rho.eigenvalues().minCoeff();
      const KmbCheck check =
          kmb_second_derivative_check(rho, a, 1e-3 * scale);
      worst = std::max(worst, rel_err(check.fd_second_derivative, check.kmb_value));

      // Second-order scheme: halving h cuts the error ~4x. Measured at a
      // larger step where truncation dominates.
      const double h = 0.05 * scale;
      const KmbCheck big = kmb_second_derivative_check(rho, a, h);
      const KmbCheck half = kmb_second_derivative_check(rho, a, 0.5 * h);
      const double e1 = std::abs(big.fd_second_derivative - big.kmb_value);
      const double e2 = std::abs(half.fd_second_derivative - half.kmb_value);
      if (e1 > 1e-9) ratios.push_back(e2 / e1);
    }
  }
  s.add("entropy: d^2/dt^2 S(rho||rho+tA) matches F^log (relative)", worst,
        1e-4);
  std::sort(ratios.begin(), ratios.end());
  const double median =
      ratios.empty() ? 1.0 : ratios[ratios.size() / 2];
  s.add("entropy: halving the step cuts the error ~4x (median ratio)",
        std::abs(median - 0.25), 0.2);
}

void check_min_probe(Suite& s, const VerifyOptions&) {
  double worst = 0.0;
  const MinProbe p3 = global_min_probe(3, 2.0, 8, s.next_seed());
  worst = std::max(worst, p3.family_value - p3.best_value - 1e-6);
  const MinProbe p4 = global_min_probe(4, 2.5, 8, s.next_seed());
  worst = std::max(worst, p4.family_value - p4.best_value - 1e-6);
  s.add("landscape: no probe restart beats the white-noise family", worst, 0.0);
}

// ---------------------------------------------------------------- spin ----

void check_collective(Suite& s, const VerifyOptions&) {
  const CollectiveSpin j2 = collective_operator(2, Axis::z);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(3, 3) = -1.0;
  double err = max_abs(j2.op.matrix() - expected);

  for (int n : {1, 3, 4}) {
    for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
      const CollectiveSpin j = collective_operator(n, axis);
      const Spectral spec = spectral_decompose(j.op.matrix());
      err = std::max(err, std::abs(spec.eigenvalues.maxCoeff() - 0.5 * n));
      err = std::max(err, std::abs(spec.eigenvalues.minCoeff() + 0.5 * n));
    }
  }
  s.add("spin: collective operators have spectrum -N/2..N/2", err, 1e-9);
}

void check_ghz_family(Suite& s, const VerifyOptions&) {
  double worst_id = 0.0, worst_sat = 0.0, worst_var = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const CollectiveSpin jz = collective_operator(n, Axis::z);
    for (int i = 0; i <= 10; ++i) {
      const double p = i / 10.0;
      const DensityMatrix rho = noisy_ghz(n, p);
      const GhzRelation rel = ghz_purity_relation(rho, n);
      worst_id = std::max(worst_id, std::abs(rel.lhs - rel.rhs));
      worst_sat = std::max(worst_sat, std::abs(rel.obs2_gap - rel.obs2_bound));

      const double p0 = rho.matrix()(0, 0).real();
      const double p1 = rho.matrix()(rho.dim() - 1, rho.dim() - 1).real();
      const double var_expected =
          (1.0 - p0 * p0 - p1 * p1) * n * n / 2.0;
      worst_var = std::max(
          worst_var, std::abs(variance(rho, jz.op) - var_expected));
    }
  }
  s.add("spin: GHZ purity identity along the noisy family", worst_id, 1e-9);
  s.add("spin: GHZ-subspace states saturate the linear-entropy bound",
        worst_sat, 1e-9);
  s.add("spin: subspace variance formula for J_z", worst_var, 1e-9);
}

void check_ghz_bounds(Suite& s, const VerifyOptions&) {
  bool fid_ok = true;
  for (int n : {2, 3, 4}) {
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 100; ++rep) {
      const int dim = 1 << n;
      const int rank = 1 + static_cast<int>(rng.next_u64() % 4);
      const DensityMatrix rho = random_density_matrix(dim, rank, s.next_seed());
      fid_ok = fid_ok && fidelity_bound(rho, n).holds;
    }
  }
  s.add_flag("spin: fidelity bound holds on random states", fid_ok);

  bool shot_ok = true;
  for (int n = 2; n <= 6; ++n) {
    Rng rng(s.next_seed());
    for (int rep = 0; rep < 100; ++rep) {
      const int terms = 1 + static_cast<int>(rng.next_u64() % 4);
      std::vector<ProductComponent> mixture;
      for (int t = 0; t < terms; ++t) {
        ProductComponent c;
        c.weight = rng.uniform() + 1e-3;
        for (int q = 0; q < n; ++q) {
          Vector psi(2);
          psi << rng.complex_gaussian(), rng.complex_gaussian();
          c.qubits.push_back(psi);
        }
        mixture.push_back(std::move(c));
      }
      const ShotNoiseReport report = shot_noise_check(mixture, Axis::z);
      shot_ok = shot_ok && report.shot_noise_ok && report.heisenberg_ok;
    }
  }
  s.add_flag("spin: shot-noise bound holds for product mixtures", shot_ok);

  // Plus states saturate the shot-noise limit; GHZ reaches Heisenberg.
  double err = 0.0;
  for (int n : {2, 4, 6}) {
    ProductComponent plus;
    plus.weight = 1.0;
    Vector p(2);
    p << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    for (int q = 0; q < n; ++q) plus.qubits.push_back(p);
    err = std::max(err, std::abs(shot_noise_check({plus}, Axis::z).qfi - n));

    const DensityMatrix ghz = noisy_ghz(n, 0.0);
    err = std::max(err, std::abs(qfi(ghz, collective_operator(n, Axis::z).op) -
                                 static_cast<double>(n) * n));
  }
  s.add("spin: |+>^N saturates shot noise, GHZ saturates Heisenberg", err,
        1e-9);
}

void check_heisenberg_scaling(Suite& s, const VerifyOptions&) {
  std::vector<std::pair<int, DensityMatrix>> family;
  const double p = 0.3;
  double s_cap = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const DensityMatrix rho = noisy_ghz(n, p);
    s_cap = std::max(s_cap, 1.0 - rho.purity());
    family.emplace_back(n, rho);
  }
  const auto rows = heisenberg_scaling_condition(family, Axis::z, s_cap);
  bool ok = true;
  double worst_ratio = 0.0;
  const double expected = (1.0 - p) * (1.0 - p);
  for (const ScalingRow& row : rows) {
    ok = ok && row.obs2_ok;
    const double n2 = static_cast<double>(row.n_qubits) * row.n_qubits;
    worst_ratio = std::max(worst_ratio, std::abs(row.qfi / n2 - expected));
    ok = ok && row.qfi / 4.0 / n2 >= row.fq_quarter_over_n2_lower - 1e-9;
  }
  s.add_flag("spin: scaling rows obey the bound and its lower estimate", ok);
  s.add("spin: F_Q/N^2 constant along the fixed-noise GHZ family", worst_ratio,
        1e-9);
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& suite,
                                      const VerifyOptions& opts) {
  Suite s;
  s.seed = opts.seed;

  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "core") {
    known = true;
    check_generators(s, opts);
    check_spectral(s, opts);
    check_unit_vectors(s, opts);
    check_metrology(s, opts);
    check_qfi_commutation(s, opts);
    check_qfi_math_family(s, opts);
  }
  if (all || suite == "bounds") {
    known = true;
    check_observation1(s, opts);
    check_observation2(s, opts);
    check_permutation_bounds(s, opts);
  }
  if (all || suite == "averages") {
    known = true;
    check_quadratic_forms(s, opts);
    check_average_reports(s, opts);
    check_element_averages(s, opts);
    check_average_convexity(s, opts);
  }
  if (all || suite == "landscape") {
    known = true;
    check_entropies(s, opts);
    check_h_exp_s_scaling(s, opts);
    check_white_noise(s, opts);
    check_hessian_and_stationarity(s, opts);
    check_relative_entropy(s, opts);
    check_kmb_derivative(s, opts);
    check_min_probe(s, opts);
  }
  if (all || suite == "spin") {
    known = true;
    check_collective(s, opts);
    check_ghz_family(s, opts);
    check_ghz_bounds(s, opts);
    check_heisenberg_scaling(s, opts);
  }
  if (!known) {
    throw UnknownSuite("unknown verification suite: " + suite);
  }
  return s.results;
}

}  // namespace qfilab
