#include "qfilab/averages.hpp"

#include <cmath>

#include "qfilab/entropy.hpp"

namespace qfilab {

bool AverageReport::consistent(double n_sigma, double abs_floor) const {
  return std::abs(analytic - monte_carlo_mean) <=
         n_sigma * monte_carlo_stderr + abs_floor;
}

RealMatrix covariance_matrix(const DensityMatrix& rho,
                             const GeneratorBasis& basis) {
  if (rho.dim() != basis.dim()) {
    throw DimensionMismatch("covariance_matrix: dimension mismatch");
  }
  const int ng = basis.count();
  std::vector<Matrix> rho_a(ng);
  RealVector means(ng);
  for (int m = 0; m < ng; ++m) {
    rho_a[m] = rho.matrix() * basis[m].matrix();
    means(m) = rho_a[m].trace().real();
  }
  RealMatrix c(ng, ng);
  for (int m = 0; m < ng; ++m) {
    for (int n = m; n < ng; ++n) {
      // Re Tr(rho A^m A^n) is the symmetrized second moment.
      const double smn = trace_product(rho_a[m], basis[n].matrix()).real();
      c(m, n) = c(n, m) = smn - means(m) * means(n);
    }
  }
  return c;
}

namespace {

// Generators rotated into the eigenbasis of rho.
std::vector<Matrix> rotated_generators(const DensityMatrix& rho,
                                       const GeneratorBasis& basis) {
  std::vector<Matrix> out(basis.count());
  const Matrix& v = rho.eigenvectors();
  for (int m = 0; m < basis.count(); ++m) {
    out[m] = v.adjoint() * basis[m].matrix() * v;
  }
  return out;
}

RealMatrix qfi_weights(const RealVector& l) {
  const int d = static_cast<int>(l.size());
  RealMatrix w = RealMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) {
      const double denom = l(k) + l(m);
      if (denom < kZeroEigenvalueTol) continue;
      const double diff = l(k) - l(m);
      w(k, m) = 2.0 * diff * diff / denom;
    }
  }
  return w;
}

}  // namespace

RealMatrix fisher_matrix(const DensityMatrix& rho,
                         const GeneratorBasis& basis) {
  if (rho.dim() != basis.dim()) {
    throw DimensionMismatch("fisher_matrix: dimension mismatch");
  }
  const int ng = basis.count();
  const int d = rho.dim();
  const std::vector<Matrix> b = rotated_generators(rho, basis);
  const RealMatrix w = qfi_weights(rho.eigenvalues());

  RealMatrix f(ng, ng);
  for (int m = 0; m < ng; ++m) {
    for (int n = m; n < ng; ++n) {
      double sum = 0.0;
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          sum += w(k, l) * (b[m](k, l) * b[n](l, k)).real();
        }
      }
      f(m, n) = f(n, m) = sum;
    }
  }
  return f;
}

namespace {

int generator_count(const RealVector& lambdas) {
  const int d = static_cast<int>(lambdas.size());
  return d * d - 1;
}

}  // namespace

double avg_variance_analytic(const RealVector& lambdas) {
  const int d = static_cast<int>(lambdas.size());
  const double s_lin = 1.0 - lambdas.squaredNorm();
  return 2.0 / generator_count(lambdas) * (s_lin + d - 1.0);
}

double avg_qfi_analytic(const RealVector& lambdas) {
  const int d = static_cast<int>(lambdas.size());
  return 8.0 / generator_count(lambdas) * (d - harmonic_purity(lambdas));
}

double avg_gap_analytic(const RealVector& lambdas) {
  const double s_lin = 1.0 - lambdas.squaredNorm();
  return 2.0 / generator_count(lambdas) *
         (s_lin + harmonic_purity(lambdas) - 1.0);
}

namespace {

void require_full_rank_spectrum(const RealVector& lambdas, const char* what) {
  if (lambdas.minCoeff() < kZeroEigenvalueTol) {
    throw SingularState(std::string(what) + ": spectrum must be full rank");
  }
}

}  // namespace

double avg_qfi_math_analytic(const RealVector& lambdas) {
  require_full_rank_spectrum(lambdas, "avg_qfi_math_analytic");
  const int d = static_cast<int>(lambdas.size());
  double pair_sum = 0.0;
  double inv_sum = 0.0;
  for (int k = 0; k < d; ++k) {
    inv_sum += 1.0 / lambdas(k);
    for (int l = 0; l < d; ++l) {
      pair_sum += 2.0 / (lambdas(k) + lambdas(l));
    }
  }
  return 2.0 / generator_count(lambdas) * (pair_sum - inv_sum / d);
}

double avg_qfi_kmb_analytic(const RealVector& lambdas) {
  require_full_rank_spectrum(lambdas, "avg_qfi_kmb_analytic");
  const int d = static_cast<int>(lambdas.size());
  double pair_sum = 0.0;
  double inv_sum = 0.0;
  for (int k = 0; k < d; ++k) {
    inv_sum += 1.0 / lambdas(k);
    for (int l = 0; l < d; ++l) {
      pair_sum += 1.0 / log_mean(lambdas(k), lambdas(l));
    }
  }
  return 2.0 / generator_count(lambdas) * (pair_sum - inv_sum / d);
}

namespace {

// Monte-Carlo driver: evaluates `sample` per draw of a generator-sphere unit
// vector, with chunked seeding so the result is independent of the thread
// count.
template <typename SampleFn>
AverageReport run_mc(double analytic, const DensityMatrix& rho, long samples,
                     std::uint64_t seed, SampleFn&& sample) {
  const GeneratorBasis basis(rho.dim());
  const std::vector<Matrix> rotated = rotated_generators(rho, basis);
  const int ng = basis.count();
  const int d = rho.dim();

  std::vector<double> values(static_cast<std::size_t>(samples));
  const int n_chunks =
      static_cast<int>(std::min<long>(128, std::max<long>(1, samples)));
  parallel_chunks(n_chunks, [&](int chunk) {
    const long begin = samples * chunk / n_chunks;
    const long end = samples * (chunk + 1) / n_chunks;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
    Matrix bn(d, d);
    for (long i = begin; i < end; ++i) {
      const UnitVector n = random_unit_vector(ng, rng);
      bn.setZero();
      for (int m = 0; m < ng; ++m) bn += n.components(m) * rotated[m];
      values[static_cast<std::size_t>(i)] = sample(bn);
    }
  });

  const MeanStderr ms = mean_and_stderr(values);
  return AverageReport{analytic, ms.mean, ms.stderr_, samples};
}

double variance_in_eigenbasis(const Matrix& bn, const RealVector& l) {
  const int d = static_cast<int>(l.size());
  double second = 0.0;
  double mean = 0.0;
  for (int k = 0; k < d; ++k) {
    mean += l(k) * bn(k, k).real();
    for (int m = 0; m < d; ++m) second += l(k) * std::norm(bn(k, m));
  }
  return second - mean * mean;
}

double weighted_norm_sum(const Matrix& bn, const RealMatrix& w) {
  double sum = 0.0;
  for (int k = 0; k < w.rows(); ++k) {
    for (int m = 0; m < w.cols(); ++m) {
      if (w(k, m) != 0.0) sum += w(k, m) * std::norm(bn(k, m));
    }
  }
  return sum;
}

}  // namespace

AverageReport avg_variance(const DensityMatrix& rho, long samples,
                           std::uint64_t seed) {
  const RealVector& l = rho.eigenvalues();
  return run_mc(avg_variance_analytic(l), rho, samples, seed,
                [&](const Matrix& bn) { return variance_in_eigenbasis(bn, l); });
}

AverageReport avg_qfi(const DensityMatrix& rho, long samples,
                      std::uint64_t seed) {
  const RealVector& l = rho.eigenvalues();
  const RealMatrix w = qfi_weights(l);
  return run_mc(avg_qfi_analytic(l), rho, samples, seed,
                [&](const Matrix& bn) { return weighted_norm_sum(bn, w); });
}

AverageReport avg_gap(const DensityMatrix& rho, long samples,
                      std::uint64_t seed) {
  const RealVector& l = rho.eigenvalues();
  const RealMatrix w = qfi_weights(l);
  return run_mc(avg_gap_analytic(l), rho, samples, seed,
                [&](const Matrix& bn) {
                  return variance_in_eigenbasis(bn, l) -
                         0.25 * weighted_norm_sum(bn, w);
                });
}

AverageReport avg_qfi_math(const DensityMatrix& rho, long samples,
                           std::uint64_t seed) {
  const RealVector& l = rho.eigenvalues();
  const double analytic = avg_qfi_math_analytic(l);  // throws if singular
  const int d = rho.dim();
  RealMatrix w(d, d);
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) w(k, m) = 2.0 / (l(k) + l(m));
  }
  return run_mc(analytic, rho, samples, seed,
                [&](const Matrix& bn) { return weighted_norm_sum(bn, w); });
}

AverageReport avg_qfi_kmb(const DensityMatrix& rho, long samples,
                          std::uint64_t seed) {
  const RealVector& l = rho.eigenvalues();
  const double analytic = avg_qfi_kmb_analytic(l);
  const int d = rho.dim();
  RealMatrix w(d, d);
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) w(k, m) = 1.0 / log_mean(l(k), l(m));
  }
  return run_mc(analytic, rho, samples, seed,
                [&](const Matrix& bn) { return weighted_norm_sum(bn, w); });
}

ElementAverages element_averages(const GeneratorBasis& basis, long samples,
                                 std::uint64_t seed, int diag_index,
                                 int off_row, int off_col) {
  const int d = basis.dim();
  const int ng = basis.count();
  if (diag_index >= d || off_row >= d || off_col >= d || off_row == off_col) {
    throw DimensionMismatch("element_averages: bad element indices");
  }

  // Only two fixed entries of each generator are needed per draw.
  Eigen::VectorXcd diag_part(ng), off_part(ng);
  for (int m = 0; m < ng; ++m) {
    diag_part(m) = basis[m].matrix()(diag_index, diag_index);
    off_part(m) = basis[m].matrix()(off_row, off_col);
  }

  std::vector<double> diag_vals(static_cast<std::size_t>(samples));
  std::vector<double> off_vals(static_cast<std::size_t>(samples));
  const int n_chunks =
      static_cast<int>(std::min<long>(128, std::max<long>(1, samples)));
  parallel_chunks(n_chunks, [&](int chunk) {
    const long begin = samples * chunk / n_chunks;
    const long end = samples * (chunk + 1) / n_chunks;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
    for (long i = begin; i < end; ++i) {
      const UnitVector n = random_unit_vector(ng, rng);
      Complex a_diag = 0.0, a_off = 0.0;
      for (int m = 0; m < ng; ++m) {
        a_diag += n.components(m) * diag_part(m);
        a_off += n.components(m) * off_part(m);
      }
      diag_vals[static_cast<std::size_t>(i)] = std::norm(a_diag);
      off_vals[static_cast<std::size_t>(i)] = std::norm(a_off);
    }
  });

  const MeanStderr diag_ms = mean_and_stderr(diag_vals);
  const MeanStderr off_ms = mean_and_stderr(off_vals);
  ElementAverages out;
  out.diag_sq = diag_ms.mean;
  out.diag_stderr = diag_ms.stderr_;
  out.offdiag_sq = off_ms.mean;
  out.offdiag_stderr = off_ms.stderr_;
  out.samples = samples;
  out.offdiag_target = 2.0 / ng;
  out.diag_target = 2.0 / ng * (1.0 - 1.0 / d);
  return out;
}

}  // namespace qfilab
