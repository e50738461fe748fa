#include "qfilab/landscape.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace qfilab {

WhiteNoiseFamily::WhiteNoiseFamily(int d_, double lambda_)
    : d(d_), lambda(lambda_) {
  if (d < 2) throw InvalidRank("WhiteNoiseFamily: d must be >= 2");
  if (lambda <= 0.0 || lambda > 1.0 / d + 1e-15) {
    throw InvalidSpectrum("WhiteNoiseFamily: Lambda must be in (0, 1/d]");
  }
}

RealVector WhiteNoiseFamily::eigenvalues() const {
  RealVector l = RealVector::Constant(d, lambda);
  l(0) = 1.0 - (d - 1) * lambda;
  return l;
}

DensityMatrix WhiteNoiseFamily::state() const {
  return DensityMatrix::from_spectrum(eigenvalues(),
                                      Matrix::Identity(d, d));
}

double WhiteNoiseFamily::exp_s() const {
  const double q = 1.0 - (d - 1) * lambda;
  return std::exp(-q * std::log(q) - (d - 1) * lambda * std::log(lambda));
}

double white_noise_lambda_for_exp_s(int d, double exp_s_target) {
  if (exp_s_target < 1.0 || exp_s_target > d + 1e-9) {
    throw TargetOutOfRange("white_noise_lambda_for_exp_s: target outside [1, d]");
  }
  // exp(S) is strictly increasing in Lambda on (0, 1/d].
  double lo = 1e-300;
  double hi = 1.0 / d;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (WhiteNoiseFamily(d, mid).exp_s() < exp_s_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double white_noise_avg_closed_form(int d, double lambda,
                                   const MonotoneMean& mean) {
  const double q = 1.0 - (d - 1) * lambda;
  const double ng = static_cast<double>(d) * d - 1.0;
  const double cross = 2.0 * (d - 1) / mean.evaluate(q, lambda);
  const double majority =
      ((d - 1.0) * (d - 1.0) / d + (d - 1.0) * (d - 2.0)) / lambda;
  const double principal = (d - 1.0) / d / q;
  return 2.0 / ng * (cross + majority + principal);
}

std::vector<WhiteNoisePoint> white_noise_curve(int d,
                                               const RealVector& lambda_grid) {
  std::vector<WhiteNoisePoint> points;
  points.reserve(static_cast<std::size_t>(lambda_grid.size()));
  for (Eigen::Index i = 0; i < lambda_grid.size(); ++i) {
    const WhiteNoiseFamily family(d, lambda_grid(i));
    WhiteNoisePoint p;
    p.lambda = family.lambda;
    p.exp_s = family.exp_s();
    p.avg_qfi_math =
        white_noise_avg_closed_form(d, p.lambda, MonotoneMean::arithmetic());
    p.avg_qfi_kmb =
        white_noise_avg_closed_form(d, p.lambda, MonotoneMean::logarithmic());

    // The closed form must reproduce the direct spectrum sums.
    const RealVector l = family.eigenvalues();
    if (std::abs(p.avg_qfi_math - avg_qfi_math_analytic(l)) > 1e-8 ||
        std::abs(p.avg_qfi_kmb - avg_qfi_kmb_analytic(l)) > 1e-8) {
      throw InternalMismatch("white_noise_curve: closed form disagrees with spectrum sums");
    }
    points.push_back(p);
  }
  return points;
}

namespace {

// f and its derivatives in full coordinates; f equals the averaged
// F_Q(rho;A_n) as a function of the spectrum.
double f_full(const RealVector& l) { return avg_qfi_math_analytic(l); }

RealVector f_grad_full(const RealVector& l) {
  const int d = static_cast<int>(l.size());
  const double ng = static_cast<double>(d) * d - 1.0;
  RealVector g(d);
  for (int i = 0; i < d; ++i) {
    double pair_sum = 0.0;
    for (int k = 0; k < d; ++k) {
      const double s = l(i) + l(k);
      pair_sum += 1.0 / (s * s);
    }
    g(i) = 2.0 / ng * (-4.0 * pair_sum + 1.0 / (d * l(i) * l(i)));
  }
  return g;
}

RealMatrix f_hessian_full(const RealVector& l) {
  const int d = static_cast<int>(l.size());
  const double ng = static_cast<double>(d) * d - 1.0;
  RealMatrix h(d, d);
  for (int i = 0; i < d; ++i) {
    double diag = 2.0 * (1.0 - 1.0 / d) / (l(i) * l(i) * l(i));
    for (int k = 0; k < d; ++k) {
      if (k == i) continue;
      const double s = l(i) + l(k);
      const double cube = 8.0 / (s * s * s);
      h(i, k) = 2.0 / ng * cube;
      diag += cube;
    }
    h(i, i) = 2.0 / ng * diag;
  }
  return h;
}

RealVector full_from_reduced(const RealVector& x) {
  RealVector l(x.size() + 1);
  l.head(x.size()) = x;
  l(x.size()) = 1.0 - x.sum();
  return l;
}

RealVector reduced_grad(const RealVector& l) {
  const RealVector g = f_grad_full(l);
  const int n = static_cast<int>(l.size()) - 1;
  return g.head(n).array() - g(n);
}

}  // namespace

Stationarity lagrange_stationarity(int d, double lambda) {
  const WhiteNoiseFamily family(d, lambda);
  const RealVector l = family.eigenvalues();
  const int n = d - 1;

  const RealVector grad_f = reduced_grad(l);

  const SpectrumPoint point = entropies(l);
  RealVector grad_g(n);
  for (int i = 0; i < n; ++i) {
    grad_g(i) = point.exp_s * (std::log(l(n)) - std::log(l(i)));
  }

  Stationarity out;
  out.grad_f_norm = grad_f.norm();
  out.grad_constraint_norm = grad_g.norm();
  if (out.grad_f_norm < 1e-12 || out.grad_constraint_norm < 1e-12) {
    throw DegenerateGradient("lagrange_stationarity: gradient vanishes (uniform point)");
  }
  const RealVector g_hat = grad_g / out.grad_constraint_norm;
  out.grad_alignment =
      std::abs(grad_f.dot(g_hat)) / out.grad_f_norm;
  out.residual = (grad_f - grad_f.dot(g_hat) * g_hat).norm();
  return out;
}

RealMatrix landscape_hessian(int d, double lambda) {
  const WhiteNoiseFamily family(d, lambda);
  const RealVector l = family.eigenvalues();
  const RealMatrix hf = f_hessian_full(l);
  const int n = d - 1;
  RealMatrix h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      h(i, j) = hf(i, j) - hf(i, n) - hf(n, j) + hf(n, n);
    }
  }
  return h;
}

RealMatrix landscape_hessian_fd(int d, double lambda, double step) {
  const WhiteNoiseFamily family(d, lambda);
  const RealVector l = family.eigenvalues();
  const int n = d - 1;
  const RealVector x0 = l.head(n);
  if (step <= 0.0) {
    step = 1e-4 * std::min(lambda, 1.0 - (d - 1) * lambda);
  }

  const auto f_red = [&](const RealVector& x) {
    return f_full(full_from_reduced(x));
  };

  RealMatrix h(n, n);
  const double f0 = f_red(x0);
  for (int i = 0; i < n; ++i) {
    RealVector xp = x0, xm = x0;
    xp(i) += step;
    xm(i) -= step;
    h(i, i) = (f_red(xp) - 2.0 * f0 + f_red(xm)) / (step * step);
    for (int j = i + 1; j < n; ++j) {
      RealVector xpp = x0, xpm = x0, xmp = x0, xmm = x0;
      xpp(i) += step; xpp(j) += step;
      xpm(i) += step; xpm(j) -= step;
      xmp(i) -= step; xmp(j) += step;
      xmm(i) -= step; xmm(j) -= step;
      h(i, j) = h(j, i) =
          (f_red(xpp) - f_red(xpm) - f_red(xmp) + f_red(xmm)) /
          (4.0 * step * step);
    }
  }
  return h;
}

double hessian_min_eig(int d, double lambda) {
  const RealMatrix h = landscape_hessian(d, lambda);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
  return solver.eigenvalues().minCoeff();
}

namespace {

double exp_s_of(const RealVector& l) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < l.size(); ++k) {
    if (l(k) > 0.0) s -= l(k) * std::log(l(k));
  }
  return std::exp(s);
}

RealVector exp_s_grad(const RealVector& l) {
  const double es = exp_s_of(l);
  RealVector g(l.size());
  for (Eigen::Index k = 0; k < l.size(); ++k) {
    g(k) = es * (-std::log(l(k)) - 1.0);
  }
  return g;
}

constexpr double kInteriorFloor = 1e-8;

bool interior(const RealVector& l) { return l.minCoeff() >= kInteriorFloor; }

// Moves x along the simplex-tangent direction of grad exp(S) until the
// constraint is met again. Returns false if the path leaves the interior.
bool retract_to_constraint(RealVector& x, double target) {
  for (int it = 0; it < 60; ++it) {
    if (!interior(x)) return false;
    const double err = exp_s_of(x) - target;
    if (std::abs(err) <= 1e-11) return true;
    RealVector g = exp_s_grad(x);
    g.array() -= g.mean();  // stay on the probability simplex
    const double gn2 = g.squaredNorm();
    if (gn2 < 1e-24) return false;
    x -= (err / gn2) * g;
  }
  return false;
}

// Random interior spectrum with exp(S) equal to target: Dirichlet draw,
// then bisection along a path that moves entropy in the needed direction.
bool random_feasible_spectrum(int d, double target, Rng& rng, RealVector& out) {
  RealVector base(d);
  for (int k = 0; k < d; ++k) {
    base(k) = -std::log(1.0 - rng.uniform());
  }
  base /= base.sum();
  base = 0.8 * base + RealVector::Constant(d, 0.2 / d);

  const RealVector uniform = RealVector::Constant(d, 1.0 / d);
  RealVector sharp = RealVector::Constant(d, kInteriorFloor * 2);
  Eigen::Index top;
  base.maxCoeff(&top);
  sharp(top) = 1.0 - (d - 1) * kInteriorFloor * 2;

  const RealVector& dest = (exp_s_of(base) < target) ? uniform : sharp;
  double lo = 0.0, hi = 1.0;
  const double es_lo = exp_s_of(base);
  const double es_hi = exp_s_of(dest);
  if ((es_lo - target) * (es_hi - target) > 0.0) return false;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    const RealVector l = (1.0 - mid) * base + mid * dest;
    if ((exp_s_of(l) - target) * (es_lo - target) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out = (1.0 - 0.5 * (lo + hi)) * base + 0.5 * (lo + hi) * dest;
  return interior(out) && retract_to_constraint(out, target);
}

}  // namespace

MinProbe global_min_probe(int d, double exp_s_target, int restarts,
                          std::uint64_t seed) {
  if (d < 2) throw InvalidRank("global_min_probe: d must be >= 2");
  if (exp_s_target <= 1.0 + 1e-9 || exp_s_target > d + 1e-9) {
    throw TargetOutOfRange("global_min_probe: exp(S) target must lie in (1, d]");
  }

  MinProbe probe;
  if (exp_s_target >= d - 1e-9) {
    // The constraint set degenerates to the uniform spectrum.
    const RealVector uniform = RealVector::Constant(d, 1.0 / d);
    probe.family_lambda = 1.0 / d;
    probe.family_value = f_full(uniform);
    probe.best_value = probe.family_value;
    probe.best_spectrum = uniform;
    return probe;
  }

  probe.family_lambda = white_noise_lambda_for_exp_s(d, exp_s_target);
  probe.family_value =
      f_full(WhiteNoiseFamily(d, probe.family_lambda).eigenvalues());
  probe.best_value = std::numeric_limits<double>::infinity();

  const RealVector ones = RealVector::Ones(d);
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    RealVector x(d);
    if (!random_feasible_spectrum(d, exp_s_target, rng, x)) continue;

    double fx = f_full(x);
    for (int it = 0; it < 400; ++it) {
      // Project the gradient on the tangent of {sum = 1, exp(S) = target}.
      RealVector grad = f_grad_full(x);
      grad -= (grad.dot(ones) / d) * ones;
      RealVector g = exp_s_grad(x);
      g.array() -= g.mean();
      const double gn = g.norm();
      if (gn > 1e-15) grad -= (grad.dot(g) / (gn * gn)) * g;

      const double gnorm = grad.norm();
      if (gnorm < 1e-10 * std::max(1.0, f_grad_full(x).norm())) break;

      bool moved = false;
      double alpha = 0.05 / std::max(1.0, gnorm);
      for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
        RealVector y = x - alpha * grad;
        if (!interior(y)) continue;
        if (!retract_to_constraint(y, exp_s_target)) continue;
        const double fy = f_full(y);
        if (fy <= fx - 1e-4 * alpha * gnorm * gnorm) {
          x = y;
          fx = fy;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }

    if (std::abs(exp_s_of(x) - exp_s_target) <= 1e-9 && fx < probe.best_value) {
      probe.best_value = fx;
      probe.best_spectrum = x;
    }
  }

  if (!std::isfinite(probe.best_value)) {
    throw Error("global_min_probe: no feasible restart converged");
  }
  return probe;
}

std::vector<ScanRecord> region_scan(int d, int n_states,
                                    const std::vector<int>& ranks,
                                    std::uint64_t seed) {
  if (d < 2) throw InvalidRank("region_scan: d must be >= 2");
  std::vector<int> rank_cycle = ranks;
  if (rank_cycle.empty()) {
    for (int r = 1; r <= d; ++r) rank_cycle.push_back(r);
  }
  for (int r : rank_cycle) {
    if (r < 1 || r > d) throw InvalidRank("region_scan: rank out of range");
  }

  std::vector<ScanRecord> records;
  records.reserve(static_cast<std::size_t>(n_states) + 2);

  const auto record_for = [d](std::string id, std::uint64_t s, int rank,
                              const RealVector& lambdas) {
    const SpectrumPoint p = entropies(lambdas);
    ScanRecord rec;
    rec.id = std::move(id);
    rec.seed = s;
    rec.rank = rank;
    rec.s_lin = p.s_lin;
    rec.s_vn = p.s_vn;
    rec.exp_s = p.exp_s;
    rec.h = p.h;
    rec.avg_gap = avg_gap_analytic(lambdas);
    rec.avg_qfi = avg_qfi_analytic(lambdas);
    rec.avg_qfi_math = (lambdas.minCoeff() >= kZeroEigenvalueTol)
                           ? avg_qfi_math_analytic(lambdas)
                           : std::numeric_limits<double>::quiet_NaN();
    return rec;
  };

  RealVector pure = RealVector::Zero(d);
  pure(0) = 1.0;
  records.push_back(record_for("pure", seed, 1, pure));
  records.push_back(
      record_for("mixed", seed, d, RealVector::Constant(d, 1.0 / d)));

  for (int i = 0; i < n_states; ++i) {
    const int rank = rank_cycle[static_cast<std::size_t>(i) % rank_cycle.size()];
    const std::uint64_t state_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_density_matrix(d, rank, state_seed);
    records.push_back(record_for("random-" + std::to_string(i), state_seed,
                                 rank, rho.eigenvalues()));
  }
  return records;
}

}  // namespace qfilab
