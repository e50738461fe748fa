#pragma once

#include <string>
#include <vector>

#include "qfilab/averages.hpp"
#include "qfilab/entropy.hpp"

namespace qfilab {

// Pure state mixed with white noise: l_1 = 1-(d-1)L, l_k = L otherwise.
struct WhiteNoiseFamily {
  int d;
  double lambda;  // in (0, 1/d]

  WhiteNoiseFamily(int d_, double lambda_);
  RealVector eigenvalues() const;
  DensityMatrix state() const;
  double exp_s() const;  // closed form in Lambda
};

// Lambda solving exp_s(Lambda) = target (exp_s is strictly increasing).
double white_noise_lambda_for_exp_s(int d, double exp_s_target);

// Closed form of the averaged generalized QFI on the white-noise family.
double white_noise_avg_closed_form(int d, double lambda,
                                   const MonotoneMean& mean);

struct WhiteNoisePoint {
  double lambda;
  double exp_s;
  double avg_qfi_math;
  double avg_qfi_kmb;
};

// Boundary curve for the landscape figures; every point is cross-checked
// against direct evaluation on the explicit spectrum to 1e-8.
std::vector<WhiteNoisePoint> white_noise_curve(int d,
                                               const RealVector& lambda_grid);

struct Stationarity {
  double grad_alignment;   // |cos| between grad f and grad exp(S), reduced
  double residual;         // norm of grad f projected on the constraint tangent
  double grad_f_norm;
  double grad_constraint_norm;
};

// Stationarity of f = avg F_Q(rho;A_n) on the exp(S) level set at the
// white-noise point, in reduced coordinates (l_d eliminated).
Stationarity lagrange_stationarity(int d, double lambda);

// (d-1)x(d-1) Hessian of f in reduced coordinates at the white-noise point;
// analytic, with a finite-difference version kept as a cross-check.
RealMatrix landscape_hessian(int d, double lambda);
RealMatrix landscape_hessian_fd(int d, double lambda, double step = 0.0);
double hessian_min_eig(int d, double lambda);

struct MinProbe {
  double best_value;
  RealVector best_spectrum;
  double family_value;
  double family_lambda;
};

// Multi-start projected descent of avg F_Q(rho;A_n) over spectra with
// exp(S) fixed; probes (does not certify) global optimality of the
// white-noise family.
MinProbe global_min_probe(int d, double exp_s_target, int restarts,
                          std::uint64_t seed);

struct ScanRecord {
  std::string id;
  std::uint64_t seed;
  int rank;
  double s_lin;
  double s_vn;
  double exp_s;
  double h;
  double avg_gap;
  double avg_qfi;
  double avg_qfi_math;  // NaN for singular states
};

// Random-state scatter data plus the pure / completely-mixed marker rows.
std::vector<ScanRecord> region_scan(int d, int n_states,
                                    const std::vector<int>& ranks,
                                    std::uint64_t seed);

}  // namespace qfilab
