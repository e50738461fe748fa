#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace qfilab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Shared tolerances. kZeroEigenvalueTol is the single rank threshold used by
// every k,l summation in the library.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kZeroEigenvalueTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-10;

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Matrix& m, double tol = kHermitianTol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

// Tr(a*b) in O(d^2); a, b square of equal dimension.
inline Complex trace_product(const Matrix& a, const Matrix& b) {
  return (a.transpose().cwiseProduct(b)).sum();
}

// Summation with a fixed reduction tree so results do not depend on how the
// samples were produced (serial or chunked).
double pairwise_sum(std::span<const double> values);

struct MeanStderr {
  double mean;
  double stderr_;
};
MeanStderr mean_and_stderr(std::span<const double> values);

// SplitMix64 step, used only to derive decorrelated stream seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Deterministic random source. Gaussians use Box-Muller on top of mt19937_64
// so streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double gaussian();

  Complex complex_gaussian() { return {gaussian(), gaussian()}; }

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Number of worker threads, capped by the QFI_LAB_THREADS environment
// variable. Chunked loops give identical results for any cap.
int thread_cap();

// Runs work(chunk) for chunk = 0..n_chunks-1 on up to thread_cap() threads.
void parallel_chunks(int n_chunks, const std::function<void(int)>& work);

}  // namespace qfilab
