#pragma once

#include <cstdint>

#include "qfilab/generators.hpp"

namespace qfilab {

// Rotation-invariant measure on the sphere: normalized iid Gaussians.
UnitVector random_unit_vector(int n_components, Rng& rng);
UnitVector random_unit_vector(int n_components, std::uint64_t seed);

// Ginibre construction rho = G G^dag / Tr(G G^dag) with G complex Gaussian
// d x rank; the result has the requested rank almost surely.
DensityMatrix random_density_matrix(int d, int rank, std::uint64_t seed);

// GUE-style random Hermitian matrix (entries O(1)).
Matrix random_hermitian(int d, Rng& rng);

// Random observable; `traceless_normalized` projects out the trace and
// rescales to Tr(A^2) = 2 (a generator-sphere member).
Observable random_observable(int d, std::uint64_t seed,
                             bool traceless_normalized = false);

// Haar-distributed isometry (rows x cols, rows >= cols): QR of a complex
// Gaussian matrix with the R-diagonal phase correction.
Matrix haar_isometry(int rows, int cols, Rng& rng);
inline Matrix haar_unitary(int d, Rng& rng) { return haar_isometry(d, d, rng); }

struct Decomposition {
  RealVector probabilities;  // p_k >= 0, sum 1
  Matrix states;             // column k is the unit vector |Psi_k>
  int size() const { return static_cast<int>(probabilities.size()); }
};

// The eigendecomposition itself, restricted to nonzero eigenvalues.
Decomposition eigen_decomposition(const DensityMatrix& rho);

// Applies a K x rank isometry to the subnormalized eigenvector list; the
// identity isometry reproduces the eigendecomposition.
Decomposition decomposition_from_isometry(const DensityMatrix& rho,
                                          const Matrix& w);

// Random pure-state decomposition of size K >= rank(rho).
Decomposition random_decomposition(const DensityMatrix& rho, int size,
                                   std::uint64_t seed);

// max_kl |rho - sum_k p_k |Psi_k><Psi_k||.
double decomposition_residual(const DensityMatrix& rho,
                              const Decomposition& dec);

}  // namespace qfilab
