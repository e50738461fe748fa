#pragma once

#include "qfilab/errors.hpp"
#include "qfilab/linalg.hpp"

namespace qfilab {

struct Spectral {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // column k pairs with eigenvalues(k)
};

// Eigendecomposition of a Hermitian matrix with descending eigenvalues and a
// deterministic eigenvector convention: each column is phase-fixed so its
// first nonzero component is real positive, and degenerate eigenvalues are
// ordered by lexicographic comparison of the phase-fixed columns.
Spectral spectral_decompose(const Matrix& m);

class Observable {
 public:
  explicit Observable(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  bool is_traceless() const { return traceless_; }
  double norm2() const { return norm2_; }  // Tr(A^2)

 private:
  Matrix m_;
  bool traceless_;
  double norm2_;
};

class DensityMatrix {
 public:
  // Validates Hermiticity, unit trace and positivity; eigenvalues in
  // [-1e-12, 0) are clamped to zero and the spectrum renormalized.
  explicit DensityMatrix(const Matrix& rho);

  // State with the given spectrum in the given orthonormal basis (columns).
  static DensityMatrix from_spectrum(const RealVector& lambdas,
                                     const Matrix& basis);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

  // Number of eigenvalues at or above the shared zero threshold.
  int rank() const;
  bool is_full_rank() const { return rank() == dim(); }
  double purity() const { return eigenvalues_.squaredNorm(); }

 private:
  DensityMatrix() = default;

  Matrix matrix_;
  RealVector eigenvalues_;
  Matrix eigenvectors_;
};

// A in the eigenbasis of rho: B_kl = <k|A|l>.
Matrix to_eigenbasis(const DensityMatrix& rho, const Observable& a);

void require_same_dim(const DensityMatrix& rho, const Observable& a);

}  // namespace qfilab
