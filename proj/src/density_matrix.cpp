#include "qfilab/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace qfilab {

namespace {

// Multiplies each column by a phase making its first nonzero entry real
// positive.
void fix_phases(Matrix& vectors) {
  for (Eigen::Index col = 0; col < vectors.cols(); ++col) {
    for (Eigen::Index row = 0; row < vectors.rows(); ++row) {
      const Complex v = vectors(row, col);
      if (std::abs(v) > 1e-12) {
        vectors.col(col) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
}

bool lex_less(const Matrix& vectors, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index row = 0; row < vectors.rows(); ++row) {
    const Complex va = vectors(row, a);
    const Complex vb = vectors(row, b);
    if (va.real() != vb.real()) return va.real() < vb.real();
    if (va.imag() != vb.imag()) return va.imag() < vb.imag();
  }
  return false;
}

}  // namespace

Spectral spectral_decompose(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw NotHermitian("spectral_decompose: matrix is not square");
  }
  if (!is_hermitian(m, 1e-10)) {
    throw NotHermitian("spectral_decompose: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error("spectral_decompose: eigensolver failed");
  }

  Matrix vectors = solver.eigenvectors();
  fix_phases(vectors);
  const RealVector values = solver.eigenvalues();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  const double tie = 1e-12;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     if (values(a) > values(b) + tie) return true;
                     if (values(b) > values(a) + tie) return false;
                     return lex_less(vectors, a, b);
                   });

  Spectral out;
  out.eigenvalues.resize(values.size());
  out.eigenvectors.resize(vectors.rows(), vectors.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues(static_cast<Eigen::Index>(k)) = values(order[k]);
    out.eigenvectors.col(static_cast<Eigen::Index>(k)) =
        vectors.col(order[k]);
  }
  return out;
}

Observable::Observable(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw NotHermitian("Observable: matrix must be square");
  }
  if (!is_hermitian(m_)) {
    throw NotHermitian("Observable: matrix is not Hermitian");
  }
  traceless_ = std::abs(m_.trace()) <= kHermitianTol;
  norm2_ = trace_product(m_, m_).real();
}

DensityMatrix::DensityMatrix(const Matrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) {
    throw NotHermitian("DensityMatrix: matrix must be square");
  }
  if (!is_hermitian(rho)) {
    throw NotHermitian("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > kHermitianTol) {
    throw InvalidSpectrum("DensityMatrix: trace is not 1");
  }

  Spectral spec = spectral_decompose(rho);
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    double& l = spec.eigenvalues(k);
    if (l < -kHermitianTol) {
      throw InvalidSpectrum("DensityMatrix: negative eigenvalue beyond tolerance");
    }
    if (l < 0.0) l = 0.0;
  }
  spec.eigenvalues /= spec.eigenvalues.sum();

  matrix_ = rho;
  eigenvalues_ = std::move(spec.eigenvalues);
  eigenvectors_ = std::move(spec.eigenvectors);
}

DensityMatrix DensityMatrix::from_spectrum(const RealVector& lambdas,
                                           const Matrix& basis) {
  if (lambdas.size() != basis.cols() || basis.rows() != basis.cols()) {
    throw DimensionMismatch("from_spectrum: spectrum/basis size mismatch");
  }
  RealVector l = lambdas;
  for (Eigen::Index k = 0; k < l.size(); ++k) {
    if (l(k) < -kHermitianTol) {
      throw InvalidSpectrum("from_spectrum: negative eigenvalue");
    }
    if (l(k) < 0.0) l(k) = 0.0;
  }
  if (std::abs(l.sum() - 1.0) > 1e-9) {
    throw InvalidSpectrum("from_spectrum: eigenvalues must sum to 1");
  }
  l /= l.sum();
  if (max_abs(basis.adjoint() * basis -
              Matrix::Identity(basis.rows(), basis.cols())) > 1e-10) {
    throw InvalidSpectrum("from_spectrum: basis is not unitary");
  }

  // Keep the stored spectrum descending with its matching columns.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(l.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return l(a) > l(b); });

  DensityMatrix out;
  out.eigenvalues_.resize(l.size());
  out.eigenvectors_.resize(basis.rows(), basis.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues_(static_cast<Eigen::Index>(k)) = l(order[k]);
    out.eigenvectors_.col(static_cast<Eigen::Index>(k)) = basis.col(order[k]);
  }
  out.matrix_ = out.eigenvectors_ * out.eigenvalues_.asDiagonal() *
                out.eigenvectors_.adjoint();
  // Symmetrize away the last-bit asymmetry of the triple product.
  out.matrix_ = 0.5 * (out.matrix_ + out.matrix_.adjoint().eval());
  return out;
}

int DensityMatrix::rank() const {
  int r = 0;
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) {
    if (eigenvalues_(k) >= kZeroEigenvalueTol) ++r;
  }
  return r;
}

Matrix to_eigenbasis(const DensityMatrix& rho, const Observable& a) {
  require_same_dim(rho, a);
  return rho.eigenvectors().adjoint() * a.matrix() * rho.eigenvectors();
}

void require_same_dim(const DensityMatrix& rho, const Observable& a) {
  if (rho.dim() != a.dim()) {
    throw DimensionMismatch("state and observable dimensions differ");
  }
}

}  // namespace qfilab
