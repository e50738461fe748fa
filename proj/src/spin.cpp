#include "qfilab/spin.hpp"

#include <cmath>

#include "qfilab/bounds.hpp"

namespace qfilab {

Axis axis_from_name(const std::string& name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  throw ParseError("unknown axis: " + name);
}

namespace {

Matrix pauli(Axis axis) {
  Matrix s(2, 2);
  switch (axis) {
    case Axis::x:
      s << 0, 1, 1, 0;
      break;
    case Axis::y:
      s << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      break;
    case Axis::z:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw TooManyQubits("dense register representation is capped at 8 qubits");
  }
}

}  // namespace

CollectiveSpin collective_operator(int n_qubits, Axis axis) {
  check_qubit_count(n_qubits);
  const int dim = 1 << n_qubits;
  const Matrix s = pauli(axis);
  Matrix j = Matrix::Zero(dim, dim);
  for (int site = 0; site < n_qubits; ++site) {
    Matrix term = Matrix::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q) {
      term = kron(term, q == site ? s : Matrix::Identity(2, 2));
    }
    j += term;
  }
  return CollectiveSpin{n_qubits, axis, Observable(0.5 * j)};
}

Vector ghz_state(int n_qubits) {
  check_qubit_count(n_qubits);
  const int dim = 1 << n_qubits;
  Vector psi = Vector::Zero(dim);
  psi(0) = psi(dim - 1) = 1.0 / std::sqrt(2.0);
  return psi;
}

DensityMatrix noisy_ghz(int n_qubits, double p) {
  check_qubit_count(n_qubits);
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("noisy_ghz: p must be in [0, 1]");
  }
  const int dim = 1 << n_qubits;
  Matrix rho = Matrix::Zero(dim, dim);
  rho(0, 0) = rho(dim - 1, dim - 1) = 0.5;
  rho(0, dim - 1) = rho(dim - 1, 0) = 0.5 * (1.0 - p);
  return DensityMatrix(rho);
}

GhzRelation ghz_purity_relation(const DensityMatrix& rho, int n_qubits) {
  check_qubit_count(n_qubits);
  const int dim = 1 << n_qubits;
  if (rho.dim() != dim) {
    throw DimensionMismatch("ghz_purity_relation: state has the wrong register size");
  }

  // Support must lie in span{|0..0>, |1..1>}.
  Matrix block = Matrix::Zero(dim, dim);
  block(0, 0) = rho.matrix()(0, 0);
  block(0, dim - 1) = rho.matrix()(0, dim - 1);
  block(dim - 1, 0) = rho.matrix()(dim - 1, 0);
  block(dim - 1, dim - 1) = rho.matrix()(dim - 1, dim - 1);
  if (max_abs(rho.matrix() - block) > kReconstructionTol) {
    throw NotInSubspace("ghz_purity_relation: state leaks out of the GHZ subspace");
  }

  const CollectiveSpin jz = collective_operator(n_qubits, Axis::z);
  const double n2 = static_cast<double>(n_qubits) * n_qubits;

  GhzRelation out;
  out.lhs = qfi(rho, jz.op) / n2;
  const double p0 = rho.matrix()(0, 0).real();
  const double p1 = rho.matrix()(dim - 1, dim - 1).real();
  out.rhs = 2.0 * (rho.purity() - p0 * p0 - p1 * p1);
  out.holds = std::abs(out.lhs - out.rhs) <= 1e-9;

  const BoundCheck obs2 = bound_linear_entropy(rho, jz.op);
  out.obs2_gap = obs2.gap;
  out.obs2_bound = obs2.bound;
  out.obs2_saturated = std::abs(obs2.gap - obs2.bound) <= 1e-9;
  return out;
}

FidelityBound fidelity_bound(const DensityMatrix& rho, int n_qubits) {
  check_qubit_count(n_qubits);
  const int dim = 1 << n_qubits;
  if (rho.dim() != dim) {
    throw DimensionMismatch("fidelity_bound: state has the wrong register size");
  }
  const Vector ghz = ghz_state(n_qubits);
  const double n2 = static_cast<double>(n_qubits) * n_qubits;

  FidelityBound out;
  out.fidelity = (ghz.adjoint() * rho.matrix() * ghz)(0, 0).real();
  out.bound = out.fidelity > 0.5
                  ? n2 * (1.0 - 2.0 * out.fidelity) * (1.0 - 2.0 * out.fidelity)
                  : 0.0;
  out.qfi = qfi(rho, collective_operator(n_qubits, Axis::z).op);
  out.holds = out.qfi >= out.bound - 1e-9;
  return out;
}

ShotNoiseReport shot_noise_check(const std::vector<ProductComponent>& mixture,
                                 Axis axis) {
  if (mixture.empty()) {
    throw std::invalid_argument("shot_noise_check: empty mixture");
  }
  const int n = static_cast<int>(mixture.front().qubits.size());
  check_qubit_count(n);
  const int dim = 1 << n;

  double total = 0.0;
  Matrix rho = Matrix::Zero(dim, dim);
  for (const ProductComponent& c : mixture) {
    if (static_cast<int>(c.qubits.size()) != n) {
      throw DimensionMismatch("shot_noise_check: components differ in qubit count");
    }
    Matrix psi = Matrix::Ones(1, 1);
    for (const Vector& q : c.qubits) {
      if (q.size() != 2) {
        throw DimensionMismatch("shot_noise_check: qubit states must be 2-vectors");
      }
      psi = kron(psi, q.normalized());
    }
    rho += c.weight * (psi * psi.adjoint());
    total += c.weight;
  }
  rho /= total;
  rho = 0.5 * (rho + rho.adjoint().eval());

  const DensityMatrix state(rho);
  ShotNoiseReport out;
  out.n_qubits = n;
  out.qfi = qfi(state, collective_operator(n, axis).op);
  out.shot_noise_ok = out.qfi <= n + 1e-9;
  out.heisenberg_ok = out.qfi <= static_cast<double>(n) * n + 1e-9;
  return out;
}

std::vector<ScalingRow> heisenberg_scaling_condition(
    const std::vector<std::pair<int, DensityMatrix>>& family, Axis axis,
    double s) {
  std::vector<ScalingRow> rows;
  rows.reserve(family.size());
  for (const auto& [n, rho] : family) {
    check_qubit_count(n);
    if (rho.dim() != (1 << n)) {
      throw DimensionMismatch("heisenberg_scaling_condition: register size mismatch");
    }
    const double s_lin = 1.0 - rho.purity();
    if (s_lin > s + 1e-9) {
      throw InvalidSpectrum("heisenberg_scaling_condition: state exceeds the linear-entropy cap");
    }
    const Observable& j = collective_operator(n, axis).op;
    ScalingRow row;
    row.n_qubits = n;
    row.variance = variance(rho, j);
    row.qfi = qfi(rho, j);
    row.s_lin = s_lin;
    const double n2 = static_cast<double>(n) * n;
    row.obs2_ok = row.variance - 0.25 * row.qfi <= 2.0 * s * n2 / 4.0 + 1e-9;
    row.fq_quarter_over_n2_lower = row.variance / n2 - 0.5 * s;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qfilab
