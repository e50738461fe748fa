#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qfilab/metrology.hpp"

namespace qfilab {

enum class Axis { x, y, z };
Axis axis_from_name(const std::string& name);

inline constexpr int kMaxQubits = 8;

struct CollectiveSpin {
  int n_qubits;
  Axis axis;
  Observable op;  // J_l = (1/2) sum_n sigma_l^(n), dense 2^N x 2^N
};

CollectiveSpin collective_operator(int n_qubits, Axis axis);

// |GHZ> = (|0...0> + |1...1>)/sqrt(2).
Vector ghz_state(int n_qubits);

// rho_p = p (P_00..0 + P_11..1)/2 + (1-p) |GHZ><GHZ|.
DensityMatrix noisy_ghz(int n_qubits, double p);

struct GhzRelation {
  double lhs;   // F_Q[rho,J_z] / N^2
  double rhs;   // 2 [Tr rho^2 - <P_00..0>^2 - <P_11..1>^2]
  bool holds;
  double obs2_gap;    // V(rho, J_z)
  double obs2_bound;  // 2 S_lin N^2/4
  bool obs2_saturated;
};

// Purity identity for states supported on span{|0..0>, |1..1>}, plus the
// saturation of the linear-entropy bound with A = J_z.
GhzRelation ghz_purity_relation(const DensityMatrix& rho, int n_qubits);

struct FidelityBound {
  double fidelity;  // <GHZ|rho|GHZ>
  double bound;     // N^2 (1-2F)^2 for F > 1/2, else 0
  double qfi;
  bool holds;
};

FidelityBound fidelity_bound(const DensityMatrix& rho, int n_qubits);

struct ProductComponent {
  double weight;
  std::vector<Vector> qubits;  // N single-qubit pure states
};

struct ShotNoiseReport {
  int n_qubits;
  double qfi;
  bool shot_noise_ok;   // F_Q <= N  (separable bound)
  bool heisenberg_ok;   // F_Q <= N^2
};

// Builds the product-state mixture and checks the separable and Heisenberg
// bounds for J_l.
ShotNoiseReport shot_noise_check(const std::vector<ProductComponent>& mixture,
                                 Axis axis);

struct ScalingRow {
  int n_qubits;
  double variance;
  double qfi;
  double s_lin;
  bool obs2_ok;                    // var - qfi/4 <= 2 s N^2/4
  double fq_quarter_over_n2_lower; // var/N^2 - s/2 <= (F_Q/4)/N^2
};

// Heisenberg-scaling report for a family of states with S_lin <= s.
std::vector<ScalingRow> heisenberg_scaling_condition(
    const std::vector<std::pair<int, DensityMatrix>>& family, Axis axis,
    double s);

}  // namespace qfilab
