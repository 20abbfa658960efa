#pragma once

#include "topoprep/category.hpp"
#include "topoprep/lattice.hpp"
#include "topoprep/qubits.hpp"

namespace topo::lattice {

/// One summand of a Hamiltonian together with the structure that licenses an
/// exact exponential: H term = coeff * op, with op a projector (P^2 = P), an
/// involution (S^2 = I), or a uniform single-qubit field sum_j n.sigma_j.
struct HamiltonianTerm {
  enum class Kind { projector, involution, field };
  Kind kind;
  double coeff = 1.0;
  SparseXc op;               // projector / involution kinds
  Eigen::Vector3d field_dir = Eigen::Vector3d::Zero();  // field kind
  int n_qubits = 0;
};

/// Sparse Hamiltonian cached together with its term list.
struct ModelOperator {
  SparseOperator H;
  std::vector<HamiltonianTerm> terms;
  int n_qubits = 0;
  bool commuting_terms = false;  // verified at build time

  VectorXc apply_term_exponentials(const VectorXc& v, double time) const;
};

double pairwise_commutator_defect(const std::vector<HamiltonianTerm>& terms, Eigen::Index dim);

/// Toric code on the honeycomb torus: B_p = X^{x6} on plaquette edges,
/// A_v = Z^{x3} on vertex edges, H = -sum A_v - sum B_p.
ModelOperator build_toric_code(const HoneycombTorus& lat);

/// Levin-Wen string-net Hamiltonian for a two-label self-dual layer category
/// (semion or Fibonacci). A_v projects onto fusion-consistent triples; B_p is
/// the F-symbol plaquette projector, zero outside the A_v-stabilized subspace.
ModelOperator build_levin_wen(const anyon::CategoryData& layer, const HoneycombTorus& lat);

/// Uniform field H = sum_j n.sigma_j and its product ground state phi^(xN),
/// phi the -1 eigenvector of n.sigma.
std::pair<ModelOperator, QuantumState> build_field_hamiltonian(const Eigen::Vector3d& n,
                                                               const HoneycombTorus& lat);

// Families of trivial Hamiltonians used in the experiments.
Eigen::Vector3d field_theta(double theta);                       // cos(t) Z + sin(t) X
Eigen::Vector3d field_disc(double a, double b, int sign);        // aX + bY +- sqrt(1-a^2-b^2) Z
Eigen::Vector3d field_disc_x(double a, double b, int sign);      // +-sqrt(..) X + bY + aZ

struct LogicalOps {
  SparseOperator Xbar;   // X7 X8 X11 X12
  SparseOperator Zbar;   // Z1 Z2
  SparseOperator Zbar1;  // Z10 Z12 (anticommutes with Xbar)
};
LogicalOps logical_operators(const HoneycombTorus& lat);

/// Permutation unitary on (C^2)^(x12) induced by the pi/3 rotation.
SparseOperator rotation_unitary(const HoneycombTorus& lat);

/// Coordinate-list text dump (row, col, re, im) for cross-checking.
void dump_sparse_operator(const SparseOperator& op, const std::string& path);

}  // namespace topo::lattice
