#pragma once

#include "topoprep/schrieffer_wolff.hpp"

namespace topo::majorana {

struct ChainSpec {
  int L = 0;
  double g = 0;
  enum class Boundary { open, periodic } boundary = Boundary::open;
};

/// Transverse-field Ising image of the Majorana chain:
/// H = -(1/2) sum_{j<L} X_j X_{j+1} + (g/2) sum_j Z_j.
lattice::ModelOperator build_tfim(const ChainSpec& spec);

/// Fermionic parity in the spin picture: F = Z^(xL) (convention -i c_{2j-1} c_{2j} = Z_j).
SparseOperator parity_operator(int L);

/// 2 sin(pi / (2L+1)).
double critical_gap(int L);

/// Jordan-Wigner Majorana operator c_p, p = 1..2L (1-based).
SparseXc majorana_operator(int p, int L);

/// Quadratic Hamiltonian (i/4) sum_pq Vmat_{pq} c_p c_q from a real
/// antisymmetric 2L x 2L matrix; checks ||V|| <= 1 and range-r banding.
SparseOperator quadratic_hamiltonian(const MatrixXd& Vmat, int L, int expected_range = -1);

struct InterpolationReport {
  double parity_drift = 0;       // max |<F>(t) - <F>(0)| along the trajectory
  int target_sector = +1;        // parity of the initial state
  double overlap_with_target = 0;
  double eps_adia_final = 0;
};

/// Evolves the g-field ground state into the L-site TFIM at g=0 and checks the
/// parity-resolved target (|g0> or |g1> by sector).
InterpolationReport symmetry_protected_interpolation(const ChainSpec& spec, double T, double dt);

struct ParityEffectiveReport {
  double E0 = 0, E1 = 0, Delta = 0;
  Complex alpha, beta;            // Heff = alpha I + beta F on the parity basis
  double parity_offdiag_residual = 0;
  // deviations of (alpha,beta) from the printed form (E0/2, -Delta/2) and the
  // gap-consistent form ((E0+E1)/2, +-Delta/2)
  double printed_form_dev = 0;
  double gap_form_dev = 0;
};

/// Exact SW for TFIM(g=0) + eps*V; verifies block-diagonality in the parity
/// eigenbasis and fits Heff = alpha I + beta F. V defaults to -(1/2) sum Z.
ParityEffectiveReport exact_parity_effective(const ChainSpec& spec, double eps,
                                             const SparseOperator* V = nullptr);

}  // namespace topo::majorana
