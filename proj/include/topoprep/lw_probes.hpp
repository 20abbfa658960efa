#pragma once

#include "topoprep/evolution.hpp"
#include "topoprep/flux_algebra.hpp"

namespace topo::probes {

using anyon::CategoryData;
using evolve::GroundSubspace;
using lattice::HoneycombTorus;
using lattice::ModelOperator;

/// Single-edge ring operator O_a |b> = (S_ab / S_1b) |b>, identity elsewhere.
SparseOperator ring_operator(const CategoryData& layer, int a, int edge,
                             const HoneycombTorus& lat);

struct ExcitationReport {
  double energy_shift = 0;            // Rayleigh quotient minus ground energy
  double eigenstate_residual = 0;     // ||(H - E)v|| for the excited state
  double bp_annihilation_residual = 0;  // max ||B_p O_a psi|| over adjacent plaquettes
};

/// Appendix-style check: O_a turns ground states into energy-(E0+2) eigenstates
/// annihilated by the two adjacent plaquette projectors.
ExcitationReport excitation_check(const ModelOperator& model, const CategoryData& layer, int a,
                                  int edge, const HoneycombTorus& lat, const GroundSubspace& ground);

struct FluxSector {
  std::string label;        // "(1,1)", "(tau,tau)", or combined degenerate pair
  double eigenvalue = 0;
  MatrixXc projector;       // on the ground frame
  double expectation = 0;   // of the supplied state, when given
  bool combined_pair = false;
};

struct TomographyResult {
  MatrixXc loop_image;      // P0 (prod_e O_a^(e)) P0 on the frame
  Complex scale;            // c with loop_image = c * F_{(a,a)}(C)
  std::vector<FluxSector> sectors;
  double multiset_deviation = 0;
};

/// Ground-flux tomography along a minimal dual loop: rescales the O_a product
/// so its spectrum matches {S_{(a,a),x} / S_{1,x}} and returns the spectral
/// projectors (degenerate eigenvalues reported as combined pairs).
TomographyResult flux_tomography(const ModelOperator& model, const CategoryData& layer,
                                 const CategoryData& doubled, int a, const std::vector<int>& loop,
                                 const HoneycombTorus& lat, const GroundSubspace& ground,
                                 const QuantumState* state = nullptr);

struct AnalyticGroundState {
  VectorXc state;          // flux-basis amplitudes, largest component phase-fixed
  VectorXd eigenvalues;    // of the effective Hamiltonian
  MatrixXc heff;
  bool degenerate = false;
  MatrixXc frame;          // filled when degenerate
};

/// H_eff = -(F + A^{-1} F A + A^{-2} F A^2) with A = TS and
/// F = diag(S_{(a,a),x} / S_{1,x}) for the highest label, on the flux basis.
AnalyticGroundState analytic_effective_ground_state(const CategoryData& doubled,
                                                    anyon::LoopGeometry geometry =
                                                        anyon::LoopGeometry::rhombic);

}  // namespace topo::probes
