#pragma once

#include <functional>
#include <optional>

#include "topoprep/lanczos.hpp"
#include "topoprep/models.hpp"

namespace topo::evolve {

using lattice::ModelOperator;

/// Interpolation schedule: H(t) = (1 - theta(t/T)) H_triv + theta(t/T) H_top.
struct Schedule {
  double T = 0;
  double dt = 0.1;
  std::function<double(double)> profile;  // monotone [0,1] -> [0,1]; identity if unset
  double kappa = 1.0;

  double theta(double x) const { return profile ? profile(x) : x; }
  void validate() const;
};

/// Orthonormal frame spanning a (possibly degenerate) ground space.
struct GroundSubspace {
  MatrixXc frame;
  double energy = 0;
  double degeneracy_tol = 1e-8;
  int degeneracy() const { return int(frame.cols()); }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> s_values;
  std::vector<double> eps_adia;
  std::vector<double> overlap_ref;
  std::vector<double> norm_drift;
  std::vector<QuantumState> checkpoints;
  std::vector<double> checkpoint_times;
};

struct EvolveProbes {
  int n_samples = 64;                      // instantaneous ground-space samples
  std::vector<double> sample_times;        // explicit override
  const QuantumState* reference = nullptr; // overlap target
  std::vector<double> checkpoint_times;    // states to store
  bool instantaneous_ground = true;        // compute eps_adia along the path
  std::function<VectorXd(const VectorXc&)> observables;  // optional extra probes
};

/// Lowest cluster of H: eigenvalues within degeneracy_tol of the minimum.
GroundSubspace ground_subspace(const SparseOperator& H, int k_max = 8,
                               double degeneracy_tol = 1e-8, const EigenOptions& opts = {});

/// One Trotter step: apply exp(-i (1-s) H_triv dt), then exp(-i s H_top dt),
/// each factor an exact product of commuting-term exponentials.
QuantumState trotter_step(const QuantumState& psi, const ModelOperator& Htriv,
                          const ModelOperator& Htop, double s, double dt);

/// Trotterized interpolation from the product ground state of H_triv.
std::pair<QuantumState, Trajectory> evolve(const ModelOperator& Htriv, const ModelOperator& Htop,
                                           const QuantumState& psi0, const Schedule& sched,
                                           const EvolveProbes& probes = {});

/// 1 - <psi|P0|psi> for the projector onto the subspace frame.
double adiabaticity_error(const QuantumState& psi, const GroundSubspace& sub);

/// |<psi|ref>|^2.
double subspace_overlap(const QuantumState& psi, const QuantumState& ref);

}  // namespace topo::evolve
