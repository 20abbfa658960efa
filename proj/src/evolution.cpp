#include "topoprep/evolution.hpp"

#include <algorithm>
#include <cmath>

namespace topo::evolve {

void Schedule::validate() const {
  if (!(T > 0) || !(dt > 0)) throw std::invalid_argument("Schedule: T and dt must be positive");
  if (T / dt < 1) throw std::invalid_argument("Schedule: T/dt must be at least 1");
  if (!(kappa > 0) || kappa > 1.0) throw std::invalid_argument("Schedule: kappa in (0,1]");
  double prev = theta(0.0);
  if (std::abs(prev) > 1e-12 || std::abs(theta(1.0) - 1.0) > 1e-12)
    throw std::invalid_argument("Schedule: profile must map 0 to 0 and 1 to 1");
  for (int i = 1; i <= 64; ++i) {
    const double cur = theta(i / 64.0);
    if (cur < prev - 1e-12) throw std::invalid_argument("Schedule: profile not monotone");
    prev = cur;
  }
}

GroundSubspace ground_subspace(const SparseOperator& H, int k_max, double degeneracy_tol,
                               const EigenOptions& opts) {
  auto res = lowest_eigenpairs(H.entries, k_max, opts);
  GroundSubspace sub;
  sub.degeneracy_tol = degeneracy_tol;
  sub.energy = res.values(0);
  int deg = 1;
  while (deg < k_max && res.values(deg) - res.values(0) < degeneracy_tol) ++deg;
  if (deg == k_max && k_max < int(H.dim))
    throw std::runtime_error("ground_subspace: cluster not resolved within k_max");
  // re-orthonormalize within the cluster
  Eigen::HouseholderQR<MatrixXc> qr(res.vectors.leftCols(deg));
  sub.frame = qr.householderQ() * MatrixXc::Identity(H.dim, deg);
  for (int i = 0; i < deg; ++i) {
    const VectorXc r = H.entries * sub.frame.col(i) - sub.energy * sub.frame.col(i);
    if (r.norm() > 1e-6)
      throw std::runtime_error("ground_subspace: frame residual " + std::to_string(r.norm()));
  }
  return sub;
}

QuantumState trotter_step(const QuantumState& psi, const ModelOperator& Htriv,
                          const ModelOperator& Htop, double s, double dt) {
  auto exact_factor = [&](const ModelOperator& mo, double time, const VectorXc& v) -> VectorXc {
    if (mo.commuting_terms) return mo.apply_term_exponentials(v, time);
    if (mo.H.dim > 4096)
      throw std::runtime_error("trotter_step: non-commuting terms and dim > 4096");
    // dense Hermitian exponential fallback
    Eigen::SelfAdjointEigenSolver<MatrixXc> es{MatrixXc(mo.H.entries)};
    VectorXc phases(mo.H.dim);
    for (Eigen::Index i = 0; i < mo.H.dim; ++i)
      phases(i) = std::exp(Complex(0, -time * es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() * (es.eigenvectors().adjoint() * v);
  };
  VectorXc v = exact_factor(Htriv, (1.0 - s) * dt, psi.amplitudes);
  v = exact_factor(Htop, s * dt, v);
  return QuantumState(std::move(v));
}

double adiabaticity_error(const QuantumState& psi, const GroundSubspace& sub) {
  if (psi.dim() != sub.frame.rows()) throw std::invalid_argument("adiabaticity_error: dim mismatch");
  const VectorXc proj = sub.frame.adjoint() * psi.amplitudes;
  const double w = std::min(1.0, proj.squaredNorm());
  return 1.0 - w;
}

double subspace_overlap(const QuantumState& psi, const QuantumState& ref) {
  const Complex ip = ref.amplitudes.adjoint() * psi.amplitudes;
  return std::norm(ip);
}

std::pair<QuantumState, Trajectory> evolve(const ModelOperator& Htriv, const ModelOperator& Htop,
                                           const QuantumState& psi0, const Schedule& sched,
                                           const EvolveProbes& probes) {
  sched.validate();
  const double t_end = sched.kappa * sched.T;
  const int n_steps = int(std::llround(t_end / sched.dt));

  std::vector<double> samples = probes.sample_times;
  if (samples.empty() && probes.instantaneous_ground) {
    for (int i = 1; i <= probes.n_samples; ++i) samples.push_back(t_end * i / probes.n_samples);
  }
  for (double t : probes.checkpoint_times)
    if (t > t_end + 1e-9) throw std::invalid_argument("evolve: checkpoint beyond kappa*T");

  auto step_of = [&](double t) { return int(std::llround(t / sched.dt)); };
  std::vector<int> sample_steps, checkpoint_steps;
  for (double t : samples) sample_steps.push_back(step_of(t));
  for (double t : probes.checkpoint_times) checkpoint_steps.push_back(step_of(t));

  Trajectory traj;
  QuantumState psi = psi0;
  psi.check_normalized();

  auto record = [&](int j) {
    const double t = j * sched.dt;
    const double s = sched.theta(t / sched.T);
    traj.times.push_back(t);
    traj.s_values.push_back(s);
    traj.norm_drift.push_back(std::abs(psi.norm() - 1.0));
    if (probes.instantaneous_ground) {
      SparseXc h = (1.0 - s) * Htriv.H.entries + s * Htop.H.entries;
      GroundSubspace sub = ground_subspace(SparseOperator(std::move(h), true));
      traj.eps_adia.push_back(adiabaticity_error(psi, sub));
    }
    if (probes.reference) traj.overlap_ref.push_back(subspace_overlap(psi, *probes.reference));
  };

  // eps_adia(0) = 0 by construction; record initial point
  record(0);
  for (int j = 1; j <= n_steps; ++j) {
    const double s = sched.theta(j * sched.dt / sched.T);
    psi = trotter_step(psi, Htriv, Htop, s, sched.dt);
    if (std::find(sample_steps.begin(), sample_steps.end(), j) != sample_steps.end()) record(j);
    for (size_t c = 0; c < checkpoint_steps.size(); ++c)
      if (checkpoint_steps[c] == j) {
        traj.checkpoints.push_back(psi);
        traj.checkpoint_times.push_back(j * sched.dt);
      }
  }
  psi.check_normalized();
  return {psi, traj};
}

}  // namespace topo::evolve
