#include <doctest.h>

#include "topoprep/evolution.hpp"

using namespace topo;
using namespace topo::lattice;
namespace ev = topo::evolve;
using namespace topo::evolve;

namespace {
const HoneycombTorus& lat() {
  static HoneycombTorus l = build_reference_torus();
  return l;
}
}  // namespace

TEST_CASE("trotter_step leaves eigenstates invariant up to phase") {
  auto [triv, psi0] = build_field_hamiltonian(field_theta(M_PI), lat());  // -sum Z
  auto toric = build_toric_code(lat());

  // s = 0: |0...0> maps to itself up to a global phase
  QuantumState one = trotter_step(psi0, triv, toric, 0.0, 0.37);
  CHECK(std::abs(std::abs(Complex(psi0.amplitudes.adjoint() * one.amplitudes)) - 1.0) < 1e-12);

  // s = 1: a toric ground state picks up exactly exp(+i 12 dt)
  auto sub = ground_subspace(toric.H, 6);
  QuantumState g(VectorXc(sub.frame.col(0)));
  const double dt = 0.21;
  QuantumState out = trotter_step(g, triv, toric, 1.0, dt);
  const Complex phase = Complex(g.amplitudes.adjoint() * out.amplitudes);
  CHECK(std::abs(phase - std::exp(Complex(0, 12.0 * dt))) < 1e-12);
}

TEST_CASE("ground_subspace resolves degeneracies") {
  auto toric = build_toric_code(lat());
  auto sub = ground_subspace(toric.H, 6);
  CHECK(sub.degeneracy() == 4);
  CHECK(sub.energy == doctest::Approx(-12.0).epsilon(1e-11));

  auto [field, psi] = build_field_hamiltonian(field_disc(0.2, 0.1, -1), lat());
  auto fsub = ground_subspace(field.H, 3);
  CHECK(fsub.degeneracy() == 1);
  CHECK(fsub.energy == doctest::Approx(-12.0).epsilon(1e-11));

  // generic interpolation point has a unique ground state
  SparseXc mid = 0.5 * field.H.entries + 0.5 * toric.H.entries;
  auto msub = ground_subspace(SparseOperator(std::move(mid), true), 3);
  CHECK(msub.degeneracy() == 1);
}

TEST_CASE("adiabaticity error and overlaps") {
  auto toric = build_toric_code(lat());
  auto sub = ground_subspace(toric.H, 6);
  QuantumState inside(VectorXc(sub.frame.col(1)));
  CHECK(adiabaticity_error(inside, sub) == doctest::Approx(0.0).epsilon(1e-12));

  VectorXc orth = VectorXc::Zero(4096);
  orth(17) = 1;  // a computational basis state with nonzero syndrome
  orth -= sub.frame * (sub.frame.adjoint() * orth).eval();
  orth.normalize();
  CHECK(adiabaticity_error(QuantumState(orth), sub) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(subspace_overlap(inside, inside) == doctest::Approx(1.0));
  CHECK(subspace_overlap(QuantumState(orth), inside) == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("schedule validation") {
  Schedule s;
  s.T = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.T = 10;
  s.dt = 0.1;
  s.kappa = 1.5;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.kappa = 1.0;
  CHECK_NOTHROW(s.validate());
  s.profile = [](double x) { return x * x; };
  CHECK_NOTHROW(s.validate());
  s.profile = [](double x) { return 1.0 - x; };
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("toric interpolation: unitarity, conserved A_v obstruction at theta=0") {
  auto toric = build_toric_code(lat());

  // theta = 0 start: +sum Z, conserved <A_v> = -1, ground space unreachable
  auto [trivP, psiP] = build_field_hamiltonian(field_theta(0.0), lat());
  Schedule sched;
  sched.T = 40;   // short run suffices for the conservation check
  sched.dt = 0.1;
  EvolveProbes probes;
  probes.instantaneous_ground = false;
  auto [psiT, traj] = ev::evolve(trivP, toric, psiP, sched, probes);
  for (double d : traj.norm_drift) CHECK(d < 1e-10);

  const VectorXd av = pauli_z_diagonal({lat().vertices[0][0], lat().vertices[0][1],
                                        lat().vertices[0][2]}, 12);
  const double exp_av = (av.array() * psiT.amplitudes.cwiseAbs2().array()).sum();
  CHECK(exp_av == doctest::Approx(-1.0).epsilon(1e-9));

  auto sub = ground_subspace(toric.H, 6);
  CHECK(adiabaticity_error(psiT, sub) > 1.0 - 1e-6);

  // checkpoint beyond kappa*T rejected
  EvolveProbes bad;
  bad.checkpoint_times = {50.0};
  CHECK_THROWS_AS(ev::evolve(trivP, toric, psiP, sched, bad), std::invalid_argument);
}

TEST_CASE("rotation symmetry transport along the trajectory") {
  auto toric = build_toric_code(lat());
  auto [triv, psi0] = build_field_hamiltonian(field_theta(M_PI), lat());
  Schedule sched;
  sched.T = 20;
  sched.dt = 0.1;
  EvolveProbes probes;
  probes.instantaneous_ground = false;
  probes.checkpoint_times = {10.0, 20.0};
  auto [psiT, traj] = ev::evolve(triv, toric, psi0, sched, probes);
  auto U = rotation_unitary(lat());
  for (const auto& chk : traj.checkpoints) {
    const VectorXc rot = U.entries * chk.amplitudes;
    const Complex ip = chk.amplitudes.adjoint() * rot;
    CHECK(std::abs(std::abs(ip) - 1.0) < 1e-10);  // equal up to global phase
  }
}

TEST_CASE("subspace_overlap equals 1 - eps_adia for the projected reference construction") {
  auto semion = anyon::load_shipped_category("semion");
  auto ds = build_levin_wen(semion, lat());
  auto [triv, psi0] = build_field_hamiltonian(field_theta(M_PI), lat());
  Schedule sched;
  sched.T = 30;
  sched.dt = 0.1;
  EvolveProbes probes;
  probes.instantaneous_ground = false;
  auto [psiT, traj] = ev::evolve(triv, ds, psi0, sched, probes);
  auto sub = ground_subspace(ds.H, 6);
  VectorXc proj = sub.frame * (sub.frame.adjoint() * psiT.amplitudes).eval();
  proj.normalize();
  const double eps = adiabaticity_error(psiT, sub);
  CHECK(subspace_overlap(psiT, QuantumState(proj)) == doctest::Approx(1.0 - eps).epsilon(1e-10));
}
