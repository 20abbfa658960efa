#pragma once

#include <map>

#include "topoprep/lw_probes.hpp"
#include "topoprep/schrieffer_wolff.hpp"

namespace topo::cli {

struct ExperimentConfig {
  std::string model = "toric";   // toric | doubled_semion | doubled_fibonacci | majorana
  std::string family = "theta";  // theta | disc_pm | disc_pm_x
  int sign = -1;                 // hemisphere for the disc families
  std::vector<double> thetas;    // theta-family grid
  int grid = 41;                 // disc resolution (grid x grid, clipped to the unit disc)
  double T = 120.0;
  double dt = 0.1;
  double kappa = 1.0;
  double eps = 1e-3;
  std::vector<std::string> probes;  // "overlap_ref", "logicals"
  bool deterministic = true;
  std::string out_dir = "out";
  int majorana_L = 6;
  int threads = 0;  // 0: hardware concurrency

  void validate() const;
};

ExperimentConfig config_from_json_file(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

struct ResultRow {
  double x = 0, y = 0;        // theta (x) or disc coordinates (a, b)
  double eps_adia = -1;
  double overlap_ref = -1;
  double logical_x = 0, logical_z = 0;
  double runtime_s = 0;
  bool flagged = false;
};

struct ResultSet {
  ExperimentConfig config;
  std::vector<ResultRow> rows;
  std::string manifest_json;
};

/// Shared per-model state: Hamiltonian, ground frame, reference state.
struct ModelContext {
  lattice::HoneycombTorus lat;
  lattice::ModelOperator H_top;
  evolve::GroundSubspace ground;
  anyon::CategoryData layer;    // two-label layer (semion for toric-code probes)
  anyon::CategoryData doubled;  // ground-space algebra
  bool has_layer = false;
};

const ModelContext& model_context(const std::string& model);

/// Canonical reference state psi_R: -sum Z start, model-default T, projected
/// onto the ground space and normalized. Cached per (model, T, dt).
const QuantumState& reference_state(const std::string& model, double T = -1, double dt = 0.1);
double default_reference_time(const std::string& model);

/// Full interpolation over the configured grid; deterministic row order.
ResultSet run(const ExperimentConfig& cfg);

/// Per-point logical observables (<Xbar>, <Zbar>) of the final state (toric only).
ResultSet logical_map(const ExperimentConfig& cfg);

/// Ground state of H_top +- eps * H_triv(point) vs psi_R.
ResultSet perturbed_ground_comparison(const ExperimentConfig& cfg, double eps = 1e-3);

void write_result_csv(const ResultSet& rs, const std::string& path);

/// Figure-ready CSV files; ids: tc_groundspaceoverlap, fib_instant,
/// ds_minusZ_refoverlap. `scale` < 1 shrinks grids/time budgets.
void emit_figure_data(const std::string& figure_id, const std::string& out_dir,
                      double scale = 1.0);

uint64_t operator_hash(const SparseOperator& op);
std::string build_manifest(const ExperimentConfig& cfg, const ModelContext& ctx);

}  // namespace topo::cli
