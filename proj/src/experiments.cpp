#include "topoprep/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace topo::cli {

namespace {

constexpr Eigen::Index kBudgetPoints = 10000;

std::vector<std::pair<double, double>> disc_grid(int res) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      const double a = res == 1 ? 0.0 : -1.0 + 2.0 * i / (res - 1);
      const double b = res == 1 ? 0.0 : -1.0 + 2.0 * j / (res - 1);
      if (a * a + b * b <= 1.0 + 1e-12) pts.emplace_back(a, b);
    }
  return pts;
}

Eigen::Vector3d family_direction(const ExperimentConfig& cfg, double x, double y) {
  if (cfg.family == "theta") return lattice::field_theta(x);
  if (cfg.family == "disc_pm") return lattice::field_disc(x, y, cfg.sign);
  if (cfg.family == "disc_pm_x") return lattice::field_disc_x(x, y, cfg.sign);
  throw std::invalid_argument("unknown family: " + cfg.family);
}

std::vector<ResultRow> grid_rows(const ExperimentConfig& cfg) {
  std::vector<ResultRow> rows;
  if (cfg.family == "theta") {
    for (double th : cfg.thetas) rows.push_back({th, 0.0});
    if (rows.empty())
      for (int i = 0; i < 8; ++i) rows.push_back({2.0 * M_PI * i / 8, 0.0});
  } else {
    for (auto [a, b] : disc_grid(cfg.grid)) rows.push_back({a, b});
  }
  return rows;
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

double expectation(const SparseOperator& op, const QuantumState& psi) {
  return std::real(Complex(psi.amplitudes.adjoint() * (op.entries * psi.amplitudes)));
}

}  // namespace

void ExperimentConfig::validate() const {
  if (model != "toric" && model != "doubled_semion" && model != "doubled_fibonacci" &&
      model != "majorana")
    throw std::invalid_argument("unknown model: " + model);
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  if (!(T > 0)) throw std::invalid_argument("T must be positive");
  for (double th : thetas)
    if (th < 0 || th >= 2 * M_PI) throw std::invalid_argument("theta must lie in [0, 2pi)");
}

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j;
  in >> j;
  ExperimentConfig c;
  c.model = j.value("model", c.model);
  c.family = j.value("family", c.family);
  c.sign = j.value("sign", c.sign);
  c.thetas = j.value("thetas", c.thetas);
  c.grid = j.value("grid", c.grid);
  c.T = j.value("T", c.T);
  c.dt = j.value("dt", c.dt);
  c.kappa = j.value("kappa", c.kappa);
  c.eps = j.value("eps", c.eps);
  c.probes = j.value("probes", c.probes);
  c.deterministic = j.value("deterministic", c.deterministic);
  c.out_dir = j.value("out", c.out_dir);
  c.majorana_L = j.value("majorana_L", c.majorana_L);
  c.threads = j.value("threads", c.threads);
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["model"] = c.model;
  j["family"] = c.family;
  j["sign"] = c.sign;
  j["thetas"] = c.thetas;
  j["grid"] = c.grid;
  j["T"] = c.T;
  j["dt"] = c.dt;
  j["kappa"] = c.kappa;
  j["eps"] = c.eps;
  j["probes"] = c.probes;
  j["deterministic"] = c.deterministic;
  j["out"] = c.out_dir;
  j["majorana_L"] = c.majorana_L;
  j["threads"] = c.threads;
  return j.dump(1);
}

const ModelContext& model_context(const std::string& model) {
  static std::map<std::string, ModelContext> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(model);
  if (it != cache.end()) return it->second;

  ModelContext ctx;
  ctx.lat = lattice::build_reference_torus();
  if (model == "toric") {
    ctx.H_top = lattice::build_toric_code(ctx.lat);
    ctx.doubled = anyon::load_shipped_category("toric");
    ctx.layer = anyon::load_shipped_category("semion");  // O_s = Z for dual-loop probes
    ctx.has_layer = true;
  } else if (model == "doubled_semion") {
    ctx.layer = anyon::load_shipped_category("semion");
    ctx.doubled = anyon::load_shipped_category("doubled_semion");
    ctx.H_top = lattice::build_levin_wen(ctx.layer, ctx.lat);
    ctx.has_layer = true;
  } else if (model == "doubled_fibonacci") {
    ctx.layer = anyon::load_shipped_category("fibonacci");
    ctx.doubled = anyon::load_shipped_category("doubled_fibonacci");
    ctx.H_top = lattice::build_levin_wen(ctx.layer, ctx.lat);
    ctx.has_layer = true;
  } else {
    throw std::invalid_argument("model_context: lattice models only");
  }
  ctx.ground = evolve::ground_subspace(ctx.H_top.H, 6);
  return cache.emplace(model, std::move(ctx)).first->second;
}

double default_reference_time(const std::string& model) {
  return model == "doubled_fibonacci" ? 320.0 : 120.0;
}

const QuantumState& reference_state(const std::string& model, double T, double dt) {
  if (T <= 0) T = default_reference_time(model);
  static std::map<std::string, QuantumState> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const std::string key = model + "@" + std::to_string(T) + "@" + std::to_string(dt);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const ModelContext& ctx = model_context(model);
  auto [triv, psi0] = lattice::build_field_hamiltonian(Eigen::Vector3d(0, 0, -1), ctx.lat);
  evolve::Schedule sched;
  sched.T = T;
  sched.dt = dt;
  evolve::EvolveProbes probes;
  probes.instantaneous_ground = false;
  auto [psi, traj] = evolve::evolve(triv, ctx.H_top, psi0, sched, probes);
  VectorXc proj = ctx.ground.frame * (ctx.ground.frame.adjoint() * psi.amplitudes).eval();
  proj.normalize();
  QuantumState ref(std::move(proj));

  if (model == "doubled_semion") {
    // algebraic characterization: unique joint +1 eigenvector of the rotation
    // image and the Zbar string on the ground space
    const SparseOperator U = lattice::rotation_unitary(ctx.lat);
    const auto logical = lattice::logical_operators(ctx.lat);
    const VectorXc rot = U.entries * ref.amplitudes;
    const VectorXc zb = logical.Zbar.entries * ref.amplitudes;
    if ((rot - ref.amplitudes).norm() > 1e-6 || (zb - ref.amplitudes).norm() > 1e-6)
      throw std::runtime_error("reference_state: doubled-semion characterization failed");
  }
  return cache.emplace(key, std::move(ref)).first->second;
}

uint64_t operator_hash(const SparseOperator& op) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (int k = 0; k < op.entries.outerSize(); ++k)
    for (SparseXc::InnerIterator it(op.entries, k); it; ++it) {
      mix(uint64_t(it.row()));
      mix(uint64_t(it.col()));
      mix(uint64_t(int64_t(std::llround(it.value().real() * 1e12))));
      mix(uint64_t(int64_t(std::llround(it.value().imag() * 1e12))));
    }
  return h;
}

std::string build_manifest(const ExperimentConfig& cfg, const ModelContext& ctx) {
  nlohmann::json j;
  j["version"] = TOPOPREP_VERSION;
  j["config"] = nlohmann::json::parse(config_to_json(cfg));
  j["model_hash"] = operator_hash(ctx.H_top.H);
  j["ground_energy"] = ctx.ground.energy;
  j["ground_degeneracy"] = ctx.ground.degeneracy();
  j["tolerances"] = {{"algebra", kAlgebraTol}, {"degeneracy", ctx.ground.degeneracy_tol}};
  return j.dump(1);
}

ResultSet run(const ExperimentConfig& cfg) {
  cfg.validate();
  const ModelContext& ctx = model_context(cfg.model);
  ResultSet rs;
  rs.config = cfg;
  rs.rows = grid_rows(cfg);
  if (Eigen::Index(rs.rows.size()) > kBudgetPoints)
    throw std::runtime_error("run: grid exceeds the evaluation budget");

  const bool want_ref =
      std::find(cfg.probes.begin(), cfg.probes.end(), "overlap_ref") != cfg.probes.end();
  const bool want_logicals =
      std::find(cfg.probes.begin(), cfg.probes.end(), "logicals") != cfg.probes.end();
  const QuantumState* ref = want_ref ? &reference_state(cfg.model) : nullptr;
  const auto logical = want_logicals ? lattice::logical_operators(ctx.lat) : lattice::LogicalOps{};

  parallel_for(int(rs.rows.size()), cfg.threads, [&](int i) {
    const auto t0 = std::chrono::steady_clock::now();
    ResultRow& row = rs.rows[size_t(i)];
    const Eigen::Vector3d n = family_direction(cfg, row.x, row.y);
    auto [triv, psi0] = lattice::build_field_hamiltonian(n, ctx.lat);
    evolve::Schedule sched;
    sched.T = cfg.T;
    sched.dt = cfg.dt;
    sched.kappa = cfg.kappa;
    evolve::EvolveProbes probes;
    probes.instantaneous_ground = false;
    auto [psi, traj] = evolve::evolve(triv, ctx.H_top, psi0, sched, probes);
    row.eps_adia = evolve::adiabaticity_error(psi, ctx.ground);
    if (ref) row.overlap_ref = evolve::subspace_overlap(psi, *ref);
    if (want_logicals) {
      row.logical_x = expectation(logical.Xbar, psi);
      row.logical_z = expectation(logical.Zbar, psi);
    }
    row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });

  for (const auto& row : rs.rows) {
    if (row.eps_adia < -1e-9 || row.eps_adia > 1 + 1e-9)
      throw std::runtime_error("run: adiabaticity error out of range");
    if (row.overlap_ref > 1 + 1e-9) throw std::runtime_error("run: overlap out of range");
    if (std::abs(row.logical_x) > 1 + 1e-9 || std::abs(row.logical_z) > 1 + 1e-9)
      throw std::runtime_error("run: logical expectation out of range");
  }
  rs.manifest_json = build_manifest(cfg, ctx);
  return rs;
}

ResultSet logical_map(const ExperimentConfig& cfg) {
  if (cfg.model != "toric") throw std::invalid_argument("logical_map: toric model only");
  ExperimentConfig c = cfg;
  c.probes.push_back("logicals");
  return run(c);
}

ResultSet perturbed_ground_comparison(const ExperimentConfig& cfg, double eps) {
  cfg.validate();
  const ModelContext& ctx = model_context(cfg.model);
  const QuantumState& ref = reference_state(cfg.model);
  ResultSet rs;
  rs.config = cfg;
  rs.rows = grid_rows(cfg);

  parallel_for(int(rs.rows.size()), cfg.threads, [&](int i) {
    ResultRow& row = rs.rows[size_t(i)];
    const Eigen::Vector3d n = family_direction(cfg, row.x, row.y);
    auto [triv, psi0] = lattice::build_field_hamiltonian(n, ctx.lat);
    SparseXc hp = ctx.H_top.H.entries + Complex(eps, 0) * triv.H.entries;
    try {
      EigenOptions opts;
      opts.seed = 0x5eed + uint32_t(i);
      auto res = lowest_eigenpairs(hp, 1, opts);
      row.overlap_ref = std::norm(Complex(ref.amplitudes.adjoint() * res.vectors.col(0)));
      row.eps_adia = 0;
    } catch (const std::exception&) {
      row.flagged = true;
    }
  });
  rs.manifest_json = build_manifest(cfg, ctx);
  return rs;
}

void write_result_csv(const ResultSet& rs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << std::setprecision(12);
  out << "x,y,eps_adia,overlap_ref,logical_x,logical_z,flagged\n";
  for (const auto& r : rs.rows)
    out << r.x << "," << r.y << "," << r.eps_adia << "," << r.overlap_ref << "," << r.logical_x
        << "," << r.logical_z << "," << (r.flagged ? 1 : 0) << "\n";
}

void emit_figure_data(const std::string& figure_id, const std::string& out_dir, double scale) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto open_csv = [&](const std::string& name) {
    std::ofstream out(out_dir + "/" + name);
    if (!out) throw std::runtime_error("cannot open output in " + out_dir);
    out << std::setprecision(12);
    return out;
  };

  if (figure_id == "tc_groundspaceoverlap") {
    auto out = open_csv("toric_tc_groundspaceoverlap.csv");
    out << "T,theta,eps_adia\n";
    std::vector<double> Ts;
    for (double T = 20; T <= 120 * scale + 1e-9; T += 20) Ts.push_back(T);
    if (Ts.empty()) Ts.push_back(20);
    const std::vector<double> thetas = {0, M_PI / 4, M_PI / 2, 3 * M_PI / 4, M_PI};
    for (double T : Ts)
      for (double th : thetas) {
        ExperimentConfig c;
        c.model = "toric";
        c.family = "theta";
        c.thetas = {th};
        c.T = T;
        auto rs = run(c);
        out << T << "," << th << "," << rs.rows[0].eps_adia << "\n";
      }
    return;
  }
  if (figure_id == "fib_instant") {
    auto out = open_csv("doubled_fibonacci_fib_instant.csv");
    out << "T,t,eps_adia_instant\n";
    const ModelContext& ctx = model_context("doubled_fibonacci");
    for (double T : {320.0 * scale, 1280.0 * scale}) {
      auto [triv, psi0] = lattice::build_field_hamiltonian(Eigen::Vector3d(0, 0, -1), ctx.lat);
      evolve::Schedule sched;
      sched.T = T;
      sched.dt = 0.1;
      evolve::EvolveProbes probes;
      probes.n_samples = 64;
      auto [psi, traj] = evolve::evolve(triv, ctx.H_top, psi0, sched, probes);
      for (size_t i = 0; i < traj.times.size(); ++i)
        out << T << "," << traj.times[i] << "," << traj.eps_adia[i] << "\n";
    }
    return;
  }
  if (figure_id == "ds_minusZ_refoverlap") {
    auto out = open_csv("doubled_semion_ds_minusZ_refoverlap.csv");
    out << "a,b,ln_one_minus_overlap\n";
    ExperimentConfig c;
    c.model = "doubled_semion";
    c.family = "disc_pm";
    c.sign = -1;
    c.grid = std::max(3, int(std::lround(41 * scale)));
    c.probes = {"overlap_ref"};
    auto rs = run(c);
    for (const auto& r : rs.rows)
      out << r.x << "," << r.y << "," << std::log(std::max(1e-300, 1.0 - r.overlap_ref)) << "\n";
    return;
  }
  throw std::invalid_argument("emit_figure_data: unknown figure id " + figure_id);
}

}  // namespace topo::cli
