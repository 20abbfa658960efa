#pragma once

#include <functional>
#include <random>

#include "topoprep/types.hpp"

namespace topo {

struct EigenOptions {
  double tol = 1e-11;       // residual ||Hv - lambda v||
  int max_basis = 400;      // Krylov dimension per sweep
  int max_restarts = 60;
  uint32_t seed = 0x5eed;
  Eigen::Index dense_cutoff = 600;  // below this, diagonalize densely
};

struct EigenResult {
  VectorXd values;
  MatrixXc vectors;   // columns
  VectorXd residuals;
  bool converged = true;
};

/// Lowest k eigenpairs of a Hermitian operator given by its action, via
/// Lanczos with full reorthogonalization. Converged vectors are locked and
/// deflated; each sweep locks only its lowest Ritz pair, so exactly degenerate
/// clusters are resolved one copy at a time.
inline EigenResult lowest_eigenpairs(const std::function<VectorXc(const VectorXc&)>& apply,
                                     Eigen::Index dim, int k, const EigenOptions& opts = {}) {
  if (k <= 0 || Eigen::Index(k) > dim) throw std::invalid_argument("lowest_eigenpairs: bad k");

  std::mt19937 rng(opts.seed);
  std::normal_distribution<double> gauss;
  auto random_vec = [&]() {
    VectorXc v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return v;
  };

  MatrixXc locked(dim, 0);
  std::vector<double> vals;
  auto project_out = [&](VectorXc& v) {
    if (locked.cols() > 0) v -= locked * (locked.adjoint() * v).eval();
  };

  while (int(locked.cols()) < k) {
    const Eigen::Index free_dim = dim - locked.cols();
    const int m = int(std::min<Eigen::Index>(opts.max_basis, free_dim));
    VectorXc v = random_vec();
    bool locked_this_round = false;

    for (int restart = 0; restart < opts.max_restarts && !locked_this_round; ++restart) {
      project_out(v);
      if (v.norm() < 1e-12) {
        v = random_vec();
        project_out(v);
      }
      v.normalize();

      MatrixXc Q(dim, m);
      VectorXd alpha = VectorXd::Zero(m), beta = VectorXd::Zero(m);
      int built = 0;
      for (int j = 0; j < m; ++j) {
        Q.col(j) = v;
        VectorXc w = apply(v);
        project_out(w);
        alpha(j) = std::real(Complex(v.adjoint() * w));
        w -= alpha(j) * v;
        if (j > 0) w -= beta(j - 1) * Q.col(j - 1);
        w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).adjoint() * w).eval();  // full reortho
        beta(j) = w.norm();
        built = j + 1;
        if (beta(j) < 1e-13) break;
        v = w / beta(j);
      }

      MatrixXd Tm = MatrixXd::Zero(built, built);
      for (int i = 0; i < built; ++i) {
        Tm(i, i) = alpha(i);
        if (i + 1 < built) Tm(i, i + 1) = Tm(i + 1, i) = beta(i);
      }
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(Tm);

      VectorXc ritz = Q.leftCols(built) * es.eigenvectors().col(0).cast<Complex>();
      project_out(ritz);
      ritz.normalize();
      VectorXc hr = apply(ritz);
      project_out(hr);
      const double lam = std::real(Complex(ritz.adjoint() * hr));
      const double resid = (hr - lam * ritz).norm();
      const bool exhausted = built == int(free_dim);

      if (resid < opts.tol || exhausted) {
        locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
        locked.col(locked.cols() - 1) = ritz;
        vals.push_back(lam);
        locked_this_round = true;
      } else {
        v = ritz;  // restart towards the lowest Ritz vector
      }
    }
    if (!locked_this_round)
      throw std::runtime_error(
          "lowest_eigenpairs: no convergence within the restart budget (diagnostic: residual "
          "stalled above tolerance)");
  }

  std::vector<int> order(vals.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return vals[size_t(a)] < vals[size_t(b)]; });
  EigenResult res;
  res.values.resize(k);
  res.vectors.resize(dim, k);
  res.residuals.resize(k);
  for (int i = 0; i < k; ++i) {
    res.values(i) = vals[size_t(order[size_t(i)])];
    res.vectors.col(i) = locked.col(order[size_t(i)]);
  }
  for (int i = 0; i < k; ++i) {
    VectorXc r = apply(res.vectors.col(i)) - res.values(i) * res.vectors.col(i);
    res.residuals(i) = r.norm();
    if (res.residuals(i) > 100 * opts.tol) res.converged = false;
  }
  return res;
}

/// Dense-or-Lanczos convenience front end for sparse Hermitian matrices.
inline EigenResult lowest_eigenpairs(const SparseXc& H, int k, const EigenOptions& opts = {}) {
  const Eigen::Index dim = H.rows();
  if (dim <= opts.dense_cutoff) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es{MatrixXc(H)};
    EigenResult res;
    res.values = es.eigenvalues().head(k);
    res.vectors = es.eigenvectors().leftCols(k);
    res.residuals = VectorXd::Zero(k);
    for (int i = 0; i < k; ++i)
      res.residuals(i) = (H * res.vectors.col(i) - res.values(i) * res.vectors.col(i)).norm();
    return res;
  }
  return lowest_eigenpairs([&H](const VectorXc& v) { return VectorXc(H * v); }, dim, k, opts);
}

}  // namespace topo
