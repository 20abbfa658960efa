#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace topo {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;
using MatrixXc = Eigen::MatrixXcd;
using MatrixXd = Eigen::MatrixXd;
using SparseXc = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

constexpr double kAlgebraTol = 1e-10;

/// Hermitian-flagged operator on a tensor-product qudit space, stored sparsely.
struct SparseOperator {
  Eigen::Index dim = 0;
  SparseXc entries;
  bool hermitian = false;

  SparseOperator() = default;
  SparseOperator(SparseXc m, bool herm) : dim(m.rows()), entries(std::move(m)), hermitian(herm) {
    if (entries.rows() != entries.cols()) throw std::invalid_argument("SparseOperator: square matrix required");
    if (herm && hermiticity_defect() > 1e-12)
      throw std::invalid_argument("SparseOperator: hermitian flag set but max |A - A^dag| = " +
                                  std::to_string(hermiticity_defect()));
  }

  double hermiticity_defect() const {
    SparseXc d = entries - SparseXc(entries.adjoint());
    double m = 0;
    for (int k = 0; k < d.outerSize(); ++k)
      for (SparseXc::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
  }

  VectorXc apply(const VectorXc& v) const { return entries * v; }
};

/// Normalized amplitude vector over the computational qudit basis.
struct QuantumState {
  VectorXc amplitudes;

  QuantumState() = default;
  explicit QuantumState(VectorXc a) : amplitudes(std::move(a)) {}

  Eigen::Index dim() const { return amplitudes.size(); }
  double norm() const { return amplitudes.norm(); }
  void check_normalized(double tol = 1e-9) const {
    if (std::abs(norm() - 1.0) > tol)
      throw std::runtime_error("QuantumState: norm drifted to " + std::to_string(norm()));
  }
  static QuantumState basis_state(Eigen::Index dim, Eigen::Index idx) {
    VectorXc v = VectorXc::Zero(dim);
    v(idx) = 1.0;
    return QuantumState(std::move(v));
  }
};

inline double max_abs(const MatrixXc& m) { return m.cwiseAbs().maxCoeff(); }

inline double scalar_deviation(const MatrixXc& m) {
  Complex tr = m.trace() / double(m.rows());
  return max_abs(m - tr * MatrixXc::Identity(m.rows(), m.cols()));
}

inline MatrixXc traceless_part(const MatrixXc& m) {
  return m - (m.trace() / double(m.rows())) * MatrixXc::Identity(m.rows(), m.cols());
}

}  // namespace topo
