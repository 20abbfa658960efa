#pragma once

#include <cstdint>

#include "topoprep/types.hpp"

namespace topo {

// Computational-basis conventions: qubit q of basis index i is bit (i >> q) & 1,
// |0> is the +1 eigenstate of Z.

inline Eigen::Index pow2(int n) { return Eigen::Index(1) << n; }

/// Diagonal of a product of Pauli-Z over `qubits` on an n-qubit register.
inline VectorXd pauli_z_diagonal(const std::vector<int>& qubits, int n_qubits) {
  const Eigen::Index dim = pow2(n_qubits);
  VectorXd d = VectorXd::Ones(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    int par = 0;
    for (int q : qubits) par ^= int((i >> q) & 1);
    if (par) d(i) = -1.0;
  }
  return d;
}

inline SparseXc diagonal_sparse(const VectorXd& d) {
  SparseXc m(d.size(), d.size());
  m.reserve(Eigen::VectorXi::Constant(int(d.size()), 1));
  for (Eigen::Index i = 0; i < d.size(); ++i) m.insert(i, i) = Complex(d(i), 0);
  m.makeCompressed();
  return m;
}

inline SparseXc diagonal_sparse_c(const VectorXc& d) {
  SparseXc m(d.size(), d.size());
  m.reserve(Eigen::VectorXi::Constant(int(d.size()), 1));
  for (Eigen::Index i = 0; i < d.size(); ++i) m.insert(i, i) = d(i);
  m.makeCompressed();
  return m;
}

/// Product of Pauli-X over `qubits` (a permutation matrix).
inline SparseXc pauli_x_product(const std::vector<int>& qubits, int n_qubits) {
  const Eigen::Index dim = pow2(n_qubits);
  Eigen::Index mask = 0;
  for (int q : qubits) mask |= Eigen::Index(1) << q;
  SparseXc m(dim, dim);
  m.reserve(Eigen::VectorXi::Constant(int(dim), 1));
  for (Eigen::Index i = 0; i < dim; ++i) m.insert(i ^ mask, i) = Complex(1, 0);
  m.makeCompressed();
  return m;
}

/// Single-site Pauli operator string, e.g. {{3,'Y'},{5,'Z'}}.
inline SparseXc pauli_string(const std::vector<std::pair<int, char>>& ops, int n_qubits) {
  const Eigen::Index dim = pow2(n_qubits);
  Eigen::Index xmask = 0;
  std::vector<std::pair<int, char>> zy;
  for (auto [q, p] : ops) {
    if (p == 'X' || p == 'Y') xmask |= Eigen::Index(1) << q;
    if (p == 'Z' || p == 'Y') zy.emplace_back(q, p);
  }
  SparseXc m(dim, dim);
  m.reserve(Eigen::VectorXi::Constant(int(dim), 1));
  for (Eigen::Index i = 0; i < dim; ++i) {
    Complex amp(1, 0);
    for (auto [q, p] : zy) {
      const bool bit = (i >> q) & 1;
      if (p == 'Z') amp *= bit ? -1.0 : 1.0;
      else amp *= bit ? Complex(0, -1) : Complex(0, 1);  // Y|0>=i|1>, Y|1>=-i|0>
    }
    m.insert(i ^ xmask, i) = amp;
  }
  m.makeCompressed();
  return m;
}

/// Applies a 2x2 gate to qubit q of the state vector, in place.
inline void apply_single_qubit(VectorXc& v, int q, const Eigen::Matrix2cd& g) {
  const Eigen::Index dim = v.size();
  const Eigen::Index step = Eigen::Index(1) << q;
  for (Eigen::Index base = 0; base < dim; base += 2 * step)
    for (Eigen::Index i = base; i < base + step; ++i) {
      const Complex a = v(i), b = v(i + step);
      v(i) = g(0, 0) * a + g(0, 1) * b;
      v(i + step) = g(1, 0) * a + g(1, 1) * b;
    }
}

/// Permutation unitary induced by a qubit relabeling: qubit q -> perm[q].
inline SparseXc qubit_permutation_unitary(const std::vector<int>& perm, int n_qubits) {
  const Eigen::Index dim = pow2(n_qubits);
  SparseXc m(dim, dim);
  m.reserve(Eigen::VectorXi::Constant(int(dim), 1));
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index j = 0;
    for (int q = 0; q < n_qubits; ++q)
      if ((i >> q) & 1) j |= Eigen::Index(1) << perm[q];
    m.insert(j, i) = Complex(1, 0);
  }
  m.makeCompressed();
  return m;
}

inline Eigen::Matrix2cd pauli_sigma(const Eigen::Vector3d& n) {
  Eigen::Matrix2cd s;
  s << Complex(n.z(), 0), Complex(n.x(), -n.y()), Complex(n.x(), n.y()), Complex(-n.z(), 0);
  return s;
}

}  // namespace topo
