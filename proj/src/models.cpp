#include "topoprep/models.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

namespace topo::lattice {

namespace {

SparseXc term_matrix(const HamiltonianTerm& t) {
  if (t.kind != HamiltonianTerm::Kind::field) return SparseXc(t.coeff * t.op);
  // field term: coeff * sum_j n.sigma_j
  const Eigen::Index dim = pow2(t.n_qubits);
  const Eigen::Matrix2cd s = pauli_sigma(t.field_dir);
  std::vector<Triplet> trip;
  for (Eigen::Index i = 0; i < dim; ++i) {
    Complex diag(0, 0);
    for (int q = 0; q < t.n_qubits; ++q) {
      const bool bit = (i >> q) & 1;
      diag += s(bit, bit);
      const Complex off = s(1 - bit, bit);
      if (off != Complex(0, 0)) trip.emplace_back(i ^ (Eigen::Index(1) << q), i, t.coeff * off);
    }
    if (diag != Complex(0, 0)) trip.emplace_back(i, i, t.coeff * diag);
  }
  SparseXc m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SparseOperator assemble(const std::vector<HamiltonianTerm>& terms, Eigen::Index dim) {
  SparseXc h(dim, dim);
  for (const auto& t : terms) h += term_matrix(t);
  h.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return std::abs(v) > 1e-14; });
  h.makeCompressed();
  return SparseOperator(std::move(h), true);
}

}  // namespace

double pairwise_commutator_defect(const std::vector<HamiltonianTerm>& terms, Eigen::Index dim) {
  std::vector<SparseXc> mats;
  mats.reserve(terms.size());
  for (const auto& t : terms) mats.push_back(term_matrix(t));
  double defect = 0;
  for (size_t i = 0; i < mats.size(); ++i)
    for (size_t j = i + 1; j < mats.size(); ++j) {
      SparseXc c = mats[i] * mats[j] - mats[j] * mats[i];
      for (int k = 0; k < c.outerSize(); ++k)
        for (SparseXc::InnerIterator it(c, k); it; ++it) defect = std::max(defect, std::abs(it.value()));
    }
  return defect;
}

VectorXc ModelOperator::apply_term_exponentials(const VectorXc& v, double time) const {
  // exp(-i * time * H) as an exact product over commuting terms.
  VectorXc out = v;
  for (const auto& t : terms) {
    const double theta = -time * t.coeff;  // exp(i * theta * op)
    switch (t.kind) {
      case HamiltonianTerm::Kind::projector: {
        // exp(i theta P) = I + (e^{i theta} - 1) P
        const Complex c = std::exp(Complex(0, theta)) - 1.0;
        out += c * (t.op * out);
        break;
      }
      case HamiltonianTerm::Kind::involution: {
        // exp(i theta S) = cos(theta) I + i sin(theta) S
        VectorXc sv = t.op * out;
        out = std::cos(theta) * out + Complex(0, std::sin(theta)) * sv;
        break;
      }
      case HamiltonianTerm::Kind::field: {
        // product of identical single-qubit rotations exp(i theta n.sigma)
        const Eigen::Matrix2cd s = pauli_sigma(t.field_dir);
        const Eigen::Matrix2cd g =
            std::cos(theta) * Eigen::Matrix2cd::Identity() + Complex(0, std::sin(theta)) * s;
        for (int q = 0; q < t.n_qubits; ++q) apply_single_qubit(out, q, g);
        break;
      }
    }
  }
  return out;
}

ModelOperator build_toric_code(const HoneycombTorus& lat) {
  ModelOperator m;
  m.n_qubits = lat.n_edges;
  const Eigen::Index dim = pow2(lat.n_edges);
  for (const auto& v : lat.vertices) {
    HamiltonianTerm t;
    t.kind = HamiltonianTerm::Kind::involution;
    t.coeff = -1.0;
    t.op = diagonal_sparse(pauli_z_diagonal({v[0], v[1], v[2]}, lat.n_edges));
    t.n_qubits = lat.n_edges;
    m.terms.push_back(std::move(t));
  }
  for (const auto& p : lat.plaquettes) {
    HamiltonianTerm t;
    t.kind = HamiltonianTerm::Kind::involution;
    t.coeff = -1.0;
    t.op = pauli_x_product({p.boundary.begin(), p.boundary.end()}, lat.n_edges);
    t.n_qubits = lat.n_edges;
    m.terms.push_back(std::move(t));
  }
  m.H = assemble(m.terms, dim);
  m.commuting_terms = pairwise_commutator_defect(m.terms, dim) < kAlgebraTol;
  if (!m.commuting_terms) throw std::runtime_error("toric code terms fail to commute");
  return m;
}

ModelOperator build_levin_wen(const anyon::CategoryData& layer, const HoneycombTorus& lat) {
  const int n = layer.num_labels();
  if (n != 2) throw std::invalid_argument("build_levin_wen: two-label layer categories only");
  for (int a = 0; a < n; ++a)
    if (layer.dual[size_t(a)] != a)
      throw std::invalid_argument("build_levin_wen: layer labels must be self-dual");

  ModelOperator m;
  m.n_qubits = lat.n_edges;
  const Eigen::Index dim = pow2(lat.n_edges);
  const double D2 = layer.total_dim * layer.total_dim;

  for (const auto& v : lat.vertices) {
    VectorXd diag(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      diag(i) = layer.delta(int((i >> v[0]) & 1), int((i >> v[1]) & 1), int((i >> v[2]) & 1));
    HamiltonianTerm t;
    t.kind = HamiltonianTerm::Kind::projector;
    t.coeff = -1.0;
    t.op = diagonal_sparse(diag);
    t.n_qubits = lat.n_edges;
    m.terms.push_back(std::move(t));
  }

  for (const auto& p : lat.plaquettes) {
    std::vector<Triplet> trip;
    for (Eigen::Index cfg = 0; cfg < dim; ++cfg) {
      int g[6], lam[6];
      for (int k = 0; k < 6; ++k) {
        g[k] = int((cfg >> p.boundary[size_t(k)]) & 1);
        lam[k] = int((cfg >> p.legs[size_t(k)]) & 1);
      }
      for (int s = 0; s < n; ++s) {
        for (int gp = 0; gp < 64; ++gp) {
          int gn[6];
          for (int k = 0; k < 6; ++k) gn[k] = (gp >> k) & 1;
          Complex amp(1, 0);
          for (int k = 0; k < 6 && amp != Complex(0, 0); ++k)
            amp *= layer.F(lam[k], gn[(k + 1) % 6], gn[k], s, g[k], g[(k + 1) % 6]);
          if (amp == Complex(0, 0)) continue;
          Eigen::Index out = cfg;
          for (int k = 0; k < 6; ++k) {
            const Eigen::Index bit = Eigen::Index(1) << p.boundary[size_t(k)];
            if (bool(out & bit) != bool(gn[k])) out ^= bit;
          }
          trip.emplace_back(out, cfg, (layer.qdim(s) / D2) * amp);
        }
      }
    }
    SparseXc bp(dim, dim);
    bp.setFromTriplets(trip.begin(), trip.end());
    bp.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return std::abs(v) > 1e-14; });
    bp.makeCompressed();
    HamiltonianTerm t;
    t.kind = HamiltonianTerm::Kind::projector;
    t.coeff = -1.0;
    t.op = std::move(bp);
    t.n_qubits = lat.n_edges;
    m.terms.push_back(std::move(t));
  }

  m.H = assemble(m.terms, dim);
  m.commuting_terms = pairwise_commutator_defect(m.terms, dim) < kAlgebraTol;
  if (!m.commuting_terms) throw std::runtime_error("Levin-Wen terms fail to commute");
  return m;
}

std::pair<ModelOperator, QuantumState> build_field_hamiltonian(const Eigen::Vector3d& n,
                                                               const HoneycombTorus& lat) {
  if (n.norm() > 1.0 + 1e-12)
    throw std::invalid_argument("build_field_hamiltonian: |n| must not exceed 1");
  ModelOperator m;
  m.n_qubits = lat.n_edges;
  HamiltonianTerm t;
  t.kind = HamiltonianTerm::Kind::field;
  t.coeff = 1.0;
  t.field_dir = n;
  t.n_qubits = lat.n_edges;
  m.terms.push_back(t);
  m.H = assemble(m.terms, pow2(lat.n_edges));
  m.commuting_terms = true;  // single-qubit terms on distinct sites

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(pauli_sigma(n));
  const Eigen::Vector2cd phi = es.eigenvectors().col(0);  // -|n| eigenvector
  VectorXc state = VectorXc::Ones(1);
  for (int q = 0; q < lat.n_edges; ++q) {
    VectorXc next(state.size() * 2);
    for (Eigen::Index i = 0; i < state.size(); ++i)
      for (int b = 0; b < 2; ++b) next(i + Eigen::Index(b) * state.size()) = state(i) * phi(b);
    state = std::move(next);
  }
  return {std::move(m), QuantumState(std::move(state))};
}

Eigen::Vector3d field_theta(double theta) { return {std::sin(theta), 0.0, std::cos(theta)}; }

Eigen::Vector3d field_disc(double a, double b, int sign) {
  const double r2 = a * a + b * b;
  if (r2 > 1.0 + 1e-12) throw std::domain_error("field_disc: a^2 + b^2 > 1");
  return {a, b, sign >= 0 ? std::sqrt(std::max(0.0, 1 - r2)) : -std::sqrt(std::max(0.0, 1 - r2))};
}

Eigen::Vector3d field_disc_x(double a, double b, int sign) {
  const double r2 = a * a + b * b;
  if (r2 > 1.0 + 1e-12) throw std::domain_error("field_disc_x: a^2 + b^2 > 1");
  return {sign >= 0 ? std::sqrt(std::max(0.0, 1 - r2)) : -std::sqrt(std::max(0.0, 1 - r2)), b, a};
}

LogicalOps logical_operators(const HoneycombTorus& lat) {
  if (lat.n_edges != 12) throw std::invalid_argument("logical_operators: reference torus only");
  LogicalOps l;
  l.Xbar = SparseOperator(pauli_x_product({6, 7, 10, 11}, 12), true);
  l.Zbar = SparseOperator(diagonal_sparse(pauli_z_diagonal({0, 1}, 12)), true);
  l.Zbar1 = SparseOperator(diagonal_sparse(pauli_z_diagonal({9, 11}, 12)), true);
  return l;
}

SparseOperator rotation_unitary(const HoneycombTorus& lat) {
  return SparseOperator(qubit_permutation_unitary(lat.rotation_perm, lat.n_edges), false);
}

void dump_sparse_operator(const SparseOperator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << std::setprecision(17);
  for (int k = 0; k < op.entries.outerSize(); ++k)
    for (SparseXc::InnerIterator it(op.entries, k); it; ++it)
      out << it.row() << " " << it.col() << " " << it.value().real() << " " << it.value().imag()
          << "\n";
}

}  // namespace topo::lattice
