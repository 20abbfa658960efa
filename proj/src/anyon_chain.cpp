#include "topoprep/anyon_chain.hpp"

#include <cmath>
#include <functional>

#include "topoprep/qubits.hpp"

namespace topo::chain {

namespace {

// Raw bond operator in the pair-fusion gauge: the state patch around bond
// (j, j+1) is taken to the basis where the two site charges fuse through a
// definite channel g, the elementary diagram acts there, and the result is
// taken back. All shipped categories have real F, so no conjugation subtleties.
SparseXc raw_bond_op(const FusionTreeBasis& basis, ProcessKind kind, int label, int site) {
  const CategoryData& cat = *basis.cat;
  const int L = basis.L;
  const int j = site, j2 = (site + 1) % L;
  const Eigen::Index dim = basis.dim();
  std::vector<Triplet> trip;
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto& [avec, bvec] = basis.states[size_t(col)];
    const int bprev = bvec[size_t((j + L - 1) % L)];
    const int aj = avec[size_t(j)], bj = bvec[size_t(j)], aj2 = avec[size_t(j2)],
              bj2 = bvec[size_t(j2)];
    for (int g = 0; g < cat.num_labels(); ++g) {
      const Complex c1 = cat.F(bprev, aj, bj, aj2, bj2, g);
      if (c1 == Complex(0, 0)) continue;
      int na = -1, na2 = -1, ng = -1;
      switch (kind) {
        case ProcessKind::creation:
          if (aj == 0 && aj2 == 0 && g == 0) na = label, na2 = cat.dual[size_t(label)], ng = 0;
          break;
        case ProcessKind::annihilation:
          if (aj == label && aj2 == cat.dual[size_t(label)] && g == 0) na = 0, na2 = 0, ng = 0;
          break;
        case ProcessKind::hop_left:
          if (aj == 0 && aj2 == label && g == label) na = label, na2 = 0, ng = label;
          break;
        case ProcessKind::hop_right:
          if (aj == label && aj2 == 0 && g == label) na = 0, na2 = label, ng = label;
          break;
      }
      if (na < 0) continue;
      for (int nbj = 0; nbj < cat.num_labels(); ++nbj) {
        const Complex c2 = cat.F(bprev, na, nbj, na2, bj2, ng);
        if (c2 == Complex(0, 0)) continue;
        auto a2 = avec;
        auto b2 = bvec;
        a2[size_t(j)] = na;
        a2[size_t(j2)] = na2;
        b2[size_t(j)] = nbj;
        const Eigen::Index row = basis.index_of(a2, b2);
        if (row >= 0) trip.emplace_back(row, col, c1 * std::conj(c2));
      }
    }
  }
  SparseXc m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

struct Normalization {
  double nu_create = 1.0;  // multiplies V^C (and conj on V^A)
  double nu_hop = 1.0;     // multiplies V^L (and conj on V^R)
};

// Pins the free convention constants with the two printed identities:
//   P0 V^A(abar) V^R ... V^C P0 = F_a   (winding around the ring)
//   P0 V^A V^L V^R V^C P0 = d_a P0     (local contractible loop)
Normalization calibrate(const FusionTreeBasis& basis, int label) {
  const CategoryData& cat = *basis.cat;
  const int L = basis.L;
  const MatrixXc frame = basis.ground_frame();

  SparseXc wind = raw_bond_op(basis, ProcessKind::creation, label, 0);
  for (int j = 1; j < L - 1; ++j)
    wind = SparseXc(raw_bond_op(basis, ProcessKind::hop_right, label, j) * wind);
  wind = SparseXc(raw_bond_op(basis, ProcessKind::annihilation, label, L - 1) * wind);
  const MatrixXc mw = frame.adjoint() * (wind * frame);
  const MatrixXc Fa = anyon::flux_string_operator(label, cat).entries;
  const Complex cw = (Fa.adjoint() * mw).trace() / (Fa.adjoint() * Fa).trace();
  if (max_abs(mw - cw * Fa) > 1e-9 * std::max(1.0, std::abs(cw)))
    throw std::runtime_error("elementary_two_site: winding product not proportional to F_a");

  SparseXc loc = raw_bond_op(basis, ProcessKind::creation, label, 0);
  loc = SparseXc(raw_bond_op(basis, ProcessKind::hop_right, label, 1) * loc);
  loc = SparseXc(raw_bond_op(basis, ProcessKind::hop_left, label, 1) * loc);
  loc = SparseXc(raw_bond_op(basis, ProcessKind::annihilation, label, 0) * loc);
  const MatrixXc ml = frame.adjoint() * (loc * frame);
  const Complex cl = ml.trace() / double(ml.rows());
  if (scalar_deviation(ml) > 1e-9)
    throw std::runtime_error("elementary_two_site: local loop not scalar on the ground space");

  const double c_wind = cw.real(), c_loc = cl.real();
  if (!(c_wind > 0) || !(c_loc > 0))
    throw std::runtime_error("elementary_two_site: calibration constants must be positive here");
  const double da = cat.qdim(label);
  Normalization nu;
  if (L == 4) {
    // the two conditions coincide; consistency requires c_wind * d_a = c_loc
    if (std::abs(c_wind * da - c_loc) > 1e-9)
      throw std::runtime_error("elementary_two_site: inconsistent calibration at L = 4");
    nu.nu_hop = 1.0;
    nu.nu_create = std::sqrt(da / c_loc);
  } else {
    // |nuC|^2 nuH^{L-2} c_wind = 1,  |nuC|^2 nuH^2 c_loc = d_a
    nu.nu_hop = std::pow(c_loc / (c_wind * da), 1.0 / double(L - 4));
    nu.nu_create = std::sqrt(da / (c_loc * nu.nu_hop * nu.nu_hop));
  }
  return nu;
}

Normalization cached_norm(const FusionTreeBasis& basis, int label) {
  auto it = basis.norm_cache.find(label);
  if (it == basis.norm_cache.end()) {
    const Normalization nu = calibrate(basis, label);
    it = basis.norm_cache.emplace(label, std::make_pair(nu.nu_create, nu.nu_hop)).first;
  }
  return {it->second.first, it->second.second};
}

}  // namespace

Eigen::Index FusionTreeBasis::index_of(const std::vector<int>& a, const std::vector<int>& b) const {
  const auto it = index.find(std::make_pair(a, b));
  return it == index.end() ? -1 : it->second;
}

MatrixXc FusionTreeBasis::ground_frame() const {
  const int n = cat->num_labels();
  MatrixXc frame = MatrixXc::Zero(dim(), n);
  for (int b = 0; b < n; ++b) {
    std::vector<int> a(size_t(L), 0), bb(size_t(L), b);
    const Eigen::Index idx = index_of(a, bb);
    if (idx < 0) throw std::runtime_error("ground_frame: flux state missing");
    frame(idx, b) = 1.0;
  }
  return frame;
}

long fusion_tree_count(const CategoryData& cat, int L) {
  const int n = cat.num_labels();
  MatrixXd M = MatrixXd::Zero(n, n);
  for (int bp = 0; bp < n; ++bp)
    for (int b = 0; b < n; ++b) {
      int cnt = 0;
      for (int a = 0; a < n; ++a) cnt += cat.delta(a, b, cat.dual[size_t(bp)]);
      M(bp, b) = cnt;
    }
  MatrixXd acc = MatrixXd::Identity(n, n);
  for (int k = 0; k < L; ++k) acc = acc * M;
  return std::lround(acc.trace());
}

FusionTreeBasis enumerate_basis(const CategoryData& cat, int L, Eigen::Index budget) {
  if (L < 2) throw std::invalid_argument("enumerate_basis: L >= 2");
  for (int a = 0; a < cat.num_labels(); ++a)
    for (int b = 0; b < cat.num_labels(); ++b)
      for (int c = 0; c < cat.num_labels(); ++c)
        if (cat.N(c, a, b) > 1) throw std::invalid_argument("enumerate_basis: multiplicity-free only");

  const long count = fusion_tree_count(cat, L);
  if (count > budget)
    throw std::runtime_error("enumerate_basis: dimension " + std::to_string(count) +
                             " exceeds enumeration budget");

  FusionTreeBasis basis;
  basis.cat = &cat;
  basis.L = L;
  const int n = cat.num_labels();
  // depth-first over (b_0, then (a_j, b_j))
  std::vector<int> a(static_cast<size_t>(L)), b(static_cast<size_t>(L));
  std::function<void(int)> rec = [&](int j) {
    if (j == L) {
      basis.states.emplace_back(a, b);
      return;
    }
    const int bprev = j == 0 ? b[size_t(L - 1)] : b[size_t(j - 1)];
    for (int aj = 0; aj < n; ++aj)
      for (int bj = 0; bj < n; ++bj) {
        if (j == L - 1 && bj != b[size_t(L - 1)]) continue;  // periodic closure
        if (!cat.delta(aj, bj, cat.dual[size_t(bprev)])) continue;
        a[size_t(j)] = aj;
        b[size_t(j)] = bj;
        rec(j + 1);
      }
  };
  for (int b0 = 0; b0 < n; ++b0) {
    b[size_t(L - 1)] = b0;  // b_0 = b_L
    rec(0);
  }
  if (long(basis.states.size()) != count)
    throw std::runtime_error("enumerate_basis: count mismatch with transfer matrix");
  for (size_t i = 0; i < basis.states.size(); ++i)
    basis.index.emplace(basis.states[i], Eigen::Index(i));
  return basis;
}

SparseXc onsite_h0(const FusionTreeBasis& basis, const VectorXd& costs) {
  const CategoryData& cat = *basis.cat;
  if (costs.size() != cat.num_labels()) throw std::invalid_argument("onsite_h0: costs per label");
  if (std::abs(costs(0)) > 0) throw std::invalid_argument("onsite_h0: vacuum cost must be 0");
  for (int a = 1; a < cat.num_labels(); ++a)
    if (!(costs(a) > 0)) throw std::domain_error("onsite_h0: nontrivial costs must be positive");
  VectorXc diag(basis.dim());
  for (Eigen::Index i = 0; i < basis.dim(); ++i) {
    double e = 0;
    for (int x : basis.states[size_t(i)].first) e += costs(x);
    diag(i) = e;
  }
  return diagonal_sparse_c(diag);
}

ChainOperator elementary_two_site(const FusionTreeBasis& basis, ProcessKind kind, int label,
                                  int site) {
  if (label == 0) throw std::invalid_argument("elementary_two_site: label must be nontrivial");
  if (site < 0 || site >= basis.L) throw std::invalid_argument("elementary_two_site: bad site");
  const Normalization nu = cached_norm(basis, label);
  double scale = 1.0;
  switch (kind) {
    case ProcessKind::creation:
    case ProcessKind::annihilation:
      scale = nu.nu_create;
      break;
    case ProcessKind::hop_left:
    case ProcessKind::hop_right:
      scale = nu.nu_hop;
      break;
  }
  ChainOperator op;
  op.matrix = SparseXc(scale * raw_bond_op(basis, kind, label, site));
  op.kind = kind;
  op.label = label;
  op.site = site;
  return op;
}

SparseXc assemble_perturbation(const FusionTreeBasis& basis, const ChainParams& params) {
  const CategoryData& cat = *basis.cat;
  const Eigen::Index dim = basis.dim();
  SparseXc V(dim, dim);
  for (int j = 0; j < basis.L; ++j)
    for (int a = 1; a < cat.num_labels(); ++a) {
      const Complex g = a < int(params.gamma.size()) ? params.gamma[size_t(a)] : Complex(0, 0);
      const Complex t = a < int(params.tau.size()) ? params.tau[size_t(a)] : Complex(0, 0);
      if (g != Complex(0, 0)) {
        V += SparseXc(g * elementary_two_site(basis, ProcessKind::creation, a, j).matrix);
        V += SparseXc(std::conj(g) * elementary_two_site(basis, ProcessKind::annihilation, a, j).matrix);
      }
      if (t != Complex(0, 0)) {
        V += SparseXc(t * elementary_two_site(basis, ProcessKind::hop_left, a, j).matrix);
        V += SparseXc(std::conj(t) * elementary_two_site(basis, ProcessKind::hop_right, a, j).matrix);
      }
    }
  V.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return std::abs(v) > 1e-15; });
  V.makeCompressed();
  return V;
}

ChainEffectiveReport chain_effective(const FusionTreeBasis& basis, const ChainParams& params) {
  const CategoryData& cat = *basis.cat;
  const int L = basis.L;
  const SparseXc V = assemble_perturbation(basis, params);
  {
    SparseXc d = V - SparseXc(V.adjoint());
    for (int k = 0; k < d.outerSize(); ++k)
      for (SparseXc::InnerIterator it(d, k); it; ++it)
        if (std::abs(it.value()) > 1e-11)
          throw std::runtime_error("chain_effective: assembled perturbation not Hermitian");
  }
  const SparseXc H0 = onsite_h0(basis, params.eps);
  const MatrixXc frame = basis.ground_frame();

  // order-L self-energy with the diagonal resolvent of H0 (ground energy 0)
  VectorXd h0d(basis.dim());
  for (Eigen::Index i = 0; i < basis.dim(); ++i) h0d(i) = H0.coeff(i, i).real();
  auto applyG = [&](const MatrixXc& X) {
    MatrixXc out = X;
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      out.row(i) *= h0d(i) > 1e-12 ? Complex(-1.0 / h0d(i), 0) : Complex(0, 0);
    return out;
  };
  MatrixXc X = V * frame;
  for (int k = 1; k < L; ++k) X = V * applyG(X);
  const MatrixXc heff = frame.adjoint() * X;

  std::vector<MatrixXc> family;
  for (int a = 1; a < cat.num_labels(); ++a)
    family.push_back(anyon::flux_string_operator(a, cat).entries);

  ChainEffectiveReport rep;
  rep.heff = heff;
  // least squares over {F_a (a != 1)} + identity
  const Eigen::Index k = heff.rows();
  MatrixXc design(k * k, Eigen::Index(family.size()) + 1);
  for (size_t i = 0; i < family.size(); ++i)
    design.col(Eigen::Index(i)) = Eigen::Map<const VectorXc>(family[i].data(), k * k);
  MatrixXc id = MatrixXc::Identity(k, k);
  design.col(Eigen::Index(family.size())) = Eigen::Map<const VectorXc>(id.data(), k * k);
  const Eigen::Map<const VectorXc> rhs(heff.data(), k * k);
  const VectorXc coef = design.completeOrthogonalDecomposition().solve(rhs);
  rep.f.assign(size_t(cat.num_labels()), Complex(0, 0));
  for (size_t i = 0; i < family.size(); ++i) rep.f[i + 1] = coef(Eigen::Index(i));
  rep.scalar = coef(Eigen::Index(family.size()));
  rep.residual = (design * coef - rhs).norm();
  return rep;
}

}  // namespace topo::chain
