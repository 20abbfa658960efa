#include "topoprep/lw_probes.hpp"

#include <algorithm>
#include <cmath>

namespace topo::probes {

SparseOperator ring_operator(const CategoryData& layer, int a, int edge,
                             const HoneycombTorus& lat) {
  const int n = layer.num_labels();
  if (a < 0 || a >= n) throw std::invalid_argument("ring_operator: label out of range");
  if (n != 2) throw std::invalid_argument("ring_operator: two-label layer categories only");
  if (edge < 0 || edge >= lat.n_edges) throw std::invalid_argument("ring_operator: bad edge");
  const Eigen::Index dim = pow2(lat.n_edges);
  VectorXc diag(dim);
  const Complex r0 = layer.S(a, 0) / layer.S(0, 0);
  const Complex r1 = layer.S(a, 1) / layer.S(0, 1);
  for (Eigen::Index i = 0; i < dim; ++i) diag(i) = ((i >> edge) & 1) ? r1 : r0;
  const bool herm = std::abs(r0.imag()) < 1e-14 && std::abs(r1.imag()) < 1e-14;
  return SparseOperator(diagonal_sparse_c(diag), herm);
}

ExcitationReport excitation_check(const ModelOperator& model, const CategoryData& layer, int a,
                                  int edge, const HoneycombTorus& lat,
                                  const GroundSubspace& ground) {
  const SparseOperator oa = ring_operator(layer, a, edge, lat);
  ExcitationReport rep;
  for (Eigen::Index c = 0; c < ground.frame.cols(); ++c) {
    VectorXc v = oa.entries * ground.frame.col(c);
    const double nrm = v.norm();
    if (nrm < 1e-12) continue;
    v /= nrm;
    const VectorXc hv = model.H.entries * v;
    const double e = std::real(Complex(v.adjoint() * hv));
    rep.energy_shift = std::max(rep.energy_shift, e - ground.energy);
    rep.eigenstate_residual = std::max(rep.eigenstate_residual, (hv - e * v).norm());
    // adjacent plaquettes: the two whose boundary contains the edge
    for (size_t p = 0; p < lat.plaquettes.size(); ++p) {
      const auto& bd = lat.plaquettes[p].boundary;
      if (std::find(bd.begin(), bd.end(), edge) == bd.end()) continue;
      // model terms: vertices first, then plaquettes, each with coeff -1
      const auto& bp = model.terms[lat.vertices.size() + p].op;
      rep.bp_annihilation_residual = std::max(rep.bp_annihilation_residual, (bp * v).norm());
    }
  }
  return rep;
}

TomographyResult flux_tomography(const ModelOperator& model, const CategoryData& layer,
                                 const CategoryData& doubled, int a, const std::vector<int>& loop,
                                 const HoneycombTorus& lat, const GroundSubspace& ground,
                                 const QuantumState* state) {
  for (Eigen::Index c = 0; c < ground.frame.cols(); ++c) {
    const double resid =
        (model.H.entries * ground.frame.col(c) - ground.energy * ground.frame.col(c)).norm();
    if (resid > 1e-6)
      throw std::invalid_argument("flux_tomography: frame is not a ground frame of the model");
  }
  bool is_minimal = false;
  for (const auto& l : lat.minimal_dual_loops)
    if (std::vector<int>(l.begin(), l.end()) == loop) is_minimal = true;
  if (!is_minimal) throw std::invalid_argument("flux_tomography: loop must be a minimal dual loop");

  MatrixXc img = ground.frame;
  for (int e : loop) img = ring_operator(layer, a, e, lat).entries * img;
  TomographyResult res;
  res.loop_image = ground.frame.adjoint() * img;

  // reference spectrum: column ratios of the doubled S for the pair label (a,a)
  const int n0 = layer.num_labels();
  const int A = a * n0 + a;
  const int nd = doubled.num_labels();
  VectorXd ref(nd);
  for (int x = 0; x < nd; ++x) ref(x) = std::real(doubled.S(A, x) / doubled.S(0, x));

  // fix the unknown constant by trace matching
  const double trF = [&] {
    double t = 0;
    for (int x = 0; x < nd; ++x) t += ref(x);
    return t;
  }();
  res.scale = std::abs(trF) > 1e-9 ? res.loop_image.trace() / trF
                                   : Complex(res.loop_image.norm() / ref.norm(), 0);
  MatrixXc M = res.loop_image / res.scale;
  MatrixXc Mh = (M + M.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(Mh);

  // eigenvalue multiset must match the reference ratios
  VectorXd got = es.eigenvalues();
  VectorXd want = ref;
  std::sort(want.data(), want.data() + want.size());
  for (Eigen::Index i = 0; i < got.size(); ++i)
    res.multiset_deviation = std::max(res.multiset_deviation, std::abs(got(i) - want(i)));
  if (res.multiset_deviation > 1e-6)
    throw std::runtime_error("flux_tomography: eigenvalue multiset mismatch (deviation " +
                             std::to_string(res.multiset_deviation) + ")");

  // group labels by reference eigenvalue
  std::vector<bool> used(size_t(nd), false);
  for (int x = 0; x < nd; ++x) {
    if (used[size_t(x)]) continue;
    std::vector<int> members{x};
    for (int y = x + 1; y < nd; ++y)
      if (!used[size_t(y)] && std::abs(ref(y) - ref(x)) < 1e-8) {
        members.push_back(y);
        used[size_t(y)] = true;
      }
    used[size_t(x)] = true;
    FluxSector sec;
    sec.eigenvalue = ref(x);
    sec.combined_pair = members.size() > 1;
    for (size_t m = 0; m < members.size(); ++m)
      sec.label += (m ? "+" : "") + doubled.labels[size_t(members[m])];
    MatrixXc proj = MatrixXc::Zero(got.size(), got.size());
    for (Eigen::Index i = 0; i < got.size(); ++i)
      if (std::abs(es.eigenvalues()(i) - ref(x)) < 1e-6)
        proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    sec.projector = proj;
    if (state) {
      const VectorXc coords = ground.frame.adjoint() * state->amplitudes;
      sec.expectation = std::real(Complex(coords.adjoint() * (proj * coords)));
    }
    res.sectors.push_back(std::move(sec));
  }
  return res;
}

AnalyticGroundState analytic_effective_ground_state(const CategoryData& doubled,
                                                    anyon::LoopGeometry geometry) {
  const int n = doubled.num_labels();
  AnalyticGroundState out;
  if (n == 1) {
    out.state = VectorXc::Ones(1);
    out.eigenvalues = VectorXd::Zero(1);
    out.heff = MatrixXc::Zero(1, 1);
    return out;
  }
  // F = diag of Verlinde ratios for the highest-weight pair label
  const int A = n - 1;
  MatrixXc F = MatrixXc::Zero(n, n);
  for (int x = 0; x < n; ++x) F(x, x) = doubled.S(A, x) / doubled.S(0, x);

  MatrixXc heff = MatrixXc::Zero(n, n);
  if (geometry == anyon::LoopGeometry::rhombic) {
    const MatrixXc Amat = anyon::modular_word_unitary("ts", doubled).entries;
    MatrixXc Aj = MatrixXc::Identity(n, n);
    for (int j = 0; j < 3; ++j) {
      heff -= Aj.adjoint() * F * Aj;
      Aj = Amat * Aj;
    }
  } else {
    heff -= F + doubled.S.adjoint() * F * doubled.S;
  }
  out.heff = heff;

  Eigen::SelfAdjointEigenSolver<MatrixXc> es(heff);
  out.eigenvalues = es.eigenvalues();
  if (es.eigenvalues()(1) - es.eigenvalues()(0) < 1e-10) {
    out.degenerate = true;
    int deg = 1;
    while (deg < n && es.eigenvalues()(deg) - es.eigenvalues()(0) < 1e-10) ++deg;
    out.frame = es.eigenvectors().leftCols(deg);
    return out;
  }
  VectorXc g = es.eigenvectors().col(0);
  Eigen::Index imax = 0;
  g.cwiseAbs().maxCoeff(&imax);
  g *= std::polar(1.0, -std::arg(g(imax)));
  out.state = g;
  return out;
}

}  // namespace topo::probes
