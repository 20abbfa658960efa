#include "topoprep/schrieffer_wolff.hpp"

#include <cmath>
#include <map>

namespace topo::sw {

namespace {

// Conjugate gradient for (H0 - E0) x = b restricted to the excited subspace.
// The operator is positive definite there (spectral gap above E0).
VectorXc cg_excited_solve(const SparseOperator& H0, double E0, const MatrixXc& frame,
                          const VectorXc& rhs, double tol = 1e-13, int max_iter = 2000) {
  auto deflate = [&](VectorXc v) {
    v -= frame * (frame.adjoint() * v).eval();
    return v;
  };
  const VectorXc b = deflate(rhs);
  VectorXc x = VectorXc::Zero(b.size());
  VectorXc r = b, p = b;
  double rs = r.squaredNorm();
  const double b2 = std::max(rs, 1e-300);
  for (int it = 0; it < max_iter && rs > tol * tol * b2; ++it) {
    VectorXc hp = deflate(H0.entries * p - E0 * p);
    const double alpha = rs / std::real(Complex(p.adjoint() * hp));
    x += alpha * p;
    r -= alpha * hp;
    const double rs_new = r.squaredNorm();
    p = r + (rs_new / rs) * p;
    rs = rs_new;
    if (it % 50 == 49) x = deflate(x);
  }
  return deflate(x);
}

// Rank-structured operator U * V^dag used by the series expansion.
struct LowRankOp {
  MatrixXc U, V;  // dim x r each

  Eigen::Index dim() const { return U.rows(); }
  Eigen::Index rank() const { return U.cols(); }

  static LowRankOp zero(Eigen::Index dim) { return {MatrixXc(dim, 0), MatrixXc(dim, 0)}; }

  LowRankOp adjoint() const { return {V, U}; }

  LowRankOp operator*(Complex c) const { return {U * c, V}; }

  static LowRankOp add(const LowRankOp& a, const LowRankOp& b) {
    LowRankOp out;
    out.U.resize(a.dim(), a.rank() + b.rank());
    out.V.resize(a.dim(), a.rank() + b.rank());
    out.U << a.U, b.U;
    out.V << a.V, b.V;
    return out;
  }

  static LowRankOp mul(const LowRankOp& a, const LowRankOp& b) {
    // (Ua Va^dag)(Ub Vb^dag) = [Ua (Va^dag Ub)] Vb^dag
    return {a.U * (a.V.adjoint() * b.U).eval(), b.V};
  }

  // QR-based rank compression; keeps singular directions above rel_tol.
  void compress(double rel_tol = 1e-13) {
    if (rank() == 0) return;
    const Eigen::Index qu_cols = std::min(rank(), dim());
    Eigen::HouseholderQR<MatrixXc> qu(U), qv(V);
    const MatrixXc Qu = qu.householderQ() * MatrixXc::Identity(dim(), qu_cols);
    const MatrixXc Qv = qv.householderQ() * MatrixXc::Identity(dim(), qu_cols);
    const MatrixXc Ru = Qu.adjoint() * U;  // qu_cols x r
    const MatrixXc Rv = Qv.adjoint() * V;
    MatrixXc core = Ru * Rv.adjoint();
    Eigen::JacobiSVD<MatrixXc> svd(core, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) < 1e-300) {
      U.resize(dim(), 0);
      V.resize(dim(), 0);
      return;
    }
    Eigen::Index keep = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * s(0)) ++keep;
    MatrixXc newU = Qu * svd.matrixU().leftCols(keep) * s.head(keep).asDiagonal();
    MatrixXc newV = Qv * svd.matrixV().leftCols(keep);
    U = std::move(newU);
    V = std::move(newV);
  }
};

struct SeriesWork {
  const SWContext& ctx;

  MatrixXc apply_V_block(const MatrixXc& X) const { return ctx.V.entries * X; }

  MatrixXc apply_P0_block(const MatrixXc& X) const {
    return ctx.ground.frame * (ctx.ground.frame.adjoint() * X).eval();
  }

  MatrixXc apply_Vod_block(const MatrixXc& X) const {
    // V_od = P0 V + V P0 - 2 P0 V P0
    const MatrixXc vx = apply_V_block(X);
    const MatrixXc px = apply_P0_block(X);
    return apply_P0_block(vx) + apply_V_block(px) - 2.0 * apply_P0_block(apply_V_block(px));
  }

  MatrixXc apply_Vd_block(const MatrixXc& X) const { return apply_V_block(X) - apply_Vod_block(X); }

  LowRankOp make_Vod() const {
    // P0 V Q0 + Q0 V P0 as a rank-2k object
    const MatrixXc& W0 = ctx.ground.frame;
    const MatrixXc VW0 = ctx.V.entries * W0;
    const MatrixXc QVW0 = VW0 - apply_P0_block(VW0);
    LowRankOp a{W0, QVW0};    // P0 V Q0 = W0 (Q0 V W0)^dag  (V hermitian)
    LowRankOp b{QVW0, W0};    // Q0 V P0
    return LowRankOp::add(a, b);
  }

  LowRankOp superop_L(const LowRankOp& X) const {
    // L(X) = P0 X G - G X P0
    const MatrixXc& W0 = ctx.ground.frame;
    const MatrixXc A = W0.adjoint() * X.U;            // k x r
    LowRankOp t1{W0 * A, ctx.apply_G_block(X.V)};     // P0 X G
    const MatrixXc B = X.V.adjoint() * W0;            // r x k
    LowRankOp t2{ctx.apply_G_block(X.U * B), W0};     // G X P0
    LowRankOp out = LowRankOp::add(t1, t2 * Complex(-1, 0));
    out.compress();
    return out;
  }

  LowRankOp ad_Vd(const LowRankOp& X) const {
    // [V_d, X] = V_d X - X V_d;  V_d applied column-wise to the factors.
    LowRankOp t1{apply_Vd_block(X.U), X.V};
    LowRankOp t2{X.U, apply_Vd_block(X.V)};  // (X V_d)^dag factors: V_d hermitian
    LowRankOp out = LowRankOp::add(t1, t2 * Complex(-1, 0));
    out.compress();
    return out;
  }

  static LowRankOp commutator(const LowRankOp& A, const LowRankOp& B) {
    LowRankOp out = LowRankOp::add(LowRankOp::mul(A, B), LowRankOp::mul(B, A) * Complex(-1, 0));
    out.compress();
    return out;
  }
};

// Bernoulli-number coefficient families for the recursion (see ledgered note:
// the b's follow Bravyi-DiVincenzo-Loss, 2(2^{2n}-1) beta_{2n} / (2n)!).
constexpr double kBeta2 = 1.0 / 6.0, kBeta4 = -1.0 / 30.0, kBeta6 = 1.0 / 42.0;
const std::map<int, double> kA = {{2, 2.0 * kBeta2},            // 2^2 b2 / 2!
                                  {4, 16.0 * kBeta4 / 24.0},    // 2^4 b4 / 4!
                                  {6, 64.0 * kBeta6 / 720.0}};
const std::map<int, double> kB = {{1, 2.0 * 3.0 * kBeta2 / 2.0},      // 1/2
                                  {3, 2.0 * 15.0 * kBeta4 / 24.0},    // -1/24
                                  {5, 2.0 * 63.0 * kBeta6 / 720.0}};  // 1/240

void compositions(int total, int parts, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& emit) {
  if (parts == 1) {
    if (total >= 1) {
      cur.push_back(total);
      emit(cur);
      cur.pop_back();
    }
    return;
  }
  for (int first = 1; first + parts - 1 <= total; ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

VectorXc SWContext::project_Q0(const VectorXc& x) const {
  return x - ground.frame * (ground.frame.adjoint() * x).eval();
}

VectorXc SWContext::apply_G(const VectorXc& x) const {
  if (dense) {
    VectorXc y = evecs.adjoint() * x;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
      const double d = E0 - evals(i);
      y(i) = std::abs(d) < 1e-9 ? Complex(0, 0) : y(i) / d;
    }
    return evecs * y;
  }
  return -cg_excited_solve(H0, E0, ground.frame, x);
}

MatrixXc SWContext::apply_G_block(const MatrixXc& X) const {
  MatrixXc out(X.rows(), X.cols());
  for (Eigen::Index c = 0; c < X.cols(); ++c) out.col(c) = apply_G(X.col(c));
  return out;
}

SWContext make_sw_context(SparseOperator H0, SparseOperator V, int ground_dim,
                          int num_distinct_excited, const EigenOptions& opts) {
  if (!H0.hermitian || !V.hermitian) throw std::invalid_argument("make_sw_context: Hermitian inputs required");
  SWContext ctx;
  ctx.H0 = std::move(H0);
  ctx.V = std::move(V);
  ctx.dense = ctx.H0.dim <= opts.dense_cutoff;
  if (ctx.dense) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es{MatrixXc(ctx.H0.entries)};
    ctx.evals = es.eigenvalues();
    ctx.evecs = es.eigenvectors();
    ctx.E0 = ctx.evals(0);
    int deg = ground_dim;
    if (deg < 0) {
      deg = 1;
      while (deg < ctx.evals.size() && ctx.evals(deg) - ctx.E0 < 1e-8) ++deg;
    }
    ctx.ground.frame = ctx.evecs.leftCols(deg);
    ctx.ground.energy = ctx.E0;
    std::vector<double> distinct;
    for (Eigen::Index i = deg; i < ctx.evals.size(); ++i) {
      if (distinct.empty() || ctx.evals(i) - distinct.back() > 1e-8) distinct.push_back(ctx.evals(i));
    }
    ctx.num_distinct_excited = int(distinct.size());
  } else {
    const int k = ground_dim > 0 ? ground_dim : 4;
    ctx.ground = evolve::ground_subspace(ctx.H0, k + 2, 1e-8, opts);
    if (ground_dim > 0 && ctx.ground.degeneracy() != ground_dim)
      throw std::runtime_error("make_sw_context: unexpected ground degeneracy");
    ctx.E0 = ctx.ground.energy;
    if (num_distinct_excited <= 0)
      throw std::invalid_argument("make_sw_context: num_distinct_excited required for large sparse H0");
    ctx.num_distinct_excited = num_distinct_excited;
  }
  if (num_distinct_excited > 0) ctx.num_distinct_excited = num_distinct_excited;
  return ctx;
}

EffectiveHamiltonian exact_sw(const SparseOperator& H0, const SparseOperator& V, double eps,
                              int ground_dim, const EigenOptions& opts) {
  // Frames of the unperturbed and perturbed lowest clusters.
  int k = ground_dim;
  EigenResult w0, wp;
  if (k < 0) {
    w0 = lowest_eigenpairs(H0.entries, std::min<Eigen::Index>(8, H0.dim), opts);
    k = 1;
    while (k < w0.values.size() && w0.values(k) - w0.values(0) < 1e-8) ++k;
  } else {
    w0 = lowest_eigenpairs(H0.entries, k, opts);
  }
  SparseXc hp = H0.entries + eps * V.entries;
  const int kq = int(std::min<Eigen::Index>(k + 1, H0.dim));
  EigenOptions o2 = opts;
  o2.seed = opts.seed + 1;
  EigenResult wpext = lowest_eigenpairs(hp, kq, o2);
  if (kq > k) {
    const double spread = wpext.values(k - 1) - wpext.values(0);
    const double gap = wpext.values(k) - wpext.values(k - 1);
    if (gap <= std::max(spread, 1e-9))
      throw std::runtime_error("exact_sw: perturbed cluster not separated (gap collapse)");
  }
  const MatrixXc W0 = w0.vectors.leftCols(k);
  const MatrixXc W = wpext.vectors.leftCols(k);

  // Direct rotation restricted to the frames is the unitary polar factor of
  // A = W0^dag W; then Heff = Uf diag(E) Uf^dag on the W0 frame.
  const MatrixXc A = W0.adjoint() * W;
  Eigen::JacobiSVD<MatrixXc> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const MatrixXc Uf = svd.matrixU() * svd.matrixV().adjoint();
  EffectiveHamiltonian eff;
  eff.frame_tag = "ground-frame(H0)";
  eff.matrix = Uf * wpext.values.head(k).asDiagonal() * Uf.adjoint();
  return eff;
}

MatrixXc self_energy_term(const SWContext& ctx, int order) {
  if (order < 1) throw std::invalid_argument("self_energy_term: order >= 1");
  MatrixXc X = ctx.V.entries * ctx.ground.frame;
  for (int i = 1; i < order; ++i) X = ctx.V.entries * ctx.apply_G_block(X);
  return ctx.ground.frame.adjoint() * X;
}

std::vector<EffectiveHamiltonian> sw_series(const SWContext& ctx, int order) {
  if (order < 1 || order > 6) throw std::invalid_argument("sw_series: order must be in 1..6");
  SeriesWork w{ctx};
  const LowRankOp Vod = w.make_Vod();

  // S_n recursion
  std::vector<LowRankOp> S;  // S[0] unused
  S.push_back(LowRankOp::zero(ctx.H0.dim));
  S.push_back(w.superop_L(Vod));  // S_1
  for (int n = 2; n < order; ++n) {
    LowRankOp term = w.superop_L(w.ad_Vd(S[size_t(n - 1)])) * Complex(-1, 0);
    for (const auto& [twoj, a2j] : kA) {
      if (twoj > n - 1) continue;
      // sum over compositions of n-1 into 2j parts of nested commutators
      LowRankOp acc = LowRankOp::zero(ctx.H0.dim);
      std::vector<int> cur;
      compositions(n - 1, twoj, cur, [&](const std::vector<int>& comp) {
        LowRankOp x = Vod;
        for (auto it = comp.rbegin(); it != comp.rend(); ++it)
          x = SeriesWork::commutator(S[size_t(*it)], x);
        acc = LowRankOp::add(acc, x);
        acc.compress();
      });
      term = LowRankOp::add(term, w.superop_L(acc) * Complex(a2j, 0));
      term.compress();
    }
    S.push_back(term);
  }

  std::vector<EffectiveHamiltonian> out;
  {
    EffectiveHamiltonian q1;
    q1.frame_tag = "ground-frame(H0)";
    q1.matrix = ctx.frame_block(ctx.V.entries * ctx.ground.frame);
    out.push_back(std::move(q1));
  }
  for (int q = 2; q <= order; ++q) {
    MatrixXc m = MatrixXc::Zero(ctx.ground.degeneracy(), ctx.ground.degeneracy());
    for (const auto& [odd, bq] : kB) {
      if (odd > q - 1) continue;
      LowRankOp acc = LowRankOp::zero(ctx.H0.dim);
      std::vector<int> cur;
      compositions(q - 1, odd, cur, [&](const std::vector<int>& comp) {
        LowRankOp x = Vod;
        for (auto it = comp.rbegin(); it != comp.rend(); ++it)
          x = SeriesWork::commutator(S[size_t(*it)], x);
        acc = LowRankOp::add(acc, x);
        acc.compress();
      });
      // P0 acc P0 on the frame
      const MatrixXc fu = ctx.ground.frame.adjoint() * acc.U;
      const MatrixXc fv = acc.V.adjoint() * ctx.ground.frame;
      m += bq * (fu * fv);
    }
    EffectiveHamiltonian eff;
    eff.frame_tag = "ground-frame(H0)";
    eff.matrix = std::move(m);
    out.push_back(std::move(eff));
  }
  return out;
}

TqoResult tqo_order(const SWContext& ctx, int L_max, double tol) {
  TqoResult res;
  const int k = ctx.ground.degeneracy();
  res.degenerate_input_note = (k == 1);
  const int mstar = std::max(1, ctx.num_distinct_excited);

  // Insertion alphabet: P0, Q0, G^1..G^mstar. Depth-first with shared prefixes.
  struct Frame {
    MatrixXc block;  // current (V Z ... V) W0 image
  };
  for (int n = 1; n <= L_max; ++n) {
    std::vector<std::string> names = {"P0", "Q0"};
    for (int m = 1; m <= mstar; ++m) names.push_back("G^" + std::to_string(m));

    double worst_dev = 0;
    std::vector<std::string> worst_seq;
    std::function<bool(int, const MatrixXc&, std::vector<std::string>&)> dfs =
        [&](int depth, const MatrixXc& blk, std::vector<std::string>& seq) -> bool {
      if (depth == n - 1) {
        const MatrixXc m = ctx.frame_block(ctx.V.entries * blk);
        const double dev = scalar_deviation(m);
        if (dev > worst_dev) {
          worst_dev = dev;
          worst_seq = seq;
        }
        return dev > tol;
      }
      const MatrixXc vb = ctx.V.entries * blk;
      // P0 insertion
      seq.push_back("P0");
      if (dfs(depth + 1, ctx.ground.frame * (ctx.ground.frame.adjoint() * vb).eval(), seq)) return true;
      seq.pop_back();
      // Q0 insertion
      MatrixXc qb = vb;
      for (Eigen::Index c = 0; c < qb.cols(); ++c) qb.col(c) = ctx.project_Q0(qb.col(c));
      seq.push_back("Q0");
      if (dfs(depth + 1, qb, seq)) return true;
      seq.pop_back();
      // G powers, incrementally
      MatrixXc gb = vb;
      for (int m = 1; m <= mstar; ++m) {
        gb = ctx.apply_G_block(gb);
        seq.push_back("G^" + std::to_string(m));
        if (dfs(depth + 1, gb, seq)) return true;
        seq.pop_back();
      }
      return false;
    };

    std::vector<std::string> seq;
    if (dfs(0, MatrixXc(ctx.ground.frame), seq)) {
      res.order = n;
      res.deviation = worst_dev;
      res.witness = worst_seq;
      return res;
    }
  }
  res.order = 0;  // no violation up to L_max
  return res;
}

Theorem2Report theorem2_check(const SWContext& ctx, int L, double tol) {
  Theorem2Report rep;
  auto series = sw_series(ctx, L);
  rep.low_orders_scalar = true;
  for (int q = 1; q < L; ++q) {
    const double d = max_abs(traceless_part(series[size_t(q - 1)].matrix));
    rep.traceless_norms.push_back(d);
    if (d > tol) rep.low_orders_scalar = false;
  }
  const MatrixXc tl_series = traceless_part(series[size_t(L - 1)].matrix);
  const MatrixXc tl_se = traceless_part(self_energy_term(ctx, L));
  const double n1 = tl_series.norm(), n2 = tl_se.norm();
  if (n1 < 1e-14 || n2 < 1e-14) {
    rep.angle = 0;
    rep.fitted_constant = 0;
    return rep;
  }
  const Complex ip = (tl_se.adjoint() * tl_series).trace();
  const double cosang = std::min(1.0, std::abs(ip) / (n1 * n2));
  rep.angle = std::acos(cosang);
  rep.fitted_constant = std::real(ip) / (n2 * n2);
  return rep;
}

EffectiveHamiltonian::Decomposition decompose_into_strings(const MatrixXc& heff,
                                                           const std::vector<MatrixXc>& family,
                                                           bool include_identity) {
  const Eigen::Index k = heff.rows();
  const Eigen::Index nf = Eigen::Index(family.size()) + (include_identity ? 1 : 0);
  MatrixXc design(k * k, nf);
  for (size_t i = 0; i < family.size(); ++i)
    design.col(Eigen::Index(i)) = Eigen::Map<const VectorXc>(family[i].data(), k * k);
  if (include_identity) {
    MatrixXc id = MatrixXc::Identity(k, k);
    design.col(nf - 1) = Eigen::Map<const VectorXc>(id.data(), k * k);
  }
  const Eigen::Map<const VectorXc> rhs(heff.data(), k * k);

  Eigen::JacobiSVD<MatrixXc> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  EffectiveHamiltonian::Decomposition dec;
  dec.ill_conditioned =
      svd.singularValues()(svd.singularValues().size() - 1) < 1e-10 * svd.singularValues()(0);
  const VectorXc coef = svd.solve(rhs);
  dec.coeffs.assign(coef.data(), coef.data() + family.size());
  dec.scalar = include_identity ? coef(nf - 1) : Complex(0, 0);
  dec.residual = (design * coef - rhs).norm();
  return dec;
}

}  // namespace topo::sw
