#pragma once

#include <map>

#include "topoprep/category.hpp"
#include "topoprep/flux_algebra.hpp"

namespace topo::chain {

using anyon::CategoryData;

/// Fusion-tree basis of a periodic chain of L anyon sites: states (avec, bvec)
/// with b_0 = b_L and delta(a_j, b_j, bar b_{j-1}) = 1 at every vertex.
struct FusionTreeBasis {
  const CategoryData* cat = nullptr;
  int L = 0;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> states;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Eigen::Index> index;
  mutable std::map<int, std::pair<double, double>> norm_cache;  // label -> (nu_create, nu_hop)

  Eigen::Index dim() const { return Eigen::Index(states.size()); }
  Eigen::Index index_of(const std::vector<int>& a, const std::vector<int>& b) const;
  /// Flux ground states |b> = |vec 1, b * vec 1>, one per label, in label order.
  MatrixXc ground_frame() const;
};

enum class ProcessKind { creation, annihilation, hop_left, hop_right };

struct ChainOperator {
  SparseXc matrix;
  ProcessKind kind;
  int label = 0;
  int site = 0;  // bond (site, site+1 mod L)
};

/// Enumerates the admissible (avec, bvec); checks the transfer-matrix count.
/// Throws (reporting the count) when the dimension exceeds `budget`.
FusionTreeBasis enumerate_basis(const CategoryData& cat, int L, Eigen::Index budget = 200000);

/// Transfer-matrix dimension count trace(M^L), M_{b'b} = sum_a delta(a, b, bar b').
long fusion_tree_count(const CategoryData& cat, int L);

/// On-site anyon potential: H0 |a,b> = (sum_j eps_{a_j}) |a,b>.
SparseXc onsite_h0(const FusionTreeBasis& basis, const VectorXd& costs);

/// Elementary two-site process on bond (site, site+1 mod L), built by F-move
/// reduction and normalized so that the closed winding product equals F_a on
/// the flux basis and the local contractible loop equals d_a * P0.
ChainOperator elementary_two_site(const FusionTreeBasis& basis, ProcessKind kind, int label,
                                  int site);

struct ChainParams {
  std::vector<Complex> gamma;  // creation amplitude per label (vacuum entry ignored)
  std::vector<Complex> tau;    // propagation amplitude per label
  VectorXd eps;                // on-site energies, eps_1 = 0
};

struct ChainEffectiveReport {
  std::vector<Complex> f;  // coefficient of F_a per label
  Complex scalar;
  double residual = 0;
  MatrixXc heff;           // order-L term on the flux frame
};

/// Assembles the translation-invariant perturbation, computes the order-L
/// self-energy term P0 (V G)^{L-1} V P0 and decomposes it over {F_a} + C I.
ChainEffectiveReport chain_effective(const FusionTreeBasis& basis, const ChainParams& params);

/// Assembled Hermitian perturbation (exposed for tests).
SparseXc assemble_perturbation(const FusionTreeBasis& basis, const ChainParams& params);

}  // namespace topo::chain
