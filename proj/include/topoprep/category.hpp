#pragma once

#include <string>
#include <vector>

#include "topoprep/types.hpp"

namespace topo::anyon {

/// Algebraic payload of an anyon theory: labels, quantum dimensions,
/// multiplicity-free fusion tensor, F/S/T matrices. Immutable after load.
struct CategoryData {
  std::string name;
  std::vector<std::string> labels;  // index 0 is the vacuum label
  std::vector<int> dual;            // involution a -> abar
  VectorXd qdim;
  double total_dim = 0;             // D = sqrt(sum_a d_a^2)
  std::vector<uint8_t> fusion;      // delta_{abc}, flattened n^3
  std::vector<Complex> Fsym;        // F^{abe}_{cdf}, flattened n^6
  MatrixXc S;
  VectorXc T;                       // diagonal topological phases

  int num_labels() const { return int(labels.size()); }
  uint8_t delta(int a, int b, int c) const {
    const int n = num_labels();
    return fusion[size_t((a * n + b) * n + c)];
  }
  Complex F(int a, int b, int e, int c, int d, int f) const {
    const size_t n = size_t(num_labels());
    return Fsym[((((size_t(a) * n + b) * n + e) * n + c) * n + d) * n + f];
  }
  /// N^c_{ab} in the multiplicity-free case.
  int N(int c, int a, int b) const { return delta(a, b, dual[c]); }
};

CategoryData load_category(const std::string& path);

/// Loads one of the categories shipped under data/categories by name
/// (toric, semion, fibonacci, doubled_semion, doubled_fibonacci).
CategoryData load_shipped_category(const std::string& name);

/// Quantum double of a two-label layer: labels (a,b), S_D = S (x) conj(S),
/// T_D = T (x) conj(T), fusion and F factorize over the layers.
CategoryData double_category(const CategoryData& base);

struct ValidationReport {
  struct Item {
    std::string invariant;
    bool pass;
    double deviation;
  };
  std::vector<Item> items;
  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  const Item* find(const std::string& name) const {
    for (const auto& it : items)
      if (it.invariant == name) return &it;
    return nullptr;
  }
};

/// Checks every CategoryData invariant; malformed tensor shapes throw instead.
ValidationReport validate_category(const CategoryData& cat, double tol = kAlgebraTol);

}  // namespace topo::anyon
