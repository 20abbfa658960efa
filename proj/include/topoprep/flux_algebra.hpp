#pragma once

#include "topoprep/category.hpp"

namespace topo::anyon {

/// Matrix on the torus ground space, expressed in the flux basis of a fixed loop.
struct FluxMatrix {
  std::string basis_tag;
  MatrixXc entries;
};

struct VerlindeResult {
  int n = 0;
  std::vector<int> N;  // N^d_{bc}, flattened as (d*n + b)*n + c
  double max_integrality_dev = 0;
  int at(int d, int b, int c) const { return N[size_t((d * n + b) * n + c)]; }
};

/// N^d_{bc} = sum_a S_{ba} S_{ca} S_{dbar,a} / S_{1a}, rounded to integers.
/// `dual` defaults to the identity involution when empty.
VerlindeResult verlinde_fusion(const MatrixXc& S, const std::vector<int>& dual = {});

/// String operator F_a on the flux basis: (F_a)_{cb} = N^c_{ab}.
FluxMatrix flux_string_operator(int a, const CategoryData& cat);

/// P_a = S_{1a} sum_b conj(S_{ba}) F_b; mutually orthogonal, sum to identity.
std::vector<FluxMatrix> flux_idempotents(const CategoryData& cat);

enum class ModularGen { S, T, Sinv, Tinv };

/// Parses words like "ts3ts" or "s s s s" (digits repeat the previous letter,
/// 'S'/'T' uppercase denote inverses).
std::vector<ModularGen> parse_modular_word(const std::string& word);

/// Product of the category's S/T matrices in word order (leftmost factor first).
FluxMatrix modular_word_unitary(const std::vector<ModularGen>& word, const CategoryData& cat);
FluxMatrix modular_word_unitary(const std::string& word, const CategoryData& cat);

enum class LoopGeometry { square, rhombic };

/// Rotation-symmetrized sum of minimal-loop string operators:
/// square:  sum_{j=0..3} S^j F_a S^-j;  rhombic: sum_{j=0..5} U^j F_a U^-j, U = TS^3TS.
FluxMatrix symmetrized_loop_sum(int a, LoopGeometry geometry, const CategoryData& cat);

}  // namespace topo::anyon
