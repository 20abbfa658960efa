#include "topoprep/flux_algebra.hpp"

#include <cmath>

namespace topo::anyon {

VerlindeResult verlinde_fusion(const MatrixXc& S, const std::vector<int>& dual) {
  const int n = int(S.rows());
  if (S.cols() != n) throw std::invalid_argument("verlinde_fusion: S must be square");
  for (int a = 0; a < n; ++a)
    if (std::abs(S(0, a)) < 1e-12)
      throw std::runtime_error("verlinde_fusion: singular column, |S_{1a}| < 1e-12 at a=" +
                               std::to_string(a));
  VerlindeResult res;
  res.n = n;
  res.N.assign(size_t(n) * n * n, 0);
  for (int d = 0; d < n; ++d) {
    const int dbar = dual.empty() ? d : dual[size_t(d)];
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Complex acc(0, 0);
        for (int a = 0; a < n; ++a) acc += S(b, a) * S(c, a) * S(dbar, a) / S(0, a);
        const double re = acc.real();
        const int rounded = int(std::lround(re));
        res.max_integrality_dev =
            std::max({res.max_integrality_dev, std::abs(re - rounded), std::abs(acc.imag())});
        res.N[size_t((d * n + b) * n + c)] = rounded;
      }
  }
  return res;
}

FluxMatrix flux_string_operator(int a, const CategoryData& cat) {
  const int n = cat.num_labels();
  if (a < 0 || a >= n) throw std::invalid_argument("flux_string_operator: label out of range");
  FluxMatrix f;
  f.basis_tag = "flux:" + cat.name;
  f.entries = MatrixXc::Zero(n, n);
  for (int c = 0; c < n; ++c)
    for (int b = 0; b < n; ++b) f.entries(c, b) = double(cat.N(c, a, b));
  return f;
}

std::vector<FluxMatrix> flux_idempotents(const CategoryData& cat) {
  const int n = cat.num_labels();
  std::vector<FluxMatrix> ps;
  ps.reserve(size_t(n));
  for (int a = 0; a < n; ++a) {
    MatrixXc p = MatrixXc::Zero(n, n);
    for (int b = 0; b < n; ++b) p += std::conj(cat.S(b, a)) * flux_string_operator(b, cat).entries;
    ps.push_back({"flux:" + cat.name, cat.S(0, a) * p});
  }
  return ps;
}

std::vector<ModularGen> parse_modular_word(const std::string& word) {
  std::vector<ModularGen> out;
  ModularGen last = ModularGen::S;
  bool have_last = false;
  for (size_t i = 0; i < word.size(); ++i) {
    const char c = word[i];
    if (c == ' ' || c == '\t') continue;
    if (c == 's') last = ModularGen::S;
    else if (c == 't') last = ModularGen::T;
    else if (c == 'S') last = ModularGen::Sinv;
    else if (c == 'T') last = ModularGen::Tinv;
    else if (c >= '2' && c <= '9') {
      if (!have_last) throw std::invalid_argument("parse_modular_word: repeat count before generator");
      for (int k = 1; k < c - '0'; ++k) out.push_back(last);
      continue;
    } else {
      throw std::invalid_argument(std::string("parse_modular_word: bad character '") + c + "'");
    }
    have_last = true;
    out.push_back(last);
  }
  return out;
}

FluxMatrix modular_word_unitary(const std::vector<ModularGen>& word, const CategoryData& cat) {
  if (word.empty()) throw std::invalid_argument("modular_word_unitary: empty word");
  const int n = cat.num_labels();
  const MatrixXc Tm = cat.T.asDiagonal();
  MatrixXc acc = MatrixXc::Identity(n, n);
  for (ModularGen g : word) {
    switch (g) {
      case ModularGen::S: acc = acc * cat.S; break;
      case ModularGen::T: acc = acc * Tm; break;
      case ModularGen::Sinv: acc = acc * cat.S.adjoint(); break;
      case ModularGen::Tinv: acc = acc * Tm.adjoint(); break;
    }
  }
  return {"flux:" + cat.name, acc};
}

FluxMatrix modular_word_unitary(const std::string& word, const CategoryData& cat) {
  return modular_word_unitary(parse_modular_word(word), cat);
}

FluxMatrix symmetrized_loop_sum(int a, LoopGeometry geometry, const CategoryData& cat) {
  const MatrixXc Fa = flux_string_operator(a, cat).entries;
  const MatrixXc R = geometry == LoopGeometry::square
                         ? cat.S
                         : modular_word_unitary("ts3ts", cat).entries;
  const int reps = geometry == LoopGeometry::square ? 4 : 6;
  const int n = cat.num_labels();
  MatrixXc acc = MatrixXc::Zero(n, n);
  MatrixXc Rj = MatrixXc::Identity(n, n);
  for (int j = 0; j < reps; ++j) {
    acc += Rj * Fa * Rj.adjoint();
    Rj = R * Rj;
  }
  return {"flux:" + cat.name, acc};
}

}  // namespace topo::anyon
