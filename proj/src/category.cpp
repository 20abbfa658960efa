#include "topoprep/category.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

namespace topo::anyon {

namespace {

Complex read_complex(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::runtime_error("complex numbers must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

CategoryData load_category(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open category file: " + path);
  nlohmann::json j;
  in >> j;

  CategoryData cat;
  cat.name = j.value("name", std::string{});
  cat.labels = j.at("labels").get<std::vector<std::string>>();
  const int n = int(cat.labels.size());
  if (n == 0) throw std::runtime_error("category has no labels");

  cat.dual = j.at("dual").get<std::vector<int>>();
  if (int(cat.dual.size()) != n) throw std::runtime_error("dual involution has wrong length");
  for (int a = 0; a < n; ++a)
    if (cat.dual[a] < 0 || cat.dual[a] >= n || cat.dual[cat.dual[a]] != a)
      throw std::runtime_error("dual is not an involution on labels");

  auto qd = j.at("qdim").get<std::vector<double>>();
  if (int(qd.size()) != n) throw std::runtime_error("qdim has wrong length");
  cat.qdim = Eigen::Map<VectorXd>(qd.data(), n);
  for (double d : qd)
    if (!(d > 0)) throw std::runtime_error("quantum dimensions must be positive");
  cat.total_dim = std::sqrt(cat.qdim.squaredNorm());

  cat.fusion.assign(size_t(n) * n * n, 0);
  for (const auto& t : j.at("fusion")) {
    if (!t.is_array() || t.size() != 3) throw std::runtime_error("fusion entries must be label triples");
    const int a = t[0], b = t[1], c = t[2];
    if (a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n)
      throw std::runtime_error("fusion triple out of range");
    cat.fusion[size_t((a * n + b) * n + c)] = 1;
  }

  cat.Fsym.assign(size_t(n) * n * n * n * n * n, Complex(0, 0));
  for (const auto& e : j.at("F")) {
    if (!e.is_array() || e.size() != 8) throw std::runtime_error("F entries must be [a,b,e,c,d,f,re,im]");
    size_t idx = 0;
    for (int k = 0; k < 6; ++k) {
      const int v = e[k];
      if (v < 0 || v >= n) throw std::runtime_error("F index out of range");
      idx = idx * size_t(n) + size_t(v);
    }
    cat.Fsym[idx] = Complex(e[6].get<double>(), e[7].get<double>());
  }

  const auto& sj = j.at("S");
  if (int(sj.size()) != n * n) throw std::runtime_error("S matrix has wrong size");
  cat.S.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) cat.S(i, k) = read_complex(sj[size_t(i * n + k)]);

  const auto& tj = j.at("T");
  if (int(tj.size()) != n) throw std::runtime_error("T diagonal has wrong size");
  cat.T.resize(n);
  for (int i = 0; i < n; ++i) cat.T(i) = read_complex(tj[size_t(i)]);

  return cat;
}

CategoryData load_shipped_category(const std::string& name) {
  std::string dir = TOPOPREP_DATA_DIR;
  if (const char* env = std::getenv("TOPOPREP_DATA_DIR")) dir = env;
  return load_category(dir + "/categories/" + name + ".json");
}

CategoryData double_category(const CategoryData& base) {
  const int n0 = base.num_labels();
  const int n = n0 * n0;
  CategoryData d;
  d.name = "doubled_" + base.name;
  d.labels.resize(size_t(n));
  d.dual.resize(size_t(n));
  d.qdim.resize(n);
  auto pair_index = [n0](int a1, int a2) { return a1 * n0 + a2; };
  for (int a1 = 0; a1 < n0; ++a1)
    for (int a2 = 0; a2 < n0; ++a2) {
      const int A = pair_index(a1, a2);
      d.labels[size_t(A)] = "(" + base.labels[size_t(a1)] + "," + base.labels[size_t(a2)] + ")";
      d.dual[size_t(A)] = pair_index(base.dual[size_t(a1)], base.dual[size_t(a2)]);
      d.qdim(A) = base.qdim(a1) * base.qdim(a2);
    }
  d.total_dim = std::sqrt(d.qdim.squaredNorm());

  d.fusion.assign(size_t(n) * n * n, 0);
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int C = 0; C < n; ++C)
        d.fusion[size_t((A * n + B) * n + C)] =
            uint8_t(base.delta(A / n0, B / n0, C / n0) * base.delta(A % n0, B % n0, C % n0));

  d.Fsym.assign(size_t(n) * n * n * n * n * n, Complex(0, 0));
  std::array<int, 6> idx{};
  const size_t total = d.Fsym.size();
  for (size_t flat = 0; flat < total; ++flat) {
    size_t rem = flat;
    for (int k = 5; k >= 0; --k) {
      idx[size_t(k)] = int(rem % size_t(n));
      rem /= size_t(n);
    }
    const Complex f1 = base.F(idx[0] / n0, idx[1] / n0, idx[2] / n0, idx[3] / n0, idx[4] / n0, idx[5] / n0);
    const Complex f2 = base.F(idx[0] % n0, idx[1] % n0, idx[2] % n0, idx[3] % n0, idx[4] % n0, idx[5] % n0);
    d.Fsym[flat] = f1 * std::conj(f2);
  }

  d.S = Eigen::kroneckerProduct(base.S, base.S.conjugate()).eval();
  d.T.resize(n);
  for (int a1 = 0; a1 < n0; ++a1)
    for (int a2 = 0; a2 < n0; ++a2) d.T(pair_index(a1, a2)) = base.T(a1) * std::conj(base.T(a2));
  return d;
}

ValidationReport validate_category(const CategoryData& cat, double tol) {
  const int n = cat.num_labels();
  const size_t n3 = size_t(n) * n * n;
  if (cat.fusion.size() != n3 || cat.Fsym.size() != n3 * n3 ||
      cat.S.rows() != n || cat.S.cols() != n || cat.T.size() != n || int(cat.dual.size()) != n)
    throw std::invalid_argument("validate_category: inconsistent tensor shapes");

  ValidationReport rep;
  auto add = [&rep, tol](const std::string& name, double dev) {
    rep.items.push_back({name, dev <= tol, dev});
  };

  double dev = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int v = cat.delta(a, b, c);
        dev = std::max({dev, double(std::abs(v - cat.delta(b, a, c))),
                        double(std::abs(v - cat.delta(a, c, b)))});
      }
  add("fusion symmetric", dev);

  dev = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          int lhs = 0, rhs = 0;
          for (int m = 0; m < n; ++m) {
            lhs += cat.delta(i, j, cat.dual[size_t(m)]) * cat.delta(m, k, cat.dual[size_t(l)]);
            rhs += cat.delta(j, k, cat.dual[size_t(m)]) * cat.delta(i, m, cat.dual[size_t(l)]);
          }
          dev = std::max(dev, double(std::abs(lhs - rhs)));
        }
  add("fusion associative", dev);

  dev = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dev = std::max(dev, double(std::abs(cat.delta(i, cat.dual[size_t(j)], 0) - (i == j ? 1 : 0))));
  add("vacuum line", dev);

  add("S unitary", max_abs(MatrixXc(cat.S * cat.S.adjoint()) - MatrixXc::Identity(n, n)));
  add("S symmetric", max_abs(MatrixXc(cat.S - cat.S.transpose())));

  dev = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dev = std::max(dev, std::abs(cat.S(cat.dual[size_t(i)], j) - std::conj(cat.S(i, j))));
  add("S charge conjugation", dev);

  dev = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double want =
            std::sqrt(cat.qdim(k) / (cat.qdim(i) * cat.qdim(j))) * cat.delta(i, j, k);
        dev = std::max(dev, std::abs(cat.F(i, cat.dual[size_t(i)], 0, cat.dual[size_t(j)], j, k) - want));
      }
  add("F vacuum normalisation", dev);

  // unitarity of F^{ab.}_{cd.} on the admissible (e,f) block
  dev = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int dd = 0; dd < n; ++dd) {
          std::vector<int> es, fs;
          for (int e = 0; e < n; ++e)
            if (cat.delta(a, b, cat.dual[size_t(e)]) && cat.delta(e, c, cat.dual[size_t(dd)])) es.push_back(e);
          for (int f = 0; f < n; ++f)
            if (cat.delta(b, c, cat.dual[size_t(f)]) && cat.delta(a, f, cat.dual[size_t(dd)])) fs.push_back(f);
          if (es.empty() || fs.empty()) continue;
          if (es.size() != fs.size()) {
            dev = std::max(dev, 1.0);
            continue;
          }
          MatrixXc blk(es.size(), fs.size());
          for (size_t ie = 0; ie < es.size(); ++ie)
            for (size_t jf = 0; jf < fs.size(); ++jf) blk(Eigen::Index(ie), Eigen::Index(jf)) = cat.F(a, b, es[ie], c, dd, fs[jf]);
          dev = std::max(dev, max_abs(MatrixXc(blk * blk.adjoint()) -
                                      MatrixXc::Identity(Eigen::Index(es.size()), Eigen::Index(es.size()))));
        }
  add("F unitary in (e,f)", dev);

  dev = 0;
  for (int a = 0; a < n; ++a) dev = std::max(dev, std::abs(std::abs(cat.T(a)) - 1.0));
  add("T unimodular", dev);

  dev = std::abs(cat.total_dim - std::sqrt(cat.qdim.squaredNorm()));
  add("total dimension", dev);

  return rep;
}

}  // namespace topo::anyon
