#include "topoprep/lattice.hpp"

#include <algorithm>
#include <set>

namespace topo::lattice {

HoneycombTorus build_reference_torus() {
  HoneycombTorus lat;
  lat.n_edges = 12;
  // 1-based published data, converted below.
  const int verts[8][3] = {{1, 5, 10}, {1, 8, 11}, {2, 6, 9},  {2, 7, 12},
                           {3, 6, 10}, {3, 7, 11}, {4, 5, 9},  {4, 8, 12}};
  const int plaq[4][2][6] = {
      {{11, 1, 5, 9, 2, 7}, {8, 10, 4, 6, 12, 3}},
      {{12, 2, 6, 10, 1, 8}, {7, 9, 3, 5, 11, 4}},
      {{9, 4, 8, 11, 3, 6}, {5, 12, 1, 7, 10, 2}},
      {{10, 3, 7, 12, 4, 5}, {6, 11, 2, 8, 9, 1}},
  };
  const int rot[12] = {5, 7, 8, 6, 9, 12, 11, 10, 2, 4, 1, 3};

  for (const auto& v : verts) lat.vertices.push_back({v[0] - 1, v[1] - 1, v[2] - 1});
  for (const auto& p : plaq) {
    HoneycombTorus::Plaquette pl{};
    for (int k = 0; k < 6; ++k) {
      pl.boundary[size_t(k)] = p[0][k] - 1;
      pl.legs[size_t(k)] = p[1][k] - 1;
    }
    lat.plaquettes.push_back(pl);
  }
  lat.minimal_dual_loops = {{0, 1}, {4, 6}, {8, 10}};
  lat.rotation_perm.assign(12, 0);
  for (int e = 0; e < 12; ++e) lat.rotation_perm[size_t(e)] = rot[e] - 1;
  return lat;
}

void check_torus_invariants(const HoneycombTorus& lat) {
  std::vector<int> vdeg(size_t(lat.n_edges), 0), pdeg(size_t(lat.n_edges), 0);
  for (const auto& v : lat.vertices)
    for (int e : v) vdeg[size_t(e)]++;
  for (const auto& p : lat.plaquettes)
    for (int e : p.boundary) pdeg[size_t(e)]++;
  for (int e = 0; e < lat.n_edges; ++e) {
    if (vdeg[size_t(e)] != 2) throw std::runtime_error("edge not on exactly 2 vertices");
    if (pdeg[size_t(e)] != 2) throw std::runtime_error("edge not on exactly 2 plaquette boundaries");
  }
  if (int(lat.vertices.size()) - lat.n_edges + int(lat.plaquettes.size()) != 0)
    throw std::runtime_error("Euler relation violated");

  // rotation: order 6, maps vertices to vertices and plaquettes to plaquettes
  std::vector<int> id(size_t(lat.n_edges));
  for (int e = 0; e < lat.n_edges; ++e) id[size_t(e)] = e;
  std::vector<int> cur = id;
  for (int k = 0; k < 6; ++k) {
    std::vector<int> nxt(cur.size());
    for (size_t e = 0; e < cur.size(); ++e) nxt[e] = lat.rotation_perm[size_t(cur[e])];
    cur = nxt;
  }
  if (cur != id) throw std::runtime_error("rotation permutation does not have order 6");

  std::set<std::set<int>> vsets, psets;
  for (const auto& v : lat.vertices) vsets.insert({v[0], v[1], v[2]});
  for (const auto& p : lat.plaquettes) psets.insert({p.boundary.begin(), p.boundary.end()});
  for (const auto& v : lat.vertices) {
    std::set<int> img;
    for (int e : v) img.insert(lat.rotation_perm[size_t(e)]);
    if (!vsets.count(img)) throw std::runtime_error("rotation does not map vertices to vertices");
  }
  for (const auto& p : lat.plaquettes) {
    std::set<int> img;
    for (int e : p.boundary) img.insert(lat.rotation_perm[size_t(e)]);
    if (!psets.count(img)) throw std::runtime_error("rotation does not map plaquettes to plaquettes");
  }
}

}  // namespace topo::lattice
