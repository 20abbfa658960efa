#include <doctest.h>

#include <set>

#include "topoprep/lattice.hpp"

using namespace topo;
using namespace topo::lattice;

TEST_CASE("reference torus satisfies the published constraints") {
  auto lat = build_reference_torus();
  CHECK_NOTHROW(check_torus_invariants(lat));
  CHECK(lat.n_edges == 12);
  CHECK(lat.vertices.size() == 8);
  CHECK(lat.plaquettes.size() == 4);

  // rotation_perm^6 = id and the printed permutation itself
  const std::vector<int> printed = {4, 6, 7, 5, 8, 11, 10, 9, 1, 3, 0, 2};
  CHECK(lat.rotation_perm == printed);

  // rotation maps loop {1,2} to {5,7} as a set (1-based labels)
  std::set<int> img;
  for (int e : lat.minimal_dual_loops[0]) img.insert(lat.rotation_perm[size_t(e)]);
  CHECK(img == std::set<int>({4, 6}));

  // minimal dual loops are cyclically permuted by the rotation
  std::set<std::set<int>> loops;
  for (const auto& l : lat.minimal_dual_loops) loops.insert({l.begin(), l.end()});
  for (const auto& l : lat.minimal_dual_loops) {
    std::set<int> m;
    for (int e : l) m.insert(lat.rotation_perm[size_t(e)]);
    CHECK(loops.count(m) == 1);
  }
}

TEST_CASE("plaquette boundaries and legs partition the edges") {
  auto lat = build_reference_torus();
  for (const auto& p : lat.plaquettes) {
    std::set<int> all(p.boundary.begin(), p.boundary.end());
    for (int e : p.legs) all.insert(e);
    CHECK(all.size() == 12);
    // leg k sits at the vertex joining boundary k and k+1
    for (int k = 0; k < 6; ++k) {
      std::set<int> tri = {p.boundary[size_t(k)], p.boundary[size_t((k + 1) % 6)],
                           p.legs[size_t(k)]};
      bool found = false;
      for (const auto& v : lat.vertices)
        if (std::set<int>(v.begin(), v.end()) == tri) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("dual loops cross every plaquette boundary an even number of times") {
  auto lat = build_reference_torus();
  for (const auto& l : lat.minimal_dual_loops)
    for (const auto& p : lat.plaquettes) {
      int crossings = 0;
      for (int e : l)
        for (int b : p.boundary)
          if (e == b) ++crossings;
      CHECK(crossings % 2 == 0);
    }
}
