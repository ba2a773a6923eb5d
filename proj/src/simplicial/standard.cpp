#include "contact9/simplicial/standard.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace contact9::simplicial::standard {

SimplicialComplex sphere(int n_minus_one) {
  if (n_minus_one < 0) throw std::invalid_argument("sphere dimension must be >= 0");
  const int n = n_minus_one + 1;
  std::vector<std::vector<VertexId>> facets;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<VertexId> f;
    for (int v = 0; v <= n; ++v) {
      if (v != skip) f.push_back(v);
    }
    facets.push_back(std::move(f));
  }
  return SimplicialComplex::from_facets(facets);
}

SimplicialComplex circle(int n) {
  if (n < 3) throw std::invalid_argument("a simplicial circle needs 3 vertices");
  std::vector<std::vector<VertexId>> facets;
  for (int i = 0; i < n; ++i) facets.push_back({i, (i + 1) % n});
  return SimplicialComplex::from_facets(facets);
}

SimplicialComplex rp2() {
  return SimplicialComplex(
      {1, 2, 3, 4, 5, 6},
      {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6}, {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}});
}

SimplicialComplex torus() {
  std::vector<std::vector<VertexId>> facets;
  for (int i = 0; i < 7; ++i) {
    facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
    facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SimplicialComplex::from_facets(facets);
}

SimplicialComplex cp2() {
  return SimplicialComplex::from_facets({
      {0, 1, 2, 3, 4}, {0, 1, 2, 3, 6}, {0, 1, 2, 4, 5}, {0, 1, 2, 5, 8}, {0, 1, 2, 6, 8}, {0, 1, 3, 4, 7},
      {0, 1, 3, 6, 7}, {0, 1, 4, 5, 8}, {0, 1, 4, 7, 8}, {0, 1, 6, 7, 8}, {0, 2, 3, 4, 7}, {0, 2, 3, 5, 7},
      {0, 2, 3, 5, 8}, {0, 2, 3, 6, 8}, {0, 2, 4, 5, 7}, {0, 3, 5, 6, 7}, {0, 3, 5, 6, 8}, {0, 4, 5, 6, 7},
      {0, 4, 5, 6, 8}, {0, 4, 6, 7, 8}, {1, 2, 3, 4, 6}, {1, 2, 4, 5, 6}, {1, 2, 5, 6, 7}, {1, 2, 5, 7, 8},
      {1, 2, 6, 7, 8}, {1, 3, 4, 5, 6}, {1, 3, 4, 5, 8}, {1, 3, 4, 7, 8}, {1, 3, 5, 6, 7}, {1, 3, 5, 7, 8},
      {2, 3, 4, 6, 8}, {2, 3, 4, 7, 8}, {2, 3, 5, 7, 8}, {2, 4, 5, 6, 7}, {2, 4, 6, 7, 8}, {3, 4, 5, 6, 8},
  });
}

SimplicialComplex rp3() {
  // A face of the cross-polytope boundary: coordinate mask plus sign bits
  // (bit set = negative).  The antipode flips every sign in the mask.
  struct Face {
    unsigned mask;
    unsigned signs;
  };
  auto canonical = [](Face f) {
    const unsigned low = f.mask & (~f.mask + 1);
    if (f.signs & low) f.signs ^= f.mask;
    return f.mask * 16 + f.signs;
  };
  std::map<unsigned, VertexId> ids;
  auto id_of = [&](Face f) {
    const unsigned key = canonical(f);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const auto id = static_cast<VertexId>(ids.size());
    ids.emplace(key, id);
    return id;
  };
  std::set<std::vector<VertexId>> facets;
  std::vector<int> perm{0, 1, 2, 3};
  for (unsigned signs = 0; signs < 16; ++signs) {
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<VertexId> flag;
      unsigned mask = 0;
      for (int c : perm) {
        mask |= 1U << c;
        flag.push_back(id_of(Face{mask, signs & mask}));
      }
      std::sort(flag.begin(), flag.end());
      facets.insert(flag);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return SimplicialComplex::from_facets({facets.begin(), facets.end()});
}

SimplicialComplex random_complex(int vertices, int dim, int facets, std::uint64_t seed) {
  if (dim + 1 > vertices) throw std::invalid_argument("random_complex: not enough vertices");
  std::mt19937_64 rng(seed);
  std::set<std::vector<VertexId>> chosen;
  std::vector<VertexId> all(static_cast<std::size_t>(vertices));
  for (int i = 0; i < vertices; ++i) all[static_cast<std::size_t>(i)] = i;
  auto draw = [&](int size) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<VertexId> f(all.begin(), all.begin() + size);
    std::sort(f.begin(), f.end());
    chosen.insert(f);
  };
  for (int i = 0; i < facets; ++i) draw(dim + 1);
  for (int i = 0; i < std::max(1, facets / 3); ++i) draw(std::max(1, dim - 1) + 1);
  // every vertex appears
  for (int v = 0; v < vertices; ++v) chosen.insert({v});
  std::vector<std::vector<VertexId>> maximal;
  for (const auto& f : chosen) {
    bool contained = false;
    for (const auto& g : chosen) {
      if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
        contained = true;
        break;
      }
    }
    if (!contained) maximal.push_back(f);
  }
  return SimplicialComplex::from_facets(maximal);
}

}  // namespace contact9::simplicial::standard
