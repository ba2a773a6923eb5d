#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace contact9::simplicial {

using VertexId = std::int64_t;
/// A simplex as strictly increasing vertex positions (indices into the
/// complex's vertex order).
using Simplex = std::vector<int>;

/// Finite simplicial complex given by its facets over a totally ordered vertex
/// list.  The order of `vertices` is the vertex order used by every cochain
/// formula.  All faces are enumerated at construction, sorted
/// lexicographically per dimension.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Facets are given by vertex ids and are sorted into the vertex order.
  /// Throws std::invalid_argument on unknown or repeated vertices, duplicated
  /// vertex ids, or a facet contained in another facet.
  SimplicialComplex(std::vector<VertexId> vertices, const std::vector<std::vector<VertexId>>& facets);

  /// Convenience: vertices 0..n-1 in natural order.
  static SimplicialComplex from_facets(const std::vector<std::vector<VertexId>>& facets);

  int dimension() const { return static_cast<int>(faces_.size()) - 1; }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Simplex>& facets() const { return facets_; }

  std::size_t count(int degree) const {
    return degree < 0 || degree > dimension() ? 0 : faces_[static_cast<std::size_t>(degree)].size();
  }
  const std::vector<Simplex>& simplices(int degree) const;
  const Simplex& simplex(int degree, std::size_t index) const { return simplices(degree)[index]; }
  /// Index of a face given as increasing vertex positions.
  std::optional<std::size_t> index_of(std::span<const int> face) const;

  /// The facets as vertex-id lists (in vertex order).
  std::vector<std::vector<VertexId>> facet_ids() const;
  /// Same complex with the vertex order replaced by `order` (a permutation of
  /// the vertex ids).
  SimplicialComplex reordered(const std::vector<VertexId>& order) const;

  /// Euler characteristic from the face counts.
  long long euler_characteristic() const;
  /// Every codimension-1 face lies in an even number of top simplices and all
  /// facets have the top dimension.
  bool is_mod2_pseudomanifold() const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Simplex> facets_;
  std::vector<std::vector<Simplex>> faces_;
};

/// Parses the complex document: {"vertices": [...], "facets": [[...], ...]},
/// with optional "schema_version": 1 and "kind": "simplicial_complex".
/// Accepts JSON or YAML text.  Errors name the field and line.
SimplicialComplex parse_complex(const std::string& text);
std::string emit_complex(const SimplicialComplex& complex);

/// Staircase triangulation of the product of two ordered complexes.  Vertex
/// (a, b) gets id a_index * |B| + b_index.
SimplicialComplex product(const SimplicialComplex& a, const SimplicialComplex& b);

}  // namespace contact9::simplicial
