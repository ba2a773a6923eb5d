#pragma once

#include "contact9/simplicial/complex.hpp"

#include <cstdint>

namespace contact9::simplicial::standard {

/// Boundary of the n-simplex: a triangulated (n-1)-sphere on n + 1 vertices.
SimplicialComplex sphere(int n_minus_one);
/// Boundary of a polygon with n >= 3 vertices.
SimplicialComplex circle(int n = 3);
/// Minimal 6-vertex real projective plane.
SimplicialComplex rp2();
/// Minimal 7-vertex torus.
SimplicialComplex torus();
/// A 9-vertex complex projective plane.
SimplicialComplex cp2();
/// Antipodal quotient of the barycentric subdivision of the boundary of the
/// 4-dimensional cross-polytope: RP^3 on 40 vertices.
SimplicialComplex rp3();
/// `facets` random (dim+1)-subsets of `vertices` vertices, plus a few lower
/// dimensional facets, with containments removed.  Deterministic in `seed`.
SimplicialComplex random_complex(int vertices, int dim, int facets, std::uint64_t seed);

}  // namespace contact9::simplicial::standard
