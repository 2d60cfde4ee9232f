#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dihedra/surface.hpp"

namespace dihedra::testing {

struct NamedSurface {
  std::string name;
  TriangulatedSurface surface;
};

TriangulatedSurface single_triangle();
TriangulatedSurface two_triangle_disk();  // ABC, ACD
TriangulatedSurface pillowcase();         // 2 faces, 3 edges, 3 vertices
TriangulatedSurface two_face_torus();     // 2 faces, 3 edges, 1 vertex
TriangulatedSurface octahedron();
TriangulatedSurface tetrahedron();
TriangulatedSurface wheel(int spokes);    // disk around one interior vertex
TriangulatedSurface annulus(int segments);
TriangulatedSurface grid_torus(int rows, int cols);
TriangulatedSurface strip_disk(int faces);  // fan of triangles, all vertices on the boundary
TriangulatedSurface bipyramid(int ring);    // 2 * ring faces
TriangulatedSurface icosahedron();

// Simplicial sphere: repeated stacking on random faces of a tetrahedron, then
// random edge flips that keep it simplicial with degrees >= 3. `faces` even, >= 4.
TriangulatedSurface random_sphere(int faces, std::mt19937_64& rng, int flips_per_face = 2);

// Every connected gluing pattern on `faces` triangles, one per isomorphism
// class of dart pairings (canonical form over root darts).
std::vector<TriangulatedSurface> all_connected_surfaces(int faces);
// Index f holds all_connected_surfaces(f), built incrementally.
std::vector<std::vector<TriangulatedSurface>> connected_surfaces_by_size(int max_faces);

// Random connected surface: random pairing of a random subset of darts along a
// spanning tree first, then extra pairs.
TriangulatedSurface random_surface(int faces, std::mt19937_64& rng, double extra_glue_probability = 0.7);

std::vector<NamedSurface> curated_surfaces();

}  // namespace dihedra::testing

#include "dihedra/rational.hpp"

namespace dihedra::testing {

// Positive corner angles with the given denominator, face sums 1. With
// `delaunay` set, retries until every interior edge sum is at most 1.
std::vector<Rational> random_corner_angles(const TriangulatedSurface& s, std::mt19937_64& rng, int denominator = 8,
                                           bool delaunay = false);
// Dihedral angle per edge: sum of the corner angles opposite it.
std::vector<Rational> delta_from_corners(const TriangulatedSurface& s, const std::vector<Rational>& corners);

// A mix of realizable prescriptions and perturbations of them (angle moved
// between edges, zeroed edges, raw random values).
std::vector<std::vector<Rational>> sample_deltas(const TriangulatedSurface& s, std::mt19937_64& rng, int count,
                                                 int denominator = 8);

}  // namespace dihedra::testing
