#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "conley/mvf.hpp"

namespace conley {

struct Vec2 {
  double x = 0, y = 0;
};

// Planar vector field sampled on a rectilinear grid; sample index iy*nx+ix.
struct SampledField {
  std::size_t nx = 0, ny = 0;
  std::vector<double> xs, ys;  // strictly increasing coordinates
  std::vector<Vec2> samples;
};

// Triangulated grid: every cell split by its lower-left to upper-right
// diagonal. Vertex v = iy*nx+ix, and vertex simplex ids coincide with
// vertex numbers.
struct GridComplex {
  SimplicialComplex complex;
  std::vector<Vec2> vertex_pos;  // by vertex id
  std::size_t nx = 0, ny = 0;

  bool boundary_vertex(VertexId v) const {
    const std::size_t ix = v % nx, iy = v / nx;
    return ix == 0 || iy == 0 || ix + 1 == nx || iy + 1 == ny;
  }
};

GridComplex triangulate_grid(const SampledField& field);

// The simplex of the star of v whose geometric sector contains direction
// `dir` from v: an incident edge when the direction lies within eps of that
// edge's ray, otherwise the incident triangle whose open angular sector
// contains it, otherwise nothing (outward directions at the boundary, or a
// zero direction).
std::optional<SimplexId> sector_of(const GridComplex& G, VertexId v, Vec2 dir, double eps);

// Multivector field induced by the samples: start from singletons, point
// each vertex into its sector's coface, point each interior edge's averaged
// pseudo-vector into the crossed triangle, then merge the entire boundary
// ring into one vector. `eps` is relative: direction tests use it as an
// angular tolerance and vector magnitudes are compared against
// eps * (shortest cell side).
MultivectorField discretize_field(const GridComplex& G, const SampledField& field,
                                  double eps = 1e-9);

// The built-in sampled field g(x,y) = (x^2 - y^2 - 4, 2xy).
Vec2 builtin_g(Vec2 p);
SampledField sample_builtin_g(double xmin, double xmax, double ymin, double ymax, std::size_t nx,
                              std::size_t ny);

// CSV rows "x,y,vx,vy"; the grid is inferred from the distinct sorted x and
// y values and must be complete.
SampledField read_samples_csv(std::istream& in);
void write_samples_csv(std::ostream& out, const SampledField& field);

}  // namespace conley
