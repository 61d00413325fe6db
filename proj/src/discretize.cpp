#include "conley/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace conley {

namespace {

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }
Vec2 sub(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }

int sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace

GridComplex triangulate_grid(const SampledField& field) {
  const std::size_t nx = field.nx, ny = field.ny;
  if (nx < 2 || ny < 2) throw ValidationError("grid needs at least 2x2 samples");
  if (field.xs.size() != nx || field.ys.size() != ny || field.samples.size() != nx * ny)
    throw ValidationError("sampled field arrays are inconsistent");
  for (std::size_t i = 1; i < nx; ++i)
    if (!(field.xs[i - 1] < field.xs[i])) throw ValidationError("x coordinates not increasing");
  for (std::size_t i = 1; i < ny; ++i)
    if (!(field.ys[i - 1] < field.ys[i])) throw ValidationError("y coordinates not increasing");

  auto vid = [&](std::size_t ix, std::size_t iy) {
    return static_cast<VertexId>(iy * nx + ix);
  };
  std::vector<std::vector<VertexId>> tris;
  for (std::size_t iy = 0; iy + 1 < ny; ++iy)
    for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
      const VertexId ll = vid(ix, iy), lr = vid(ix + 1, iy);
      const VertexId ul = vid(ix, iy + 1), ur = vid(ix + 1, iy + 1);
      // Diagonal from lower-left to upper-right.
      tris.push_back({ll, lr, ur});
      tris.push_back({ll, ur, ul});
    }

  GridComplex G;
  G.nx = nx;
  G.ny = ny;
  G.complex = SimplicialComplex::build(tris);
  G.vertex_pos.resize(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix)
      G.vertex_pos[vid(ix, iy)] = {field.xs[ix], field.ys[iy]};
  return G;
}

std::optional<SimplexId> sector_of(const GridComplex& G, VertexId v, Vec2 dir, double eps) {
  const double len = norm(dir);
  if (len <= 0) return std::nullopt;
  const Vec2 d{dir.x / len, dir.y / len};
  const Vec2 pv = G.vertex_pos[v];

  // Edge rays first: a direction within eps of an incident edge maps to
  // that edge.
  const auto& edges = G.complex.cofacets(static_cast<SimplexId>(v));
  for (SimplexId e : edges) {
    const auto& verts = G.complex.simplex(e).vertices;
    const VertexId other = verts[0] == v ? verts[1] : verts[0];
    Vec2 u = sub(G.vertex_pos[other], pv);
    const double ulen = norm(u);
    u = {u.x / ulen, u.y / ulen};
    if (std::abs(cross(d, u)) <= eps && dot(d, u) > 0) return e;
  }

  // Then open triangle sectors.
  std::vector<SimplexId> tris;
  for (SimplexId e : edges)
    for (SimplexId t : G.complex.cofacets(e)) tris.push_back(t);
  std::sort(tris.begin(), tris.end());
  tris.erase(std::unique(tris.begin(), tris.end()), tris.end());
  for (SimplexId t : tris) {
    const auto& verts = G.complex.simplex(t).vertices;
    Vec2 rays[2];
    int k = 0;
    for (VertexId w : verts)
      if (w != v) {
        Vec2 u = sub(G.vertex_pos[w], pv);
        const double ulen = norm(u);
        rays[k++] = {u.x / ulen, u.y / ulen};
      }
    const double span = cross(rays[0], rays[1]);
    if (sgn(cross(rays[0], d)) == sgn(span) && sgn(cross(d, rays[1])) == sgn(span)) return t;
  }
  return std::nullopt;
}

MultivectorField discretize_field(const GridComplex& G, const SampledField& field, double eps) {
  const SimplicialComplex& K = G.complex;
  if (field.samples.size() != G.nx * G.ny)
    throw ValidationError("sample count does not match the grid");

  double min_side = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < field.xs.size(); ++i)
    min_side = std::min(min_side, field.xs[i] - field.xs[i - 1]);
  for (std::size_t i = 1; i < field.ys.size(); ++i)
    min_side = std::min(min_side, field.ys[i] - field.ys[i - 1]);
  const double eps_len = eps * min_side;

  MultivectorField V = MultivectorField::singletons(K);
  MergeScratch scratch;
  auto merge = [&](SimplexId a, SimplexId b) {
    const VectorId va = V.vector_of(a), vb = V.vector_of(b);
    if (va != vb) V.merge_in_place(K, va, vb, scratch);
  };

  // (ii) every vertex joins the coface its sample points at.
  const std::size_t nv = G.nx * G.ny;
  for (VertexId v = 0; v < nv; ++v) {
    const Vec2 s = field.samples[v];
    if (norm(s) <= eps_len) continue;
    if (auto target = sector_of(G, v, s, eps)) merge(static_cast<SimplexId>(v), *target);
  }

  // (iii) every interior edge gets the averaged pseudo-vector of its
  // endpoints and joins the triangle it crosses into (skipped when the
  // pseudo-vector is tangential or negligible).
  for (SimplexId e = static_cast<SimplexId>(nv); e < K.size() && K.dim(e) == 1; ++e) {
    const auto& cof = K.cofacets(e);
    if (cof.size() != 2) continue;  // boundary edge
    const auto& verts = K.simplex(e).vertices;
    const Vec2 p0 = G.vertex_pos[verts[0]], p1 = G.vertex_pos[verts[1]];
    const Vec2 pseudo{(field.samples[verts[0]].x + field.samples[verts[1]].x) / 2,
                      (field.samples[verts[0]].y + field.samples[verts[1]].y) / 2};
    const double plen = norm(pseudo);
    if (plen <= eps_len) continue;
    Vec2 edge = sub(p1, p0);
    const double elen = norm(edge);
    edge = {edge.x / elen, edge.y / elen};
    const Vec2 d{pseudo.x / plen, pseudo.y / plen};
    const double side = cross(edge, d);
    if (std::abs(side) <= eps) continue;  // tangential: no crossing
    const Vec2 mid{(p0.x + p1.x) / 2, (p0.y + p1.y) / 2};
    for (SimplexId t : cof) {
      const auto& tverts = K.simplex(t).vertices;
      VertexId apex = tverts[0];
      for (VertexId w : tverts)
        if (w != verts[0] && w != verts[1]) apex = w;
      const Vec2 to_apex = sub(G.vertex_pos[apex], mid);
      if (sgn(cross(edge, to_apex)) == sgn(side)) {
        merge(e, t);
        break;
      }
    }
  }

  // (iv) the boundary vertices and boundary edges form one vector standing
  // in for the exterior; merged in ascending simplex id.
  std::vector<SimplexId> ring;
  for (VertexId v = 0; v < nv; ++v)
    if (G.boundary_vertex(v)) ring.push_back(static_cast<SimplexId>(v));
  for (SimplexId e = static_cast<SimplexId>(nv); e < K.size() && K.dim(e) == 1; ++e)
    if (K.cofacets(e).size() == 1) ring.push_back(e);
  for (std::size_t t = 1; t < ring.size(); ++t) merge(ring[0], ring[t]);

  return V;
}

Vec2 builtin_g(Vec2 p) { return {p.x * p.x - p.y * p.y - 4, 2 * p.x * p.y}; }

SampledField sample_builtin_g(double xmin, double xmax, double ymin, double ymax, std::size_t nx,
                              std::size_t ny) {
  if (nx < 2 || ny < 2) throw ValidationError("grid needs at least 2x2 samples");
  if (!(xmin < xmax) || !(ymin < ymax)) throw ValidationError("empty sampling region");
  SampledField f;
  f.nx = nx;
  f.ny = ny;
  f.xs.resize(nx);
  f.ys.resize(ny);
  for (std::size_t i = 0; i < nx; ++i)
    f.xs[i] = xmin + (xmax - xmin) * static_cast<double>(i) / static_cast<double>(nx - 1);
  for (std::size_t i = 0; i < ny; ++i)
    f.ys[i] = ymin + (ymax - ymin) * static_cast<double>(i) / static_cast<double>(ny - 1);
  f.samples.resize(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix)
      f.samples[iy * nx + ix] = builtin_g({f.xs[ix], f.ys[iy]});
  return f;
}

SampledField read_samples_csv(std::istream& in) {
  struct Row {
    double x, y, vx, vy;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.find_first_not_of("xyv, \t") == std::string::npos) continue;  // header
    std::istringstream ss(line);
    std::string cell;
    double vals[4];
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ss, cell, ','))
        throw IoError("samples csv line " + std::to_string(lineno) + ": expected x,y,vx,vy");
      try {
        vals[c] = std::stod(cell);
      } catch (const std::exception&) {
        throw IoError("samples csv line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    rows.push_back({vals[0], vals[1], vals[2], vals[3]});
  }
  if (rows.empty()) throw IoError("samples csv is empty");

  std::vector<double> xs, ys;
  for (const Row& r : rows) {
    xs.push_back(r.x);
    ys.push_back(r.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  SampledField f;
  f.nx = xs.size();
  f.ny = ys.size();
  f.xs = xs;
  f.ys = ys;
  f.samples.assign(f.nx * f.ny, Vec2{});
  std::vector<char> seen(f.nx * f.ny, 0);
  std::map<double, std::size_t> xi, yi;
  for (std::size_t i = 0; i < xs.size(); ++i) xi[xs[i]] = i;
  for (std::size_t i = 0; i < ys.size(); ++i) yi[ys[i]] = i;
  for (const Row& r : rows) {
    const std::size_t idx = yi[r.y] * f.nx + xi[r.x];
    if (seen[idx]) throw IoError("samples csv: duplicate sample at (" + std::to_string(r.x) +
                                 "," + std::to_string(r.y) + ")");
    seen[idx] = 1;
    f.samples[idx] = {r.vx, r.vy};
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw IoError("samples csv: grid incomplete (missing " +
                                std::to_string(f.nx * f.ny - rows.size()) + " samples)");
  return f;
}

void write_samples_csv(std::ostream& out, const SampledField& field) {
  out << "x,y,vx,vy\n";
  for (std::size_t iy = 0; iy < field.ny; ++iy)
    for (std::size_t ix = 0; ix < field.nx; ++ix) {
      const Vec2 s = field.samples[iy * field.nx + ix];
      out << field.xs[ix] << "," << field.ys[iy] << "," << s.x << "," << s.y << "\n";
    }
}

}  // namespace conley
