#include "homstress/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "homstress/numfmt.hpp"

namespace homstress {

bool CuboidPartition::is_boundary_vertex(int index) const {
  const int n = m + 1;
  const int i = index / (n * n);
  const int j = (index / n) % n;
  const int k = index % n;
  return i == 0 || i == m || j == 0 || j == m || k == 0 || k == m;
}

CuboidPartition kuhn_partition(int m, const std::array<double, 3>& dims) {
  if (m < 1) throw std::invalid_argument("kuhn_partition: m must be at least 1");
  if (!(dims[0] > 0.0) || !(dims[1] > 0.0) || !(dims[2] > 0.0))
    throw std::invalid_argument("kuhn_partition: extents must be positive");

  CuboidPartition part;
  part.m = m;
  part.dims = dims;

  const double step[3] = {dims[0] / m, dims[1] / m, dims[2] / m};
  const int n = m + 1;
  part.vertices.reserve(static_cast<size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        part.vertices.push_back({i * step[0], j * step[1], k * step[2]});

  // The six permutations of the axis order, walking the cell diagonal
  // (0,0,0) -> (1,1,1) one axis at a time. Odd permutations get two
  // vertices swapped to keep every tetrahedron positively oriented.
  static constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  static constexpr bool kOdd[6] = {false, true, true, false, false, true};

  part.tets.reserve(static_cast<size_t>(6) * m * m * m);
  for (int ci = 0; ci < m; ++ci) {
    for (int cj = 0; cj < m; ++cj) {
      for (int ck = 0; ck < m; ++ck) {
        for (int p = 0; p < 6; ++p) {
          int off[3] = {0, 0, 0};
          std::array<int, 4> tet;
          tet[0] = part.vertex_index(ci, cj, ck);
          for (int step_idx = 0; step_idx < 3; ++step_idx) {
            off[kPerm[p][step_idx]] += 1;
            tet[static_cast<size_t>(step_idx) + 1] =
                part.vertex_index(ci + off[0], cj + off[1], ck + off[2]);
          }
          if (kOdd[p]) std::swap(tet[1], tet[2]);
          part.tets.push_back(tet);
        }
      }
    }
  }
  return part;
}

double tet_volume(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3) {
  return (p1 - p0).dot((p2 - p0).cross(p3 - p0)) / 6.0;
}

namespace {

double det3(double a00, double a01, double a02, double a10, double a11, double a12, double a20,
            double a21, double a22) {
  return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
         a02 * (a10 * a21 - a11 * a20);
}

double det4(const double m[4][4]) {
  double d = 0.0;
  double sign = 1.0;
  for (int c = 0; c < 4; ++c) {
    int cols[3];
    int w = 0;
    for (int cc = 0; cc < 4; ++cc)
      if (cc != c) cols[w++] = cc;
    d += sign * m[0][c] *
         det3(m[1][cols[0]], m[1][cols[1]], m[1][cols[2]],
              m[2][cols[0]], m[2][cols[1]], m[2][cols[2]],
              m[3][cols[0]], m[3][cols[1]], m[3][cols[2]]);
    sign = -sign;
  }
  return d;
}

}  // namespace

AffineMap affine_from_vertex_data(const std::array<Vec3, 4>& x, const std::array<Vec3, 4>& u) {
  double mtx[4][4];
  for (int i = 0; i < 4; ++i) {
    for (int d = 0; d < 3; ++d) mtx[i][d] = x[static_cast<size_t>(i)][d];
    mtx[i][3] = 1.0;
  }
  const double den = det4(mtx);

  double extent = 0.0;
  for (int d = 0; d < 3; ++d) {
    double lo = x[0][d], hi = x[0][d];
    for (int i = 1; i < 4; ++i) {
      lo = std::min(lo, x[static_cast<size_t>(i)][d]);
      hi = std::max(hi, x[static_cast<size_t>(i)][d]);
    }
    extent = std::max(extent, hi - lo);
  }
  if (std::fabs(den) <= 1e-10 * extent * extent * extent)
    throw std::invalid_argument("affine_from_vertex_data: vertices are coplanar");

  AffineMap map;
  double num[4][4];
  for (int comp = 0; comp < 3; ++comp) {
    for (int col = 0; col < 4; ++col) {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          num[i][j] = (j == col) ? u[static_cast<size_t>(i)][comp] : mtx[i][j];
      const double coef = det4(num) / den;
      if (col < 3) {
        map.a(comp, col) = coef;
      } else {
        map.b[comp] = coef;
      }
    }
  }
  return map;
}

PiecewiseAffineField build_two_phase_field(const CuboidPartition& partition, const Mat3& f,
                                           const Mat3& f_hat, double plane_offset) {
  PiecewiseAffineField field;
  field.partition = partition;
  field.maps.reserve(partition.tets.size());

  const Mat3 d = f_hat - f;
  const auto decomp = rank_one_decompose(d);
  if (!decomp)
    throw std::domain_error("build_two_phase_field: gradients are not rank-one connected");

  const AffineMap low{f - Mat3::identity(), Vec3{}};
  if (decomp->degenerate) {
    field.maps.assign(partition.tets.size(), low);
    return field;
  }

  if (std::fabs(decomp->n[0]) > 1e-10 || std::fabs(decomp->n[2]) > 1e-10)
    throw std::domain_error("build_two_phase_field: jump normal must be e2 for a plane X2 = c");

  const double step_y = partition.dims[1] / partition.m;
  const double j_real = plane_offset / step_y;
  const long j = std::lround(j_real);
  if (j < 0 || j > partition.m ||
      std::fabs(plane_offset - static_cast<double>(j) * step_y) >
          1e-12 * std::max(1.0, partition.dims[1]))
    throw std::invalid_argument(
        "build_two_phase_field: plane offset must sit on a lattice plane j*dims_y/m");

  // Jump amplitude from the exact column, so the interface closes to roundoff.
  const Vec3 a_vec{d(0, 1), d(1, 1), d(2, 1)};
  const AffineMap high{f_hat - Mat3::identity(), -plane_offset * a_vec};

  for (const auto& tet : partition.tets) {
    double cy = 0.0;
    for (int v : tet) cy += partition.vertices[static_cast<size_t>(v)][1];
    cy *= 0.25;
    field.maps.push_back(cy < plane_offset ? low : high);
  }
  return field;
}

double check_continuity(const PiecewiseAffineField& field) {
  const auto& part = field.partition;
  std::vector<std::vector<int>> incident(part.vertices.size());
  for (size_t t = 0; t < part.tets.size(); ++t)
    for (int v : part.tets[t]) incident[static_cast<size_t>(v)].push_back(static_cast<int>(t));

  double worst = 0.0;
  for (size_t v = 0; v < part.vertices.size(); ++v) {
    const auto& ts = incident[v];
    if (ts.size() < 2) continue;
    const Vec3 u0 = field.maps[static_cast<size_t>(ts[0])].displacement(part.vertices[v]);
    for (size_t i = 1; i < ts.size(); ++i) {
      const Vec3 ui = field.maps[static_cast<size_t>(ts[i])].displacement(part.vertices[v]);
      worst = std::max(worst, (ui - u0).max_abs());
    }
  }
  return worst;
}

PlanarityResult planarity_theorem_check(const std::vector<Vec3>& shared_points, const Mat3& f,
                                        const Mat3& g) {
  PlanarityResult res;
  if (shared_points.size() < 4) {
    res.verdict = PlanarityVerdict::kInconclusive;
    return res;
  }

  const Mat3 d = g - f;
  const double grad_scale = std::max({f.max_abs(), g.max_abs(), 1.0});
  if (d.max_abs() <= 1e-14 * grad_scale) {
    res.verdict = PlanarityVerdict::kCompatible;
    return res;
  }

  double extent = 0.0;
  for (int dim = 0; dim < 3; ++dim) {
    double lo = shared_points[0][dim], hi = lo;
    for (const Vec3& pt : shared_points) {
      lo = std::min(lo, pt[dim]);
      hi = std::max(hi, pt[dim]);
    }
    extent = std::max(extent, hi - lo);
  }

  const auto decomp = rank_one_decompose(d);
  if (decomp && !decomp->degenerate) {
    res.normal = decomp->n;
    const double tol = 1e-10 * std::max(1.0, extent);
    for (size_t i = 1; i < shared_points.size(); ++i) {
      const Vec3 rel = shared_points[i] - shared_points[0];
      res.max_residual = std::max(res.max_residual, std::fabs(decomp->n.dot(rel)));
    }
    res.verdict = res.max_residual <= tol ? PlanarityVerdict::kCompatible
                                          : PlanarityVerdict::kIncompatible;
    return res;
  }

  // Higher-rank difference: agreement forces X_i - X_0 into the kernel of d.
  const double tol = 1e-10 * std::max(1.0, d.max_abs()) * std::max(1.0, extent);
  for (size_t i = 1; i < shared_points.size(); ++i) {
    const Vec3 rel = shared_points[i] - shared_points[0];
    res.max_residual = std::max(res.max_residual, (d * rel).max_abs());
  }
  res.verdict = res.max_residual <= tol ? PlanarityVerdict::kCompatible
                                        : PlanarityVerdict::kIncompatible;
  return res;
}

DofAccount dof_accounting(int m) {
  if (m < 1) throw std::invalid_argument("dof_accounting: m must be at least 1");
  DofAccount acc;
  const std::int64_t mm = m;
  acc.m = mm;
  acc.vertices = (mm + 1) * (mm + 1) * (mm + 1);
  acc.boundary_vertices = 6 * mm * mm + 2;
  acc.tets = 6 * mm * mm * mm;
  acc.total = 3 * acc.vertices;
  acc.boundary_eqs = 18 * (mm - 1) * (mm - 1) + 36 * (mm - 1) + 24;
  acc.interior = 3 * (mm - 1) * (mm - 1) * (mm - 1);
  acc.coefficients = 12 * acc.tets;
  acc.det_constraints_needed = acc.tets;
  return acc;
}

std::vector<double> det_constraint_residuals(const PiecewiseAffineField& field, double d,
                                             bool include_boundary) {
  const auto& part = field.partition;
  std::vector<double> res;
  res.reserve(part.tets.size());
  for (size_t t = 0; t < part.tets.size(); ++t) {
    if (!include_boundary) {
      bool touches = false;
      for (int v : part.tets[t]) touches = touches || part.is_boundary_vertex(v);
      if (touches) continue;
    }
    res.push_back(field.maps[t].deformation_gradient().det() - d);
  }
  return res;
}

std::vector<FaceIncidence> collect_faces(const CuboidPartition& partition) {
  std::map<std::array<int, 3>, std::vector<int>> table;
  static constexpr int kFace[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  for (size_t t = 0; t < partition.tets.size(); ++t) {
    for (const auto& fv : kFace) {
      std::array<int, 3> key{partition.tets[t][fv[0]], partition.tets[t][fv[1]],
                             partition.tets[t][fv[2]]};
      std::sort(key.begin(), key.end());
      table[key].push_back(static_cast<int>(t));
    }
  }
  std::vector<FaceIncidence> faces;
  faces.reserve(table.size());
  for (auto& [key, tets] : table) faces.push_back({key, std::move(tets)});
  return faces;
}

TractionCheck traction_and_equilibrium_check(const PiecewiseAffineField& field,
                                             const MaterialParams& p) {
  const auto& part = field.partition;
  std::vector<SymMat3> sigma;
  sigma.reserve(field.maps.size());
  TractionCheck out;
  for (const AffineMap& map : field.maps) {
    const SymMat3 s = cauchy_stress(left_cauchy_green(map.deformation_gradient()), p);
    out.sigma_scale = std::max(out.sigma_scale, s.frobenius_norm());
    sigma.push_back(s);
  }

  for (const FaceIncidence& face : collect_faces(part)) {
    if (face.tets.size() != 2) continue;
    const Vec3& p0 = part.vertices[static_cast<size_t>(face.vertices[0])];
    const Vec3& p1 = part.vertices[static_cast<size_t>(face.vertices[1])];
    const Vec3& p2 = part.vertices[static_cast<size_t>(face.vertices[2])];
    Vec3 nvec = (p1 - p0).cross(p2 - p0);
    const double len = nvec.norm();
    if (len == 0.0) continue;
    nvec = nvec * (1.0 / len);
    const SymMat3 ds = sigma[static_cast<size_t>(face.tets[0])] -
                       sigma[static_cast<size_t>(face.tets[1])];
    out.max_traction_jump = std::max(out.max_traction_jump, (ds * nvec).norm());
  }
  out.equilibrium_ok = out.max_traction_jump <= 1e-10 * (1.0 + out.sigma_scale);
  return out;
}

void write_tetmesh(std::ostream& os, const CuboidPartition& partition) {
  os << "tetmesh v1\n";
  for (const Vec3& v : partition.vertices)
    os << "v " << sig17(v[0]) << ' ' << sig17(v[1]) << ' ' << sig17(v[2]) << '\n';
  for (const auto& t : partition.tets)
    os << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
}

void write_field(std::ostream& os, const PiecewiseAffineField& field) {
  write_tetmesh(os, field.partition);
  for (const AffineMap& map : field.maps) {
    os << 'g';
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) os << ' ' << sig17(map.a(i, j));
    os << '\n';
  }
  for (size_t t = 0; t < field.partition.tets.size(); ++t) {
    for (int v : field.partition.tets[t]) {
      const Vec3 u = field.maps[t].displacement(field.partition.vertices[static_cast<size_t>(v)]);
      os << "u " << sig17(u[0]) << ' ' << sig17(u[1]) << ' ' << sig17(u[2]) << '\n';
    }
  }
}

}  // namespace homstress
