#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "homstress/affine.hpp"
#include "homstress/constitutive.hpp"
#include "homstress/tensor.hpp"

namespace homstress {

/// Conforming tetrahedral partition of the cuboid [0,d0] x [0,d1] x [0,d2]:
/// an m^3 grid of cells, each cut into the six path tetrahedra around its
/// main diagonal. Face conformity across cells is automatic because the
/// cut is translation invariant.
struct CuboidPartition {
  int m = 0;
  std::array<double, 3> dims{1.0, 1.0, 1.0};
  std::vector<Vec3> vertices;                // lattice order, index below
  std::vector<std::array<int, 4>> tets;      // positively oriented

  /// (i, j, k) lattice coordinates to flat vertex index, 0 <= i,j,k <= m.
  int vertex_index(int i, int j, int k) const { return (i * (m + 1) + j) * (m + 1) + k; }

  /// True when the vertex lies on the cuboid surface.
  bool is_boundary_vertex(int index) const;
};

/// Builds the partition. Requires m >= 1 and positive extents;
/// throws std::invalid_argument otherwise. Produces 6 m^3 tetrahedra, all
/// with positive signed volume, tiling the cuboid exactly.
CuboidPartition kuhn_partition(int m, const std::array<double, 3>& dims);

/// Signed volume of the tetrahedron (p0, p1, p2, p3).
double tet_volume(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3);

/// The unique affine map u(X) = A X + b matching four displacement samples
/// u_i at four vertices x_i, solved per component by Cramer's rule on the
/// 4x4 vertex matrix. Throws std::invalid_argument when the vertices are
/// coplanar (|det| <= 1e-10 L^3 with L the bounding-box extent).
AffineMap affine_from_vertex_data(const std::array<Vec3, 4>& x, const std::array<Vec3, 4>& u);

/// A displacement field that is affine on each tetrahedron of a partition.
struct PiecewiseAffineField {
  CuboidPartition partition;
  std::vector<AffineMap> maps;  // one per tetrahedron, same order
};

/// The piecewise-affine field realizing the two-phase deformation
///   y = F X            on X2 <= c,
///   y = Fhat X - c a   on X2 >= c,
/// where Fhat - F = a (x) e2. The field is continuous across the interface
/// plane X2 = c by the rank-one structure of the jump.
/// Requires Fhat - F to be rank one with normal e2 (std::domain_error
/// otherwise) and c to lie on a lattice plane j dims[1]/m
/// (std::invalid_argument otherwise). Equal gradients yield the homogeneous
/// single-phase field for any c.
PiecewiseAffineField build_two_phase_field(const CuboidPartition& partition, const Mat3& f,
                                           const Mat3& f_hat, double plane_offset);

/// Largest displacement disagreement (max norm) between the maps of
/// tetrahedra sharing a vertex, over all vertices. Zero up to roundoff
/// certifies a globally continuous field.
double check_continuity(const PiecewiseAffineField& field);

/// Outcome of testing whether two homogeneous maps can coincide on a set of
/// points. Compatible means the shared set admits such a configuration
/// (the points lie on a plane with the jump normal, or on the kernel of the
/// gradient difference); fewer than four points cannot certify anything.
enum class PlanarityVerdict { kCompatible, kIncompatible, kInconclusive };

struct PlanarityResult {
  PlanarityVerdict verdict = PlanarityVerdict::kInconclusive;
  std::optional<Vec3> normal;    // interface normal when the difference is rank one
  double max_residual = 0;
};

/// Decides whether deformations with gradients F and G can agree at every
/// listed point: they agree at X_i and X_0 exactly when (G - F)(X_i - X_0)
/// vanishes, three linear conditions per point on the twelve coefficient
/// differences. For a rank-one difference a (x) n this reduces to
/// n . (X_i - X_0) = 0, so the shared points must be coplanar with normal n.
PlanarityResult planarity_theorem_check(const std::vector<Vec3>& shared_points, const Mat3& f,
                                        const Mat3& g);

/// Unknown and constraint counts for a piecewise-affine displacement on the
/// partition, all exact integers:
///   total                    3 (m+1)^3   (one displacement per lattice vertex)
///   boundary_eqs             18(m-1)^2 + 36(m-1) + 24 = 3 (6 m^2 + 2)
///   interior                 3 (m-1)^3   (= total - boundary_eqs, exactly)
///   coefficients             72 m^3      (12 affine coefficients per tet)
///   det_constraints_needed   6 m^3       (one determinant condition per tet)
struct DofAccount {
  std::int64_t m = 0;
  std::int64_t vertices = 0;
  std::int64_t boundary_vertices = 0;
  std::int64_t tets = 0;
  std::int64_t total = 0;
  std::int64_t boundary_eqs = 0;
  std::int64_t interior = 0;
  std::int64_t coefficients = 0;
  std::int64_t det_constraints_needed = 0;
};
DofAccount dof_accounting(int m);

/// det(I + A) - d for the tetrahedra with no boundary vertex (the closure
/// set whose coefficients are not pinned by boundary data), in tet order;
/// include_boundary extends the list to every tetrahedron.
std::vector<double> det_constraint_residuals(const PiecewiseAffineField& field, double d,
                                             bool include_boundary = false);

/// A shared triangular face and the tetrahedra incident to it.
struct FaceIncidence {
  std::array<int, 3> vertices;  // ascending vertex indices
  std::vector<int> tets;
};

/// Every face of the partition with its incident tetrahedra, sorted by
/// vertex triple. Conformity means every count is 1 (surface) or 2
/// (interior).
std::vector<FaceIncidence> collect_faces(const CuboidPartition& partition);

/// Interface equilibrium audit: the largest jump of the traction vector
/// (sigma_left - sigma_right) n across interior faces, with sigma the model
/// Cauchy stress of each cell's deformation. equilibrium_ok applies the
/// scale-aware bound max_jump <= 1e-10 (1 + max ||sigma||).
struct TractionCheck {
  double max_traction_jump = 0;
  double sigma_scale = 0;  // largest Frobenius norm among cell stresses
  bool equilibrium_ok = true;
};
TractionCheck traction_and_equilibrium_check(const PiecewiseAffineField& field,
                                             const MaterialParams& p);

/// Plain-text mesh snapshot: "tetmesh v1" header, then one "v x y z" line
/// per vertex and one "t i0 i1 i2 i3" line per tetrahedron, numbers with 17
/// significant digits. Byte-stable for identical input.
void write_tetmesh(std::ostream& os, const CuboidPartition& partition);

/// Mesh snapshot extended with one "g ..." line per tetrahedron (the nine
/// entries of its displacement gradient, row major) and one "u x y z" line
/// per vertex of each tetrahedron, in tet order, holding that tet's
/// displacement at the vertex.
void write_field(std::ostream& os, const PiecewiseAffineField& field);

}  // namespace homstress
