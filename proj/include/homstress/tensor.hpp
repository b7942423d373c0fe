#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace homstress {

struct Vec3 {
  double v[3]{0.0, 0.0, 0.0};

  Vec3() = default;
  Vec3(double x, double y, double z) : v{x, y, z} {}

  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }

  Vec3 operator+(const Vec3& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
  Vec3 operator-(const Vec3& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}; }
  Vec3 operator-() const { return {-v[0], -v[1], -v[2]}; }
  Vec3 operator*(double c) const { return {c * v[0], c * v[1], c * v[2]}; }

  double dot(const Vec3& o) const { return v[0] * o.v[0] + v[1] * o.v[1] + v[2] * o.v[2]; }
  Vec3 cross(const Vec3& o) const {
    return {v[1] * o.v[2] - v[2] * o.v[1],
            v[2] * o.v[0] - v[0] * o.v[2],
            v[0] * o.v[1] - v[1] * o.v[0]};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  double max_abs() const {
    return std::max({std::fabs(v[0]), std::fabs(v[1]), std::fabs(v[2])});
  }
};

inline Vec3 operator*(double c, const Vec3& a) { return a * c; }

/// Dense 3x3 tensor, row-major. Carries deformation gradients and
/// first Piola-Kirchhoff stresses.
struct Mat3 {
  double m[3][3]{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

  Mat3() = default;
  Mat3(double a00, double a01, double a02,
       double a10, double a11, double a12,
       double a20, double a21, double a22)
      : m{{a00, a01, a02}, {a10, a11, a12}, {a20, a21, a22}} {}

  static Mat3 identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }
  static Mat3 diag(double a, double b, double c) { return {a, 0, 0, 0, b, 0, 0, 0, c}; }

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  Mat3 operator+(const Mat3& o) const;
  Mat3 operator-(const Mat3& o) const;
  Mat3 operator*(double c) const;
  Mat3 operator*(const Mat3& o) const;
  Vec3 operator*(const Vec3& x) const;

  Mat3 transpose() const;
  double trace() const { return m[0][0] + m[1][1] + m[2][2]; }
  double det() const;
  /// Matrix of cofactors: Cof(M) = det(M) M^{-T} for invertible M,
  /// so M * Cof(M)^T = det(M) I.
  Mat3 cofactor() const;
  Mat3 inverse() const;  // throws std::domain_error when singular
  double frobenius_norm() const;
  double max_abs() const;
};

inline Mat3 operator*(double c, const Mat3& a) { return a * c; }

/// a (x) n, the rank-one outer product.
Mat3 outer(const Vec3& a, const Vec3& n);

/// Symmetric 3x3 tensor stored as its six independent entries.
/// Carries left Cauchy-Green tensors, Cauchy stresses and small strains.
struct SymMat3 {
  double xx = 0, yy = 0, zz = 0, xy = 0, yz = 0, xz = 0;

  SymMat3() = default;
  SymMat3(double xx_, double yy_, double zz_, double xy_, double yz_, double xz_)
      : xx(xx_), yy(yy_), zz(zz_), xy(xy_), yz(yz_), xz(xz_) {}

  static SymMat3 identity() { return {1, 1, 1, 0, 0, 0}; }
  static SymMat3 diag(double a, double b, double c) { return {a, b, c, 0, 0, 0}; }

  double operator()(int i, int j) const;

  SymMat3 operator+(const SymMat3& o) const {
    return {xx + o.xx, yy + o.yy, zz + o.zz, xy + o.xy, yz + o.yz, xz + o.xz};
  }
  SymMat3 operator-(const SymMat3& o) const {
    return {xx - o.xx, yy - o.yy, zz - o.zz, xy - o.xy, yz - o.yz, xz - o.xz};
  }
  SymMat3 operator*(double c) const { return {c * xx, c * yy, c * zz, c * xy, c * yz, c * xz}; }

  Mat3 full() const;
  double trace() const { return xx + yy + zz; }
  double det() const;
  SymMat3 inverse() const;  // throws std::domain_error when singular
  SymMat3 deviatoric() const;
  double frobenius_norm() const;
  double max_abs() const;

  Vec3 operator*(const Vec3& x) const;
};

inline SymMat3 operator*(double c, const SymMat3& a) { return a * c; }

/// Symmetric part of a full tensor, (M + M^T)/2.
SymMat3 sym_part(const Mat3& m);

/// F F^T as a symmetric tensor; structural zeros of F are preserved exactly.
SymMat3 left_cauchy_green(const Mat3& f);

/// Principal invariants of a symmetric positive-definite tensor:
/// I1 = tr B, I2 = tr(Cof B), I3 = det B.
struct Invariants {
  double i1 = 0, i2 = 0, i3 = 0;
};

/// True when all leading principal minors are strictly positive
/// (Sylvester's criterion, exact on the stored entries).
bool is_spd(const SymMat3& b);

/// Invariants of an SPD tensor; throws std::domain_error otherwise.
Invariants invariants(const SymMat3& b);

/// Eigendecomposition of a symmetric tensor by cyclic Jacobi rotations.
/// Eigenvalues ascending; vectors(i,k) is component i of eigenvector k.
struct SymEigen {
  std::array<double, 3> values{};
  Mat3 vectors;
};
SymEigen sym_eigen(const SymMat3& s);

/// Unique SPD square root V with V*V = B; throws std::domain_error for
/// non-SPD input. Residual ||V*V - B|| stays below 1e-12 ||B||.
SymMat3 spd_sqrt(const SymMat3& b);

/// Result of factoring a tensor as a (x) n with ||n|| = 1.
/// `degenerate` marks the zero tensor (a = n = 0).
struct RankOneDecomposition {
  Vec3 a;
  Vec3 n;
  bool degenerate = false;
};

/// Factors D = a (x) n when rank(D) = 1, judged by the singular-value
/// ratio sigma2/sigma1 <= 1e-9. The zero tensor yields the degenerate
/// decomposition; higher rank yields nullopt. n is normalized with its
/// first nonzero component positive, a absorbs magnitude and sign.
std::optional<RankOneDecomposition> rank_one_decompose(const Mat3& d);

}  // namespace homstress
