#pragma once

#include "homstress/tensor.hpp"

namespace homstress {

/// Affine displacement field u(X) = A X + b. The deformed position is
/// X + u(X), so the deformation gradient is I + A.
struct AffineMap {
  Mat3 a;
  Vec3 b;

  Vec3 displacement(const Vec3& x) const { return a * x + b; }
  Vec3 deformed(const Vec3& x) const { return x + displacement(x); }
  Mat3 deformation_gradient() const { return Mat3::identity() + a; }
};

}  // namespace homstress
