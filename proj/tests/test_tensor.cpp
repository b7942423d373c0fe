#include <cmath>
#include <random>

#include "doctest.h"
#include "homstress/tensor.hpp"

using namespace homstress;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(0x5eed1234u);
  return gen;
}

double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng());
}

Mat3 random_matrix() {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = uniform(-1.0, 1.0);
  return m;
}

/// Random gradient with determinant bounded away from zero, for use as a
/// deformation gradient.
Mat3 random_gradient() {
  for (;;) {
    Mat3 f = Mat3::identity() + 0.4 * random_matrix();
    if (f.det() > 0.2) return f;
  }
}

SymMat3 random_spd() { return left_cauchy_green(random_gradient()); }

}  // namespace

TEST_CASE("vector algebra basics") {
  const Vec3 a{1, 2, 3};
  const Vec3 b{-2, 0.5, 4};
  CHECK(a.dot(b) == doctest::Approx(11.0).epsilon(1e-15));
  const Vec3 c = a.cross(b);
  CHECK(std::fabs(c.dot(a)) <= 1e-14);
  CHECK(std::fabs(c.dot(b)) <= 1e-14);
  CHECK(Vec3{1, 0, 0}.cross(Vec3{0, 1, 0})[2] == 1.0);
  CHECK(a.norm() == doctest::Approx(std::sqrt(14.0)));
  CHECK(a.max_abs() == 3.0);
}

TEST_CASE("matrix product, transpose and trace") {
  const Mat3 m(1, 2, 3, 4, 5, 6, 7, 8, 10);
  const Mat3 id = Mat3::identity();
  CHECK((m * id - m).max_abs() == 0.0);
  CHECK((id * m - m).max_abs() == 0.0);
  CHECK(m.trace() == 16.0);
  const Mat3 mt = m.transpose();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(mt(i, j) == m(j, i));
}

TEST_CASE("determinant is multiplicative") {
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 m = random_matrix();
    const Mat3 n = random_matrix();
    const double lhs = m.det() * n.det();
    const double rhs = (m * n).det();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("cofactor of a diagonal matrix") {
  const Mat3 cof = Mat3::diag(2, 3, 4).cofactor();
  CHECK(cof(0, 0) == 12.0);
  CHECK(cof(1, 1) == 8.0);
  CHECK(cof(2, 2) == 6.0);
  CHECK(cof(0, 1) == 0.0);
}

TEST_CASE("cofactor satisfies M cof(M)^T = det(M) I") {
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 m = random_matrix();
    const Mat3 p = m * m.cofactor().transpose();
    const double d = m.det();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(p(i, j) == doctest::Approx(i == j ? d : 0.0).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("inverse round-trips and rejects singular input") {
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 f = random_gradient();
    const Mat3 p = f * f.inverse();
    CHECK((p - Mat3::identity()).max_abs() < 1e-12);
  }
  const Mat3 singular(1, 2, 3, 2, 4, 6, 0, 1, 1);
  CHECK_THROWS_AS((void)singular.inverse(), std::domain_error);
}

TEST_CASE("left Cauchy-Green tensor of a diagonal stretch") {
  const Mat3 f = Mat3::diag(2, 1, 0.5);
  const SymMat3 b = left_cauchy_green(f);
  CHECK(b.xx == 4.0);
  CHECK(b.yy == 1.0);
  CHECK(b.zz == 0.25);
  CHECK(b.xy == 0.0);
  CHECK(b.yz == 0.0);
  CHECK(b.xz == 0.0);
}

TEST_CASE("left Cauchy-Green equals F F^T for general gradients") {
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3 f = random_gradient();
    const Mat3 full = f * f.transpose();
    const SymMat3 b = left_cauchy_green(f);
    CHECK((b.full() - full).max_abs() < 1e-15);
  }
}

TEST_CASE("invariants of a diagonal tensor") {
  const SymMat3 b = SymMat3::diag(4.0, 1.0, 0.25);
  const Invariants inv = invariants(b);
  CHECK(inv.i1 == 5.25);
  CHECK(inv.i2 == 5.25);
  CHECK(inv.i3 == 1.0);
}

TEST_CASE("invariants at the identity are (3, 3, 1)") {
  const Invariants inv = invariants(SymMat3::identity());
  CHECK(inv.i1 == 3.0);
  CHECK(inv.i2 == 3.0);
  CHECK(inv.i3 == 1.0);
}

TEST_CASE("invariants reject non-positive-definite input") {
  CHECK_THROWS_AS((void)invariants(SymMat3::diag(1, 1, 0)), std::domain_error);
  CHECK_THROWS_AS((void)invariants(SymMat3::diag(-1, 2, 2)), std::domain_error);
}

TEST_CASE("invariant inequality i1 i2 >= 9 i3 on random SPD tensors") {
  for (int trial = 0; trial < 200; ++trial) {
    const Invariants inv = invariants(random_spd());
    CHECK(inv.i1 * inv.i2 >= 9.0 * inv.i3 * (1.0 - 1e-12));
  }
}

TEST_CASE("tensor satisfies its own characteristic polynomial") {
  for (int trial = 0; trial < 50; ++trial) {
    const SymMat3 b = random_spd();
    const Invariants inv = invariants(b);
    const Mat3 bf = b.full();
    const Mat3 residual = bf * bf * bf - inv.i1 * (bf * bf) + inv.i2 * bf -
                          Mat3::diag(inv.i3, inv.i3, inv.i3);
    const double scale = std::max(1.0, bf.frobenius_norm());
    CHECK(residual.max_abs() < 1e-10 * scale * scale * scale);
  }
}

TEST_CASE("symmetric eigendecomposition reconstructs the tensor") {
  for (int trial = 0; trial < 50; ++trial) {
    const SymMat3 b = random_spd();
    const SymEigen eig = sym_eigen(b);
    CHECK(eig.values[0] <= eig.values[1]);
    CHECK(eig.values[1] <= eig.values[2]);
    Mat3 recon(0, 0, 0, 0, 0, 0, 0, 0, 0);
    for (int k = 0; k < 3; ++k) {
      const Vec3 v{eig.vectors(0, k), eig.vectors(1, k), eig.vectors(2, k)};
      recon = recon + eig.values[k] * outer(v, v);
    }
    CHECK((recon - b.full()).max_abs() < 1e-13 * std::max(1.0, b.max_abs()));
    // Columns are orthonormal.
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) {
        double d = 0;
        for (int i = 0; i < 3; ++i) d += eig.vectors(i, p) * eig.vectors(i, q);
        CHECK(d == doctest::Approx(p == q ? 1.0 : 0.0).epsilon(1e-13).scale(1.0));
      }
  }
}

TEST_CASE("spd square root of a diagonal tensor") {
  const SymMat3 r = spd_sqrt(SymMat3::diag(4, 9, 1));
  CHECK(r.xx == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.yy == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(r.zz == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(r.xy) < 1e-15);
}

TEST_CASE("spd square root squares back to the input") {
  for (int trial = 0; trial < 50; ++trial) {
    const SymMat3 b = random_spd();
    const SymMat3 r = spd_sqrt(b);
    CHECK(is_spd(r));
    const Mat3 sq = r.full() * r.full();
    CHECK((sq - b.full()).max_abs() < 1e-12 * std::max(1.0, b.max_abs()));
  }
}

TEST_CASE("spd square root rejects indefinite input") {
  CHECK_THROWS_AS((void)spd_sqrt(SymMat3::diag(1, -1, 1)), std::domain_error);
}

TEST_CASE("rank-one decomposition of a single off-diagonal entry") {
  Mat3 d(0, -0.6, 0, 0, 0, 0, 0, 0, 0);
  const auto dec = rank_one_decompose(d);
  REQUIRE(dec.has_value());
  REQUIRE(!dec->degenerate);
  // Normal is e2 with the sign convention (first sizable component positive).
  CHECK(dec->n[0] == 0.0);
  CHECK(dec->n[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dec->n[2] == 0.0);
  CHECK(dec->a[0] == doctest::Approx(-0.6).epsilon(1e-15));
  CHECK(std::fabs(dec->a[1]) < 1e-15);
  CHECK(std::fabs(dec->a[2]) < 1e-15);
  CHECK((outer(dec->a, dec->n) - d).max_abs() < 1e-15);
}

TEST_CASE("rank-one decomposition reconstructs random dyads") {
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 a{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
    Vec3 n{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    if (n.norm() < 0.1 || a.norm() < 0.1) continue;
    n = (1.0 / n.norm()) * n;
    const Mat3 d = outer(a, n);
    const auto dec = rank_one_decompose(d);
    REQUIRE(dec.has_value());
    REQUIRE(!dec->degenerate);
    CHECK((outer(dec->a, dec->n) - d).max_abs() < 1e-12 * std::max(1.0, d.max_abs()));
  }
}

TEST_CASE("rank-one decomposition rejects rank-two differences") {
  const Mat3 d = Mat3::diag(1, 1, 0);
  CHECK(!rank_one_decompose(d).has_value());
  const Mat3 g = outer(Vec3{1, 0, 0}, Vec3{0, 1, 0}) + outer(Vec3{0, 0, 1}, Vec3{1, 0, 0});
  CHECK(!rank_one_decompose(g).has_value());
}

TEST_CASE("rank-one decomposition flags the zero matrix as degenerate") {
  const auto dec = rank_one_decompose(Mat3(0, 0, 0, 0, 0, 0, 0, 0, 0));
  REQUIRE(dec.has_value());
  CHECK(dec->degenerate);
  CHECK(dec->a.norm() == 0.0);
}

TEST_CASE("spd predicate uses strict leading minors") {
  CHECK(is_spd(SymMat3::identity()));
  CHECK(is_spd(SymMat3::diag(4, 1, 0.25)));
  CHECK(!is_spd(SymMat3::diag(1, 1, 0)));
  CHECK(!is_spd(SymMat3::diag(-1, -1, -1)));
  // Symmetric but indefinite despite positive diagonal.
  SymMat3 s = SymMat3::diag(1, 1, 1);
  s.xy = 2.0;
  CHECK(!is_spd(s));
}

TEST_CASE("symmetric part splits a matrix") {
  const Mat3 m = random_matrix();
  const SymMat3 s = sym_part(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(s(i, j) == doctest::Approx(0.5 * (m(i, j) + m(j, i))).epsilon(1e-15).scale(1.0));
}

TEST_CASE("deviatoric part is trace free") {
  for (int trial = 0; trial < 20; ++trial) {
    const SymMat3 b = random_spd();
    CHECK(std::fabs(b.deviatoric().trace()) < 1e-14 * std::max(1.0, b.max_abs()));
  }
}
