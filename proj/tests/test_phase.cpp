#include <cmath>

#include "doctest.h"
#include "homstress/constitutive.hpp"
#include "homstress/phase.hpp"
#include "homstress/tensor.hpp"

using namespace homstress;

namespace {

const MaterialParams kMat{1.0, 3.0, 1.0};

// Reference values computed independently with 50-digit arithmetic and
// rounded to 20 significant digits.
constexpr double kRatioBoundAt1 = 0.1574901312368591456;    // ((3-1-1)/4)^{4/3}
constexpr double kSmaxAt1 = 0.47979124739880257705;         // s_max(a=1)
constexpr double kRoot1 = 0.24574821372060174452;           // beta1 roots, s=0.3, a=1
constexpr double kRoot2 = 0.69716912136425825762;
constexpr double kBeta0AtRoot1 = -8.188649695504946029;
constexpr double kBeta0AtRoot2 = -1.8693483703377769124;
constexpr double kBeta1At07 = 0.01204898314816471108;
constexpr double kBeta1At05 = -0.7851978960636010505;
constexpr double kBeta1Limit1000 = 0.9956688916081105911;   // path point n = 1000
constexpr double kScaledS = 0.21037887704723727999;         // same C at a = 1.1
constexpr double kSmaxAt11 = 0.40015839848116534352;
constexpr double kNearRootLo = 0.42566498656461;            // s = 0.999 s_max
constexpr double kNearRootHi = 0.451936211026263;
constexpr double kProbeT = 0.2115;                          // first negative grid point
constexpr double kProbeD2 = -0.000117855;                   // exact decimal on the grid
constexpr double kProbeD2Mid = -0.0971999514;               // exact decimal on the grid
constexpr double kEnergyAtRoot1 = 2.0663079680326478019;    // W at F(kRoot1)

}  // namespace

TEST_CASE("phase parameters validate their ranges") {
  CHECK_NOTHROW(PhaseParams(0.5, 0.3, 1.0));
  CHECK_NOTHROW(PhaseParams(1.0, 0.0, 1.0));  // s = 0 collapses the phases
  CHECK_THROWS_AS(PhaseParams(0.0, 0.3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PhaseParams(0.5, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PhaseParams(0.5, 0.3, 0.0), std::invalid_argument);
}

TEST_CASE("phase gradients at the trivial parameters are the identity") {
  const auto [f, f_hat] = phase_gradients(PhaseParams{1.0, 0.0, 1.0});
  CHECK((f - Mat3::identity()).max_abs() == 0.0);
  CHECK((f_hat - Mat3::identity()).max_abs() == 0.0);
}

TEST_CASE("phase gradients differ by an exact rank-one shear") {
  const PhaseParams pp{0.5, 0.3, 1.2};
  const auto [f, f_hat] = phase_gradients(pp);
  const Mat3 d = f_hat - f;
  // Only the (0,1) entry differs: d = -2 s a e1 (x) e2, exact in fp because
  // both entries come from one rounded product s*a.
  CHECK(d(0, 1) == -2.0 * f(0, 1));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(i == 0 && j == 1)) CHECK(d(i, j) == 0.0);
  // Both phases share det F = k up to a single rounding.
  CHECK(f.det() == doctest::Approx(pp.k).epsilon(4e-16));
  CHECK(f_hat.det() == doctest::Approx(pp.k).epsilon(4e-16));
}

TEST_CASE("closed-form phase invariants match the tensor computation") {
  const PhaseParams pp{0.7, 0.25, 1.3};
  const Invariants closed = phase_invariants(pp);
  const auto [f, f_hat] = phase_gradients(pp);
  const Invariants direct = invariants(left_cauchy_green(f));
  CHECK(closed.i1 == doctest::Approx(direct.i1).epsilon(1e-14));
  CHECK(closed.i2 == doctest::Approx(direct.i2).epsilon(1e-14));
  CHECK(closed.i3 == doctest::Approx(direct.i3).epsilon(1e-14));
  // The two phases have bitwise identical invariants: their tensors differ
  // only in the sign of the off-diagonal xy entry.
  const Invariants hat = invariants(left_cauchy_green(f_hat));
  const Invariants base = invariants(left_cauchy_green(f));
  CHECK(hat.i1 == base.i1);
  CHECK(hat.i2 == base.i2);
  CHECK(hat.i3 == base.i3);
}

TEST_CASE("rank-one compatibility holds within a phase pair") {
  const auto [f, f_hat] = phase_gradients(PhaseParams{0.5, 0.3, 1.0});
  const RankOneCondition cond = rank_one_condition(f, f_hat);
  CHECK(cond.holds);
  CHECK(cond.residual == 0.0);
  REQUIRE(cond.decomposition.has_value());
  CHECK(!cond.decomposition->degenerate);
  CHECK(cond.decomposition->n[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::fabs(cond.decomposition->n[0]) < 1e-14);
  CHECK(std::fabs(cond.decomposition->n[2]) < 1e-14);
}

TEST_CASE("rank-one compatibility fails for a rank-two difference") {
  const Mat3 f = Mat3::identity();
  const Mat3 g = f + Mat3::diag(1, 1, 0);
  const RankOneCondition cond = rank_one_condition(f, g);
  CHECK(!cond.holds);
  CHECK(cond.residual == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rank-one compatibility treats equal gradients as degenerate") {
  const Mat3 f = Mat3::diag(2, 1, 0.5);
  const RankOneCondition cond = rank_one_condition(f, f);
  CHECK(!cond.holds);
  CHECK(cond.residual == 0.0);
  REQUIRE(cond.decomposition.has_value());
  CHECK(cond.decomposition->degenerate);
}

TEST_CASE("admissible region at a = 1") {
  const auto region = admissible_smax(1.0, kMat);
  REQUIRE(region.has_value());
  CHECK(region->mu_ratio == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(region->mu_ratio_bound == doctest::Approx(kRatioBoundAt1).epsilon(1e-15));
  CHECK(region->s_max == doctest::Approx(kSmaxAt1).epsilon(1e-14));
}

TEST_CASE("admissibility fails when the stretch is too extreme") {
  // a = 2 gives 3 - a^2 - 1/a^2 < 0: no material admits two phases there.
  CHECK(!admissible_smax(2.0, kMat).has_value());
}

TEST_CASE("admissibility fails when mu/mu_tilde is too large") {
  const MaterialParams soft{1.0, 1.0, 1.0};  // mu_ratio = 1/3 > (1/4)^{4/3}
  CHECK(!admissible_smax(1.0, soft).has_value());
}

TEST_CASE("admissibility requires a positive stretch") {
  CHECK_THROWS_AS((void)admissible_smax(0.0, kMat), std::invalid_argument);
  CHECK_THROWS_AS((void)admissible_smax(-1.0, kMat), std::invalid_argument);
}

TEST_CASE("root search finds both roots at reference accuracy") {
  const RootSearch rs = find_k_roots(0.3, 1.0, kMat);
  CHECK(rs.diagnostic.empty());
  REQUIRE(rs.roots.size() == 2);
  CHECK(rs.roots[0] > 0.2);
  CHECK(rs.roots[0] < 0.3);
  CHECK(rs.roots[1] > 0.65);
  CHECK(rs.roots[1] < 0.75);
  CHECK(rs.roots[0] == doctest::Approx(kRoot1).epsilon(1e-12));
  CHECK(rs.roots[1] == doctest::Approx(kRoot2).epsilon(1e-12));
}

TEST_CASE("response coefficients at and between the roots") {
  const auto beta_at = [&](double k) {
    return betas_model(phase_invariants(PhaseParams{k, 0.3, 1.0}), kMat);
  };
  CHECK(beta_at(kRoot1).beta0 == doctest::Approx(kBeta0AtRoot1).epsilon(1e-13));
  CHECK(beta_at(kRoot2).beta0 == doctest::Approx(kBeta0AtRoot2).epsilon(1e-13));
  CHECK(beta_at(kRoot1).beta0 < 0.0);
  CHECK(beta_at(kRoot2).beta0 < 0.0);
  CHECK(beta_at(0.7).beta1 == doctest::Approx(kBeta1At07).epsilon(1e-12));
  CHECK(beta_at(0.5).beta1 == doctest::Approx(kBeta1At05).epsilon(1e-13));
  CHECK(std::fabs(beta_at(kRoot1).beta1) < 1e-12);
  CHECK(std::fabs(beta_at(kRoot2).beta1) < 1e-12);
}

TEST_CASE("root search rejects parameters outside the admissible region") {
  CHECK_THROWS_AS((void)find_k_roots(0.5, 1.0, kMat), InadmissibleError);   // s > s_max
  CHECK_THROWS_AS((void)find_k_roots(0.0, 1.0, kMat), InadmissibleError);   // s = 0
  CHECK_THROWS_AS((void)find_k_roots(0.3, 2.0, kMat), InadmissibleError);   // bad a
  CHECK_THROWS_AS((void)find_k_roots(0.3, 1.0, MaterialParams{1, 1, 1}), InadmissibleError);
}

TEST_CASE("stress equality residuals vanish at the roots") {
  for (const double k : {kRoot1, kRoot2}) {
    const auto [f, f_hat] = phase_gradients(PhaseParams{k, 0.3, 1.0});
    const SymMat3 b = left_cauchy_green(f);
    const SymMat3 b_hat = left_cauchy_green(f_hat);
    const auto res = stress_equality_residuals(b, b_hat, kMat);
    const double beta0 = betas_model(invariants(b), kMat).beta0;
    const double tol = 1e-10 * std::max(1.0, std::fabs(beta0));
    for (const double r : res) CHECK(r <= tol);
  }
}

TEST_CASE("stress equality fails off the roots by the predicted amount") {
  const double k = 0.5, s = 0.3, a = 1.0;
  const auto [f, f_hat] = phase_gradients(PhaseParams{k, s, a});
  const SymMat3 b = left_cauchy_green(f);
  const SymMat3 b_hat = left_cauchy_green(f_hat);
  const auto res = stress_equality_residuals(b, b_hat, kMat);
  // Only the xy component differs, by exactly 2 |beta1| s a^2.
  const double beta1 = betas_model(invariants(b), kMat).beta1;
  const double expected = 2.0 * std::fabs(beta1) * s * a * a;
  CHECK(res[3] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(res[3] == doctest::Approx(0.4711187376381606303).epsilon(1e-12));
  CHECK(res[0] == 0.0);
  CHECK(res[1] == 0.0);
  CHECK(res[2] == 0.0);
  CHECK(res[4] == 0.0);
  CHECK(res[5] == 0.0);
}

TEST_CASE("assembled two-phase states carry a common stress") {
  for (int index : {0, 1}) {
    const TwoPhaseState state = build_two_phase_state(0.3, 1.0, index, kMat);
    CHECK(state.k == doctest::Approx(index == 0 ? kRoot1 : kRoot2).epsilon(1e-12));
    CHECK(std::fabs(state.beta1) <= 1e-12);
    CHECK(state.beta0 < 0.0);
    // sigma = beta0 I at a root, to the root residual.
    const double tol = 1e-10 * std::max(1.0, std::fabs(state.beta0));
    CHECK(std::fabs(state.sigma.xx - state.beta0) <= tol);
    CHECK(std::fabs(state.sigma.yy - state.beta0) <= tol);
    CHECK(std::fabs(state.sigma.zz - state.beta0) <= tol);
    CHECK(std::fabs(state.sigma.xy) <= tol);
    // The deformation pair is rank-one connected.
    const RankOneCondition cond = rank_one_condition(state.f, state.f_hat);
    CHECK(cond.holds);
    // Model energy at the first root, cross-checked independently.
    if (index == 0)
      CHECK(energy(state.f, kMat) == doctest::Approx(kEnergyAtRoot1).epsilon(1e-13));
  }
  CHECK_THROWS_AS((void)build_two_phase_state(0.3, 1.0, 2, kMat), std::invalid_argument);
  CHECK_THROWS_AS((void)build_two_phase_state(0.3, 1.0, -1, kMat), std::invalid_argument);
}

TEST_CASE("roots depend on (s, a) only through the combined invariant") {
  // (s2, a2) is chosen so s^2 a^2 + a^2 + 1/a^2 matches the (0.3, 1) case;
  // the beta1 functions then coincide and so do their roots.
  const auto r1 = find_k_roots(0.3, 1.0, kMat);
  const auto region = admissible_smax(1.1, kMat);
  REQUIRE(region.has_value());
  CHECK(region->s_max == doctest::Approx(kSmaxAt11).epsilon(1e-14));
  CHECK(kScaledS < region->s_max);
  const auto r2 = find_k_roots(kScaledS, 1.1, kMat);
  REQUIRE(r1.roots.size() == 2);
  REQUIRE(r2.roots.size() == 2);
  CHECK(r1.roots[0] == doctest::Approx(r2.roots[0]).epsilon(1e-12));
  CHECK(r1.roots[1] == doctest::Approx(r2.roots[1]).epsilon(1e-12));
}

TEST_CASE("roots approach each other near the admissibility boundary") {
  const double s_near = 0.999 * kSmaxAt1;
  const RootSearch rs = find_k_roots(s_near, 1.0, kMat);
  REQUIRE(rs.roots.size() == 2);
  CHECK(rs.roots[0] == doctest::Approx(kNearRootLo).epsilon(1e-8));
  CHECK(rs.roots[1] == doctest::Approx(kNearRootHi).epsilon(1e-8));
  CHECK(rs.roots[1] - rs.roots[0] > 0.02);
  CHECK(rs.roots[1] - rs.roots[0] < 0.03);
}

TEST_CASE("root separation persists across the admissible range") {
  for (const double frac : {0.25, 0.5, 0.75, 0.9, 0.99}) {
    const RootSearch rs = find_k_roots(frac * kSmaxAt1, 1.0, kMat);
    REQUIRE(rs.roots.size() == 2);
    CHECK(rs.roots[1] - rs.roots[0] > 1e-3);
  }
}

TEST_CASE("shear response approaches the shear modulus in the linear limit") {
  std::vector<PhaseParams> path;
  for (int n = 2; n <= 1000; ++n)
    path.emplace_back(1.0 - 1.0 / n, 1.0 / n, 1.0);
  const std::vector<double> values = linear_limit_scan(path, kMat);
  REQUIRE(values.size() == path.size());
  CHECK(values.back() == doctest::Approx(kBeta1Limit1000).epsilon(1e-13));
  CHECK(std::fabs(values.back() - kMat.mu) <= 1e-2);
  // The deviation shrinks monotonically along the tail of the path.
  for (size_t i = values.size() - 100; i + 1 < values.size(); ++i)
    CHECK(std::fabs(values[i + 1] - kMat.mu) < std::fabs(values[i] - kMat.mu));
}

TEST_CASE("constant path at the reference state gives exactly mu") {
  const std::vector<PhaseParams> path(3, PhaseParams{1.0, 0.0, 1.0});
  for (const double v : linear_limit_scan(path, kMat)) CHECK(v == kMat.mu);
}

TEST_CASE("convexity probe finds the predicted witness at each root") {
  for (const double k : {kRoot1, kRoot2}) {
    const auto [f, f_hat] = phase_gradients(PhaseParams{k, 0.3, 1.0});
    const auto cond = rank_one_condition(f, f_hat);
    REQUIRE(cond.decomposition.has_value());
    const auto witness = rank_one_convexity_probe(kMat, f, cond.decomposition->a,
                                                  cond.decomposition->n, TGrid{});
    REQUIRE(witness.has_value());
    // First interior grid point where the second difference turns negative.
    // Both the location and the value have exact decimal forms because the
    // restricted energy is a quartic polynomial in t.
    CHECK(witness->t == doctest::Approx(kProbeT).epsilon(1e-12));
    // Tolerance sized to the cancellation noise of a second difference:
    // ~4 eps |g| / h^2 with g ~ 2 and h = 5e-4 gives ~7e-9.
    CHECK(std::fabs(witness->second_difference - kProbeD2) <= 1e-7);
  }
}

TEST_CASE("second difference at the segment midpoint matches the closed form") {
  const auto [f, f_hat] = phase_gradients(PhaseParams{kRoot1, 0.3, 1.0});
  const Mat3 d = f_hat - f;
  const double h = 1.0 / 2000.0;
  const auto g = [&](double t) { return energy(f + t * d, kMat); };
  const double d2 = (g(0.5 + h) - 2.0 * g(0.5) + g(0.5 - h)) / (h * h);
  CHECK(std::fabs(d2 - kProbeD2Mid) <= 1e-7);
  // The grid value agrees with g''(1/2) = -4 mu_tilde s^4 a^4 up to the
  // quartic finite-difference correction 8 h^2 mu_tilde s^4 a^4.
  const double s4a4 = 0.3 * 0.3 * 0.3 * 0.3;
  CHECK(d2 == doctest::Approx(-4.0 * kMat.mu_tilde * s4a4).epsilon(1e-5));
}

TEST_CASE("convexity probe declines a convex surrogate energy") {
  // Replacing the energy by a convex quadratic in F removes every witness.
  const auto [f, f_hat] = phase_gradients(PhaseParams{kRoot1, 0.3, 1.0});
  const auto cond = rank_one_condition(f, f_hat);
  REQUIRE(cond.decomposition.has_value());
  const auto quadratic = [](const Mat3& g, double) {
    const Mat3 e = g - Mat3::identity();
    return e.frobenius_norm() * e.frobenius_norm();
  };
  const auto witness = second_difference_scan(quadratic, f, cond.decomposition->a,
                                              cond.decomposition->n, TGrid{});
  CHECK(!witness.has_value());
}

TEST_CASE("convexity probe reports nothing along a zero direction") {
  const auto [f, f_hat] = phase_gradients(PhaseParams{kRoot1, 0.3, 1.0});
  (void)f_hat;
  const auto witness = rank_one_convexity_probe(kMat, f, Vec3{0, 0, 0}, Vec3{0, 1, 0}, TGrid{});
  CHECK(!witness.has_value());
}

TEST_CASE("convexity probe validates its grid") {
  const Mat3 f = Mat3::identity();
  TGrid bad;
  bad.points = 2;
  CHECK_THROWS_AS((void)rank_one_convexity_probe(kMat, f, Vec3{1, 0, 0}, Vec3{0, 1, 0}, bad),
                  std::invalid_argument);
  TGrid flipped;
  flipped.t_min = 1.0;
  flipped.t_max = 0.0;
  CHECK_THROWS_AS(
      (void)rank_one_convexity_probe(kMat, f, Vec3{1, 0, 0}, Vec3{0, 1, 0}, flipped),
      std::invalid_argument);
}

TEST_CASE("convexity probe rejects segments that cross zero volume") {
  // A direction chosen to crush the determinant mid-segment must be refused
  // with a message naming the first bad grid point.
  const Mat3 f = Mat3::identity();
  CHECK_THROWS_AS(
      (void)rank_one_convexity_probe(kMat, f, Vec3{-2, 0, 0}, Vec3{1, 0, 0}, TGrid{}),
      std::domain_error);
}
