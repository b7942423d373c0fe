#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homstress/constitutive.hpp"
#include "homstress/tensor.hpp"

namespace homstress {

/// Raised when (s, a) lies outside the parameter region that admits a
/// two-phase construction for the given material.
struct InadmissibleError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Parameters of the two-phase deformation gradients
///   F    = [[k, s a, 0], [0, a, 0], [0, 0, 1/a]],
///   Fhat = [[k, -s a, 0], [0, a, 0], [0, 0, 1/a]].
/// Requires k > 0, a > 0, s >= 0 (s = 0 collapses both phases to one).
struct PhaseParams {
  double k;
  double s;
  double a;

  PhaseParams(double k_, double s_, double a_);
};

/// The pair (F, Fhat). The phases differ only in the shear sign, so
/// Fhat - F = -2 s a e1 (x) e2 is exactly rank one and both share the same
/// principal invariants.
std::pair<Mat3, Mat3> phase_gradients(const PhaseParams& pp);

/// Principal invariants of B = F F^T for the phase gradients, in closed form:
///   I1 = k^2 + s^2 a^2 + a^2 + 1/a^2,  I2 = 1 + k^2/a^2 + s^2 + k^2 a^2,
///   I3 = k^2.
Invariants phase_invariants(const PhaseParams& pp);

/// Hadamard compatibility check for a pair of gradients. `residual` is the
/// 2x2 minor (F11-G11)(F22-G22) - (F12-G12)(F21-G21) of the in-plane block
/// of F - G, which vanishes whenever the difference has rank <= 1. `holds`
/// is true when the difference is exactly rank one (not zero, not higher).
struct RankOneCondition {
  bool holds = false;
  double residual = 0;
  std::optional<RankOneDecomposition> decomposition;
};
RankOneCondition rank_one_condition(const Mat3& f, const Mat3& g);

/// The admissible (s, a) region for the material: a must satisfy
///   mu / (3 mu_tilde) < ((3 - a^2 - 1/a^2) / 4)^{4/3}
/// and then any 0 < s < s_max works, with
///   s_max = (1/a) sqrt(3 - 4 (mu/(3 mu_tilde))^{3/4} - a^2 - 1/a^2).
/// Returns nullopt when the bound fails (no s admits two phases at this a).
struct AdmissibleRegion {
  double mu_ratio = 0;        // mu / (3 mu_tilde)
  double mu_ratio_bound = 0;  // ((3 - a^2 - 1/a^2)/4)^{4/3}
  double s_max = 0;
};
std::optional<AdmissibleRegion> admissible_smax(double a, const MaterialParams& p);

struct RootOptions {
  int grid_points = 10000;
  double k_min = 1e-4;
  double k_max = 1.0 - 1e-4;
  double beta1_tol = 1e-12;
};

/// Roots of k |-> beta1(k; s, a) in (k_min, k_max), found by a uniform sign
/// scan followed by bisection to |beta1| <= beta1_tol. For admissible (s, a)
/// there are exactly two simple roots; beta1 > 0 at both interval ends and
/// beta0 < 0 at every root. Violations of those expectations are recorded in
/// `diagnostic` instead of being silently dropped.
/// Throws InadmissibleError unless 0 < s < s_max at this a.
struct RootSearch {
  std::vector<double> roots;
  std::string diagnostic;
};
RootSearch find_k_roots(double s, double a, const MaterialParams& p,
                        const RootOptions& opts = {});

/// Componentwise |sigma(B) - sigma(Bhat)| in the order xx, yy, zz, xy, yz, xz.
/// Both phases of an admissible pair carry the same Cauchy stress, so all six
/// residuals vanish to roundoff at a beta1-root.
std::array<double, 6> stress_equality_residuals(const SymMat3& b, const SymMat3& b_hat,
                                                const MaterialParams& p);

/// A fully assembled two-phase state at the root_index-th beta1-root.
struct TwoPhaseState {
  double k = 0;
  Mat3 f, f_hat;
  SymMat3 b, b_hat;
  SymMat3 sigma;   // common Cauchy stress, sigma = beta0 I up to the root residual
  double beta0 = 0;
  double beta1 = 0;  // residual of the root solve
};

/// Builds the state at the chosen root. Throws InadmissibleError for (s, a)
/// outside the admissible region and std::invalid_argument when root_index
/// does not address a found root.
TwoPhaseState build_two_phase_state(double s, double a, int root_index,
                                    const MaterialParams& p, const RootOptions& opts = {});

/// beta1 along a parameter path, one value per entry. A path approaching
/// (k, s, a) -> (1, 0, 1) recovers the linear limit beta1 -> mu.
std::vector<double> linear_limit_scan(const std::vector<PhaseParams>& path,
                                      const MaterialParams& p);

/// Uniform t-grid for the line-restricted energy g(t) = W(F0 + t a (x) n).
struct TGrid {
  double t_min = 0.0;
  double t_max = 1.0;
  int points = 2001;
};

/// A grid point where the centered second difference of g is negative,
/// certifying failure of rank-one convexity along the segment.
struct ConvexityWitness {
  double t = 0;
  double second_difference = 0;
};

/// Scans the centered second differences of t |-> energy_fn(F0 + t a (x) n, t)
/// on the grid and returns the first interior point with a negative value,
/// or nullopt when all are nonnegative. Requires points >= 3 and
/// t_max > t_min (std::invalid_argument otherwise).
std::optional<ConvexityWitness> second_difference_scan(
    const std::function<double(const Mat3&, double)>& energy_fn, const Mat3& f0,
    const Vec3& dir_a, const Vec3& dir_n, const TGrid& grid);

/// second_difference_scan specialized to the model energy. Throws
/// std::domain_error naming the offending t if det(F0 + t a (x) n) <= 0
/// anywhere on the grid. Along the segment joining an admissible phase pair
/// this always finds a witness: there g''(t) = 4 mu_tilde s^4 a^4 (3 (1-2t)^2 - 1),
/// which is negative on an open middle interval.
std::optional<ConvexityWitness> rank_one_convexity_probe(const MaterialParams& p,
                                                         const Mat3& f0, const Vec3& dir_a,
                                                         const Vec3& dir_n, const TGrid& grid);

}  // namespace homstress
