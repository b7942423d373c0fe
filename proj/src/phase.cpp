#include "homstress/phase.hpp"

#include <cmath>
#include <sstream>

namespace homstress {

PhaseParams::PhaseParams(double k_, double s_, double a_) : k(k_), s(s_), a(a_) {
  if (!(k > 0.0) || !(a > 0.0) || !(s >= 0.0))
    throw std::invalid_argument("PhaseParams: require k > 0, a > 0, s >= 0");
}

std::pair<Mat3, Mat3> phase_gradients(const PhaseParams& pp) {
  const double sa = pp.s * pp.a;
  const Mat3 f{pp.k, sa, 0.0,
               0.0, pp.a, 0.0,
               0.0, 0.0, 1.0 / pp.a};
  const Mat3 f_hat{pp.k, -sa, 0.0,
                   0.0, pp.a, 0.0,
                   0.0, 0.0, 1.0 / pp.a};
  return {f, f_hat};
}

Invariants phase_invariants(const PhaseParams& pp) {
  const double k2 = pp.k * pp.k;
  const double a2 = pp.a * pp.a;
  const double s2a2 = pp.s * pp.s * a2;
  Invariants inv;
  inv.i1 = k2 + s2a2 + a2 + 1.0 / a2;
  inv.i2 = 1.0 + k2 / a2 + pp.s * pp.s + k2 * a2;
  inv.i3 = k2;
  return inv;
}

RankOneCondition rank_one_condition(const Mat3& f, const Mat3& g) {
  RankOneCondition out;
  out.residual = (f(0, 0) - g(0, 0)) * (f(1, 1) - g(1, 1)) -
                 (f(0, 1) - g(0, 1)) * (f(1, 0) - g(1, 0));
  out.decomposition = rank_one_decompose(g - f);
  out.holds = out.decomposition.has_value() && !out.decomposition->degenerate;
  return out;
}

std::optional<AdmissibleRegion> admissible_smax(double a, const MaterialParams& p) {
  if (!(a > 0.0)) throw std::invalid_argument("admissible_smax: a must be positive");
  const double q = 3.0 - a * a - 1.0 / (a * a);
  if (!(q > 0.0)) return std::nullopt;
  AdmissibleRegion region;
  region.mu_ratio = p.mu / (3.0 * p.mu_tilde);
  region.mu_ratio_bound = std::pow(0.25 * q, 4.0 / 3.0);
  if (!(region.mu_ratio < region.mu_ratio_bound)) return std::nullopt;
  const double inner = q - 4.0 * std::pow(region.mu_ratio, 0.75);
  region.s_max = std::sqrt(std::max(inner, 0.0)) / a;
  return region;
}

namespace {

double beta1_at(double k, double s, double a, const MaterialParams& p) {
  return betas_model(phase_invariants(PhaseParams{k, s, a}), p).beta1;
}

void require_admissible(double s, double a, const MaterialParams& p) {
  const auto region = admissible_smax(a, p);
  std::ostringstream msg;
  if (!region) {
    msg << "inadmissible: a = " << a << " violates mu/(3 mu_tilde) < ((3 - a^2 - 1/a^2)/4)^(4/3)";
    throw InadmissibleError(msg.str());
  }
  if (!(s > 0.0) || !(s < region->s_max)) {
    msg << "inadmissible: s = " << s << " outside (0, " << region->s_max << ") at a = " << a;
    throw InadmissibleError(msg.str());
  }
}

}  // namespace

RootSearch find_k_roots(double s, double a, const MaterialParams& p, const RootOptions& opts) {
  require_admissible(s, a, p);
  if (opts.grid_points < 2 || !(opts.k_min > 0.0) || !(opts.k_max > opts.k_min))
    throw std::invalid_argument("find_k_roots: malformed scan grid");

  RootSearch out;
  std::ostringstream diag;
  auto f = [&](double k) { return beta1_at(k, s, a, p); };

  const int n = opts.grid_points;
  const double h = (opts.k_max - opts.k_min) / (n - 1);
  if (!(f(opts.k_min) > 0.0)) diag << "beta1(k_min) <= 0; ";
  if (!(f(opts.k_max) > 0.0)) diag << "beta1(k_max) <= 0; ";

  double k_prev = opts.k_min;
  double f_prev = f(k_prev);
  for (int i = 1; i < n; ++i) {
    const double k_i = opts.k_min + i * h;
    const double f_i = f(k_i);
    if (f_prev == 0.0) {
      if (out.roots.empty() || std::fabs(out.roots.back() - k_prev) > 1e-12)
        out.roots.push_back(k_prev);
    } else if (f_prev * f_i < 0.0) {
      double lo = k_prev, hi = k_i, flo = f_prev;
      double mid = 0.5 * (lo + hi), fmid = f(mid);
      for (int it = 0; it < 300 && std::fabs(fmid) > opts.beta1_tol; ++it) {
        if (flo * fmid < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fmid;
        }
        const double next = 0.5 * (lo + hi);
        if (next == mid) break;
        mid = next;
        fmid = f(mid);
      }
      if (std::fabs(fmid) > opts.beta1_tol)
        diag << "bisection stalled with |beta1| = " << std::fabs(fmid) << " at k = " << mid << "; ";
      out.roots.push_back(mid);
    }
    k_prev = k_i;
    f_prev = f_i;
  }
  if (f_prev == 0.0) out.roots.push_back(k_prev);

  for (const double k : out.roots) {
    const double b0 = betas_model(phase_invariants(PhaseParams{k, s, a}), p).beta0;
    if (!(b0 < 0.0)) diag << "beta0 = " << b0 << " >= 0 at root k = " << k << "; ";
  }
  out.diagnostic = diag.str();
  return out;
}

std::array<double, 6> stress_equality_residuals(const SymMat3& b, const SymMat3& b_hat,
                                                const MaterialParams& p) {
  const SymMat3 s = cauchy_stress(b, p);
  const SymMat3 s_hat = cauchy_stress(b_hat, p);
  const SymMat3 d = s - s_hat;
  return {std::fabs(d.xx), std::fabs(d.yy), std::fabs(d.zz),
          std::fabs(d.xy), std::fabs(d.yz), std::fabs(d.xz)};
}

TwoPhaseState build_two_phase_state(double s, double a, int root_index,
                                    const MaterialParams& p, const RootOptions& opts) {
  const RootSearch rs = find_k_roots(s, a, p, opts);
  if (root_index < 0 || root_index >= static_cast<int>(rs.roots.size())) {
    std::ostringstream msg;
    msg << "build_two_phase_state: root_index " << root_index << " out of range, found "
        << rs.roots.size() << " roots";
    throw std::invalid_argument(msg.str());
  }
  TwoPhaseState st;
  st.k = rs.roots[static_cast<size_t>(root_index)];
  const PhaseParams pp{st.k, s, a};
  std::tie(st.f, st.f_hat) = phase_gradients(pp);
  st.b = left_cauchy_green(st.f);
  st.b_hat = left_cauchy_green(st.f_hat);
  st.sigma = cauchy_stress(st.b, p);
  const BetaCoeffs c = betas_model(invariants(st.b), p);
  st.beta0 = c.beta0;
  st.beta1 = c.beta1;
  return st;
}

std::vector<double> linear_limit_scan(const std::vector<PhaseParams>& path,
                                      const MaterialParams& p) {
  std::vector<double> out;
  out.reserve(path.size());
  for (const PhaseParams& pp : path) out.push_back(betas_model(phase_invariants(pp), p).beta1);
  return out;
}

std::optional<ConvexityWitness> second_difference_scan(
    const std::function<double(const Mat3&, double)>& energy_fn, const Mat3& f0,
    const Vec3& dir_a, const Vec3& dir_n, const TGrid& grid) {
  if (grid.points < 3 || !(grid.t_max > grid.t_min))
    throw std::invalid_argument("second_difference_scan: need points >= 3 and t_max > t_min");

  const Mat3 d = outer(dir_a, dir_n);
  const double h = (grid.t_max - grid.t_min) / (grid.points - 1);
  std::vector<double> g(static_cast<size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i) {
    const double t = grid.t_min + i * h;
    g[static_cast<size_t>(i)] = energy_fn(f0 + t * d, t);
  }
  for (int i = 1; i + 1 < grid.points; ++i) {
    const double d2 = (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (h * h);
    if (d2 < 0.0) return ConvexityWitness{grid.t_min + i * h, d2};
  }
  return std::nullopt;
}

std::optional<ConvexityWitness> rank_one_convexity_probe(const MaterialParams& p,
                                                         const Mat3& f0, const Vec3& dir_a,
                                                         const Vec3& dir_n, const TGrid& grid) {
  auto fn = [&p](const Mat3& f, double t) {
    if (!(f.det() > 0.0)) {
      std::ostringstream msg;
      msg << "rank_one_convexity_probe: det F <= 0 at t = " << t;
      throw std::domain_error(msg.str());
    }
    return energy(f, p);
  };
  return second_difference_scan(fn, f0, dir_a, dir_n, grid);
}

}  // namespace homstress
