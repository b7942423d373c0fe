#include "homstress/constitutive.hpp"

#include <cmath>
#include <stdexcept>

namespace homstress {

namespace {

/// Sum of squared entries without the sqrt/square round trip, so that
/// I1(identity) == 3 exactly and the undeformed energy is exactly zero.
double squared_frobenius(const Mat3& f) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += f.m[i][j] * f.m[i][j];
  return s;
}

}  // namespace

MaterialParams::MaterialParams(double mu_, double mu_tilde_, double kappa_)
    : mu(mu_), mu_tilde(mu_tilde_), kappa(kappa_) {
  if (!(mu > 0.0) || !(mu_tilde > 0.0) || !(kappa > 0.0))
    throw std::invalid_argument("MaterialParams: mu, mu_tilde and kappa must be strictly positive");
}

double energy(const Invariants& inv, const MaterialParams& p) {
  const double s = std::sqrt(inv.i3);
  return 0.5 * p.mu * (std::pow(inv.i3, -1.0 / 3.0) * inv.i1 - 3.0) +
         0.25 * p.mu_tilde * (inv.i1 - 3.0) * (inv.i1 - 3.0) +
         0.5 * p.kappa * (s - 1.0) * (s - 1.0);
}

double energy(const Mat3& f, const MaterialParams& p) {
  const double j = f.det();
  if (!(j > 0.0)) throw std::domain_error("energy: det F must be positive");
  Invariants inv;
  inv.i1 = squared_frobenius(f);
  inv.i3 = j * j;
  return energy(inv, p);
}

double energy_frobenius(const Mat3& f, const MaterialParams& p) {
  const double j = f.det();
  if (!(j > 0.0)) throw std::domain_error("energy_frobenius: det F must be positive");
  const double i1 = squared_frobenius(f);
  return 0.5 * p.mu * (std::pow(j, -2.0 / 3.0) * i1 - 3.0) +
         0.25 * p.mu_tilde * (i1 - 3.0) * (i1 - 3.0) +
         0.5 * p.kappa * (j - 1.0) * (j - 1.0);
}

EnergyDerivs energy_derivs(const Invariants& inv, const MaterialParams& p) {
  EnergyDerivs d;
  d.di1 = 0.5 * p.mu * std::pow(inv.i3, -1.0 / 3.0) + 0.5 * p.mu_tilde * (inv.i1 - 3.0);
  d.di2 = 0.0;
  d.di3 = -p.mu / 6.0 * inv.i1 * std::pow(inv.i3, -4.0 / 3.0) +
          0.5 * p.kappa * (1.0 - 1.0 / std::sqrt(inv.i3));
  return d;
}

BetaCoeffs betas_general(const Invariants& inv, const EnergyDerivs& d) {
  const double s = std::sqrt(inv.i3);
  BetaCoeffs c;
  c.beta0 = 2.0 / s * (inv.i2 * d.di2 + inv.i3 * d.di3);
  c.beta1 = 2.0 / s * d.di1;
  c.beta_m1 = -2.0 * s * d.di2;
  return c;
}

BetaCoeffs betas_model(const Invariants& inv, const MaterialParams& p) {
  const double t = std::pow(inv.i3, -5.0 / 6.0);
  BetaCoeffs c;
  // (i1 / 3) first: at the identity this is exactly 1, so beta0 = -mu exactly.
  c.beta0 = -p.mu * (inv.i1 / 3.0) * t + p.kappa * (std::sqrt(inv.i3) - 1.0);
  c.beta1 = p.mu * t + p.mu_tilde * (inv.i1 - 3.0) / std::sqrt(inv.i3);
  c.beta_m1 = 0.0;
  return c;
}

SymMat3 stress_representation(const SymMat3& b, const BetaCoeffs& c) {
  SymMat3 r = SymMat3::identity() * c.beta0 + b * c.beta1;
  if (c.beta_m1 != 0.0) r = r + b.inverse() * c.beta_m1;
  return r;
}

SymMat3 cauchy_stress(const SymMat3& b, const MaterialParams& p) {
  const Invariants inv = invariants(b);
  return stress_representation(b, betas_model(inv, p));
}

SymMat3 cauchy_stress_incompressible(const SymMat3& b, double pressure, double beta1,
                                     double beta_m1) {
  if (!is_spd(b))
    throw std::domain_error("cauchy_stress_incompressible: tensor is not SPD");
  if (std::fabs(b.det() - 1.0) > 1e-8)
    throw std::domain_error("cauchy_stress_incompressible: det B must equal 1 within 1e-8");
  SymMat3 r = SymMat3::identity() * (-pressure) + b * beta1;
  if (beta_m1 != 0.0) r = r + b.inverse() * beta_m1;
  return r;
}

Mat3 piola_kirchhoff(const Mat3& f, const MaterialParams& p) {
  const double j = f.det();
  if (!(j > 0.0)) throw std::domain_error("piola_kirchhoff: det F must be positive");
  const double i1 = squared_frobenius(f);
  const Mat3 fit = f.inverse().transpose();
  return p.mu * std::pow(j, -2.0 / 3.0) * (f - (i1 / 3.0) * fit) +
         p.mu_tilde * (i1 - 3.0) * f + p.kappa * (j - 1.0) * j * fit;
}

SymMat3 linear_stress(const SymMat3& eps, double mu, double kappa) {
  return eps.deviatoric() * (2.0 * mu) + SymMat3::identity() * (kappa * eps.trace());
}

SymMat3 linear_inverse(const SymMat3& sigma, double mu, double kappa) {
  if (!(mu > 0.0) || !(kappa > 0.0))
    throw std::invalid_argument("linear_inverse: mu and kappa must be strictly positive");
  return sigma.deviatoric() * (0.5 / mu) + SymMat3::identity() * (sigma.trace() / (9.0 * kappa));
}

AffineMap linear_displacement(const SymMat3& sigma, const Mat3& a_skew, const Vec3& b,
                              double mu, double kappa) {
  if ((a_skew + a_skew.transpose()).frobenius_norm() > 1e-12)
    throw std::invalid_argument("linear_displacement: A must be skew-symmetric");
  const SymMat3 eps = linear_inverse(sigma, mu, kappa);
  return {eps.full() + a_skew, b};
}

AffineMap homogeneous_deformation_from_stress(const SymMat3& b_bar, const Mat3& r,
                                              const Vec3& b) {
  if (!is_spd(b_bar))
    throw std::domain_error("homogeneous_deformation_from_stress: tensor is not SPD");
  const double ortho = (r.transpose() * r - Mat3::identity()).frobenius_norm();
  if (ortho > 1e-10 || std::fabs(r.det() - 1.0) > 1e-10)
    throw std::invalid_argument("homogeneous_deformation_from_stress: R is not a rotation");
  const Mat3 f = spd_sqrt(b_bar).full() * r;
  return {f - Mat3::identity(), b};
}

}  // namespace homstress
