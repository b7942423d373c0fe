#pragma once

#include "homstress/affine.hpp"
#include "homstress/tensor.hpp"

namespace homstress {

/// Parameters of the isotropic strain energy
///   W = mu/2 (I3^{-1/3} I1 - 3) + mu_tilde/4 (I1 - 3)^2 + kappa/2 (I3^{1/2} - 1)^2
/// in the principal invariants of the left Cauchy-Green tensor B = F F^T.
/// In the linear limit, mu is the shear modulus and kappa the bulk modulus;
/// mu_tilde controls the quartic stiffening that makes two-phase states
/// possible. All three must be strictly positive.
struct MaterialParams {
  double mu;
  double mu_tilde;
  double kappa;

  MaterialParams(double mu_, double mu_tilde_, double kappa_);
};

/// Partial derivatives of W with respect to the invariants (I1, I2, I3).
struct EnergyDerivs {
  double di1 = 0, di2 = 0, di3 = 0;
};

/// Response coefficients of the Cauchy stress representation
///   sigma = beta0 I + beta1 B + beta_m1 B^{-1}
/// valid for any isotropic hyperelastic material.
struct BetaCoeffs {
  double beta0 = 0, beta1 = 0, beta_m1 = 0;
};

/// Strain energy at deformation gradient F, invariant form.
/// Throws std::domain_error unless det F > 0.
double energy(const Mat3& f, const MaterialParams& p);

/// Strain energy from precomputed invariants of B.
double energy(const Invariants& inv, const MaterialParams& p);

/// Same energy written in ||F|| and J = det F directly:
///   W = mu/2 (J^{-2/3} ||F||^2 - 3) + mu_tilde/4 (||F||^2 - 3)^2 + kappa/2 (J - 1)^2.
/// Agrees with energy() to roundoff; kept as an independent cross-check.
double energy_frobenius(const Mat3& f, const MaterialParams& p);

/// dW/dI1, dW/dI2, dW/dI3 for the model energy. dW/dI2 is identically zero.
EnergyDerivs energy_derivs(const Invariants& inv, const MaterialParams& p);

/// Response coefficients from generic energy derivatives:
///   beta0 = 2/sqrt(I3) (I2 dW/dI2 + I3 dW/dI3),
///   beta1 = 2/sqrt(I3) dW/dI1,
///   beta_m1 = -2 sqrt(I3) dW/dI2.
BetaCoeffs betas_general(const Invariants& inv, const EnergyDerivs& d);

/// Closed-form response coefficients of the model energy:
///   beta0 = -mu/3 I1 I3^{-5/6} + kappa (I3^{1/2} - 1),
///   beta1 = mu I3^{-5/6} + mu_tilde I3^{-1/2} (I1 - 3),
///   beta_m1 = 0.
/// The evaluation order keeps sigma(I) exactly zero at the identity.
BetaCoeffs betas_model(const Invariants& inv, const MaterialParams& p);

/// sigma = beta0 I + beta1 B + beta_m1 B^{-1}. B must be invertible when
/// beta_m1 is nonzero.
SymMat3 stress_representation(const SymMat3& b, const BetaCoeffs& c);

/// Cauchy stress of the model at left Cauchy-Green tensor B.
/// Throws std::domain_error unless B is SPD.
SymMat3 cauchy_stress(const SymMat3& b, const MaterialParams& p);

/// Cauchy stress of an incompressible material with constraint pressure q:
///   sigma = -q I + beta1 B + beta_m1 B^{-1}.
/// Requires |det B - 1| <= 1e-8; throws std::domain_error otherwise.
SymMat3 cauchy_stress_incompressible(const SymMat3& b, double pressure, double beta1,
                                     double beta_m1);

/// First Piola-Kirchhoff stress S1 = J sigma F^{-T} of the model:
///   S1 = mu J^{-2/3} (F - I1/3 F^{-T}) + mu_tilde (I1 - 3) F + kappa (J - 1) J F^{-T}.
/// Throws std::domain_error unless det F > 0.
Mat3 piola_kirchhoff(const Mat3& f, const MaterialParams& p);

/// Linear elastic stress 2 mu dev(eps) + kappa tr(eps) I.
SymMat3 linear_stress(const SymMat3& eps, double mu, double kappa);

/// Strain solving linear_stress(eps) = sigma:
///   eps = dev(sigma)/(2 mu) + tr(sigma)/(9 kappa) I.
/// Throws std::invalid_argument unless mu > 0 and kappa > 0.
SymMat3 linear_inverse(const SymMat3& sigma, double mu, double kappa);

/// The linear-elastic displacement family with uniform stress sigma:
///   u(X) = (eps + A) X + b, eps = linear_inverse(sigma), A an arbitrary
/// infinitesimal rotation. Requires ||A + A^T|| <= 1e-12 (Frobenius);
/// throws std::invalid_argument otherwise.
AffineMap linear_displacement(const SymMat3& sigma, const Mat3& a_skew, const Vec3& b,
                              double mu, double kappa);

/// The finite-deformation family sharing the left Cauchy-Green tensor b_bar:
///   phi(X) = V R X + b with V = spd_sqrt(b_bar) and R an arbitrary rotation.
/// All members produce the same Cauchy stress. Requires ||R^T R - I|| <= 1e-10
/// and |det R - 1| <= 1e-10; throws std::invalid_argument otherwise.
AffineMap homogeneous_deformation_from_stress(const SymMat3& b_bar, const Mat3& r,
                                              const Vec3& b);

}  // namespace homstress
