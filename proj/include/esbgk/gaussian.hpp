#pragma once

#include <Eigen/Dense>

#include "esbgk/moments.hpp"
#include "esbgk/sym3.hpp"
#include "esbgk/velocity_grid.hpp"

namespace esbgk {

inline bool nu_in_range(double nu) { return nu > -0.5 && nu < 1.0; }

// T_nu = (1-nu) T Id + nu Theta. Shares eigenvectors with Theta, and the
// eigenvalues are lambda_i = (1-nu) T + nu theta_i (theta kept in descending
// order; for nu < 0 that list is ascending for T_nu, which nothing downstream
// cares about).
struct TemperatureTensor {
    double nu = 0.0;
    double T = 0.0;
    Eigen::Matrix3d value = Eigen::Matrix3d::Zero();
    Eigen::Vector3d theta = Eigen::Vector3d::Zero();   // eigenvalues of Theta
    Eigen::Vector3d lambda = Eigen::Vector3d::Zero();  // eigenvalues of T_nu
    Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();
};

TemperatureTensor temperature_tensor(const MacroState& state, double nu,
                                     double eps_pd = 1e-10);

// Anisotropic Gaussian rho / sqrt(det 2 pi Sigma) exp(-(v-U)' Sigma^-1 (v-U) / 2)
// held in the eigenbasis of its covariance.
struct EllipsoidalGaussian {
    double rho = 0.0;
    Eigen::Vector3d U = Eigen::Vector3d::Zero();
    Eigen::Vector3d lambda = Eigen::Vector3d::Zero();  // covariance eigenvalues
    Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();
    double log_norm = 0.0;  // ln rho - (1/2) sum ln(2 pi lambda_i)
};

EllipsoidalGaussian gaussian_from_cov(double rho, const Eigen::Vector3d& U,
                                      const Eigen::Matrix3d& cov);

// relaxation target M_nu built from the state's discrete moments
EllipsoidalGaussian es_gaussian(const MacroState& state, double nu);
// the two distinguished endpoints in substance: isotropic Maxwellian and the
// full stress Gaussian (covariance Theta; needs Theta positive definite)
EllipsoidalGaussian maxwellian(const MacroState& state);
EllipsoidalGaussian stress_gaussian(const MacroState& state, double eps_pd = 1e-10);

// q(v) = (v-U)' Sigma^-1 (v-U) at every node
Eigen::ArrayXd quadratic_form(const EllipsoidalGaussian& g, const VelocityGrid& grid);

Eigen::ArrayXd evaluate_log(const EllipsoidalGaussian& g, const VelocityGrid& grid);
DistributionFunction sample(const EllipsoidalGaussian& g, GridPtr grid);

// H(G) = rho ln(rho / sqrt(det 2 pi Sigma)) - (3/2) rho
double gaussian_entropy(const EllipsoidalGaussian& g);
double maxwellian_entropy(double rho, double T);

// H(M_0) - H(G_lambda) = (rho/2) sum ln(lambda_i / T), evaluated term by term
// so exact cancellations survive in floating point
double entropy_gap_from_maxwellian(double rho, double T, const Eigen::Vector3d& lambda);

struct CorrectionResult {
    DistributionFunction f;
    double c = 1.0;                            // mass factor
    Eigen::Vector3d b = Eigen::Vector3d::Zero();  // velocity shift
    double a = 1.0;                            // isotropic dilation
    int iterations = 0;
};

// Newton refit of (mass, shift, dilation) so the sampled Gaussian's discrete
// (rho, U, T) hit the target to `tol`; the corrected function is the exact
// sample of c g(a(v-b)).
CorrectionResult conservation_correct(const EllipsoidalGaussian& g, GridPtr grid,
                                      const MacroState& target, double tol = 1e-13,
                                      int max_iter = 50);

} // namespace esbgk
