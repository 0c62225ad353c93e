#include "esbgk/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "esbgk/errors.hpp"

namespace esbgk {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

double log_normalization(double rho, const Eigen::Vector3d& lambda) {
    return std::log(rho) -
           0.5 * (std::log(two_pi * lambda[0]) + std::log(two_pi * lambda[1]) +
                  std::log(two_pi * lambda[2]));
}
} // namespace

TemperatureTensor temperature_tensor(const MacroState& state, double nu, double eps_pd) {
    if (!nu_in_range(nu))
        throw InvalidConfig("temperature tensor: nu must lie in (-1/2, 1), got " +
                            std::to_string(nu));
    if (!(state.rho > 0.0) || !(state.T > 0.0))
        throw NonRealizable("temperature tensor: state needs positive mass and temperature");

    TemperatureTensor tt;
    tt.nu = nu;
    tt.T = state.T;
    const SymEig3 eig = eigendecompose_sym3(state.Theta);
    tt.theta = eig.values;
    tt.axes = eig.vectors;
    tt.lambda = ((1.0 - nu) * state.T) + (nu * tt.theta.array());
    tt.value = symmetrize((1.0 - nu) * state.T * Eigen::Matrix3d::Identity() +
                          nu * state.Theta);
    if (!(tt.lambda.minCoeff() > eps_pd * state.T))
        throw NonRealizable("temperature tensor: not positive definite, min eigenvalue " +
                            std::to_string(tt.lambda.minCoeff()));
    return tt;
}

EllipsoidalGaussian gaussian_from_cov(double rho, const Eigen::Vector3d& U,
                                      const Eigen::Matrix3d& cov) {
    if (!(rho > 0.0))
        throw NonRealizable("gaussian: mass must be positive");
    const SymEig3 eig = eigendecompose_sym3(cov);
    if (!(eig.values.minCoeff() > 0.0))
        throw NonRealizable("gaussian: covariance not positive definite");
    EllipsoidalGaussian g;
    g.rho = rho;
    g.U = U;
    g.lambda = eig.values;
    g.axes = eig.vectors;
    g.log_norm = log_normalization(rho, g.lambda);
    return g;
}

EllipsoidalGaussian es_gaussian(const MacroState& state, double nu) {
    const TemperatureTensor tt = temperature_tensor(state, nu);
    EllipsoidalGaussian g;
    g.rho = state.rho;
    g.U = state.U;
    g.lambda = tt.lambda;
    g.axes = tt.axes;
    g.log_norm = log_normalization(state.rho, g.lambda);
    return g;
}

EllipsoidalGaussian maxwellian(const MacroState& state) {
    if (!(state.rho > 0.0) || !(state.T > 0.0))
        throw NonRealizable("maxwellian: state needs positive mass and temperature");
    EllipsoidalGaussian g;
    g.rho = state.rho;
    g.U = state.U;
    g.lambda = Eigen::Vector3d::Constant(state.T);
    g.axes = Eigen::Matrix3d::Identity();
    g.log_norm = log_normalization(state.rho, g.lambda);
    return g;
}

EllipsoidalGaussian stress_gaussian(const MacroState& state, double eps_pd) {
    const SymEig3 eig = eigendecompose_sym3(state.Theta);
    if (!(eig.values.minCoeff() > eps_pd * state.T))
        throw NonRealizable("stress gaussian: Theta is degenerate");
    EllipsoidalGaussian g;
    g.rho = state.rho;
    g.U = state.U;
    g.lambda = eig.values;
    g.axes = eig.vectors;
    g.log_norm = log_normalization(state.rho, g.lambda);
    return g;
}

Eigen::ArrayXd quadratic_form(const EllipsoidalGaussian& g, const VelocityGrid& grid) {
    const Eigen::ArrayXd cx = grid.vx - g.U.x();
    const Eigen::ArrayXd cy = grid.vy - g.U.y();
    const Eigen::ArrayXd cz = grid.vz - g.U.z();
    Eigen::ArrayXd q = Eigen::ArrayXd::Zero(grid.size());
    for (int j = 0; j < 3; ++j) {
        // y_j = axes(:,j) . (v - U), the centered coordinate in the eigenbasis
        const Eigen::ArrayXd yj =
            g.axes(0, j) * cx + g.axes(1, j) * cy + g.axes(2, j) * cz;
        q += yj.square() / g.lambda[j];
    }
    return q;
}

Eigen::ArrayXd evaluate_log(const EllipsoidalGaussian& g, const VelocityGrid& grid) {
    return g.log_norm - 0.5 * quadratic_form(g, grid);
}

DistributionFunction sample(const EllipsoidalGaussian& g, GridPtr grid) {
    return make_distribution(grid, evaluate_log(g, *grid).exp());
}

double gaussian_entropy(const EllipsoidalGaussian& g) {
    return g.rho * g.log_norm - 1.5 * g.rho;
}

double maxwellian_entropy(double rho, double T) {
    return rho * (std::log(rho) - 1.5 * std::log(two_pi * T)) - 1.5 * rho;
}

double entropy_gap_from_maxwellian(double rho, double T, const Eigen::Vector3d& lambda) {
    return 0.5 * rho *
           (std::log(lambda[0] / T) + std::log(lambda[1] / T) + std::log(lambda[2] / T));
}

CorrectionResult conservation_correct(const EllipsoidalGaussian& g, GridPtr grid,
                                      const MacroState& target, double tol, int max_iter) {
    if (!(target.rho > 0.0) || !(target.T > 0.0))
        throw NonRealizable("conservation correction: bad target moments");

    // Trial family: mass m, mean mu, isotropic covariance scale s. This is
    // exactly the c f(a(v-b)) family with a = 1/sqrt(s), written in moment
    // coordinates where the Newton map nearly decouples.
    double m = g.rho;
    Eigen::Vector3d mu = g.U;
    double s = 1.0;

    const double u_scale = std::sqrt(target.T);
    CorrectionResult best;
    double best_err = std::numeric_limits<double>::infinity();

    for (int it = 0; it <= max_iter; ++it) {
        EllipsoidalGaussian trial = g;
        trial.rho = m;
        trial.U = mu;
        trial.lambda = s * g.lambda;
        trial.log_norm = log_normalization(m, trial.lambda);
        DistributionFunction fd = sample(trial, grid);
        const MacroState got = extract_moments(fd);

        const double err = std::max({std::abs(got.rho - target.rho) / target.rho,
                                     (got.U - target.U).norm() / u_scale,
                                     std::abs(got.T - target.T) / target.T});
        const bool improved = err < best_err;
        if (improved) {
            best_err = err;
            best.f = std::move(fd);
            best.a = 1.0 / std::sqrt(s);
            best.c = m / (g.rho * s * std::sqrt(s));
            best.b = mu - g.U * std::sqrt(s);
            best.iterations = it;
        }
        if (best_err <= tol)
            return best;
        // summation roundoff puts a floor under the measurable residual; once
        // progress stops near it, the best iterate is as exact as the grid
        // quadrature can certify
        if (!improved && best_err <= 10.0 * tol)
            return best;
        if (it == max_iter)
            break;
        m *= target.rho / got.rho;
        mu += target.U - got.U;
        s *= target.T / got.T;
        if (!(s > 0.0) || !(m > 0.0))
            throw NumericalFailure("conservation correction: iteration left the family");
    }
    if (best_err <= 10.0 * tol)
        return best;
    throw NumericalFailure("conservation correction: residual stalled at " +
                           std::to_string(best_err) + " (tol " + std::to_string(tol) + ")");
}

} // namespace esbgk
