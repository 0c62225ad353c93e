#include "esbgk/ensemble.hpp"

#include <cmath>
#include <numbers>

#include "esbgk/errors.hpp"

namespace esbgk {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double Rng::normal() {
    // Box-Muller, cosine branch only
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::Vector3d Rng::normal3() {
    return {normal(), normal(), normal()};
}

Eigen::Matrix3d random_rotation(Rng& rng) {
    Eigen::Vector4d q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    while (q.norm() < 1e-6)
        q = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    q.normalize();
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    Eigen::Matrix3d r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return r;
}

Mixture random_mixture(Rng& rng, const MixtureParams& params) {
    if (params.k_min < 1 || params.k_max < params.k_min)
        throw InvalidConfig("mixture: bad component count range");
    if (!(params.eig_lo > 0.0) || params.eig_hi < params.eig_lo)
        throw InvalidConfig("mixture: bad eigenvalue range");

    const int k = params.k_min +
                  static_cast<int>(rng.uniform() * (params.k_max - params.k_min + 1));

    // Dirichlet(1,...,1) via normalized exponentials
    Eigen::ArrayXd wts(k);
    for (int i = 0; i < k; ++i) {
        double u = rng.uniform();
        while (u <= 0.0)
            u = rng.uniform();
        wts[i] = -std::log(u);
    }
    wts /= wts.sum();

    Mixture mix;
    mix.reserve(k);
    for (int i = 0; i < k; ++i) {
        Eigen::Vector3d mean;
        for (int d = 0; d < 3; ++d)
            mean[d] = rng.uniform(-params.mean_half_width, params.mean_half_width);
        Eigen::Vector3d eigs;
        for (int d = 0; d < 3; ++d)
            eigs[d] = rng.uniform(params.eig_lo, params.eig_hi);
        const Eigen::Matrix3d rot = random_rotation(rng);
        const Eigen::Matrix3d cov = symmetrize(rot * eigs.asDiagonal() * rot.transpose());
        mix.push_back(gaussian_from_cov(wts[i], mean, cov));
    }
    return mix;
}

double suggested_vmax(const Mixture& mix) {
    double vmax = 0.0;
    for (const EllipsoidalGaussian& g : mix)
        vmax = std::max(vmax, g.U.norm() + 8.0 * std::sqrt(g.lambda.maxCoeff()));
    if (!(vmax > 0.0))
        throw InvalidConfig("suggested_vmax: empty mixture");
    return vmax;
}

DistributionFunction sample_mixture(const Mixture& mix, GridPtr grid) {
    if (mix.empty())
        throw InvalidConfig("sample_mixture: empty mixture");
    Eigen::ArrayXd values = Eigen::ArrayXd::Zero(grid->size());
    for (const EllipsoidalGaussian& g : mix)
        values += evaluate_log(g, *grid).exp();
    return make_distribution(std::move(grid), std::move(values));
}

} // namespace esbgk
