#include "esbgk/velocity_grid.hpp"

#include <cmath>

namespace esbgk {

GridPtr make_velocity_grid(int n, double v_max, const Eigen::Vector3d& offset) {
    if (n < 2)
        throw InvalidConfig("velocity grid: n must be at least 2");
    if (!(v_max > 0.0) || !std::isfinite(v_max))
        throw InvalidConfig("velocity grid: v_max must be positive and finite");

    auto g = std::make_shared<VelocityGrid>();
    g->n = n;
    g->v_max = v_max;
    g->offset = offset;
    g->h = 2.0 * v_max / n;
    g->w = g->h * g->h * g->h;

    // per-axis midpoints
    Eigen::ArrayXd ax(n);
    for (int k = 0; k < n; ++k)
        ax[k] = -v_max + (k + 0.5) * g->h;

    const Eigen::Index m = g->size();
    g->vx.resize(m);
    g->vy.resize(m);
    g->vz.resize(m);
    Eigen::Index idx = 0;
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = 0; k2 < n; ++k2)
            for (int k3 = 0; k3 < n; ++k3, ++idx) {
                g->vx[idx] = offset.x() + ax[k1];
                g->vy[idx] = offset.y() + ax[k2];
                g->vz[idx] = offset.z() + ax[k3];
            }
    return g;
}

DistributionFunction make_distribution(GridPtr grid, Eigen::ArrayXd values) {
    if (!grid)
        throw InvalidConfig("distribution: null grid");
    if (values.size() != grid->size())
        throw InvalidConfig("distribution: value array does not match the grid");
    return DistributionFunction{std::move(grid), std::move(values)};
}

bool same_grid(const VelocityGrid& a, const VelocityGrid& b) {
    return a.n == b.n && a.v_max == b.v_max && a.offset == b.offset;
}

void require_same_grid(const DistributionFunction& f, const DistributionFunction& g) {
    if (f.grid.get() == g.grid.get())
        return;
    if (!f.grid || !g.grid || !same_grid(*f.grid, *g.grid))
        throw InvalidConfig("distributions live on different velocity grids");
}

double quadrature(const DistributionFunction& f) {
    return f.grid->w * f.values.sum();
}

double l1_distance(const DistributionFunction& f, const DistributionFunction& g) {
    require_same_grid(f, g);
    return f.grid->w * (f.values - g.values).abs().sum();
}

} // namespace esbgk
