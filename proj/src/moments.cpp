#include "esbgk/moments.hpp"

#include <cmath>

#include "esbgk/errors.hpp"

namespace esbgk {

MacroState extract_moments(const DistributionFunction& f) {
    const VelocityGrid& g = *f.grid;
    const Eigen::ArrayXd& fv = f.values;

    MacroState st;
    st.rho = g.w * fv.sum();
    if (!std::isfinite(st.rho))
        throw NumericalFailure("moments: non-finite mass");
    if (!(st.rho > 0.0))
        throw NonRealizable("moments: discrete mass is not positive");

    st.U.x() = g.w * (fv * g.vx).sum() / st.rho;
    st.U.y() = g.w * (fv * g.vy).sum() / st.rho;
    st.U.z() = g.w * (fv * g.vz).sum() / st.rho;

    const Eigen::ArrayXd cx = g.vx - st.U.x();
    const Eigen::ArrayXd cy = g.vy - st.U.y();
    const Eigen::ArrayXd cz = g.vz - st.U.z();

    Eigen::Matrix3d th;
    th(0, 0) = g.w * (fv * cx * cx).sum();
    th(1, 1) = g.w * (fv * cy * cy).sum();
    th(2, 2) = g.w * (fv * cz * cz).sum();
    th(0, 1) = th(1, 0) = g.w * (fv * cx * cy).sum();
    th(0, 2) = th(2, 0) = g.w * (fv * cx * cz).sum();
    th(1, 2) = th(2, 1) = g.w * (fv * cy * cz).sum();
    st.Theta = th / st.rho;

    st.T = st.Theta.trace() / 3.0;
    if (!std::isfinite(st.T))
        throw NumericalFailure("moments: non-finite temperature");
    if (!(st.T > 0.0))
        throw NonRealizable("moments: temperature is not positive (degenerate concentration)");

    // Theta is a Gram-type average of outer products, so it can only lose
    // semidefiniteness to roundoff
    const SymEig3 eig = eigendecompose_sym3(st.Theta);
    if (eig.values.minCoeff() < -1e-12 * st.T)
        throw NonRealizable("moments: stress tensor indefinite beyond roundoff");
    return st;
}

} // namespace esbgk
