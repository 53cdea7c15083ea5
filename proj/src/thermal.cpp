#include "focksim/thermal.hpp"

#include <cmath>

#include "focksim/amplifier.hpp"
#include "focksim/states.hpp"

namespace focksim {

void ThermalParams::validate() const {
    if (nbar < 0.0) throw InvalidArgumentError("thermal: nbar must be >= 0");
}

double ThermalParams::theta() const {
    validate();
    return std::asinh(std::sqrt(nbar));
}

double ThermalParams::u() const {
    validate();
    return std::sqrt(nbar + 1.0);
}

double ThermalParams::v() const {
    validate();
    return std::sqrt(nbar);
}

std::pair<double, double> bogoliubov_coeffs(double nbar) {
    ThermalParams params{nbar};
    return {params.u(), params.v()};
}

DensityMatrix thermal_coherent_input(int dim, Complex alpha, double nbar) {
    return apply_dm(displacement(dim, alpha), thermal_state(dim, nbar));
}

DensityMatrix evolve_thermal(const DensityMatrix& rho_signal, double lambda, int idler_dim) {
    if (rho_signal.n_modes() != 1)
        throw ShapeError("evolve_thermal: expects a single-mode signal state");
    if (idler_dim < 2) throw InvalidArgumentError("evolve_thermal: idler_dim must be >= 2");
    const int ds = rho_signal.dims[0];
    Mat joint = Mat::Zero(ds * idler_dim, ds * idler_dim);
    // rho (x) |0><0|: idler index fastest
    for (int m = 0; m < ds; ++m)
        for (int n = 0; n < ds; ++n)
            joint(m * idler_dim, n * idler_dim) = rho_signal.elements(m, n);
    DensityMatrix rho({ds, idler_dim}, std::move(joint));
    return apply_dm(amplifier_unitary(ds, idler_dim, lambda), rho);
}

HeraldedMixed heralded_thermal_spacs(const DensityMatrix& rho_out) {
    if (rho_out.n_modes() != 2)
        throw ShapeError("heralded_thermal_spacs: expects a two-mode state");
    const int ds = rho_out.dims[0];
    const int di = rho_out.dims[1];
    Mat cond(ds, ds);
    for (int m = 0; m < ds; ++m)
        for (int n = 0; n < ds; ++n) cond(m, n) = rho_out.elements(m * di + 1, n * di + 1);
    HeraldedMixed result;
    result.probability = cond.trace().real();
    if (result.probability <= 0.0) return result;
    result.state_defined = true;
    result.signal = DensityMatrix({ds}, cond / result.probability);
    return result;
}

FockVector tfd_purification(int dim, Complex alpha, double nbar) {
    const double theta = ThermalParams{nbar}.theta();
    FockVector psi = tensor({fock_state(dim, 0), fock_state(dim, 0)});
    psi = apply(two_mode_squeeze(dim, dim, theta), psi);
    // Displacement applied after heating, so the physical-mode reduction is
    // exactly D(alpha) rho_th D(alpha)^dag.
    if (alpha != Complex{0.0, 0.0}) psi = apply_one_mode(displacement(dim, alpha), psi, 0);
    return psi;
}

}  // namespace focksim
