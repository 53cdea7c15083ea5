#pragma once

#include "focksim/fock.hpp"

namespace focksim {

/// Mean thermal occupation and the derived heating parameter sinh^2(theta) = nbar.
struct ThermalParams {
    double nbar = 0.0;

    void validate() const;
    double theta() const;
    double u() const;  // cosh(theta) = sqrt(nbar + 1)
    double v() const;  // sinh(theta) = sqrt(nbar)
};

/// (u, v) = (sqrt(nbar+1), sqrt(nbar)).
std::pair<double, double> bogoliubov_coeffs(double nbar);

/// Displaced thermal state D(alpha) rho_th(nbar) D(alpha)^dag on the physical mode.
DensityMatrix thermal_coherent_input(int dim, Complex alpha, double nbar);

/// U (rho (x) |0><0|_idler) U^dag with U the two-mode amplifier unitary.
DensityMatrix evolve_thermal(const DensityMatrix& rho_signal, double lambda,
                             int idler_dim = kDefaultIdlerDim);

struct HeraldedMixed {
    DensityMatrix signal;  // conditional signal state given one idler photon
    double probability = 0.0;
    bool state_defined = false;
};

/// Condition the two-mode output on a single idler photon.
HeraldedMixed heralded_thermal_spacs(const DensityMatrix& rho_out);

/// Doubled-space purification D_s(alpha) H(theta) |0 0~>: two physical modes,
/// tilde mode second. Tracing out the tilde mode recovers the displaced
/// thermal state; kept small-dimension as a cross-validation oracle.
FockVector tfd_purification(int dim, Complex alpha, double nbar);

}  // namespace focksim
