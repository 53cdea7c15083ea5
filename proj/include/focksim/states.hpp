#pragma once

#include "focksim/fock.hpp"

namespace focksim {

/// Photon-added coherent state parameters: coherent amplitude and addition count.
struct PacsSpec {
    Complex alpha{0.0, 0.0};
    int added_photons = 0;

    void validate() const;
};

/// Two coherent amplitudes of the entangled coherent state; branch phases are
/// fixed to exp(-+ i pi/4).
struct EcsSpec {
    Complex alpha{0.0, 0.0};
    Complex beta{0.0, 0.0};
};

/// Which signal mode of an ECS receives the added photon.
enum class EcsChannel { upper, lower };

/// Basis state |n> as a unit vector.
FockVector fock_state(int dim, int n);

/// Coherent state with amplitudes exp(-|a|^2/2) a^n / sqrt(n!), renormalized
/// after truncation. The pre-renormalization deficit must stay below 1e-8.
FockVector coherent(int dim, Complex alpha);

/// Photon-added coherent state (a^dag)^m |alpha> / sqrt(m! L_m(-|alpha|^2)).
FockVector pacs(int dim, Complex alpha, int m);
FockVector pacs(int dim, const PacsSpec& spec);

/// Thermal state: diagonal nbar^n / (1+nbar)^(n+1), renormalized after truncation.
DensityMatrix thermal_state(int dim, double nbar);

/// Two-mode entangled coherent state
///   exp(-i pi/4) |i beta>|i alpha> + exp(+i pi/4) |-alpha>|beta>,
/// normalized by the actual branch overlap (the branches are not orthogonal).
FockVector ecs(int dim, Complex alpha, Complex beta);
FockVector ecs(int dim, const EcsSpec& spec);

/// Entangled SPACS: the ECS with one photon added to the chosen signal mode's
/// branches, explicitly normalized.
FockVector espacs(int dim, Complex alpha, Complex beta, EcsChannel channel);

/// N-mode single-excitation state (1/sqrt(N)) sum_k |0...1_k...0>, dim 2 per mode.
FockVector w_state(int n_modes);

/// Three-mode equal superposition of the two-excitation states
/// |110>, |011>, |101>, dim 2 per mode.
FockVector ii3_state();

}  // namespace focksim
