#pragma once

#include <array>

#include "focksim/fock.hpp"

namespace focksim {

/// Detector-outcome specification across the idler modes.
struct HeraldPattern {
    enum class Kind { exact_counts, any_single_click, coincidence_pair };

    Kind kind = Kind::any_single_click;
    std::vector<int> counts;   // exact_counts: per-idler photon numbers
    std::array<int, 2> pair{}; // coincidence_pair: idler index pair

    static HeraldPattern exact(std::vector<int> counts);
    static HeraldPattern single_click();
    static HeraldPattern coincidence(int first, int second);
};

/// Outcome of conditioning on a herald: the class probability and the
/// normalized conditional states of the signal and idler factors. A herald
/// with zero probability leaves the states undefined rather than erroring.
struct HeraldResult {
    double probability = 0.0;
    bool states_defined = false;
    FockVector signal_state;  // signal mode(s) only
    FockVector idler_state;   // idler modes conditioned on the herald class
};

/// Condition `state` on a set of exact idler count patterns (a herald class).
/// The signal factor is extracted by projecting the idlers onto the uniform
/// superposition of the class patterns; the idler factor is then conditioned
/// on that signal state. For a single pattern this reduces to the plain
/// projective measurement.
HeraldResult project_class(const FockVector& state, int n_signal_modes,
                           const std::vector<std::vector<int>>& patterns);

/// Condition on a herald pattern. Signal modes are the first n_signal_modes
/// modes of the state; the remaining modes are idlers.
HeraldResult project(const FockVector& state, const HeraldPattern& pattern,
                     int n_signal_modes = 1);

/// Condition on the class "exactly one photon in each of m distinct idlers".
/// m = 1 is the any-single-click herald.
HeraldResult click_class(const FockVector& state, int m, int n_signal_modes = 1);

/// Projection onto single clicks at both idlers of the pair and vacuum elsewhere.
HeraldResult coincidence_select(const FockVector& state, std::array<int, 2> pair,
                                int n_signal_modes = 1);

/// The stated reference formula N |lambda|^(2m) m! L_m(-|alpha|^2) for the
/// m-photon herald out of N amplifiers. Reporting aid only; the simulator's
/// measured probability is authoritative.
double herald_probability_reference(int n_amplifiers, int m, Complex alpha, double lambda);

/// Alternative prefactor candidate C(N,m) instead of N (number of m-click
/// detector patterns). Reported side by side with the reference above.
double herald_probability_combinatorial(int n_amplifiers, int m, Complex alpha, double lambda);

}  // namespace focksim
