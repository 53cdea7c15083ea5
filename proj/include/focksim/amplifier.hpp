#pragma once

#include "focksim/fock.hpp"
#include "focksim/states.hpp"

namespace focksim {

/// Geometry of an N-amplifier cascade: one shared signal mode, one idler per
/// amplifier, individually settable couplings.
struct CascadeLayout {
    int signal_dim = 0;
    std::vector<int> idler_dims;
    std::vector<double> lambdas;

    int n_amplifiers() const { return static_cast<int>(idler_dims.size()); }
    std::vector<int> mode_dims() const;  // signal first, then idlers in order
    void validate() const;

    static CascadeLayout uniform(int signal_dim, int n_amplifiers, double lambda,
                                 int idler_dim = kDefaultIdlerDim);
};

struct CascadeResult {
    FockVector state;     // normalized output
    double norm_leakage;  // |1 - ||out||^2| before renormalization
};

/// Exact two-mode unitary exp[lambda (a_s^dag a_i^dag - a_s a_i)] on the
/// signal (x) idler tensor space.
ModeOperator amplifier_unitary(int signal_dim, int idler_dim, double lambda);

/// Two-mode squeeze unitary without the perturbative coupling guard; also
/// serves as the thermal heating operator at r = theta.
ModeOperator two_mode_squeeze(int dim_a, int dim_b, double r);

/// Truncated generator series applied to |alpha>|0>: sum_{k<=order} lambda^k G^k / k!.
/// Returned unnormalized; order must be 1 or 2.
FockVector perturbative_output(Complex alpha, double lambda, int order, int signal_dim,
                               int idler_dim = kDefaultIdlerDim);

/// Sequential application of the N amplifiers, amplifier j acting on
/// (signal, idler_j). Input dims must match the layout; the input must be
/// normalized. Throws NormLeakageError if truncation loss exceeds the budget.
CascadeResult evolve_cascade(const FockVector& input, const CascadeLayout& layout);

}  // namespace focksim
