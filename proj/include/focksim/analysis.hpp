#pragma once

#include <optional>
#include <ostream>

#include <json.hpp>

#include "focksim/fock.hpp"

namespace focksim {

/// |<a|b>|^2 for pure states; inputs are normalized first.
double fidelity(const FockVector& a, const FockVector& b);
/// <psi|rho|psi> for a mixed/pure pair.
double fidelity(const DensityMatrix& rho, const FockVector& psi);
double fidelity(const FockVector& psi, const DensityMatrix& rho);
/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// (1/2) ||rho - sigma||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Phase-space window and sampling for Wigner evaluation.
struct WignerGridSpec {
    double x_min = -4.0;
    double x_max = 4.0;
    double p_min = -4.0;
    double p_max = 4.0;
    int resolution = 81;  // samples per axis

    void validate() const;
    double x_at(int i) const;
    double p_at(int j) const;
    double dx() const;
    double dp() const;
};

/// Sampled Wigner function. values(j, i) is W(x_i, p_j); rows run over p.
struct WignerGrid {
    WignerGridSpec spec;
    Eigen::MatrixXd values;

    double integral() const;  // Riemann sum, approx 1 for a normalized state
    double minimum() const;
    double maximum() const;
    /// CSV with header x,p,w; rows ordered p-major then x; LF line endings.
    void write_csv(std::ostream& out) const;
    nlohmann::json to_json() const;
};

/// W(x,p) = (2/pi) Tr[rho D(beta) Pi D(-beta)] with beta = x + i p and Pi the
/// photon-number parity; normalized so the phase-space integral is 1.
/// Single-mode states only; the state is embedded into a larger space when the
/// grid extends beyond its truncation guard.
WignerGrid wigner(const FockVector& state, const WignerGridSpec& spec);
WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec);
double wigner_at(const FockVector& state, double x, double p);
double wigner_at(const DensityMatrix& rho, double x, double p);

/// Mandel Q = (<n^2> - <n>^2)/<n> - 1; empty for the vacuum (undefined).
std::optional<double> mandel_q(const FockVector& state);
std::optional<double> mandel_q(const DensityMatrix& rho);

/// Base-2 von Neumann entropy of the reduced state over `partition`
/// (a nonempty proper subset of modes, strictly increasing).
double entanglement_entropy(const FockVector& state, const std::vector<int>& partition);

/// p_n for a single-mode state.
Eigen::VectorXd photon_distribution(const FockVector& state);
Eigen::VectorXd photon_distribution(const DensityMatrix& rho);

double mean_photon_number(const FockVector& state);
double mean_photon_number(const DensityMatrix& rho);

}  // namespace focksim
