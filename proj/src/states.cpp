#include "focksim/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace focksim {

void PacsSpec::validate() const {
    if (added_photons < 0) throw InvalidArgumentError("pacs: added photon count must be >= 0");
}

FockVector fock_state(int dim, int n) {
    if (dim < 2) throw InvalidArgumentError("fock_state: dim must be >= 2");
    if (n < 0 || n >= dim)
        throw InvalidArgumentError("fock_state: level " + std::to_string(n) +
                                   " out of range for dim " + std::to_string(dim));
    Vec v = Vec::Zero(dim);
    v(n) = 1.0;
    return FockVector({dim}, std::move(v));
}

FockVector coherent(int dim, Complex alpha) {
    if (dim < 2) throw InvalidArgumentError("coherent: dim must be >= 2");
    if (required_dim(std::abs(alpha)) > static_cast<double>(dim))
        throw TruncationError("coherent: dim " + std::to_string(dim) +
                              " too small for |alpha| = " + std::to_string(std::abs(alpha)));
    Vec v(dim);
    // amplitude recurrence: c_0 = exp(-|a|^2/2), c_n = c_{n-1} * a / sqrt(n)
    Complex c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < dim; ++n) {
        v(n) = c;
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    const double nrm = v.norm();
    if (std::abs(1.0 - nrm * nrm) > tol::state_deficit)
        throw TruncationError("coherent: truncation deficit above budget");
    return FockVector({dim}, v / nrm);
}

FockVector pacs(int dim, Complex alpha, int m) {
    PacsSpec{alpha, m}.validate();
    if (required_dim(std::abs(alpha)) + static_cast<double>(m) > static_cast<double>(dim))
        throw TruncationError("pacs: dim " + std::to_string(dim) +
                              " too small for |alpha| = " + std::to_string(std::abs(alpha)) +
                              " with " + std::to_string(m) + " added photons");
    FockVector psi = coherent(dim, alpha);
    const Mat ad = creation(dim).elements;
    for (int k = 0; k < m; ++k) psi.amplitudes = ad * psi.amplitudes;
    double lg = laguerre(m, -std::norm(alpha));
    double norm_const = std::sqrt(std::tgamma(m + 1.0) * lg);
    return FockVector(psi.dims, psi.amplitudes / norm_const);
}

FockVector pacs(int dim, const PacsSpec& spec) { return pacs(dim, spec.alpha, spec.added_photons); }

DensityMatrix thermal_state(int dim, double nbar) {
    if (dim < 2) throw InvalidArgumentError("thermal_state: dim must be >= 2");
    if (nbar < 0.0) throw InvalidArgumentError("thermal_state: nbar must be >= 0");
    Mat rho = Mat::Zero(dim, dim);
    double p = 1.0 / (1.0 + nbar);
    const double ratio = nbar / (1.0 + nbar);
    double trace = 0.0;
    for (int n = 0; n < dim; ++n) {
        rho(n, n) = p;
        trace += p;
        p *= ratio;
    }
    if (1.0 - trace > tol::norm_leakage)
        throw TruncationError("thermal_state: truncated trace deficit above budget");
    return DensityMatrix({dim}, rho / trace);
}

namespace {

FockVector ecs_branches(int dim, Complex alpha, Complex beta, int added_upper, int added_lower) {
    const double amax = std::max(std::abs(alpha), std::abs(beta));
    if (required_dim(amax) + static_cast<double>(std::max(added_upper, added_lower)) >
        static_cast<double>(dim))
        throw TruncationError("ecs: dim too small for the branch amplitudes");
    const Complex i{0.0, 1.0};
    const Complex phase1 = std::exp(-i * std::numbers::pi / 4.0);
    const Complex phase2 = std::exp(i * std::numbers::pi / 4.0);
    auto upper1 = added_upper ? pacs(dim, i * beta, added_upper) : coherent(dim, i * beta);
    auto lower1 = added_lower ? pacs(dim, i * alpha, added_lower) : coherent(dim, i * alpha);
    auto upper2 = added_upper ? pacs(dim, -alpha, added_upper) : coherent(dim, -alpha);
    auto lower2 = added_lower ? pacs(dim, beta, added_lower) : coherent(dim, beta);
    Vec v = phase1 * tensor({upper1, lower1}).amplitudes + phase2 * tensor({upper2, lower2}).amplitudes;
    FockVector out({dim, dim}, std::move(v));
    return out.normalized();
}

}  // namespace

FockVector ecs(int dim, Complex alpha, Complex beta) {
    return ecs_branches(dim, alpha, beta, 0, 0);
}

FockVector ecs(int dim, const EcsSpec& spec) { return ecs(dim, spec.alpha, spec.beta); }

FockVector espacs(int dim, Complex alpha, Complex beta, EcsChannel channel) {
    return channel == EcsChannel::upper ? ecs_branches(dim, alpha, beta, 1, 0)
                                        : ecs_branches(dim, alpha, beta, 0, 1);
}

FockVector w_state(int n_modes) {
    if (n_modes < 2) throw InvalidArgumentError("w_state: need at least 2 modes");
    std::vector<int> dims(n_modes, 2);
    Vec v = Vec::Zero(1L << n_modes);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n_modes));
    for (int k = 0; k < n_modes; ++k) v(1L << (n_modes - 1 - k)) = amp;
    return FockVector(std::move(dims), std::move(v));
}

FockVector ii3_state() {
    Vec v = Vec::Zero(8);
    const double amp = 1.0 / std::sqrt(3.0);
    v(0b110) = amp;
    v(0b011) = amp;
    v(0b101) = amp;
    return FockVector({2, 2, 2}, std::move(v));
}

}  // namespace focksim
