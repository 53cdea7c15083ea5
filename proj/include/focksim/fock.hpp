#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "focksim/errors.hpp"

namespace focksim {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Library-wide numerical budgets (64-bit floats throughout).
namespace tol {
inline constexpr double norm_unit = 1e-10;     // |norm - 1| for normalized states
inline constexpr double unitarity = 1e-8;      // max-norm residual of U^H U - I
inline constexpr double norm_leakage = 1e-6;   // truncation loss budget per evolution
inline constexpr double state_deficit = 1e-8;  // pre-renormalization norm deficit
}  // namespace tol

long product_of_dims(const std::vector<int>& dims);

/// Complex amplitude vector over a truncated multimode Fock basis.
///
/// Index convention: row-major with mode 0 slowest. For dims (d0,...,dk) the
/// basis state |n0,...,nk> sits at index ((n0*d1 + n1)*d2 + ...) + nk.
struct FockVector {
    std::vector<int> dims;
    Vec amplitudes;

    FockVector() = default;
    FockVector(std::vector<int> dims_, Vec amplitudes_);

    int n_modes() const { return static_cast<int>(dims.size()); }
    long size() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
    FockVector normalized() const;
    bool is_normalized(double eps = tol::norm_unit) const;
};

/// Hermitian positive-semidefinite operator for mixed states.
struct DensityMatrix {
    std::vector<int> dims;
    Mat elements;

    DensityMatrix() = default;
    DensityMatrix(std::vector<int> dims_, Mat elements_);

    int n_modes() const { return static_cast<int>(dims.size()); }
    long size() const { return elements.rows(); }
    double trace() const { return elements.trace().real(); }
    DensityMatrix normalized() const;
    double hermiticity_residual() const;  // max |rho - rho^H|
    double min_eigenvalue() const;
};

/// Dense matrix acting on one mode or a tensor product of modes.
struct ModeOperator {
    std::vector<int> dims_in;
    std::vector<int> dims_out;
    Mat elements;

    ModeOperator() = default;
    ModeOperator(std::vector<int> dims_out_, std::vector<int> dims_in_, Mat elements_);

    ModeOperator dagger() const;
    double unitarity_residual() const;  // max |U^H U - I|, square operators only
    static ModeOperator identity(int dim);
};

/// Effective interaction strength and amplifier count, with the
/// perturbative-regime guard on lambda.
struct CouplingParams {
    double lambda = 0.0;
    int n_amplifiers = 1;
    double max_lambda = 0.5;  // guard, overridable

    void validate() const;
};

// --- single-mode operator constructors -----------------------------------

/// <n-1|a|n> = sqrt(n); the top level is annihilated into nothing (hard truncation).
ModeOperator annihilation(int dim);
/// Conjugate transpose of annihilation; a^dag |dim-1> = 0 by truncation.
ModeOperator creation(int dim);
ModeOperator number_operator(int dim);

/// Smallest dimension considered safe for coherent amplitude |alpha|
/// (Poisson tail bound plus headroom).
double required_dim(double alpha_abs);
/// Default signal-mode truncation: ceil(|a|^2) + 8 ceil(|a|) + 12.
int default_signal_dim(double alpha_abs);
inline constexpr int kDefaultIdlerDim = 4;

/// exp(alpha a^dag - conj(alpha) a), exactly unitary on the truncated space.
/// The guard rejects dimensions too small for |alpha|; pass enforce_guard=false
/// to displace anyway (used by phase-space scans over amplitudes far outside
/// the state's support).
ModeOperator displacement(int dim, Complex alpha, bool enforce_guard = true);

/// Laguerre polynomial L_m(x) via the finite sum
/// sum_{n=0..m} (-1)^n x^n m! / ((n!)^2 (m-n)!).
double laguerre(int m, double x);

// --- composition and application ------------------------------------------

FockVector tensor(const std::vector<FockVector>& parts);
ModeOperator tensor_op(const std::vector<ModeOperator>& parts);

/// Matrix-vector product; no implicit renormalization.
FockVector apply(const ModeOperator& op, const FockVector& state);
/// U rho U^H; no implicit renormalization.
DensityMatrix apply_dm(const ModeOperator& op, const DensityMatrix& rho);

/// Apply a square single-mode operator to one mode of a multimode state.
FockVector apply_one_mode(const ModeOperator& op, const FockVector& state, int mode);
/// Apply a square two-mode operator to an ordered pair of distinct modes;
/// the operator's first factor acts on mode_a.
FockVector apply_two_mode(const ModeOperator& op, const FockVector& state, int mode_a,
                          int mode_b);

/// Zero-pad each mode of a state into larger per-mode dimensions.
FockVector embed_modes(const FockVector& state, const std::vector<int>& new_dims);

/// Reduced density matrix over `keep` (strictly increasing mode indices).
DensityMatrix partial_trace(const FockVector& state, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
DensityMatrix to_density(const FockVector& state);

/// Matrix exponential by scaling-and-squaring with a fixed-order Taylor core.
Mat expm(const Mat& a);

}  // namespace focksim
