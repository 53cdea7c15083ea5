#include "focksim/amplifier.hpp"

#include <cmath>
#include <string>

namespace focksim {

std::vector<int> CascadeLayout::mode_dims() const {
    std::vector<int> dims{signal_dim};
    dims.insert(dims.end(), idler_dims.begin(), idler_dims.end());
    return dims;
}

void CascadeLayout::validate() const {
    if (idler_dims.empty()) throw InvalidArgumentError("cascade: need at least one amplifier");
    if (idler_dims.size() != lambdas.size())
        throw InvalidArgumentError("cascade: idler_dims and lambdas must have equal length");
    if (signal_dim < 2) throw InvalidArgumentError("cascade: signal_dim must be >= 2");
    for (int d : idler_dims)
        if (d < 2) throw InvalidArgumentError("cascade: idler dims must be >= 2");
    for (double l : lambdas) CouplingParams{l, 1}.validate();
}

CascadeLayout CascadeLayout::uniform(int signal_dim, int n_amplifiers, double lambda,
                                     int idler_dim) {
    if (n_amplifiers < 1) throw InvalidArgumentError("cascade: n_amplifiers must be >= 1");
    CascadeLayout lay;
    lay.signal_dim = signal_dim;
    lay.idler_dims.assign(n_amplifiers, idler_dim);
    lay.lambdas.assign(n_amplifiers, lambda);
    return lay;
}

ModeOperator two_mode_squeeze(int dim_a, int dim_b, double r) {
    if (dim_a < 2 || dim_b < 2) throw InvalidArgumentError("two_mode_squeeze: dims must be >= 2");
    const Mat as = tensor_op({annihilation(dim_a), ModeOperator::identity(dim_b)}).elements;
    const Mat bi = tensor_op({ModeOperator::identity(dim_a), annihilation(dim_b)}).elements;
    Mat gen = r * (as.adjoint() * bi.adjoint() - as * bi);
    return ModeOperator({dim_a, dim_b}, {dim_a, dim_b}, expm(gen));
}

ModeOperator amplifier_unitary(int signal_dim, int idler_dim, double lambda) {
    CouplingParams{lambda, 1}.validate();
    return two_mode_squeeze(signal_dim, idler_dim, lambda);
}

FockVector perturbative_output(Complex alpha, double lambda, int order, int signal_dim,
                               int idler_dim) {
    if (order != 1 && order != 2)
        throw InvalidArgumentError("perturbative_output: order must be 1 or 2, got " +
                                   std::to_string(order));
    CouplingParams{lambda, 1}.validate();
    const Mat as = tensor_op({annihilation(signal_dim), ModeOperator::identity(idler_dim)}).elements;
    const Mat ai = tensor_op({ModeOperator::identity(signal_dim), annihilation(idler_dim)}).elements;
    const Mat gen = as.adjoint() * ai.adjoint() - as * ai;
    const FockVector psi0 = tensor({coherent(signal_dim, alpha), fock_state(idler_dim, 0)});
    Vec out = psi0.amplitudes + lambda * (gen * psi0.amplitudes);
    if (order == 2) out += 0.5 * lambda * lambda * (gen * (gen * psi0.amplitudes));
    return FockVector({signal_dim, idler_dim}, std::move(out));
}

CascadeResult evolve_cascade(const FockVector& input, const CascadeLayout& layout) {
    layout.validate();
    if (input.dims != layout.mode_dims())
        throw ShapeError("evolve_cascade: input dims do not match the layout");
    if (!input.is_normalized())
        throw InvalidArgumentError("evolve_cascade: input state must be normalized");

    FockVector psi = input;
    ModeOperator cached;
    int cached_dim = -1;
    double cached_lambda = 0.0;
    for (int j = 0; j < layout.n_amplifiers(); ++j) {
        if (layout.idler_dims[j] != cached_dim || layout.lambdas[j] != cached_lambda) {
            cached = amplifier_unitary(layout.signal_dim, layout.idler_dims[j], layout.lambdas[j]);
            cached_dim = layout.idler_dims[j];
            cached_lambda = layout.lambdas[j];
        }
        psi = apply_two_mode(cached, psi, 0, 1 + j);
    }
    const double leakage = std::abs(1.0 - psi.amplitudes.squaredNorm());
    if (leakage > tol::norm_leakage)
        throw NormLeakageError("evolve_cascade: norm leakage " + std::to_string(leakage) +
                               " exceeds budget");
    return CascadeResult{psi.normalized(), leakage};
}

}  // namespace focksim
