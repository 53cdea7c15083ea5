#include "focksim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "focksim/canonical_json.hpp"

namespace focksim {

namespace {

void check_same_dims(const std::vector<int>& a, const std::vector<int>& b) {
    if (a != b) throw ShapeError("fidelity: dims mismatch");
}

Mat sqrt_psd(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    Eigen::VectorXd ev = es.eigenvalues();
    for (long i = 0; i < ev.size(); ++i) ev(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

void check_single_mode(const std::vector<int>& dims, const char* who) {
    if (dims.size() != 1)
        throw ShapeError(std::string(who) +
                         ": requires a single-mode state; partial-trace to one mode first");
}

}  // namespace

double fidelity(const FockVector& a, const FockVector& b) {
    check_same_dims(a.dims, b.dims);
    const Complex ov = a.normalized().amplitudes.dot(b.normalized().amplitudes);
    return std::norm(ov);
}

double fidelity(const DensityMatrix& rho, const FockVector& psi) {
    check_same_dims(rho.dims, psi.dims);
    const Vec v = psi.normalized().amplitudes;
    return (v.adjoint() * (rho.normalized().elements * v))(0, 0).real();
}

double fidelity(const FockVector& psi, const DensityMatrix& rho) { return fidelity(rho, psi); }

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    check_same_dims(rho.dims, sigma.dims);
    const Mat r = sqrt_psd(rho.normalized().elements);
    Eigen::SelfAdjointEigenSolver<Mat> es(r * sigma.normalized().elements * r);
    double sum = 0.0;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
        const double ev = es.eigenvalues()(i);
        if (ev > 0.0) sum += std::sqrt(ev);
    }
    return sum * sum;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    check_same_dims(rho.dims, sigma.dims);
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.elements - sigma.elements);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

void WignerGridSpec::validate() const {
    if (resolution < 1) throw InvalidArgumentError("wigner grid: resolution must be >= 1");
    if (!(x_max >= x_min) || !(p_max >= p_min))
        throw InvalidArgumentError("wigner grid: empty range");
}

double WignerGridSpec::dx() const { return resolution > 1 ? (x_max - x_min) / (resolution - 1) : 0.0; }
double WignerGridSpec::dp() const { return resolution > 1 ? (p_max - p_min) / (resolution - 1) : 0.0; }
double WignerGridSpec::x_at(int i) const { return x_min + i * dx(); }
double WignerGridSpec::p_at(int j) const { return p_min + j * dp(); }

double WignerGrid::integral() const { return values.sum() * spec.dx() * spec.dp(); }
double WignerGrid::minimum() const { return values.minCoeff(); }
double WignerGrid::maximum() const { return values.maxCoeff(); }

void WignerGrid::write_csv(std::ostream& out) const {
    out << "x,p,w\n";
    for (int j = 0; j < spec.resolution; ++j) {
        for (int i = 0; i < spec.resolution; ++i) {
            out << canonical_double(spec.x_at(i)) << ',' << canonical_double(spec.p_at(j)) << ','
                << canonical_double(values(j, i)) << '\n';
        }
    }
}

nlohmann::json WignerGrid::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int j = 0; j < spec.resolution; ++j) {
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i < spec.resolution; ++i) row.push_back(values(j, i));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"p_max", spec.p_max},     {"p_min", spec.p_min},
                          {"resolution", spec.resolution}, {"values", std::move(rows)},
                          {"x_max", spec.x_max},     {"x_min", spec.x_min}};
}

namespace {

// Displaced-parity evaluator.
//
// The displacement exp(-beta a^dag + conj(beta) a) factors exactly (also in
// the truncated space) as R_theta exp(r (a - a^dag)) R_theta^dag with
// beta = r e^{i theta} and R_theta = diag(e^{i theta n}). Diagonalizing the
// Hermitian generator -i(a - a^dag) once therefore reduces every grid point
// to two dense matrix-vector products.
class WignerEvaluator {
public:
    WignerEvaluator(std::vector<Vec> components, std::vector<double> weights, int dim)
        : dim_(dim), components_(std::move(components)), weights_(std::move(weights)) {
        const Mat a = [dim] {
            Mat m = Mat::Zero(dim, dim);
            for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
            return m;
        }();
        const Mat h = Complex(0.0, -1.0) * (a - a.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        q_ = es.eigenvectors();
        omega_ = es.eigenvalues();
    }

    double at(double x, double p) const {
        const Complex beta{x, p};
        const double r = std::abs(beta);
        const double theta = (r == 0.0) ? 0.0 : std::arg(beta);
        Vec phase(dim_), displaced(dim_);
        for (int n = 0; n < dim_; ++n)
            phase(n) = std::polar(1.0, -theta * static_cast<double>(n));
        Vec rot(dim_);
        for (int n = 0; n < dim_; ++n) rot(n) = std::polar(1.0, r * omega_(n));
        double w = 0.0;
        for (size_t k = 0; k < components_.size(); ++k) {
            // leading rotation R_theta dropped: it does not change |phi_n|
            displaced = q_ * (rot.cwiseProduct(q_.adjoint() * phase.cwiseProduct(components_[k])));
            double parity = 0.0;
            for (int n = 0; n < dim_; ++n)
                parity += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(displaced(n));
            w += weights_[k] * parity;
        }
        return w * (2.0 / std::numbers::pi);
    }

private:
    int dim_;
    Mat q_;
    Eigen::VectorXd omega_;
    std::vector<Vec> components_;
    std::vector<double> weights_;
};

int embedding_dim(int state_dim, double beta_max) {
    const int needed = static_cast<int>(std::ceil(required_dim(beta_max)));
    return std::max(state_dim, needed);
}

Vec embed(const Vec& v, int dim) {
    Vec out = Vec::Zero(dim);
    out.head(v.size()) = v;
    return out;
}

WignerEvaluator make_evaluator(const FockVector& state, double beta_max) {
    check_single_mode(state.dims, "wigner");
    const int dim = embedding_dim(state.dims[0], beta_max);
    return WignerEvaluator({embed(state.normalized().amplitudes, dim)}, {1.0}, dim);
}

WignerEvaluator make_evaluator(const DensityMatrix& rho, double beta_max) {
    check_single_mode(rho.dims, "wigner");
    const int dim = embedding_dim(rho.dims[0], beta_max);
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.normalized().elements);
    std::vector<Vec> comps;
    std::vector<double> weights;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
        const double w = es.eigenvalues()(i);
        if (w > 1e-14) {
            comps.push_back(embed(es.eigenvectors().col(i), dim));
            weights.push_back(w);
        }
    }
    if (comps.empty()) throw InvalidArgumentError("wigner: density matrix has no spectral weight");
    return WignerEvaluator(std::move(comps), std::move(weights), dim);
}

double grid_beta_max(const WignerGridSpec& spec) {
    const double xm = std::max(std::abs(spec.x_min), std::abs(spec.x_max));
    const double pm = std::max(std::abs(spec.p_min), std::abs(spec.p_max));
    return std::hypot(xm, pm);
}

template <typename StateT>
WignerGrid wigner_impl(const StateT& state, const WignerGridSpec& spec) {
    spec.validate();
    const WignerEvaluator ev = make_evaluator(state, grid_beta_max(spec));
    WignerGrid grid;
    grid.spec = spec;
    grid.values.resize(spec.resolution, spec.resolution);
    for (int j = 0; j < spec.resolution; ++j)
        for (int i = 0; i < spec.resolution; ++i)
            grid.values(j, i) = ev.at(spec.x_at(i), spec.p_at(j));
    return grid;
}

}  // namespace

WignerGrid wigner(const FockVector& state, const WignerGridSpec& spec) {
    return wigner_impl(state, spec);
}

WignerGrid wigner(const DensityMatrix& rho, const WignerGridSpec& spec) {
    return wigner_impl(rho, spec);
}

double wigner_at(const FockVector& state, double x, double p) {
    return make_evaluator(state, std::hypot(x, p)).at(x, p);
}

double wigner_at(const DensityMatrix& rho, double x, double p) {
    return make_evaluator(rho, std::hypot(x, p)).at(x, p);
}

namespace {

std::optional<double> mandel_from_distribution(const Eigen::VectorXd& pn) {
    double mean = 0.0, second = 0.0;
    for (long n = 0; n < pn.size(); ++n) {
        mean += n * pn(n);
        second += static_cast<double>(n) * n * pn(n);
    }
    if (mean == 0.0) return std::nullopt;
    return (second - mean * mean) / mean - 1.0;
}

}  // namespace

std::optional<double> mandel_q(const FockVector& state) {
    return mandel_from_distribution(photon_distribution(state));
}

std::optional<double> mandel_q(const DensityMatrix& rho) {
    return mandel_from_distribution(photon_distribution(rho));
}

double entanglement_entropy(const FockVector& state, const std::vector<int>& partition) {
    if (state.n_modes() < 2)
        throw InvalidArgumentError("entanglement_entropy: need a multimode state");
    if (partition.empty() || partition.size() >= state.dims.size())
        throw InvalidArgumentError("entanglement_entropy: partition must be a proper subset");
    const DensityMatrix reduced = partial_trace(state.normalized(), partition);
    Eigen::SelfAdjointEigenSolver<Mat> es(reduced.elements);
    double entropy = 0.0;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
        double ev = es.eigenvalues()(i);
        if (ev < 0.0) ev = 0.0;  // PSD noise clipping
        if (ev > 0.0) entropy -= ev * std::log2(ev);
    }
    return entropy;
}

Eigen::VectorXd photon_distribution(const FockVector& state) {
    check_single_mode(state.dims, "photon_distribution");
    const Vec v = state.normalized().amplitudes;
    Eigen::VectorXd pn(v.size());
    for (long n = 0; n < v.size(); ++n) pn(n) = std::norm(v(n));
    return pn;
}

Eigen::VectorXd photon_distribution(const DensityMatrix& rho) {
    check_single_mode(rho.dims, "photon_distribution");
    const Mat& m = rho.normalized().elements;
    Eigen::VectorXd pn(m.rows());
    for (long n = 0; n < m.rows(); ++n) pn(n) = m(n, n).real();
    return pn;
}

double mean_photon_number(const FockVector& state) {
    const Eigen::VectorXd pn = photon_distribution(state);
    double mean = 0.0;
    for (long n = 0; n < pn.size(); ++n) mean += n * pn(n);
    return mean;
}

double mean_photon_number(const DensityMatrix& rho) {
    const Eigen::VectorXd pn = photon_distribution(rho);
    double mean = 0.0;
    for (long n = 0; n < pn.size(); ++n) mean += n * pn(n);
    return mean;
}

}  // namespace focksim
