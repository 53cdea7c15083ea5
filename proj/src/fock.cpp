#include "focksim/fock.hpp"

#include <cmath>
#include <string>

namespace focksim {

long product_of_dims(const std::vector<int>& dims) {
    long p = 1;
    for (int d : dims) p *= d;
    return p;
}

namespace {

void check_dims(const std::vector<int>& dims) {
    if (dims.empty()) throw InvalidArgumentError("dims must be nonempty");
    for (int d : dims) {
        if (d < 2)
            throw InvalidArgumentError("mode dimension must be >= 2, got " + std::to_string(d));
    }
}

void check_mode_index(const std::vector<int>& dims, int mode) {
    if (mode < 0 || mode >= static_cast<int>(dims.size()))
        throw InvalidArgumentError("mode index " + std::to_string(mode) + " out of range");
}

// Stride of a mode under the row-major, mode-0-slowest convention.
long mode_stride(const std::vector<int>& dims, int mode) {
    long s = 1;
    for (int m = mode + 1; m < static_cast<int>(dims.size()); ++m) s *= dims[m];
    return s;
}

}  // namespace

FockVector::FockVector(std::vector<int> dims_, Vec amplitudes_)
    : dims(std::move(dims_)), amplitudes(std::move(amplitudes_)) {
    check_dims(dims);
    if (amplitudes.size() != product_of_dims(dims))
        throw ShapeError("amplitude vector length " + std::to_string(amplitudes.size()) +
                         " does not match basis size " + std::to_string(product_of_dims(dims)));
}

FockVector FockVector::normalized() const {
    double n = norm();
    if (n == 0.0) throw InvalidArgumentError("cannot normalize a zero vector");
    return FockVector(dims, amplitudes / n);
}

bool FockVector::is_normalized(double eps) const { return std::abs(norm() - 1.0) <= eps; }

DensityMatrix::DensityMatrix(std::vector<int> dims_, Mat elements_)
    : dims(std::move(dims_)), elements(std::move(elements_)) {
    check_dims(dims);
    long n = product_of_dims(dims);
    if (elements.rows() != n || elements.cols() != n)
        throw ShapeError("density matrix side does not match basis size");
}

DensityMatrix DensityMatrix::normalized() const {
    double t = trace();
    if (t == 0.0) throw InvalidArgumentError("cannot normalize a traceless density matrix");
    return DensityMatrix(dims, elements / t);
}

double DensityMatrix::hermiticity_residual() const {
    return (elements - elements.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat> es(elements);
    return es.eigenvalues().minCoeff();
}

ModeOperator::ModeOperator(std::vector<int> dims_out_, std::vector<int> dims_in_, Mat elements_)
    : dims_in(std::move(dims_in_)), dims_out(std::move(dims_out_)), elements(std::move(elements_)) {
    check_dims(dims_in);
    check_dims(dims_out);
    if (elements.rows() != product_of_dims(dims_out) ||
        elements.cols() != product_of_dims(dims_in))
        throw ShapeError("operator matrix shape does not match declared dims");
}

ModeOperator ModeOperator::dagger() const {
    return ModeOperator(dims_in, dims_out, elements.adjoint());
}

double ModeOperator::unitarity_residual() const {
    if (elements.rows() != elements.cols())
        throw ShapeError("unitarity residual requires a square operator");
    Mat r = elements.adjoint() * elements;
    r -= Mat::Identity(r.rows(), r.cols());
    return r.cwiseAbs().maxCoeff();
}

ModeOperator ModeOperator::identity(int dim) {
    if (dim < 2) throw InvalidArgumentError("identity: dim must be >= 2");
    return ModeOperator({dim}, {dim}, Mat::Identity(dim, dim));
}

void CouplingParams::validate() const {
    if (!(lambda >= 0.0) || !(lambda < max_lambda))
        throw InvalidArgumentError("lambda must satisfy 0 <= lambda < " +
                                   std::to_string(max_lambda) + ", got " +
                                   std::to_string(lambda));
    if (n_amplifiers < 1) throw InvalidArgumentError("n_amplifiers must be >= 1");
}

ModeOperator annihilation(int dim) {
    if (dim < 2) throw InvalidArgumentError("annihilation: dim must be >= 2");
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return ModeOperator({dim}, {dim}, std::move(a));
}

ModeOperator creation(int dim) { return annihilation(dim).dagger(); }

ModeOperator number_operator(int dim) {
    if (dim < 2) throw InvalidArgumentError("number_operator: dim must be >= 2");
    Mat n = Mat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return ModeOperator({dim}, {dim}, std::move(n));
}

double required_dim(double alpha_abs) {
    return alpha_abs * alpha_abs + 6.0 * alpha_abs + 10.0;
}

int default_signal_dim(double alpha_abs) {
    return static_cast<int>(std::ceil(alpha_abs * alpha_abs) + 8.0 * std::ceil(alpha_abs)) + 12;
}

ModeOperator displacement(int dim, Complex alpha, bool enforce_guard) {
    if (dim < 2) throw InvalidArgumentError("displacement: dim must be >= 2");
    if (enforce_guard && required_dim(std::abs(alpha)) > static_cast<double>(dim))
        throw TruncationError("displacement: dim " + std::to_string(dim) +
                              " too small for |alpha| = " + std::to_string(std::abs(alpha)) +
                              " (needs >= " + std::to_string(required_dim(std::abs(alpha))) + ")");
    Mat a = annihilation(dim).elements;
    Mat gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return ModeOperator({dim}, {dim}, expm(gen));
}

double laguerre(int m, double x) {
    if (m < 0) throw InvalidArgumentError("laguerre: m must be >= 0");
    double sum = 1.0;
    double term = 1.0;
    for (int n = 0; n < m; ++n) {
        term *= -x * static_cast<double>(m - n) / ((n + 1.0) * (n + 1.0));
        sum += term;
    }
    return sum;
}

FockVector tensor(const std::vector<FockVector>& parts) {
    if (parts.empty()) throw InvalidArgumentError("tensor: empty part list");
    std::vector<int> dims;
    Vec acc = parts[0].amplitudes;
    dims = parts[0].dims;
    for (size_t i = 1; i < parts.size(); ++i) {
        const Vec& b = parts[i].amplitudes;
        Vec next(acc.size() * b.size());
        for (long j = 0; j < acc.size(); ++j)
            next.segment(j * b.size(), b.size()) = acc(j) * b;
        acc = std::move(next);
        dims.insert(dims.end(), parts[i].dims.begin(), parts[i].dims.end());
    }
    return FockVector(std::move(dims), std::move(acc));
}

ModeOperator tensor_op(const std::vector<ModeOperator>& parts) {
    if (parts.empty()) throw InvalidArgumentError("tensor_op: empty part list");
    Mat acc = parts[0].elements;
    std::vector<int> dims_in = parts[0].dims_in;
    std::vector<int> dims_out = parts[0].dims_out;
    for (size_t i = 1; i < parts.size(); ++i) {
        const Mat& b = parts[i].elements;
        Mat next(acc.rows() * b.rows(), acc.cols() * b.cols());
        for (long r = 0; r < acc.rows(); ++r)
            for (long c = 0; c < acc.cols(); ++c)
                next.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = acc(r, c) * b;
        acc = std::move(next);
        dims_in.insert(dims_in.end(), parts[i].dims_in.begin(), parts[i].dims_in.end());
        dims_out.insert(dims_out.end(), parts[i].dims_out.begin(), parts[i].dims_out.end());
    }
    return ModeOperator(std::move(dims_out), std::move(dims_in), std::move(acc));
}

FockVector apply(const ModeOperator& op, const FockVector& state) {
    if (op.dims_in != state.dims)
        throw ShapeError("apply: operator input dims do not match state dims");
    return FockVector(op.dims_out, op.elements * state.amplitudes);
}

DensityMatrix apply_dm(const ModeOperator& op, const DensityMatrix& rho) {
    if (op.dims_in != rho.dims)
        throw ShapeError("apply_dm: operator input dims do not match state dims");
    return DensityMatrix(op.dims_out, op.elements * rho.elements * op.elements.adjoint());
}

FockVector apply_one_mode(const ModeOperator& op, const FockVector& state, int mode) {
    check_mode_index(state.dims, mode);
    if (op.dims_in.size() != 1 || op.dims_in != op.dims_out ||
        op.dims_in[0] != state.dims[mode])
        throw ShapeError("apply_one_mode: operator must be square on the target mode");
    const int d = state.dims[mode];
    const long stride = mode_stride(state.dims, mode);
    const long outer = state.size() / (d * stride);
    Vec out(state.size());
    Vec v(d), w(d);
    for (long o = 0; o < outer; ++o) {
        for (long t = 0; t < stride; ++t) {
            const long base = o * d * stride + t;
            for (int i = 0; i < d; ++i) v(i) = state.amplitudes(base + i * stride);
            w = op.elements * v;
            for (int i = 0; i < d; ++i) out(base + i * stride) = w(i);
        }
    }
    return FockVector(state.dims, std::move(out));
}

FockVector apply_two_mode(const ModeOperator& op, const FockVector& state, int mode_a,
                          int mode_b) {
    check_mode_index(state.dims, mode_a);
    check_mode_index(state.dims, mode_b);
    if (mode_a == mode_b) throw InvalidArgumentError("apply_two_mode: modes must be distinct");
    if (op.dims_in.size() != 2 || op.dims_in != op.dims_out ||
        op.dims_in[0] != state.dims[mode_a] || op.dims_in[1] != state.dims[mode_b])
        throw ShapeError("apply_two_mode: operator dims do not match the target modes");

    const int da = state.dims[mode_a];
    const int db = state.dims[mode_b];
    const long sa = mode_stride(state.dims, mode_a);
    const long sb = mode_stride(state.dims, mode_b);

    // Enumerate the joint index of all remaining modes in mixed radix and
    // compute the base offset with both target modes at level 0.
    std::vector<int> rest;
    for (int m = 0; m < state.n_modes(); ++m)
        if (m != mode_a && m != mode_b) rest.push_back(m);
    long n_rest = 1;
    for (int m : rest) n_rest *= state.dims[m];

    Vec out(state.size());
    Vec v(da * db), w(da * db);
    for (long r = 0; r < n_rest; ++r) {
        long base = 0;
        long rem = r;
        for (size_t k = rest.size(); k-- > 0;) {
            const int m = rest[k];
            base += (rem % state.dims[m]) * mode_stride(state.dims, m);
            rem /= state.dims[m];
        }
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j) v(i * db + j) = state.amplitudes(base + i * sa + j * sb);
        w = op.elements * v;
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j) out(base + i * sa + j * sb) = w(i * db + j);
    }
    return FockVector(state.dims, std::move(out));
}

FockVector embed_modes(const FockVector& state, const std::vector<int>& new_dims) {
    if (new_dims.size() != state.dims.size())
        throw ShapeError("embed_modes: mode count mismatch");
    for (size_t m = 0; m < new_dims.size(); ++m)
        if (new_dims[m] < state.dims[m]) throw ShapeError("embed_modes: target dims must not shrink");
    Vec out = Vec::Zero(product_of_dims(new_dims));
    std::vector<long> new_strides(new_dims.size());
    for (size_t m = 0; m < new_dims.size(); ++m)
        new_strides[m] = mode_stride(new_dims, static_cast<int>(m));
    for (long idx = 0; idx < state.size(); ++idx) {
        long rem = idx;
        long target = 0;
        for (size_t m = state.dims.size(); m-- > 0;) {
            target += (rem % state.dims[m]) * new_strides[m];
            rem /= state.dims[m];
        }
        out(target) = state.amplitudes(idx);
    }
    return FockVector(new_dims, std::move(out));
}

namespace {

struct TraceLayout {
    std::vector<int> keep_dims;
    std::vector<long> keep_strides;
    std::vector<long> rest_strides;
    std::vector<int> rest_dims;
    long keep_size = 1;
    long rest_size = 1;
};

TraceLayout make_trace_layout(const std::vector<int>& dims, const std::vector<int>& keep) {
    if (keep.empty()) throw InvalidArgumentError("partial_trace: keep set must be nonempty");
    for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= static_cast<int>(dims.size()))
            throw InvalidArgumentError("partial_trace: mode index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw InvalidArgumentError("partial_trace: keep indices must be strictly increasing");
    }
    TraceLayout lay;
    size_t ki = 0;
    for (int m = 0; m < static_cast<int>(dims.size()); ++m) {
        if (ki < keep.size() && keep[ki] == m) {
            lay.keep_dims.push_back(dims[m]);
            lay.keep_strides.push_back(mode_stride(dims, m));
            lay.keep_size *= dims[m];
            ++ki;
        } else {
            lay.rest_dims.push_back(dims[m]);
            lay.rest_strides.push_back(mode_stride(dims, m));
            lay.rest_size *= dims[m];
        }
    }
    return lay;
}

long decode_offset(long index, const std::vector<int>& dims, const std::vector<long>& strides) {
    long off = 0;
    for (size_t k = dims.size(); k-- > 0;) {
        off += (index % dims[k]) * strides[k];
        index /= dims[k];
    }
    return off;
}

}  // namespace

DensityMatrix partial_trace(const FockVector& state, const std::vector<int>& keep) {
    TraceLayout lay = make_trace_layout(state.dims, keep);
    Mat rho = Mat::Zero(lay.keep_size, lay.keep_size);
    std::vector<long> keep_off(lay.keep_size);
    for (long k = 0; k < lay.keep_size; ++k)
        keep_off[k] = decode_offset(k, lay.keep_dims, lay.keep_strides);
    Vec col(lay.keep_size);
    for (long r = 0; r < lay.rest_size; ++r) {
        const long base = decode_offset(r, lay.rest_dims, lay.rest_strides);
        for (long k = 0; k < lay.keep_size; ++k) col(k) = state.amplitudes(base + keep_off[k]);
        rho.noalias() += col * col.adjoint();
    }
    return DensityMatrix(lay.keep_dims, std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    TraceLayout lay = make_trace_layout(rho.dims, keep);
    Mat out = Mat::Zero(lay.keep_size, lay.keep_size);
    std::vector<long> keep_off(lay.keep_size);
    for (long k = 0; k < lay.keep_size; ++k)
        keep_off[k] = decode_offset(k, lay.keep_dims, lay.keep_strides);
    for (long r = 0; r < lay.rest_size; ++r) {
        const long base = decode_offset(r, lay.rest_dims, lay.rest_strides);
        for (long i = 0; i < lay.keep_size; ++i)
            for (long j = 0; j < lay.keep_size; ++j)
                out(i, j) += rho.elements(base + keep_off[i], base + keep_off[j]);
    }
    return DensityMatrix(lay.keep_dims, std::move(out));
}

DensityMatrix to_density(const FockVector& state) {
    return DensityMatrix(state.dims, state.amplitudes * state.amplitudes.adjoint());
}

Mat expm(const Mat& a) {
    if (a.rows() != a.cols()) throw ShapeError("expm: matrix must be square");
    const long n = a.rows();
    // Scale so the 1-norm of the argument is below theta, run a fixed-order
    // Taylor core (Horner form), then undo the scaling by repeated squaring.
    // theta = 0.5 with order 16 keeps the series truncation below 1e-19.
    constexpr double theta = 0.5;
    constexpr int order = 16;
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > theta) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta)));
    const Mat x = a * std::ldexp(1.0, -squarings);
    Mat acc = Mat::Identity(n, n);
    for (int k = order; k >= 1; --k)
        acc = Mat::Identity(n, n) + (x * acc) / static_cast<double>(k);
    for (int s = 0; s < squarings; ++s) acc = acc * acc;
    return acc;
}

}  // namespace focksim
