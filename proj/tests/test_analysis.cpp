#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>
#include <vector>

#include "focksim/amplifier.hpp"
#include "focksim/analysis.hpp"
#include "focksim/states.hpp"

using namespace focksim;

namespace {

// Independent oracle for the x-quadrature density: Hermite-function expansion
// with x = (a + a^dag)/2, evaluated by the stable three-term recurrence.
double quadrature_density(const FockVector& state, double x) {
    const double xi = std::sqrt(2.0) * x;
    const long dim = state.size();
    std::vector<double> phi(dim);
    phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
    if (dim > 1) phi[1] = std::sqrt(2.0) * xi * phi[0];
    for (long n = 2; n < dim; ++n)
        phi[n] = xi * std::sqrt(2.0 / n) * phi[n - 1] - std::sqrt((n - 1.0) / n) * phi[n - 2];
    Complex amp = 0.0;
    for (long n = 0; n < dim; ++n) amp += state.amplitudes(n) * phi[n];
    return std::norm(amp) * std::sqrt(2.0);  // jacobian of xi = sqrt(2) x
}

// Literal displaced-parity definition with the truncated displacement
// exponential, as a dual route for the production evaluator.
double wigner_direct(const FockVector& state, double x, double p, int embed_dim) {
    FockVector big = embed_modes(state, {embed_dim});
    const ModeOperator d = displacement(embed_dim, Complex(-x, -p), false);
    const FockVector displaced = apply(d, big);
    double parity = 0.0;
    for (int n = 0; n < embed_dim; ++n)
        parity += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(displaced.amplitudes(n));
    return 2.0 / std::numbers::pi * parity;
}

}  // namespace

TEST_CASE("fidelity basics") {
    const FockVector psi = coherent(25, Complex(0.8, -0.2));
    CHECK(fidelity(psi, psi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(fock_state(6, 1), fock_state(6, 2)) == 0.0);
    CHECK_THROWS_AS(fidelity(fock_state(6, 1), fock_state(7, 1)), ShapeError);
}

TEST_CASE("overlap of photon-added and plain coherent states") {
    // |<alpha|alpha,1>|^2 = |alpha|^2 / (1 + |alpha|^2)
    for (double a : {0.5, 1.0, 2.0}) {
        const int d = default_signal_dim(a) + 1;
        const double f = fidelity(pacs(d, Complex(a), 1), coherent(d, Complex(a)));
        CHECK(f == doctest::Approx(a * a / (1.0 + a * a)).epsilon(1e-9));
    }
}

TEST_CASE("mixed-state fidelity") {
    const DensityMatrix th1 = thermal_state(25, 0.1);
    const DensityMatrix th2 = thermal_state(25, 0.2);
    CHECK(fidelity(th1, th1) == doctest::Approx(1.0).epsilon(1e-10));
    const double f = fidelity(th1, th2);
    CHECK(f > 0.9);
    CHECK(f < 1.0);
    CHECK(fidelity(thermal_state(10, 0.0), fock_state(10, 0)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // pure-pure consistency across the overloads
    const FockVector a = coherent(20, Complex(0.4));
    const FockVector b = coherent(20, Complex(0.9));
    CHECK(fidelity(to_density(a), b) == doctest::Approx(fidelity(a, b)).epsilon(1e-10));
    CHECK(fidelity(to_density(a), to_density(b)) ==
          doctest::Approx(fidelity(a, b)).epsilon(1e-8));

    CHECK(fidelity(th2, th1) == doctest::Approx(f).epsilon(1e-10));  // Uhlmann symmetry
    CHECK(trace_distance(th1, th1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(trace_distance(th1, th2) > 0.0);
    CHECK(trace_distance(thermal_state(10, 0.0), to_density(fock_state(10, 1))) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fidelity is invariant under the amplifier unitary") {
    const ModeOperator u = amplifier_unitary(18, 4, 0.05);
    const FockVector a = tensor({coherent(18, Complex(0.7)), fock_state(4, 0)});
    const FockVector b = tensor({coherent(18, Complex(0.3, 0.4)), fock_state(4, 1)});
    CHECK(fidelity(apply(u, a), apply(u, b)) ==
          doctest::Approx(fidelity(a, b)).epsilon(1e-10));
}

TEST_CASE("wigner values at the origin") {
    CHECK(wigner_at(fock_state(12, 0), 0.0, 0.0) ==
          doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(wigner_at(fock_state(12, 1), 0.0, 0.0) ==
          doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(wigner_at(pacs(21, Complex(0.1), 1), 0.0, 0.0) < 0.0);
    // thermal parity: (2/pi) / (1 + 2 nbar)
    CHECK(wigner_at(thermal_state(30, 0.3), 0.0, 0.0) ==
          doctest::Approx(2.0 / std::numbers::pi / 1.6).epsilon(1e-8));
}

TEST_CASE("wigner evaluator matches the literal displaced-parity definition") {
    const FockVector psi = pacs(21, Complex(1.0), 1);
    const std::vector<std::pair<double, double>> points{
        {0.0, 0.0}, {0.5, -0.3}, {1.2, 0.8}, {-2.5, 1.9}, {4.0, 4.0}};
    for (const auto& [x, p] : points) {
        const int embed = std::max<int>(21, static_cast<int>(std::ceil(required_dim(std::hypot(x, p)))));
        CHECK(wigner_at(psi, x, p) ==
              doctest::Approx(wigner_direct(psi, x, p, embed)).epsilon(1e-9));
    }
}

TEST_CASE("wigner grid integral") {
    const WignerGridSpec spec{-6.0, 6.0, -6.0, 6.0, 121};
    for (const FockVector& state :
         {fock_state(12, 0), coherent(21, Complex(1.0)), pacs(21, Complex(1.0), 1),
          fock_state(12, 3)}) {
        const WignerGrid grid = wigner(state, spec);
        CHECK(std::abs(grid.integral() - 1.0) <= 0.02);
    }
    // mixed route agrees with the pure route
    const FockVector psi = pacs(21, Complex(0.5), 1);
    const WignerGridSpec small{-3.0, 3.0, -3.0, 3.0, 41};
    const WignerGrid gp = wigner(psi, small);
    const WignerGrid gm = wigner(to_density(psi), small);
    CHECK((gp.values - gm.values).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("wigner marginals reproduce the quadrature distribution") {
    const WignerGridSpec spec{-6.0, 6.0, -6.0, 6.0, 121};
    for (const FockVector& state :
         {coherent(25, Complex(1.5)), pacs(21, Complex(1.0), 1), fock_state(12, 3)}) {
        const WignerGrid grid = wigner(state, spec);
        double l1 = 0.0;
        for (int i = 0; i < spec.resolution; ++i) {
            const double marginal = grid.values.col(i).sum() * spec.dp();
            l1 += std::abs(marginal - quadrature_density(state, spec.x_at(i))) * spec.dx();
        }
        CHECK(l1 <= 0.01);
    }
}

TEST_CASE("wigner requires a single mode") {
    const FockVector two = tensor({fock_state(4, 0), fock_state(4, 0)});
    CHECK_THROWS_AS(wigner(two, WignerGridSpec{}), ShapeError);
    CHECK_THROWS_AS(wigner_at(two, 0.0, 0.0), ShapeError);
}

TEST_CASE("mandel q") {
    CHECK(*mandel_q(coherent(40, Complex(1.0))) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(*mandel_q(fock_state(8, 1)) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_FALSE(mandel_q(fock_state(8, 0)).has_value());

    const double q_pacs = *mandel_q(pacs(40, Complex(1.0), 1));
    CHECK(q_pacs == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(q_pacs > -1.0);
    CHECK(q_pacs < 0.0);
}

TEST_CASE("photon-added states drift toward Poissonian statistics") {
    double previous = -1.0;
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
        const int d = default_signal_dim(a) + 1;
        const double q = *mandel_q(pacs(d, Complex(a), 1));
        CHECK(q < 0.0);
        CHECK(q > previous);
        previous = q;
    }
}

TEST_CASE("entanglement entropy") {
    const FockVector product = tensor({coherent(14, Complex(0.4)), fock_state(3, 1)});
    CHECK(entanglement_entropy(product, {0}) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(entanglement_entropy(w_state(2), {0}) == doctest::Approx(1.0).epsilon(1e-12));
    const double h13 = -(1.0 / 3.0) * std::log2(1.0 / 3.0) - (2.0 / 3.0) * std::log2(2.0 / 3.0);
    CHECK(entanglement_entropy(w_state(3), {0}) == doctest::Approx(h13).epsilon(1e-10));
    CHECK(entanglement_entropy(w_state(3), {1, 2}) == doctest::Approx(h13).epsilon(1e-10));

    CHECK_THROWS_AS(entanglement_entropy(w_state(2), {}), InvalidArgumentError);
    CHECK_THROWS_AS(entanglement_entropy(w_state(2), {0, 1}), InvalidArgumentError);
    CHECK_THROWS_AS(entanglement_entropy(fock_state(4, 0), {0}), InvalidArgumentError);
}

TEST_CASE("entropy bounds on random states") {
    std::mt19937 rng(5);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 8; ++trial) {
        Vec v(12);
        for (long i = 0; i < 12; ++i) v(i) = Complex(dist(rng), dist(rng));
        const FockVector psi({3, 4}, v);
        const double s = entanglement_entropy(psi, {0});
        CHECK(s >= 0.0);
        CHECK(s <= std::log2(3.0) + 1e-9);
        // both sides of a pure-state bipartition carry the same entropy
        CHECK(entanglement_entropy(psi, {1}) == doctest::Approx(s).epsilon(1e-9));
    }
}

TEST_CASE("photon distribution") {
    const Eigen::VectorXd p2 = photon_distribution(fock_state(6, 2));
    CHECK(p2(2) == doctest::Approx(1.0));
    CHECK(p2.sum() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(photon_distribution(coherent(30, Complex(1.0)))(0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-8));

    const Eigen::VectorXd ppacs = photon_distribution(pacs(30, Complex(1.0), 1));
    CHECK(ppacs(0) == 0.0);
    CHECK(ppacs(1) == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-8));
    CHECK(ppacs.sum() == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(photon_distribution(thermal_state(20, 0.1))(0) ==
          doctest::Approx(1.0 / 1.1).epsilon(1e-9));
}

TEST_CASE("wigner grid serializes to json") {
    const WignerGridSpec spec{-1.0, 1.0, -1.0, 1.0, 5};
    const WignerGrid grid = wigner(fock_state(12, 0), spec);
    const nlohmann::json j = grid.to_json();
    CHECK(j["resolution"] == 5);
    CHECK(j["values"].size() == 5);
    CHECK(j["values"][0].size() == 5);
    CHECK(j["values"][2][2].get<double>() == doctest::Approx(grid.values(2, 2)));
}

TEST_CASE("wigner csv layout") {
    const WignerGridSpec spec{-1.0, 1.0, -1.0, 1.0, 3};
    const WignerGrid grid = wigner(fock_state(12, 0), spec);
    std::ostringstream csv;
    grid.write_csv(csv);
    const std::string text = csv.str();
    CHECK(text.substr(0, 6) == "x,p,w\n");
    CHECK(text.find("\r") == std::string::npos);
    // row order: p-major, x fastest
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line.substr(0, 23) == "-1.0000000000000000e+00");
    const size_t comma = line.find(',');
    CHECK(line.substr(comma + 1, 23) == "-1.0000000000000000e+00");
    std::getline(lines, line);
    CHECK(line.substr(0, 22) == "0.0000000000000000e+00");  // x advanced, p unchanged
    CHECK(line.find(",-1.0000000000000000e+00,") != std::string::npos);
}
