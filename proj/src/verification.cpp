#include "focksim/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "focksim/amplifier.hpp"
#include "focksim/analysis.hpp"
#include "focksim/canonical_json.hpp"
#include "focksim/herald.hpp"
#include "focksim/scenario.hpp"
#include "focksim/states.hpp"
#include "focksim/thermal.hpp"

namespace focksim {

bool VerificationSummary::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return !c.asserted || c.passed; });
}

int VerificationSummary::failed_count() const {
    int n = 0;
    for (const auto& c : checks)
        if (c.asserted && !c.passed) ++n;
    return n;
}

namespace {

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

struct HeraldedSingle {
    double probability;
    FockVector signal;
};

// One amplifier on |alpha>|0>, conditioned on a single idler photon.
HeraldedSingle heralded_single(double alpha, double lambda, int min_signal_dim = 0) {
    const int ds = std::max(min_signal_dim, default_signal_dim(alpha));
    const FockVector input =
        tensor({coherent(ds, alpha), fock_state(kDefaultIdlerDim, 0)});
    const CascadeResult out = evolve_cascade(input, CascadeLayout::uniform(ds, 1, lambda));
    const HeraldResult hr = project(out.state, HeraldPattern::exact({1}));
    return {hr.probability, hr.signal_state};
}

FockVector cascade_state(double alpha, double lambda, int n, int signal_dim) {
    std::vector<FockVector> parts{coherent(signal_dim, alpha)};
    for (int k = 0; k < n; ++k) parts.push_back(fock_state(kDefaultIdlerDim, 0));
    return evolve_cascade(tensor(parts), CascadeLayout::uniform(signal_dim, n, lambda)).state;
}

void check_single_herald_law(VerificationSummary& s) {
    const double lambda = 0.01;
    for (double alpha : {0.0, 1.0, 2.0}) {
        const HeraldedSingle h = heralded_single(alpha, lambda, 30);
        const double reference = lambda * lambda * (1.0 + alpha * alpha);
        const double ratio = h.probability / reference;
        s.checks.push_back(
            {fmt("1[alpha=%g]", alpha), "single-amplifier herald law p/(lambda^2(1+|a|^2))", true,
             ratio >= 0.999 && ratio <= 1.001,
             fmt("ratio=%.6f p=%.6e ref=%.6e", ratio, h.probability, reference)});
    }
}

void check_cascade_enhancement(VerificationSummary& s) {
    const double lambda = 0.01, alpha = 1.0;
    const int ds = default_signal_dim(alpha);
    const double p1 = click_class(cascade_state(alpha, lambda, 1, ds), 1).probability;
    for (int n : {2, 3, 4}) {
        const double pn = click_class(cascade_state(alpha, lambda, n, ds), 1).probability;
        const double dev = std::abs(pn / (n * p1) - 1.0);
        s.checks.push_back({fmt("2[N=%d]", n), "cascade enhancement p_N = N p_1", true,
                            dev <= 1e-3,
                            fmt("p_N=%.6e N*p_1=%.6e rel_dev=%.2e", pn, n * p1, dev)});
    }
}

void check_spacs_fidelity(VerificationSummary& s) {
    const double lambda = 0.01;
    for (double alpha : {0.5, 1.0, 2.0}) {
        const HeraldedSingle h = heralded_single(alpha, lambda);
        const double f =
            fidelity(h.signal, pacs(h.signal.dims[0], Complex(alpha, 0.0), 1));
        s.checks.push_back({fmt("3[alpha=%g]", alpha), "heralded signal fidelity vs SPACS", true,
                            f >= 0.999, fmt("fidelity=%.8f", f)});
    }
}

void check_w_formation(VerificationSummary& s) {
    const double lambda = 0.01, alpha = 1.0;
    const int ds = default_signal_dim(alpha);
    for (int n : {2, 3, 4}) {
        const FockVector state = cascade_state(alpha, lambda, n, ds);
        const HeraldResult any1 = click_class(state, 1);
        const double fw =
            fidelity(any1.idler_state, embed_modes(w_state(n), any1.idler_state.dims));
        s.checks.push_back({fmt("4a[N=%d]", n), "any-single-click idler state vs W", true,
                            fw >= 0.999, fmt("fidelity=%.8f", fw)});
        std::vector<FockVector> signals;
        for (int k = 0; k < n; ++k) {
            std::vector<int> counts(n, 0);
            counts[k] = 1;
            signals.push_back(project(state, HeraldPattern::exact(counts)).signal_state);
        }
        double min_pair = 1.0;
        for (size_t i = 0; i < signals.size(); ++i)
            for (size_t k = i + 1; k < signals.size(); ++k)
                min_pair = std::min(min_pair, fidelity(signals[i], signals[k]));
        s.checks.push_back({fmt("4b[N=%d]", n), "which-detector indistinguishability", true,
                            min_pair >= 0.999, fmt("min_pairwise_fidelity=%.8f", min_pair)});
    }
}

void check_two_photon_structure(VerificationSummary& s) {
    const double lambda = 0.01, alpha = 1.0;
    const int ds = default_signal_dim(alpha);
    const FockVector state2 = cascade_state(alpha, lambda, 2, ds);
    const HeraldResult pair = coincidence_select(state2, {0, 1});
    const double f2 = fidelity(pair.signal_state, pacs(ds, Complex(alpha, 0.0), 2));
    s.checks.push_back({"5a", "coincidence-selected signal vs two-photon-added state", true,
                        f2 >= 0.999, fmt("fidelity=%.8f", f2)});

    const FockVector state3 = cascade_state(alpha, lambda, 3, ds);
    const HeraldResult two = click_class(state3, 2);
    const double f3 = fidelity(two.idler_state, embed_modes(ii3_state(), two.idler_state.dims));
    s.checks.push_back({"5b", "N=3 two-click idler sector vs second intermediate state", true,
                        f3 >= 0.999, fmt("fidelity=%.8f", f3)});
}

void check_prefactor_comparison(VerificationSummary& s) {
    const double lambda = 0.01, alpha = 1.0;
    const int ds = default_signal_dim(alpha);
    for (int n : {2, 3}) {
        const FockVector state = cascade_state(alpha, lambda, n, ds);
        const double measured = click_class(state, 2).probability;
        const double ref_n = herald_probability_reference(n, 2, Complex(alpha, 0.0), lambda);
        const double ref_c = herald_probability_combinatorial(n, 2, Complex(alpha, 0.0), lambda);
        const double dev_n = std::abs(measured / ref_n - 1.0);
        const double dev_c = std::abs(measured / ref_c - 1.0);
        s.checks.push_back(
            {fmt("6[N=%d]", n), "two-click prefactor: measured vs N vs C(N,2) candidates", false,
             true,
             fmt("measured=%.6e N-formula=%.6e (dev %.2f%%) C(N,2)-formula=%.6e (dev %.2f%%)",
                 measured, ref_n, dev_n * 100.0, ref_c, dev_c * 100.0)});
        s.checks.push_back({fmt("6-sanity[N=%d]", n),
                            "two-click probability matches a candidate within 5%", true,
                            std::min(dev_n, dev_c) <= 0.05,
                            fmt("min_dev=%.2f%%", std::min(dev_n, dev_c) * 100.0)});
    }
}

ScenarioConfig ecs_dual_config(double alpha, double beta) {
    ScenarioConfig cfg;
    cfg.kind = ScenarioKind::ecs_dual;
    cfg.alpha = Complex(alpha, 0.0);
    cfg.beta = Complex(beta, 0.0);
    cfg.lambda = 0.01;
    return cfg;
}

void check_ecs_dual(VerificationSummary& s) {
    const ScenarioReport rep = run(ecs_dual_config(1.0, 1.0));
    const double fu = rep.fidelities.at("upper_signals_vs_espacs_upper");
    const double fl = rep.fidelities.at("lower_signals_vs_espacs_lower");
    s.checks.push_back({"7a", "upper-herald two-signal state vs entangled SPACS (upper)", true,
                        fu >= 0.999, fmt("fidelity=%.8f", fu)});
    s.checks.push_back({"7b", "lower-herald two-signal state vs entangled SPACS (lower)", true,
                        fl >= 0.999, fmt("fidelity=%.8f", fl)});
    const double ratio = rep.analysis_values.at("upper_over_lower_measured");
    const double dev = std::abs(ratio / 2.0 - 1.0);
    s.checks.push_back({"7c", "upper/lower herald probability ratio = 2 (alpha=beta=1)", true,
                        dev <= 1e-2, fmt("measured_ratio=%.6f rel_dev=%.2e", ratio, dev)});
    // The branch overlap <i beta|-alpha><i alpha|beta> = e^-2 at alpha=beta=1
    // reweights the two photon-addition channels, giving exactly
    // 2(2-e^-2)/(2+e^-2); ratio 2 is recovered once the branches are
    // effectively orthogonal.
    const double predicted = 2.0 * (2.0 - std::exp(-2.0)) / (2.0 + std::exp(-2.0));
    const ScenarioReport rep2 = run(ecs_dual_config(2.0, 2.0));
    const double ratio2 = rep2.analysis_values.at("upper_over_lower_measured");
    s.checks.push_back(
        {"7c-note", "ratio vs non-orthogonal-branch prediction; large-amplitude limit", false,
         true,
         fmt("alpha=beta=1: measured=%.6f predicted=%.6f | alpha=beta=2: measured=%.6f", ratio,
             predicted, ratio2)});
}

void check_thermal(VerificationSummary& s) {
    ScenarioConfig cfg;
    cfg.kind = ScenarioKind::thermal;
    cfg.alpha = Complex(1.0, 0.0);
    cfg.lambda = 0.01;
    const std::vector<double> nbars{0.0, 0.05, 0.1, 0.2};
    const std::vector<ScenarioReport> reps = sweep(cfg, "nbar", nbars);
    std::vector<double> probs, fids;
    for (const auto& r : reps) {
        probs.push_back(r.probabilities.at("idler_one_click"));
        fids.push_back(r.fidelities.at("signal_vs_ideal_pacs_m1"));
    }
    bool increasing = true, decreasing = true;
    for (size_t i = 1; i < probs.size(); ++i) {
        increasing = increasing && probs[i] > probs[i - 1];
        decreasing = decreasing && fids[i] < fids[i - 1];
    }
    s.checks.push_back({"8a", "herald probability strictly increasing in nbar", true, increasing,
                        fmt("p={%.6e, %.6e, %.6e, %.6e}", probs[0], probs[1], probs[2], probs[3])});
    for (size_t i = 1; i < nbars.size(); ++i) {
        const double ratio = probs[i] / probs[0];
        const double u = std::sqrt(nbars[i] + 1.0);
        const double dev_u = std::abs(ratio / u - 1.0);
        const double dev_u2 = std::abs(ratio / (u * u) - 1.0);
        s.checks.push_back(
            {fmt("8b[nbar=%g]", nbars[i]), "amplification ratio vs u and u^2 candidates", false,
             true,
             fmt("measured=%.6f u=%.6f (dev %.2f%%) u^2=%.6f (dev %.2f%%)", ratio, u,
                 dev_u * 100.0, u * u, dev_u2 * 100.0)});
        s.checks.push_back({fmt("8-sanity[nbar=%g]", nbars[i]),
                            "amplification ratio matches a candidate within 5%", true,
                            std::min(dev_u, dev_u2) <= 0.05,
                            fmt("min_dev=%.2f%%", std::min(dev_u, dev_u2) * 100.0)});
    }
    s.checks.push_back(
        {"8c", "heralded-state fidelity to ideal SPACS strictly decreasing in nbar", true,
         decreasing, fmt("f={%.6f, %.6f, %.6f, %.6f}", fids[0], fids[1], fids[2], fids[3])});
}

void check_witnesses(VerificationSummary& s) {
    const double q = mandel_q(pacs(40, Complex(1.0, 0.0), 1)).value();
    s.checks.push_back(
        {"9a", "sub-Poissonian witness of the photon-added coherent state", true, q < 0.0,
         fmt("mandel_q=%.6f", q)});

    const double w_fock1 = wigner_at(fock_state(16, 1), 0.0, 0.0);
    const double expected = -2.0 / std::numbers::pi;
    s.checks.push_back({"9b", "Wigner value of |1> at the origin", true,
                        std::abs(w_fock1 - expected) <= 1e-6,
                        fmt("W(0,0)=%.8f expected=%.8f", w_fock1, expected)});

    const HeraldedSingle h = heralded_single(0.1, 0.01);
    const WignerGrid grid = wigner(h.signal, WignerGridSpec{-4.0, 4.0, -4.0, 4.0, 81});
    s.checks.push_back({"9c", "Wigner minimum of the heralded state at alpha=0.1 is negative",
                        true, grid.minimum() < 0.0,
                        fmt("min=%.6f at integral=%.6f", grid.minimum(), grid.integral())});
}

void check_hygiene(VerificationSummary& s) {
    const double ur = amplifier_unitary(30, kDefaultIdlerDim, 0.01).unitarity_residual();
    s.checks.push_back({"10a", "amplifier unitarity residual", true, ur <= 1e-8,
                        fmt("residual=%.2e", ur)});

    std::vector<FockVector> parts{coherent(21, Complex(1.0, 0.0))};
    for (int k = 0; k < 4; ++k) parts.push_back(fock_state(kDefaultIdlerDim, 0));
    const CascadeResult out =
        evolve_cascade(tensor(parts), CascadeLayout::uniform(21, 4, 0.01));
    s.checks.push_back({"10b", "cascade norm leakage", true, out.norm_leakage <= 1e-6,
                        fmt("leakage=%.2e", out.norm_leakage)});

    double worst = 0.0;
    for (int m = 1; m <= 10; ++m) {
        for (double x = -25.0; x <= 0.0; x += 0.25) {
            const double lhs = (m + 1) * laguerre(m + 1, x);
            const double rhs = (2 * m + 1 - x) * laguerre(m, x) - m * laguerre(m - 1, x);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    s.checks.push_back({"10c", "Laguerre recurrence residual (m <= 10, relative)", true,
                        worst <= 1e-10, fmt("max_residual=%.2e", worst)});

    ScenarioConfig cfg;
    cfg.kind = ScenarioKind::single;
    cfg.alpha = Complex(1.0, 0.0);
    cfg.lambda = 0.01;
    const std::string first = canonical_dump(run(cfg).to_json());
    const std::string second = canonical_dump(run(cfg).to_json());
    s.checks.push_back({"10d", "canonical JSON byte-identical across two runs", true,
                        first == second, fmt("bytes=%zu", first.size())});
}

}  // namespace

VerificationSummary run_verification() {
    VerificationSummary s;
    check_single_herald_law(s);
    check_cascade_enhancement(s);
    check_spacs_fidelity(s);
    check_w_formation(s);
    check_two_photon_structure(s);
    check_prefactor_comparison(s);
    check_ecs_dual(s);
    check_thermal(s);
    check_witnesses(s);
    check_hygiene(s);
    return s;
}

std::string format_verification_table(const VerificationSummary& summary) {
    std::ostringstream out;
    for (const auto& c : summary.checks) {
        const char* status = !c.asserted ? "INFO" : (c.passed ? "PASS" : "FAIL");
        out << "[" << status << "] " << c.id << "  " << c.description;
        if (!c.details.empty()) out << "  |  " << c.details;
        out << "\n";
    }
    const int failed = summary.failed_count();
    int asserted = 0;
    for (const auto& c : summary.checks) asserted += c.asserted ? 1 : 0;
    out << (failed == 0 ? "VERIFICATION PASSED" : "VERIFICATION FAILED") << " (" << asserted - failed
        << "/" << asserted << " asserted checks passed)\n";
    return out.str();
}

}  // namespace focksim
