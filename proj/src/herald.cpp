#include "focksim/herald.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace focksim {

HeraldPattern HeraldPattern::exact(std::vector<int> counts) {
    HeraldPattern p;
    p.kind = Kind::exact_counts;
    p.counts = std::move(counts);
    return p;
}

HeraldPattern HeraldPattern::single_click() {
    HeraldPattern p;
    p.kind = Kind::any_single_click;
    return p;
}

HeraldPattern HeraldPattern::coincidence(int first, int second) {
    HeraldPattern p;
    p.kind = Kind::coincidence_pair;
    p.pair = {first, second};
    return p;
}

namespace {

struct SplitDims {
    std::vector<int> signal;
    std::vector<int> idler;
    long signal_size = 1;
    long idler_size = 1;
};

SplitDims split_dims(const FockVector& state, int n_signal_modes) {
    if (n_signal_modes < 1 || n_signal_modes >= state.n_modes())
        throw InvalidArgumentError("herald: need at least one signal mode and one idler mode");
    SplitDims s;
    for (int m = 0; m < state.n_modes(); ++m) {
        if (m < n_signal_modes) {
            s.signal.push_back(state.dims[m]);
            s.signal_size *= state.dims[m];
        } else {
            s.idler.push_back(state.dims[m]);
            s.idler_size *= state.dims[m];
        }
    }
    return s;
}

long pattern_offset(const std::vector<int>& idler_dims, const std::vector<int>& counts) {
    if (counts.size() != idler_dims.size())
        throw ShapeError("herald: pattern length does not match idler mode count");
    long off = 0;
    for (size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] < 0 || counts[k] >= idler_dims[k])
            throw InvalidArgumentError("herald: pattern count out of range for idler " +
                                       std::to_string(k));
        off = off * idler_dims[k] + counts[k];
    }
    return off;
}

}  // namespace

HeraldResult project_class(const FockVector& state, int n_signal_modes,
                           const std::vector<std::vector<int>>& patterns) {
    const SplitDims sd = split_dims(state, n_signal_modes);
    if (patterns.empty()) throw InvalidArgumentError("herald: empty pattern class");
    std::set<long> seen;
    std::vector<long> offsets;
    for (const auto& counts : patterns) {
        long off = pattern_offset(sd.idler, counts);
        if (!seen.insert(off).second)
            throw InvalidArgumentError("herald: duplicate pattern in class");
        offsets.push_back(off);
    }

    // Signal modes are the leading (slowest) modes, so each idler pattern
    // selects a stride-idler_size slice of the amplitude vector.
    std::vector<Vec> blocks;
    double probability = 0.0;
    for (long off : offsets) {
        Vec block(sd.signal_size);
        for (long s = 0; s < sd.signal_size; ++s)
            block(s) = state.amplitudes(s * sd.idler_size + off);
        probability += block.squaredNorm();
        blocks.push_back(std::move(block));
    }

    HeraldResult result;
    result.probability = probability;
    if (probability == 0.0) return result;

    Vec signal_sum = Vec::Zero(sd.signal_size);
    for (const Vec& b : blocks) signal_sum += b;
    const double snorm = signal_sum.norm();
    if (snorm == 0.0) return result;  // destructive interference across the class
    signal_sum /= snorm;

    Vec idler = Vec::Zero(sd.idler_size);
    for (size_t k = 0; k < blocks.size(); ++k) idler(offsets[k]) = signal_sum.dot(blocks[k]);
    const double inorm = idler.norm();
    if (inorm == 0.0) return result;

    result.states_defined = true;
    result.signal_state = FockVector(sd.signal, std::move(signal_sum));
    result.idler_state = FockVector(sd.idler, idler / inorm);
    return result;
}

HeraldResult project(const FockVector& state, const HeraldPattern& pattern, int n_signal_modes) {
    switch (pattern.kind) {
        case HeraldPattern::Kind::exact_counts:
            return project_class(state, n_signal_modes, {pattern.counts});
        case HeraldPattern::Kind::any_single_click:
            return click_class(state, 1, n_signal_modes);
        case HeraldPattern::Kind::coincidence_pair:
            return coincidence_select(state, pattern.pair, n_signal_modes);
    }
    throw InvalidArgumentError("herald: unknown pattern kind");
}

HeraldResult click_class(const FockVector& state, int m, int n_signal_modes) {
    const SplitDims sd = split_dims(state, n_signal_modes);
    const int n_idlers = static_cast<int>(sd.idler.size());
    if (m < 1 || m > n_idlers)
        throw InvalidArgumentError("herald: click multiplicity out of range");
    // All patterns with exactly one photon in each of m distinct idlers.
    std::vector<std::vector<int>> patterns;
    std::vector<int> chosen(m);
    auto recurse = [&](auto&& self, int start, int depth) -> void {
        if (depth == m) {
            std::vector<int> counts(n_idlers, 0);
            for (int c : chosen) counts[c] = 1;
            patterns.push_back(std::move(counts));
            return;
        }
        for (int k = start; k < n_idlers; ++k) {
            chosen[depth] = k;
            self(self, k + 1, depth + 1);
        }
    };
    recurse(recurse, 0, 0);
    return project_class(state, n_signal_modes, patterns);
}

HeraldResult coincidence_select(const FockVector& state, std::array<int, 2> pair,
                                int n_signal_modes) {
    const SplitDims sd = split_dims(state, n_signal_modes);
    const int n_idlers = static_cast<int>(sd.idler.size());
    if (pair[0] == pair[1]) throw InvalidArgumentError("herald: coincidence pair must be distinct");
    for (int p : pair)
        if (p < 0 || p >= n_idlers)
            throw InvalidArgumentError("herald: coincidence index out of range");
    std::vector<int> counts(n_idlers, 0);
    counts[pair[0]] = 1;
    counts[pair[1]] = 1;
    return project_class(state, n_signal_modes, {counts});
}

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

double pattern_norm_factor(int m, Complex alpha, double lambda) {
    return std::pow(lambda, 2 * m) * std::tgamma(m + 1.0) * laguerre(m, -std::norm(alpha));
}

}  // namespace

double herald_probability_reference(int n_amplifiers, int m, Complex alpha, double lambda) {
    if (n_amplifiers < 1) throw InvalidArgumentError("herald reference: N must be >= 1");
    if (m < 0 || m > n_amplifiers)
        throw InvalidArgumentError("herald reference: m must satisfy 0 <= m <= N");
    return static_cast<double>(n_amplifiers) * pattern_norm_factor(m, alpha, lambda);
}

double herald_probability_combinatorial(int n_amplifiers, int m, Complex alpha, double lambda) {
    if (n_amplifiers < 1) throw InvalidArgumentError("herald reference: N must be >= 1");
    if (m < 0 || m > n_amplifiers)
        throw InvalidArgumentError("herald reference: m must satisfy 0 <= m <= N");
    return binomial(n_amplifiers, m) * pattern_norm_factor(m, alpha, lambda);
}

}  // namespace focksim
