#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "specfrac/dirac.hpp"
#include "specfrac/fractal_spec.hpp"
#include "specfrac/step_function.hpp"

namespace testutil {

using specfrac::StepEntry;
using specfrac::StepFunction;

// mu(x) = 1/ceil(x+1)-style harmonic steps: value 1/k on [k-1,k).
inline StepFunction harmonic_stream(int n) {
    std::vector<StepEntry> es;
    es.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) es.push_back({1.0 / k, 1.0});
    return specfrac::build_step_function(std::move(es), true);
}

inline StepFunction power_stream(int n, double exponent) {
    std::vector<StepEntry> es;
    es.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) es.push_back({std::pow(k, -exponent), 1.0});
    return specfrac::build_step_function(std::move(es), true);
}

inline StepFunction geometric_stream(int n) {
    std::vector<StepEntry> es;
    for (int k = 1; k <= n; ++k) es.push_back({std::pow(2.0, -k), 1.0});
    return specfrac::build_step_function(std::move(es), true);
}

// Raw middle-third Cantor lacunary eigenvalues: 3^{-k} with multiplicity 2^k.
inline StepFunction cantor_lacunary_stream(int levels) {
    std::vector<StepEntry> es;
    for (int k = 1; k <= levels; ++k)
        es.push_back({std::pow(3.0, -k), std::pow(2.0, k)});
    return specfrac::build_step_function(std::move(es), true);
}

// Piecewise profile on blocks (a_n, a_{n+1}], a_n = n^2: slope 1 on one
// parity, an immediate jump and then flat on the other. Sampled on unit t
// steps and returned as the corresponding eigenvalue stream.
inline StepFunction oscillating_profile_stream(int n_max, bool slope_on_even) {
    std::vector<StepEntry> es;
    auto block_of = [](int t) {
        int n = static_cast<int>(std::floor(std::sqrt(static_cast<double>(t))));
        while ((n + 1) * (n + 1) <= t) ++n;
        while (n * n > t) --n;
        return n;
    };
    int t_end = n_max * n_max;
    for (int t = 1; t < t_end; ++t) {
        int n = block_of(t);
        bool slope = (n % 2 == 0) == slope_on_even;
        double f = slope ? static_cast<double>(t) : static_cast<double>((n + 1) * (n + 1));
        es.push_back({std::exp(-f), std::exp(static_cast<double>(t + 1)) -
                                        std::exp(static_cast<double>(t))});
    }
    return specfrac::build_step_function(std::move(es), true);
}

// Seeded irregular-but-decreasing stream for property tests.
inline StepFunction random_stream(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<StepEntry> es;
    double v = 1.0;
    for (int k = 0; k < n; ++k) {
        v *= 0.5 + 0.5 * u(rng);
        es.push_back({v, 0.5 + 2.0 * u(rng)});
    }
    return specfrac::build_step_function(std::move(es), true);
}

inline specfrac::FractalSpec alternating_spec(int listed = 26) {
    std::vector<int> p;
    std::vector<double> lambda;
    for (int i = 0; i < listed; ++i) {
        p.push_back(i % 2 == 0 ? 2 : 3);
        lambda.push_back(i % 2 == 0 ? 0.25 : 1.0 / 6.0);
    }
    return specfrac::FractalSpec::symmetric_fractal(0.0, 1.0, p, lambda, 2);
}

inline specfrac::FractalSpec fat_cantor_spec(int listed = 25) {
    std::vector<int> p(static_cast<std::size_t>(listed), 2);
    std::vector<double> lambda;
    for (int i = 1; i <= listed; ++i) lambda.push_back((1.0 - std::pow(3.0, -i)) / 2.0);
    return specfrac::FractalSpec::symmetric_fractal(0.0, 1.0, p, lambda, 0);
}

inline specfrac::FractalSpec two_ratio_spec() {
    return specfrac::FractalSpec::self_similar(
        0.0, 1.0, {{0.5, 0.0, +1}, {0.25, 0.75, +1}});
}

// a-string: gaps n^{-2}, n = 1..N.
inline specfrac::GapList a_string_gaps(int n) {
    specfrac::GapList gaps;
    gaps.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
        gaps.push_back({1.0 / (static_cast<double>(k) * k), 1.0});
    return gaps;
}

} // namespace testutil
