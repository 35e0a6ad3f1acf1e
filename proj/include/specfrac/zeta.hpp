#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specfrac/dirac.hpp"
#include "specfrac/fractal_spec.hpp"
#include "specfrac/step_function.hpp"

namespace specfrac {

struct ZetaReport {
    double alpha = 0.0;
    double partial = 0.0;
    double n_used = 0.0;                 // eigenvalue count, with multiplicity
    std::optional<double> tail_bound;    // present when the level masses are
                                         // provably geometric
    Summability converged = Summability::inconclusive;
};

// Partial sum of value^alpha over the first N eigenvalues (by multiplicity).
ZetaReport zeta_partial(const Spectrum& s, double alpha, double N);

struct AbscissaResult {
    double d = 0.0;
    int inconclusive_steps = 0;
};

// Bisection on the summability of power(mu, alpha); the bracket must
// straddle the convergence boundary.
AbscissaResult abscissa(const Spectrum& s, double lo, double hi, double tol = 1e-3);

struct SelfSimilarReport {
    double dimension = 0.0;              // solves sum lambda_j^d = 1
    std::vector<double> lambdas;
    std::vector<double> gap_lengths;     // c_1..c_{p-1} of the level-1 geometry
    double zeta_f_residue = 0.0;
    double zeta_l_residue = 0.0;
};

SelfSimilarReport selfsimilar_report(const FractalSpec& spec);
// Closed forms, valid for s above the dimension.
double zeta_filled_closed(const SelfSimilarReport& r, double interval_length, double s);
double zeta_lacunary_closed(const SelfSimilarReport& r, double s);

struct SymmetricDimensions {
    double d = 0.0;
    std::optional<double> delta_lower;
    std::optional<double> delta_upper;
    std::string withheld_reason;  // set when uniform generation fails
};

// Prefix-ratio dimension plus window inf/sup over all (start, length) pairs;
// exact by period rotation when the sequences are (eventually) periodic.
SymmetricDimensions symmetric_dimension_and_delta(const std::vector<int>& p,
                                                  const std::vector<double>& lambda,
                                                  int tail_period);

} // namespace specfrac
