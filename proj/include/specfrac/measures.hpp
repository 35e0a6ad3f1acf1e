#pragma once

#include <functional>
#include <vector>

#include "specfrac/fractal_spec.hpp"
#include "specfrac/traces.hpp"

namespace specfrac {

// Homogeneous measure mu_alpha restricted to the level-n cells:
// weight(sigma) = lambda_sigma^alpha / sum over the level.
struct CellMeasure {
    int level = 0;
    double alpha = 0.0;
    std::vector<Cell> cells;      // sorted by left endpoint
    std::vector<double> weights;  // parallel to cells, sums to 1
    bool alpha_outside_01 = false;
};

CellMeasure homogeneous_measure(const FractalSpec& spec, double alpha, int level,
                                std::size_t budget = kDefaultCellBudget);

struct IntegralEstimate {
    double value = 0.0;
    double error_bound = 0.0;  // modulus(max cell diameter)
};

// Riemann-type sum against mu_alpha, f evaluated at cell left endpoints.
IntegralEstimate integrate(const CellMeasure& measure,
                           const std::function<double(double)>& f,
                           const std::function<double(double)>& modulus);

struct HbVsMeasure {
    double hb_value = 0.0;
    double integral_value = 0.0;
    double difference = 0.0;
    double error_bound = 0.0;
    bool pass = false;
};

HbVsMeasure hb_vs_measure(const FractalSpec& spec, TripleKind kind, double s,
                          const std::function<double(double)>& f,
                          const std::function<double(double)>& modulus,
                          const LimitProcedure& proc, int level, double tolerance = 1e-3,
                          std::size_t budget = kDefaultCellBudget);

} // namespace specfrac
