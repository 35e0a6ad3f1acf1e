#include "specfrac/measures.hpp"

#include <algorithm>
#include <cmath>

namespace specfrac {

CellMeasure homogeneous_measure(const FractalSpec& spec, double alpha, int level,
                                std::size_t budget) {
    CellMeasure m;
    m.level = level;
    m.alpha = alpha;
    m.alpha_outside_01 = !(alpha > 0.0 && alpha < 1.0);
    m.cells = cells_at_level(spec, level, budget);
    m.weights.reserve(m.cells.size());
    double norm = 0.0;
    for (const auto& c : m.cells) norm += std::pow(c.ratio, alpha);
    for (const auto& c : m.cells) m.weights.push_back(std::pow(c.ratio, alpha) / norm);
    return m;
}

IntegralEstimate integrate(const CellMeasure& measure,
                           const std::function<double(double)>& f,
                           const std::function<double(double)>& modulus) {
    IntegralEstimate out;
    double max_diam = 0.0;
    for (std::size_t i = 0; i < measure.cells.size(); ++i) {
        const auto& c = measure.cells[i];
        double v = f(c.left);
        if (!std::isfinite(v))
            throw validation_error("integrate: f undefined at a cell representative");
        out.value += v * measure.weights[i];
        max_diam = std::max(max_diam, c.right - c.left);
    }
    out.error_bound = modulus ? modulus(max_diam) : 0.0;
    return out;
}

HbVsMeasure hb_vs_measure(const FractalSpec& spec, TripleKind kind, double s,
                          const std::function<double(double)>& f,
                          const std::function<double(double)>& modulus,
                          const LimitProcedure& proc, int level, double tolerance,
                          std::size_t budget) {
    HbVsMeasure out;
    out.hb_value = hb_functional(spec, kind, s, f, proc, level, budget).value;
    auto mu = homogeneous_measure(spec, s, level, budget);
    auto est = integrate(mu, f, modulus);
    out.integral_value = est.value;
    out.error_bound = est.error_bound;
    out.difference = std::fabs(out.hb_value - out.integral_value);
    out.pass = out.difference < tolerance + est.error_bound;
    return out;
}

} // namespace specfrac
