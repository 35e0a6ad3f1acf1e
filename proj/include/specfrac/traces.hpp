#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specfrac/dirac.hpp"
#include "specfrac/fractal_spec.hpp"
#include "specfrac/step_function.hpp"

namespace specfrac {

// Concrete emulation of a generalized limit: a scale sequence plus an
// averaging rule. Scales snap down to step boundaries so that partial sums
// are evaluated at complete-level counts.
struct LimitProcedure {
    enum class Kind { cesaro_log, geometric_subsequence, level_sequence, witness_sequence };
    Kind kind = Kind::level_sequence;
    double x0 = 8.0;
    double growth = 2.0;
    int max_scales = 64;
    std::vector<double> witness;

    static LimitProcedure cesaro_log(double x0 = 8.0, double base = 2.0, int count = 64);
    static LimitProcedure geometric(double x0 = 8.0, double ratio = 2.0, int count = 64);
    static LimitProcedure levels();
    static LimitProcedure witness_scales(std::vector<double> xs);

    std::string name() const;
    // Strictly increasing scales within the truncation; throws when fewer
    // than two remain.
    std::vector<double> scales(const StepFunction& mu) const;
    // Averaging rule: cesaro_log averages the tail half of the readings,
    // the subsequence kinds read the deepest one.
    double reduce(const std::vector<double>& readings) const;
};

std::vector<LimitProcedure> default_procedures();

struct TraceReport {
    double value = 0.0;
    double spread = 0.0;  // max - min of the readings over the last decade of scales
    std::size_t scales_used = 0;
    double scale_lo = 0.0;
    double scale_hi = 0.0;
    std::vector<double> readings;    // what `reduce` saw
    std::vector<double> raw_ratios;  // unaccelerated S(x)/denominator diagnostics
    std::string warning;
};

// Dixmier-type evaluation of S_{mu^exponent}(x) / log x along the procedure.
// Readings are chord slopes from the first scale, which cancel the additive
// O(1/log x) transient of the raw ratio.
TraceReport dixmier(const Spectrum& s, double exponent, const LimitProcedure& proc);
TraceReport dixmier(const StepFunction& mu_powered, const LimitProcedure& proc);

// tau(target)/tau(reference) emulation: plain ratios S_b(x_k)/S_a(x_k) along
// the reference's witness scales (or any procedure).
TraceReport singular_trace_ratio(const Spectrum& reference, double ref_exponent,
                                 const Spectrum& target, double target_exponent,
                                 const LimitProcedure& proc,
                                 const WindowPolicy& policy = {});
TraceReport singular_trace_ratio(const StepFunction& reference, const StepFunction& target,
                                 const LimitProcedure& proc,
                                 const WindowPolicy& policy = {});

// Normalized trace state f -> tau(f |D|^{-s}) / tau(|D|^{-s}): the numerator
// multiset holds |I|^s f(endpoint) over both endpoints of every interval of
// the triple, sign-split when f changes sign.
TraceReport hb_functional(const FractalSpec& spec, TripleKind kind, double s,
                          const std::function<double(double)>& f,
                          const LimitProcedure& proc, int level,
                          std::size_t budget = kDefaultCellBudget);

struct MeasurabilityReport {
    std::vector<double> values;
    double spread = 0.0;
    bool pass = false;
    double tolerance = 0.0;
};

MeasurabilityReport measurability_spread(const FractalSpec& spec, TripleKind kind, double s,
                                         const std::function<double(double)>& f,
                                         const std::vector<LimitProcedure>& procedures,
                                         int level, double tolerance = 1e-3,
                                         std::size_t budget = kDefaultCellBudget);

// Gauge-based singular trace against the reference g(n)^d on unit widths;
// reports the 2^d (1-d) M_h comparison when the content is measurable.
struct GaugeTraceReport {
    TraceReport trace;
    std::optional<double> expected_from_content;
    std::optional<MinkowskiReport> content;
};

GaugeTraceReport gauge_trace(const GapList& gaps, const GaugeFunction& gauge,
                             const LimitProcedure& proc);

struct HalvingReport {
    double ratio = 0.0;
    std::optional<double> implied_dimension;
    bool stable = false;
    std::vector<double> ratios;
};

// lim mu_n / mu_{2n}; a stable limit in (1,inf) pins the dimension
// log 2 / log(lim).
HalvingReport halving_ratio(const Spectrum& s, const WindowPolicy& policy);

} // namespace specfrac
