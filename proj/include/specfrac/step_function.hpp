#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specfrac/common.hpp"

namespace specfrac {

// Non-increasing infinitesimal eigenvalue function mu, stored as a finite
// list of (value, width) steps: mu(x) = value_k for x in [W_{k-1}, W_k),
// W the cumulative width. `truncated` marks that nothing is known past W_n;
// a non-truncated function is identically 0 there.
//
// Immutable after construction; all queries are const and thread-safe.
struct StepEntry {
    double value = 0.0;
    double width = 0.0;
};

class StepFunction {
public:
    StepFunction() = default;
    StepFunction(std::vector<StepEntry> entries, bool truncated);

    const std::vector<StepEntry>& entries() const { return entries_; }
    bool truncated() const { return truncated_; }
    double total_width() const { return cum_width_.empty() ? 0.0 : cum_width_.back(); }
    double total_mass() const { return cum_mass_.empty() ? 0.0 : cum_mass_.back(); }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    // mu(x), right continuous. Throws past the end of a truncated function.
    double value_at(double x) const;

    // Integral over [0, x], exact on the step representation.
    double mass_up_to(double x) const;

    // Cumulative width after entry i (W_{i+1}).
    double cum_width(std::size_t i) const { return cum_width_[i]; }
    double cum_mass(std::size_t i) const { return cum_mass_[i]; }
    const std::vector<double>& cum_widths() const { return cum_width_; }
    const std::vector<double>& cum_masses() const { return cum_mass_; }

private:
    std::vector<StepEntry> entries_;
    std::vector<double> cum_width_;
    std::vector<double> cum_mass_;
    bool truncated_ = false;
};

// Validates, sorts decreasing and coalesces equal values (widths add).
StepFunction build_step_function(std::vector<StepEntry> pairs, bool truncated = false);

double mu_at(const StepFunction& mu, double x);

// f(t) = -log mu(e^t). +inf where mu vanishes, throws where the tail is unknown.
double log_profile(const StepFunction& mu, double t);

// Multiset merge: distribution functions add.
StepFunction direct_sum(const StepFunction& a, const StepFunction& b);

// Pointwise power, widths preserved.
StepFunction power(const StepFunction& mu, double gamma);

StepFunction with_values_scaled(const StepFunction& mu, double c);
StepFunction with_widths_scaled(const StepFunction& mu, double c);

// ---------------------------------------------------------------------------
// Summability / integral function

enum class Summability { summable, divergent, inconclusive };

struct SummabilityReport {
    Summability verdict = Summability::inconclusive;
    double tail_estimate = 0.0;  // extrapolated mass past the truncation
    double known_mass = 0.0;
};

SummabilityReport classify_summability(const StepFunction& mu);

enum class IntegralBranch { up, down, inconclusive };

struct IntegralS {
    double value = 0.0;
    IntegralBranch branch = IntegralBranch::inconclusive;
};

// S^(x) = int_0^x mu for non-summable mu, S_v(x) = int_x^inf mu for summable.
IntegralS integral_S(const StepFunction& mu, double x);

// ---------------------------------------------------------------------------
// Asymptotic indices

struct GeometricGrid {
    double base = 2.0;
    int count = 6;
};

// Finite-truncation surrogate for the limits at infinity: sup/inf over
// geometric grids after discarding a head fraction, every verdict carrying
// the policy tolerance.
struct WindowPolicy {
    GeometricGrid t_grid{2.0, 400};  // count caps the boundary sample
    GeometricGrid h_grid{2.0, 4};    // window-width ladder; floor = span/base^(count-1)
    double head_discard_fraction = 0.20;
    double tolerance = 0.02;

    void validate() const;
};

struct IndexReport {
    double d_lower = 0.0;
    double d_upper = 0.0;
    double delta_lower = 0.0;
    double delta_upper = 0.0;
    double tolerance = 0.0;
    // Raw per-window slopes phi(t,h) and anchored chords f/t actually used.
    std::vector<double> window_slopes;
    std::vector<double> chord_slopes;
};

IndexReport indices(const StepFunction& mu, const WindowPolicy& policy);

// ---------------------------------------------------------------------------
// Eccentricity

enum class EccVerdict { eccentric, not_eccentric, inconclusive };

struct EccentricityReport {
    EccVerdict verdict = EccVerdict::inconclusive;
    // Scales realizing the running minimum of x mu(x) / S(x).
    std::vector<double> witness;
    double final_ratio = kInf;
};

EccentricityReport eccentricity(const StepFunction& mu, double lambda,
                                const WindowPolicy& policy);

struct TraceabilityInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = false;
    bool contains_dimension = false;
    double tolerance = 0.0;
};

TraceabilityInterval traceability_interval(const StepFunction& mu,
                                           const WindowPolicy& policy);

// ---------------------------------------------------------------------------
// Serialization: CSV of value,width plus a JSON sidecar carrying the
// truncation flag and the total width.

void write_step_csv(const StepFunction& mu, const std::string& csv_path);
StepFunction read_step_csv(const std::string& csv_path);

} // namespace specfrac
