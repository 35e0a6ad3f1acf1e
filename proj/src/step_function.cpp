#include "specfrac/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace specfrac {

StepFunction::StepFunction(std::vector<StepEntry> entries, bool truncated)
    : entries_(std::move(entries)), truncated_(truncated) {
    cum_width_.reserve(entries_.size());
    cum_mass_.reserve(entries_.size());
    double w = 0.0, m = 0.0;
    for (const auto& e : entries_) {
        w += e.width;
        m += e.value * e.width;
        cum_width_.push_back(w);
        cum_mass_.push_back(m);
    }
}

StepFunction build_step_function(std::vector<StepEntry> pairs, bool truncated) {
    for (const auto& e : pairs) {
        if (!(e.value > 0.0) || !std::isfinite(e.value))
            throw validation_error("step function: values must be positive finite");
        if (!(e.width > 0.0) || !std::isfinite(e.width))
            throw validation_error("step function: widths must be positive finite");
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const StepEntry& a, const StepEntry& b) { return a.value > b.value; });
    std::vector<StepEntry> merged;
    merged.reserve(pairs.size());
    for (const auto& e : pairs) {
        if (!merged.empty() && merged.back().value == e.value)
            merged.back().width += e.width;
        else
            merged.push_back(e);
    }
    return StepFunction(std::move(merged), truncated);
}

double StepFunction::value_at(double x) const {
    if (x < 0.0) throw validation_error("mu_at: x must be nonnegative");
    if (entries_.empty() || x >= total_width()) {
        if (truncated_)
            throw validation_error("mu_at: tail unknown beyond truncation");
        return 0.0;
    }
    auto it = std::upper_bound(cum_width_.begin(), cum_width_.end(), x);
    return entries_[static_cast<std::size_t>(it - cum_width_.begin())].value;
}

double StepFunction::mass_up_to(double x) const {
    if (x <= 0.0 || entries_.empty()) return 0.0;
    if (x >= total_width()) return total_mass();
    auto it = std::upper_bound(cum_width_.begin(), cum_width_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - cum_width_.begin());
    double before = i == 0 ? 0.0 : cum_mass_[i - 1];
    double start = i == 0 ? 0.0 : cum_width_[i - 1];
    return before + (x - start) * entries_[i].value;
}

double mu_at(const StepFunction& mu, double x) { return mu.value_at(x); }

double log_profile(const StepFunction& mu, double t) {
    double v = mu.value_at(std::exp(t));
    if (v == 0.0) return kInf;
    return -std::log(v);
}

StepFunction direct_sum(const StepFunction& a, const StepFunction& b) {
    std::vector<StepEntry> merged;
    merged.reserve(a.size() + b.size());
    merged.insert(merged.end(), a.entries().begin(), a.entries().end());
    merged.insert(merged.end(), b.entries().begin(), b.entries().end());
    return build_step_function(std::move(merged), a.truncated() || b.truncated());
}

StepFunction power(const StepFunction& mu, double gamma) {
    if (!(gamma > 0.0)) throw validation_error("power: exponent must be positive");
    std::vector<StepEntry> out = mu.entries();
    for (auto& e : out) e.value = std::pow(e.value, gamma);
    return StepFunction(std::move(out), mu.truncated());
}

StepFunction with_values_scaled(const StepFunction& mu, double c) {
    if (!(c > 0.0)) throw validation_error("scale: factor must be positive");
    std::vector<StepEntry> out = mu.entries();
    for (auto& e : out) e.value *= c;
    return StepFunction(std::move(out), mu.truncated());
}

StepFunction with_widths_scaled(const StepFunction& mu, double c) {
    if (!(c > 0.0)) throw validation_error("scale: factor must be positive");
    std::vector<StepEntry> out = mu.entries();
    for (auto& e : out) e.width *= c;
    return StepFunction(std::move(out), mu.truncated());
}

// ---------------------------------------------------------------------------

SummabilityReport classify_summability(const StepFunction& mu) {
    SummabilityReport rep;
    rep.known_mass = mu.total_mass();
    if (mu.empty()) {
        rep.verdict = Summability::summable;
        return rep;
    }
    if (!mu.truncated()) {
        rep.verdict = Summability::summable;
        return rep;
    }
    const auto& es = mu.entries();
    std::size_t n = es.size();
    if (n < 4) return rep;  // inconclusive: too little data

    // Entry-level geometric tail: last few per-entry masses all shrinking.
    if (n >= 6) {
        bool geometric = true;
        double rho = 0.0;
        for (std::size_t i = n - 5; i < n; ++i) {
            double m0 = es[i - 1].value * es[i - 1].width;
            double m1 = es[i].value * es[i].width;
            double r = m1 / m0;
            if (!(r <= 0.9)) { geometric = false; break; }
            rho = std::max(rho, r);
        }
        if (geometric) {
            double last = es[n - 1].value * es[n - 1].width;
            rep.verdict = Summability::summable;
            rep.tail_estimate = last * rho / (1.0 - rho);
            return rep;
        }
    }

    // Window masses over the last half of the log-x span.
    double t_max = std::log(mu.total_width());
    double t_min = std::log(mu.cum_width(0));
    double span = t_max - t_min;
    if (!(span > 0.0)) return rep;
    double lo = t_max - 0.5 * span;
    const int k = 6;
    double L = (t_max - lo) / k;
    double masses[k];
    for (int j = 0; j < k; ++j) {
        double x0 = std::exp(lo + j * L), x1 = std::exp(lo + (j + 1) * L);
        masses[j] = mu.mass_up_to(x1) - mu.mass_up_to(x0);
    }
    double qmax = 0.0, qmin = kInf;
    for (int j = 1; j < k; ++j) {
        double q = masses[j] / masses[j - 1];
        qmax = std::max(qmax, q);
        qmin = std::min(qmin, q);
    }
    if (qmax <= 0.9) {
        rep.verdict = Summability::summable;
        rep.tail_estimate = masses[k - 1] * qmax / (1.0 - qmax);
    } else if (qmin >= 0.95) {
        rep.verdict = Summability::divergent;
    }
    return rep;
}

IntegralS integral_S(const StepFunction& mu, double x) {
    if (x < 0.0) throw validation_error("integral_S: x must be nonnegative");
    if (mu.truncated() && x > mu.total_width())
        throw validation_error("integral_S: x beyond known width of a truncated function");
    IntegralS out;
    auto cls = classify_summability(mu);
    switch (cls.verdict) {
        case Summability::summable:
            out.branch = IntegralBranch::down;
            out.value = mu.total_mass() - mu.mass_up_to(x) + cls.tail_estimate;
            break;
        case Summability::divergent:
            out.branch = IntegralBranch::up;
            out.value = mu.mass_up_to(x);
            break;
        case Summability::inconclusive:
            out.branch = IntegralBranch::inconclusive;
            out.value = std::numeric_limits<double>::quiet_NaN();
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------

void WindowPolicy::validate() const {
    if (!(t_grid.base > 1.0) || !(h_grid.base > 1.0))
        throw validation_error("window policy: grid bases must exceed 1");
    if (t_grid.count < 1 || h_grid.count < 1)
        throw validation_error("window policy: grids must be nonempty");
    if (!(head_discard_fraction >= 0.0 && head_discard_fraction < 1.0))
        throw validation_error("window policy: head fraction must lie in [0,1)");
    if (!(tolerance > 0.0))
        throw validation_error("window policy: tolerance must be positive");
}

namespace {

// One interior step boundary: t = log cumulative width where the value
// drops, f read right-continuously (the profile just after the drop). A
// window between two boundaries then measures whole steps: the jumps in
// (t_i, t_j] against the widths in (t_i, t_j].
struct BoundaryEvent {
    double t;
    double f;
};

std::vector<BoundaryEvent> boundary_events(const StepFunction& mu) {
    std::vector<BoundaryEvent> ev;
    const auto& es = mu.entries();
    if (es.size() < 2) return ev;
    ev.reserve(es.size() - 1);
    for (std::size_t i = 0; i + 1 < es.size(); ++i) {
        double w = mu.cum_width(i);
        if (!(w > 0.0)) continue;
        // a sub-1e-9 value step is float dust from merged provenances, not a
        // level boundary; anchoring windows there would let them capture a
        // whole jump at zero width cost
        if (std::log(es[i].value / es[i + 1].value) <= 1e-9) continue;
        ev.push_back({std::log(w), -std::log(es[i + 1].value)});
    }
    return ev;
}

} // namespace

IndexReport indices(const StepFunction& mu, const WindowPolicy& policy) {
    policy.validate();
    auto ev = boundary_events(mu);
    if (ev.size() < 4)
        throw validation_error(
            "indices: need at least 4 step boundaries, have " + std::to_string(ev.size()));

    double t_first = ev.front().t, t_last = ev.back().t;
    double t_lo = t_first + policy.head_discard_fraction * (t_last - t_first);
    std::vector<BoundaryEvent> tail;
    for (const auto& e : ev)
        if (e.t >= t_lo) tail.push_back(e);
    if (tail.size() < 4)
        throw validation_error(
            "indices: need at least 4 step boundaries after head discard, have " +
            std::to_string(tail.size()));

    // Cap the grid; keep endpoints.
    std::size_t cap = static_cast<std::size_t>(std::max(policy.t_grid.count, 8));
    if (tail.size() > cap) {
        std::vector<BoundaryEvent> sampled;
        sampled.reserve(cap);
        for (std::size_t k = 0; k < cap; ++k) {
            std::size_t idx = k * (tail.size() - 1) / (cap - 1);
            sampled.push_back(tail[idx]);
        }
        tail = std::move(sampled);
    }

    IndexReport rep;
    rep.tolerance = policy.tolerance;

    // d-indices from chords anchored at the first tail event, restricted to
    // the longer half so the additive transient in f cannot dominate.
    const BoundaryEvent& anchor = tail.front();
    double tail_span = tail.back().t - anchor.t;
    double half = 0.5 * tail_span;
    double chord_min = kInf, chord_max = 0.0;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        double dt = tail[i].t - anchor.t;
        if (dt < half || dt <= 0.0) continue;
        double c = (tail[i].f - anchor.f) / dt;
        rep.chord_slopes.push_back(c);
        chord_min = std::min(chord_min, c);
        chord_max = std::max(chord_max, c);
    }
    rep.d_upper = chord_min > 0.0 ? 1.0 / chord_min : kInf;
    rep.d_lower = chord_max > 0.0 ? 1.0 / chord_max : kInf;

    // delta-indices: window slopes over all boundary pairs at least h_min
    // apart, h_min being the h-ladder floor (clamped so that the d-chords
    // stay a subset and the reported ordering holds structurally).
    double h_min = tail_span / std::pow(policy.h_grid.base, policy.h_grid.count - 1);
    h_min = std::min(h_min, half);
    double sup_phi = 0.0, inf_phi = kInf;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        for (std::size_t j = i + 1; j < tail.size(); ++j) {
            double w = tail[j].t - tail[i].t;
            if (w < h_min) continue;
            double slope = (tail[j].f - tail[i].f) / w;
            sup_phi = std::max(sup_phi, slope);
            inf_phi = std::min(inf_phi, slope);
            if (rep.window_slopes.size() < 20000) rep.window_slopes.push_back(slope);
        }
    }
    rep.delta_lower = sup_phi > 0.0 ? 1.0 / sup_phi : kInf;
    rep.delta_upper = inf_phi > 0.0 ? 1.0 / inf_phi : kInf;
    return rep;
}

// ---------------------------------------------------------------------------

EccentricityReport eccentricity(const StepFunction& mu, double lambda,
                                const WindowPolicy& policy) {
    policy.validate();
    if (!(lambda > 1.0)) throw validation_error("eccentricity: lambda must exceed 1");
    EccentricityReport rep;
    auto cls = classify_summability(mu);
    if (cls.verdict == Summability::inconclusive) return rep;

    auto ev = boundary_events(mu);
    if (ev.size() < 4) return rep;
    double t_first = ev.front().t, t_last = ev.back().t;
    double t_lo = t_first + policy.head_discard_fraction * (t_last - t_first);

    const bool summable = cls.verdict == Summability::summable;
    double total = mu.total_mass() + cls.tail_estimate;
    std::vector<std::pair<double, double>> ratios;  // (t, ratio)
    double running_min = kInf;
    const auto& es = mu.entries();
    for (std::size_t i = 0; i + 1 < es.size(); ++i) {
        double x = mu.cum_width(i);
        double t = std::log(x);
        if (t < t_lo) continue;
        double s = summable ? total - mu.cum_mass(i) : mu.cum_mass(i);
        if (!(s > 0.0)) continue;
        double r = x * es[i + 1].value / s;
        ratios.emplace_back(t, r);
        if (r < running_min) {
            running_min = r;
            rep.witness.push_back(x);
        }
    }
    if (ratios.size() < 4) return rep;
    rep.final_ratio = running_min;

    // Trend across the two halves of the log-x span (index halves would let
    // streams with many shallow boundaries mask the tail).
    double t_mid = 0.5 * (ratios.front().first + ratios.back().first);
    double head_min = kInf, tail_min = kInf;
    for (const auto& [t, r] : ratios)
        (t < t_mid ? head_min : tail_min) = std::min(t < t_mid ? head_min : tail_min, r);

    if (running_min < 0.2 && tail_min <= 0.7 * head_min)
        rep.verdict = EccVerdict::eccentric;
    else if (running_min >= 0.25 && tail_min >= 0.8 * head_min)
        rep.verdict = EccVerdict::not_eccentric;
    return rep;
}

TraceabilityInterval traceability_interval(const StepFunction& mu,
                                           const WindowPolicy& policy) {
    auto rep = indices(mu, policy);
    TraceabilityInterval out;
    out.tolerance = policy.tolerance;
    out.lo = std::max(rep.delta_lower, 0.0);
    out.hi = rep.delta_upper;
    out.empty = !(out.hi > 0.0) || out.lo > out.hi;
    out.contains_dimension =
        !out.empty && rep.d_upper >= out.lo - policy.tolerance &&
        rep.d_upper <= out.hi + policy.tolerance;
    return out;
}

// ---------------------------------------------------------------------------

void write_step_csv(const StepFunction& mu, const std::string& csv_path) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    out << "value,width\n";
    char buf[80];
    for (const auto& e : mu.entries()) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", e.value, e.width);
        out << buf;
    }
    nlohmann::json meta;
    meta["truncated"] = mu.truncated();
    meta["total_width"] = mu.total_width();
    std::ofstream ms(csv_path + ".meta.json");
    ms << meta.dump(2) << "\n";
}

StepFunction read_step_csv(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot read " + csv_path);
    std::string line;
    std::vector<StepEntry> entries;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        std::istringstream ls(line);
        StepEntry e;
        char comma;
        if (!(ls >> e.value >> comma >> e.width))
            throw std::runtime_error("malformed step CSV row: " + line);
        entries.push_back(e);
    }
    bool truncated = false;
    std::ifstream ms(csv_path + ".meta.json");
    if (ms) {
        nlohmann::json meta = nlohmann::json::parse(ms);
        truncated = meta.value("truncated", false);
    }
    return build_step_function(std::move(entries), truncated);
}

} // namespace specfrac
