#include "specfrac/traces.hpp"

#include <algorithm>
#include <cmath>

namespace specfrac {

LimitProcedure LimitProcedure::cesaro_log(double x0, double base, int count) {
    LimitProcedure p;
    p.kind = Kind::cesaro_log;
    p.x0 = x0;
    p.growth = base;
    p.max_scales = count;
    return p;
}

LimitProcedure LimitProcedure::geometric(double x0, double ratio, int count) {
    LimitProcedure p;
    p.kind = Kind::geometric_subsequence;
    p.x0 = x0;
    p.growth = ratio;
    p.max_scales = count;
    return p;
}

LimitProcedure LimitProcedure::levels() {
    LimitProcedure p;
    p.kind = Kind::level_sequence;
    return p;
}

LimitProcedure LimitProcedure::witness_scales(std::vector<double> xs) {
    LimitProcedure p;
    p.kind = Kind::witness_sequence;
    p.witness = std::move(xs);
    return p;
}

std::string LimitProcedure::name() const {
    switch (kind) {
        case Kind::cesaro_log: return "cesaro_log";
        case Kind::geometric_subsequence: return "geometric_subsequence";
        case Kind::level_sequence: return "level_sequence";
        case Kind::witness_sequence: return "witness_sequence";
    }
    return "?";
}

std::vector<LimitProcedure> default_procedures() {
    return {LimitProcedure::cesaro_log(), LimitProcedure::geometric(6.0, 3.0, 48),
            LimitProcedure::levels()};
}

namespace {

// Largest step boundary <= x, or 0 when x lies before the first one.
double snap_down(const std::vector<double>& boundaries, double x) {
    auto it = std::upper_bound(boundaries.begin(), boundaries.end(), x);
    if (it == boundaries.begin()) return 0.0;
    return *(it - 1);
}

void push_unique(std::vector<double>& xs, double x) {
    if (x > 0.0 && (xs.empty() || x > xs.back())) xs.push_back(x);
}

} // namespace

std::vector<double> LimitProcedure::scales(const StepFunction& mu) const {
    const auto& bounds = mu.cum_widths();
    if (bounds.empty()) throw validation_error("limit procedure: empty stream");
    double w = bounds.back();
    // The first scale anchors chord readings, so it must sit past the
    // pre-asymptotic head: lift the user floor to W^{1/5}.
    double x_start = std::max(x0, std::pow(w, 0.2));
    std::vector<double> xs;
    switch (kind) {
        case Kind::level_sequence: {
            std::size_t first = 0;
            while (first < bounds.size() && bounds[first] < x_start) ++first;
            if (first == bounds.size()) first = bounds.size() > 2 ? bounds.size() / 2 : 0;
            std::size_t n = bounds.size() - first;
            std::size_t cap = static_cast<std::size_t>(std::max(max_scales, 2));
            if (n <= cap) {
                for (std::size_t i = first; i < bounds.size(); ++i)
                    push_unique(xs, bounds[i]);
            } else {
                for (std::size_t k = 0; k < cap; ++k)
                    push_unique(xs, bounds[first + k * (n - 1) / (cap - 1)]);
            }
            break;
        }
        case Kind::cesaro_log:
        case Kind::geometric_subsequence: {
            double x = x_start;
            for (int i = 0; i < max_scales && x <= w; ++i) {
                push_unique(xs, snap_down(bounds, x));
                x *= growth;
            }
            push_unique(xs, snap_down(bounds, w));
            break;
        }
        case Kind::witness_sequence: {
            for (double x : witness)
                if (x <= w) push_unique(xs, snap_down(bounds, x));
            break;
        }
    }
    if (xs.size() < 2)
        throw validation_error("limit procedure " + name() +
                               ": fewer than 2 usable scales (insufficient depth)");
    return xs;
}

double LimitProcedure::reduce(const std::vector<double>& readings) const {
    if (readings.empty()) throw validation_error("limit procedure: no readings");
    if (kind == Kind::cesaro_log) {
        std::size_t from = readings.size() / 2;
        double s = 0.0;
        for (std::size_t i = from; i < readings.size(); ++i) s += readings[i];
        return s / static_cast<double>(readings.size() - from);
    }
    return readings.back();
}

namespace {

double last_decade_spread(const std::vector<double>& xs, const std::vector<double>& readings) {
    if (readings.empty()) return 0.0;
    double lo = kInf, hi = -kInf;
    double cutoff = xs.back() / 10.0;
    for (std::size_t i = 0; i < readings.size(); ++i) {
        double x = xs[i + xs.size() - readings.size()];
        if (x < cutoff) continue;
        lo = std::min(lo, readings[i]);
        hi = std::max(hi, readings[i]);
    }
    return hi > lo ? hi - lo : 0.0;
}

TraceReport finish_report(const LimitProcedure& proc, const std::vector<double>& xs,
                          std::vector<double> readings, std::vector<double> raw) {
    TraceReport rep;
    rep.value = proc.reduce(readings);
    rep.spread = last_decade_spread(xs, readings);
    rep.scales_used = xs.size();
    rep.scale_lo = xs.front();
    rep.scale_hi = xs.back();
    rep.readings = std::move(readings);
    rep.raw_ratios = std::move(raw);
    return rep;
}

// Ratio functionals S_b(x)/S_a(x) carry two finite-size transients: an
// additive constant that cancels in increments, and a rank-cutoff distortion
// near the truncation edge (the sorted numerator saturates once every listed
// entry is counted). So the scales are clipped to an interior band and the
// readings are increment chords from the band's first scale.
std::vector<double> interior_band(const std::vector<double>& xs, double width) {
    double lo = std::pow(width, 0.6), hi = width / 16.0;
    std::vector<double> clipped;
    for (double x : xs)
        if (x >= lo && x <= hi) clipped.push_back(x);
    if (clipped.size() >= 2) return clipped;
    return xs;  // too shallow to stay clear of both edges; use what exists
}

template <class NumFn, class DenFn>
TraceReport ratio_report(const LimitProcedure& proc, const std::vector<double>& xs,
                         NumFn&& num, DenFn&& den) {
    std::vector<double> readings, raw;
    double n0 = num(xs.front());
    double d0 = den(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double ni = num(xs[i]);
        double di = den(xs[i]);
        if (!(di > d0)) continue;
        readings.push_back((ni - n0) / (di - d0));
        raw.push_back(di > 0.0 ? ni / di : 0.0);
    }
    if (readings.empty())
        throw validation_error("ratio functional: no usable scales past the anchor");
    return finish_report(proc, xs, std::move(readings), std::move(raw));
}

} // namespace

TraceReport dixmier(const StepFunction& mu_powered, const LimitProcedure& proc) {
    auto xs = proc.scales(mu_powered);
    double s0 = mu_powered.mass_up_to(xs.front());
    double t0 = std::log(xs.front());
    std::vector<double> readings, raw;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double s = mu_powered.mass_up_to(xs[i]);
        double t = std::log(xs[i]);
        readings.push_back((s - s0) / (t - t0));
        raw.push_back(s / t);
    }
    return finish_report(proc, xs, std::move(readings), std::move(raw));
}

TraceReport dixmier(const Spectrum& s, double exponent, const LimitProcedure& proc) {
    if (!(exponent > 0.0)) throw validation_error("dixmier: exponent must be positive");
    return dixmier(power(to_step_function(s), exponent), proc);
}

TraceReport singular_trace_ratio(const StepFunction& reference, const StepFunction& target,
                                 const LimitProcedure& proc, const WindowPolicy& policy) {
    auto xs = interior_band(proc.scales(reference), reference.total_width());
    if (xs.size() < 2)
        throw validation_error("singular_trace_ratio: fewer than 2 usable scales");
    auto rep = ratio_report(
        proc, xs, [&](double x) { return target.mass_up_to(x); },
        [&](double x) { return reference.mass_up_to(x); });
    auto ecc = eccentricity(reference, 2.0, policy);
    if (ecc.verdict != EccVerdict::eccentric)
        rep.warning = "reference is not eccentric with a stable margin (" +
                      std::string(ecc.verdict == EccVerdict::not_eccentric ? "not eccentric"
                                                                           : "inconclusive") +
                      ")";
    return rep;
}

TraceReport singular_trace_ratio(const Spectrum& reference, double ref_exponent,
                                 const Spectrum& target, double target_exponent,
                                 const LimitProcedure& proc, const WindowPolicy& policy) {
    StepFunction ref = power(to_step_function(reference), ref_exponent);
    StepFunction tgt = power(to_step_function(target), target_exponent);
    LimitProcedure p = proc;
    if (p.kind == LimitProcedure::Kind::witness_sequence && p.witness.empty()) {
        auto ecc = eccentricity(ref, 2.0, policy);
        p.witness = ecc.witness;
    }
    return singular_trace_ratio(ref, tgt, p, policy);
}

// ---------------------------------------------------------------------------

namespace {

// The two partial-sum streams of the pair (f |D|^{-s}, |D|^{-s}), cut by
// eigenvalue threshold: block k holds every interval of weight w_k = |I|^s,
// the denominator mass 2 w_k per interval and the numerator mass
// w_k (f(u)+f(v)). Cutting both operators at the same spectral threshold
// keeps the sums level-complete, which is what makes the ratios stable at
// desk-scale truncations (a global rank cut mixes blocks and converges only
// like 1/log x).
struct SpectralBlocks {
    StepFunction denominator;   // value w_k, width = endpoint count
    std::vector<double> num_cum;  // numerator mass through block k
};

SpectralBlocks collect_hb(const FractalSpec& spec, TripleKind kind, double s,
                          const std::function<double(double)>& f, int level,
                          std::size_t budget) {
    require_valid(spec);
    if (!(s > 0.0)) throw validation_error("hb_functional: exponent must be positive");
    std::vector<std::pair<double, double>> intervals;  // (left, right)
    if (kind == TripleKind::lacunary || kind == TripleKind::full)
        for (const auto& l : lacunae_up_to_level(spec, level, budget))
            intervals.emplace_back(l.left, l.right);
    if (kind == TripleKind::filled || kind == TripleKind::full)
        for (int k = 0; k <= level; ++k)
            for (const auto& c : cells_at_level(spec, k, budget))
                intervals.emplace_back(c.left, c.right);
    if (intervals.empty())
        throw validation_error("hb_functional: no intervals at this level");

    struct Item {
        double w;
        double fsum;
    };
    std::vector<Item> items;
    items.reserve(intervals.size());
    for (const auto& [u, v] : intervals) {
        double fu = f(u), fv = f(v);
        if (!std::isfinite(fu) || !std::isfinite(fv))
            throw validation_error("hb_functional: f undefined at an interval endpoint");
        items.push_back({std::pow(v - u, s), fu + fv});
    }
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return a.w > b.w; });
    // merge near-equal weights: the many intervals of one level differ by a
    // few ulps along their float paths, so chains compare neighbor to
    // neighbor rather than to the block head
    std::vector<StepEntry> den;
    std::vector<double> num;
    double prev_w = -1.0;
    for (const auto& it : items) {
        if (!den.empty() && prev_w - it.w <= 1e-12 * prev_w) {
            den.back().width += 2.0;
            num.back() += it.w * it.fsum;
        } else {
            den.push_back({it.w, 2.0});
            num.push_back(it.w * it.fsum);
        }
        prev_w = it.w;
    }
    SpectralBlocks blocks;
    double acc = 0.0;
    for (double& n : num) {
        acc += n;
        n = acc;
    }
    blocks.num_cum = std::move(num);
    blocks.denominator = build_step_function(std::move(den), true);
    return blocks;
}

} // namespace

TraceReport hb_functional(const FractalSpec& spec, TripleKind kind, double s,
                          const std::function<double(double)>& f,
                          const LimitProcedure& proc, int level, std::size_t budget) {
    auto blocks = collect_hb(spec, kind, s, f, level, budget);
    const StepFunction& den = blocks.denominator;
    auto xs = interior_band(proc.scales(den), den.total_width());
    if (xs.size() < 2)
        throw validation_error("hb_functional: level insufficient for the procedure");
    auto num_at = [&](double x) {
        // x is a block boundary (scales snap down to them)
        const auto& widths = den.cum_widths();
        auto it = std::lower_bound(widths.begin(), widths.end(), x * (1.0 - 1e-15));
        std::size_t i = std::min<std::size_t>(
            static_cast<std::size_t>(it - widths.begin()), widths.size() - 1);
        return blocks.num_cum[i];
    };
    return ratio_report(
        proc, xs, num_at, [&](double x) { return den.mass_up_to(x); });
}

MeasurabilityReport measurability_spread(const FractalSpec& spec, TripleKind kind, double s,
                                         const std::function<double(double)>& f,
                                         const std::vector<LimitProcedure>& procedures,
                                         int level, double tolerance, std::size_t budget) {
    if (procedures.size() < 2)
        throw validation_error("measurability_spread: need at least 2 procedures");
    MeasurabilityReport rep;
    rep.tolerance = tolerance;
    for (const auto& p : procedures)
        rep.values.push_back(hb_functional(spec, kind, s, f, p, level, budget).value);
    auto [lo, hi] = std::minmax_element(rep.values.begin(), rep.values.end());
    rep.spread = *hi - *lo;
    rep.pass = rep.spread < tolerance;
    return rep;
}

GaugeTraceReport gauge_trace(const GapList& gaps, const GaugeFunction& gauge,
                             const LimitProcedure& proc) {
    double d = gauge.exponent();
    if (!(d > 0.0 && d < 1.0))
        throw validation_error("gauge_trace: gauge exponent must lie in (0,1)");
    if (gaps.empty()) throw validation_error("gauge_trace: empty gap list");

    std::vector<StepEntry> entries;
    entries.reserve(gaps.size());
    for (const auto& g : gaps) entries.push_back({std::pow(g.length, d), 2.0 * g.count});
    StepFunction target = build_step_function(std::move(entries), true);

    auto xs = proc.scales(target);
    // Reference partial sums sum_{n<=x} g(n)^d, accumulated once across the
    // ascending scales.
    std::vector<double> ref(xs.size(), 0.0);
    double acc = 0.0;
    double n = 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (; n <= xs[i]; n += 1.0) acc += std::pow(gauge.g(n), d);
        ref[i] = acc;
    }
    double t0 = target.mass_up_to(xs.front());
    std::vector<double> readings, raw;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double ti = target.mass_up_to(xs[i]);
        readings.push_back((ti - t0) / (ref[i] - ref[0]));
        raw.push_back(ti / ref[i]);
    }
    GaugeTraceReport out;
    out.trace = finish_report(proc, xs, std::move(readings), std::move(raw));
    auto mink = minkowski_content(gaps, gauge, 0.0, 0.0, 64, 0.01, estimate_gap_tail(gaps));
    out.content = mink;
    if (mink.measurable)
        out.expected_from_content = std::pow(2.0, d) * (1.0 - d) * mink.estimate;
    return out;
}

HalvingReport halving_ratio(const Spectrum& s, const WindowPolicy& policy) {
    policy.validate();
    StepFunction mu = to_step_function(s);
    double w = mu.total_width();
    if (!(w >= 16.0)) throw validation_error("halving_ratio: insufficient depth");
    HalvingReport rep;
    double lo = std::max(4.0, std::pow(w, policy.head_discard_fraction));
    double hi = w / 2.0;
    const int pts = 64;
    double step = std::pow(hi / lo, 1.0 / (pts - 1));
    double x = lo;
    for (int i = 0; i < pts; ++i, x *= step) {
        double num = mu.value_at(std::min(x, w * 0.999999));
        double den = mu.value_at(std::min(2.0 * x, w * 0.999999));
        if (den > 0.0) rep.ratios.push_back(num / den);
    }
    if (rep.ratios.size() < 8) throw validation_error("halving_ratio: insufficient depth");
    std::vector<double> tail(rep.ratios.begin() + rep.ratios.size() / 2, rep.ratios.end());
    std::sort(tail.begin(), tail.end());
    double med = tail[tail.size() / 2];
    // stability on the 10-90 percentile band: a grid point landing exactly
    // on a level seam reads a spurious ratio without the limit failing
    double q10 = tail[tail.size() / 10];
    double q90 = tail[(tail.size() * 9) / 10];
    rep.ratio = med;
    rep.stable = (q90 - q10) / med < 0.1;
    if (rep.stable && med > 1.0 + 1e-9)
        rep.implied_dimension = std::log(2.0) / std::log(med);
    return rep;
}

} // namespace specfrac
