#include "specfrac/zeta.hpp"

#include <algorithm>
#include <cmath>

namespace specfrac {

ZetaReport zeta_partial(const Spectrum& s, double alpha, double N) {
    if (!(alpha > 0.0)) throw validation_error("zeta_partial: alpha must be positive");
    ZetaReport rep;
    rep.alpha = alpha;
    double left = N;
    std::vector<double> masses;
    masses.reserve(s.entries.size());
    for (const auto& e : s.entries) {
        if (left <= 0.0) break;
        double take = std::min(left, e.multiplicity);
        double mass = std::pow(e.value, alpha) * take;
        rep.partial += mass;
        rep.n_used += take;
        left -= take;
        if (take == e.multiplicity) masses.push_back(mass);
    }

    // Tail bound when the per-entry masses decay geometrically, allowing a
    // 2-periodic pattern (lag-2 ratios).
    std::size_t n = masses.size();
    if (left > 0.0 || N >= s.total_multiplicity()) {
        if (n >= 8) {
            double q1 = 0.0;
            bool lag1 = true;
            for (std::size_t i = n - 5; i < n; ++i) {
                double r = masses[i] / masses[i - 1];
                if (!(r <= 0.97)) { lag1 = false; break; }
                q1 = std::max(q1, r);
            }
            if (lag1) {
                rep.tail_bound = masses[n - 1] * q1 / (1.0 - q1);
                rep.converged = Summability::summable;
            } else {
                double q2 = 0.0;
                bool lag2 = true;
                for (std::size_t i = n - 4; i < n; ++i) {
                    double r = masses[i] / masses[i - 2];
                    if (!(r <= 0.95)) { lag2 = false; break; }
                    q2 = std::max(q2, r);
                }
                if (lag2) {
                    rep.tail_bound = (masses[n - 1] + masses[n - 2]) * q2 / (1.0 - q2);
                    rep.converged = Summability::summable;
                }
            }
            if (rep.converged != Summability::summable) {
                bool growing = true;
                for (std::size_t i = n - 4; i < n; ++i)
                    growing = growing && masses[i] >= 0.98 * masses[i - 1];
                if (growing) rep.converged = Summability::divergent;
            }
        }
    }
    return rep;
}

namespace {

// Sign of the per-window log-mass slope of mu^alpha; negative means the
// integral converges.
struct SideProbe {
    bool summable = false;
    bool confident = false;
};

SideProbe summability_side(const StepFunction& mu, double alpha) {
    StepFunction nu = power(mu, alpha);
    double t_max = std::log(nu.total_width());
    double t_min = std::log(nu.cum_width(0));
    double lo = t_max - 0.5 * (t_max - t_min);
    const int k = 8;
    double L = (t_max - lo) / k;
    // Cut points snap to step boundaries so window masses are whole-block
    // sums; free cuts chop levels and the partial-block noise can outweigh
    // log(ratio) near the abscissa.
    const auto& bounds = nu.cum_widths();
    std::vector<double> cuts;
    for (int j = 0; j <= k; ++j) {
        double x = std::exp(lo + j * L);
        auto it = std::upper_bound(bounds.begin(), bounds.end(), x);
        double snapped = it == bounds.begin() ? bounds.front() : *(it - 1);
        if (cuts.empty() || snapped > cuts.back()) cuts.push_back(snapped);
    }
    SideProbe p;
    if (cuts.size() < 3) {
        p.summable = nu.mass_up_to(std::exp(t_max)) - nu.mass_up_to(std::exp(lo)) <
                     nu.mass_up_to(std::exp(lo));
        p.confident = false;
        return p;
    }
    std::vector<double> logs;
    for (std::size_t j = 1; j < cuts.size(); ++j) {
        double m = nu.mass_up_to(cuts[j]) - nu.mass_up_to(cuts[j - 1]);
        double t = std::log(cuts[j]) - std::log(cuts[j - 1]);
        // log mass density per unit log-x: window widths vary after snapping
        logs.push_back(std::log(std::max(m, 1e-300)) - std::log(t));
    }
    double mean = 0.0;
    for (std::size_t j = 1; j < logs.size(); ++j) mean += logs[j] - logs[j - 1];
    mean /= static_cast<double>(logs.size() - 1);
    double var = 0.0;
    for (std::size_t j = 1; j < logs.size(); ++j) {
        double d = logs[j] - logs[j - 1] - mean;
        var += d * d;
    }
    double sd = std::sqrt(var / static_cast<double>(logs.size() - 1));
    p.summable = mean < 0.0;
    p.confident = std::fabs(mean) > 0.75 * sd + 1e-12;
    return p;
}

} // namespace

AbscissaResult abscissa(const Spectrum& s, double lo, double hi, double tol) {
    if (!(lo > 0.0 && hi > lo)) throw validation_error("abscissa: need 0 < lo < hi");
    StepFunction mu = to_step_function(s);
    AbscissaResult res;
    SideProbe plo = summability_side(mu, lo);
    SideProbe phi = summability_side(mu, hi);
    if (plo.summable) {
        // convergent already at the bracket floor: d <= lo
        res.d = lo;
        if (!plo.confident) ++res.inconclusive_steps;
        return res;
    }
    if (!phi.summable)
        throw validation_error("abscissa: bracket does not straddle the convergence boundary");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        SideProbe pm = summability_side(mu, mid);
        if (!pm.confident) ++res.inconclusive_steps;
        (pm.summable ? hi : lo) = mid;
    }
    res.d = 0.5 * (lo + hi);
    return res;
}

SelfSimilarReport selfsimilar_report(const FractalSpec& spec) {
    require_valid(spec);
    bool single_level = spec.listed_levels() == 1 && spec.tail_period == 1;
    if (!single_level)
        throw validation_error("selfsimilar_report: spec is not a single-level periodic fractal");
    SelfSimilarReport rep;
    double len = spec.b - spec.a;
    std::vector<std::pair<double, double>> images;
    for (const auto& w : spec.level_maps(1)) {
        rep.lambdas.push_back(w.ratio);
        images.emplace_back(w.offset, w.offset + w.ratio * len);
    }
    std::sort(images.begin(), images.end());
    for (std::size_t i = 1; i < images.size(); ++i)
        rep.gap_lengths.push_back(images[i].first - images[i - 1].second);

    // sum lambda_j^d = 1, strictly decreasing in d.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double g = -1.0;
        for (double l : rep.lambdas) g += std::pow(l, mid);
        (g > 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-14) break;
    }
    rep.dimension = 0.5 * (lo + hi);

    double denom = 0.0;
    for (double l : rep.lambdas) denom += std::pow(l, rep.dimension) * std::log(1.0 / l);
    double csum = 0.0;
    for (double c : rep.gap_lengths) csum += std::pow(c, rep.dimension);
    rep.zeta_f_residue = 2.0 * len / denom;
    rep.zeta_l_residue = 2.0 * csum / denom;
    return rep;
}

double zeta_filled_closed(const SelfSimilarReport& r, double interval_length, double s) {
    double q = 0.0;
    for (double l : r.lambdas) q += std::pow(l, s);
    if (!(q < 1.0)) throw validation_error("zeta_filled_closed: s at or below the abscissa");
    return 2.0 * interval_length / (1.0 - q);
}

double zeta_lacunary_closed(const SelfSimilarReport& r, double s) {
    double q = 0.0;
    for (double l : r.lambdas) q += std::pow(l, s);
    if (!(q < 1.0)) throw validation_error("zeta_lacunary_closed: s at or below the abscissa");
    double c = 0.0;
    for (double g : r.gap_lengths) c += std::pow(g, s);
    return 2.0 * c / (1.0 - q);
}

SymmetricDimensions symmetric_dimension_and_delta(const std::vector<int>& p,
                                                  const std::vector<double>& lambda,
                                                  int tail_period) {
    if (p.empty() || p.size() != lambda.size())
        throw validation_error("symmetric dimensions: bad p/lambda sequences");
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 2) throw validation_error("symmetric dimensions: p must be >= 2");
        if (!(p[i] * lambda[i] < 1.0))
            throw validation_error("symmetric dimensions: requires p*lambda < 1");
    }
    int n = static_cast<int>(p.size());
    bool periodic = tail_period > 0 && tail_period <= n;

    SymmetricDimensions out;
    std::vector<double> lp(p.size()), ll(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        lp[i] = std::log(static_cast<double>(p[i]));
        ll[i] = std::log(1.0 / lambda[i]);
    }

    if (periodic) {
        int start = n - tail_period;
        double sp = 0.0, sl = 0.0;
        for (int i = start; i < n; ++i) { sp += lp[i]; sl += ll[i]; }
        out.d = sp / sl;
    } else {
        // limsup surrogate over the tail half of the prefix ratios
        double sp = 0.0, sl = 0.0, best = 0.0;
        for (int i = 0; i < n; ++i) {
            sp += lp[i];
            sl += ll[i];
            if (i >= n / 2) best = std::max(best, sp / sl);
        }
        out.d = best;
    }

    // Uniform generation asks sup p_n lambda_n < 1 for the whole sequence;
    // on finite data, a gap 1 - p*lambda still halving at the end of the
    // listed range is read as tending to 1.
    double worst_pl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        worst_pl = std::max(worst_pl, p[i] * lambda[i]);
    bool closing_in = false;
    if (!periodic && p.size() >= 8) {
        double gap_mid = 1.0 - p[p.size() / 2] * lambda[p.size() / 2];
        double gap_last = 1.0 - p.back() * lambda.back();
        closing_in = gap_last <= 0.6 * gap_mid;
    }
    if (worst_pl >= 1.0 - 1e-6 || closing_in) {
        out.withheld_reason =
            "uniform generation fails: sup p*lambda tends to 1 (max listed " +
            std::to_string(worst_pl) + ")";
        return out;
    }

    double wlo = kInf, whi = 0.0;
    if (periodic) {
        int start = n - tail_period;
        int maxlen = 4 * tail_period;
        for (int s = 0; s < tail_period; ++s) {
            double sp = 0.0, sl = 0.0;
            for (int len = 1; len <= maxlen; ++len) {
                int idx = start + (s + len - 1) % tail_period;
                sp += lp[static_cast<std::size_t>(idx)];
                sl += ll[static_cast<std::size_t>(idx)];
                double r = sp / sl;
                wlo = std::min(wlo, r);
                whi = std::max(whi, r);
            }
        }
    } else {
        int start = n / 2;
        for (int s = start; s < n; ++s) {
            double sp = 0.0, sl = 0.0;
            for (int e = s; e < n; ++e) {
                sp += lp[static_cast<std::size_t>(e)];
                sl += ll[static_cast<std::size_t>(e)];
                double r = sp / sl;
                wlo = std::min(wlo, r);
                whi = std::max(whi, r);
            }
        }
    }
    out.delta_lower = wlo;
    out.delta_upper = whi;
    return out;
}

} // namespace specfrac
