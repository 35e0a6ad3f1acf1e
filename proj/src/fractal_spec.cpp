#include "specfrac/fractal_spec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace specfrac {

using nlohmann::json;

int FractalSpec::listed_levels() const { return static_cast<int>(levels.size()); }

const std::vector<Similarity>& FractalSpec::level_maps(int n) const {
    if (n < 1) throw validation_error("level index must be >= 1");
    int m = listed_levels();
    if (n <= m) return levels[static_cast<std::size_t>(n - 1)];
    if (tail_period <= 0)
        throw validation_error("level " + std::to_string(n) +
                               " beyond a finite level list with no periodic tail");
    int start = m - tail_period;
    int idx = start + (n - 1 - start) % tail_period;
    return levels[static_cast<std::size_t>(idx)];
}

FractalSpec FractalSpec::self_similar(double a, double b, std::vector<Similarity> maps) {
    FractalSpec s;
    s.a = a;
    s.b = b;
    s.kind = GeneratorKind::self_similar;
    s.levels.push_back(std::move(maps));
    s.tail_period = 1;
    return s;
}

namespace {

std::vector<Similarity> symmetric_level(double a, double b, int p, double lambda) {
    // p evenly spaced cells of relative length lambda, first at a, last
    // ending at b; the stride is cell plus gap, gap = (1 - p*lambda)/(p - 1).
    std::vector<Similarity> maps;
    maps.reserve(static_cast<std::size_t>(p));
    double len = b - a;
    double gap = p > 1 ? (1.0 - p * lambda) / (p - 1) : 0.0;
    for (int i = 0; i < p; ++i) {
        Similarity w;
        w.ratio = lambda;
        w.offset = a + i * (lambda + gap) * len;
        w.orientation = +1;
        maps.push_back(w);
    }
    return maps;
}

} // namespace

FractalSpec FractalSpec::symmetric_fractal(double a, double b, std::vector<int> p,
                                           std::vector<double> lambda, int tail_period) {
    if (p.size() != lambda.size())
        throw validation_error("symmetric form: p and lambda must have equal length");
    FractalSpec s;
    s.a = a;
    s.b = b;
    s.kind = GeneratorKind::symmetric;
    for (std::size_t i = 0; i < p.size(); ++i)
        s.levels.push_back(symmetric_level(a, b, p[i], lambda[i]));
    s.symmetric = SymmetricForm{std::move(p), std::move(lambda)};
    s.tail_period = tail_period;
    return s;
}

FractalSpec cantor_spec() {
    return FractalSpec::self_similar(0.0, 1.0,
                                     {{1.0 / 3.0, 0.0, +1}, {1.0 / 3.0, 2.0 / 3.0, +1}});
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate(const FractalSpec& spec) {
    std::vector<std::string> issues;
    if (!(spec.a < spec.b)) issues.push_back("interval: need a < b");
    if (spec.levels.empty()) issues.push_back("no generator levels");
    if (spec.tail_period < 0 || spec.tail_period > spec.listed_levels())
        issues.push_back("tail period must lie in [0, listed levels]");
    if (spec.symmetric) {
        const auto& f = *spec.symmetric;
        for (std::size_t i = 0; i < f.p.size(); ++i) {
            if (f.p[i] < 2)
                issues.push_back("symmetric level " + std::to_string(i + 1) + ": p must be >= 2");
            if (!(f.p[i] * f.lambda[i] < 1.0))
                issues.push_back("symmetric level " + std::to_string(i + 1) +
                                 ": requires p*lambda < 1, got " +
                                 std::to_string(f.p[i] * f.lambda[i]));
        }
    }
    double len = spec.b - spec.a;
    double eps = 1e-12 * std::max(1.0, std::fabs(len));
    for (int n = 1; n <= spec.listed_levels(); ++n) {
        const auto& maps = spec.levels[static_cast<std::size_t>(n - 1)];
        if (maps.empty()) {
            issues.push_back("level " + std::to_string(n) + ": empty similarity family");
            continue;
        }
        std::vector<std::pair<double, double>> images;
        for (std::size_t i = 0; i < maps.size(); ++i) {
            const auto& w = maps[i];
            std::string tag = "level " + std::to_string(n) + " map " + std::to_string(i + 1);
            if (!(w.ratio > 0.0 && w.ratio < 1.0))
                issues.push_back(tag + ": ratio must lie in (0,1)");
            double l = w.offset, r = w.offset + w.ratio * len;
            if (l < spec.a - eps || r > spec.b + eps)
                issues.push_back(tag + ": image not inside the base interval (condition i)");
            images.emplace_back(l, r);
        }
        std::sort(images.begin(), images.end());
        for (std::size_t i = 1; i < images.size(); ++i)
            if (images[i].first <= images[i - 1].second + eps)
                issues.push_back("level " + std::to_string(n) + ": images " +
                                 std::to_string(i) + "," + std::to_string(i + 1) +
                                 " overlap or touch (condition ii)");
        bool covers_a = false, covers_b = false;
        for (const auto& [l, r] : images) {
            covers_a = covers_a || std::fabs(l - spec.a) <= eps || std::fabs(r - spec.a) <= eps;
            covers_b = covers_b || std::fabs(l - spec.b) <= eps || std::fabs(r - spec.b) <= eps;
        }
        if (!covers_a || !covers_b)
            issues.push_back("level " + std::to_string(n) +
                             ": endpoint images do not cover {a,b} (condition iii)");
    }
    return issues;
}

void require_valid(const FractalSpec& spec) {
    auto issues = validate(spec);
    if (!issues.empty()) {
        std::string msg = "invalid fractal spec:";
        for (const auto& s : issues) msg += "\n  " + s;
        throw validation_error(msg);
    }
}

// ---------------------------------------------------------------------------

namespace {

struct Affine {
    double s = 1.0;
    double t = 0.0;
    double apply(double x) const { return s * x + t; }
};

Affine map_affine(const Similarity& w, double a, double b) {
    if (w.orientation >= 0) return {w.ratio, w.offset - w.ratio * a};
    return {-w.ratio, w.offset + w.ratio * b};
}

} // namespace

std::vector<Cell> cells_at_level(const FractalSpec& spec, int n, std::size_t budget) {
    require_valid(spec);
    if (n < 0) throw validation_error("cells_at_level: level must be nonnegative");
    // Budget check up front.
    double count = 1;
    for (int k = 1; k <= n; ++k) {
        count *= static_cast<double>(spec.level_maps(k).size());
        if (count > static_cast<double>(budget))
            throw budget_error("cells_at_level: level " + std::to_string(n) + " needs " +
                               std::to_string(count) + " cells, budget is " +
                               std::to_string(budget));
    }
    struct Node {
        Affine tr;
        std::vector<int> sigma;
    };
    std::vector<Node> frontier{{Affine{}, {}}};
    for (int k = 1; k <= n; ++k) {
        const auto& maps = spec.level_maps(k);
        std::vector<Node> next;
        next.reserve(frontier.size() * maps.size());
        for (const auto& node : frontier) {
            for (std::size_t i = 0; i < maps.size(); ++i) {
                Affine m = map_affine(maps[i], spec.a, spec.b);
                Node child;
                child.tr = {node.tr.s * m.s, node.tr.s * m.t + node.tr.t};
                child.sigma = node.sigma;
                child.sigma.push_back(static_cast<int>(i));
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    std::vector<Cell> cells;
    cells.reserve(frontier.size());
    for (auto& node : frontier) {
        double u = node.tr.apply(spec.a), v = node.tr.apply(spec.b);
        Cell c;
        c.left = std::min(u, v);
        c.right = std::max(u, v);
        c.ratio = std::fabs(node.tr.s);
        c.sigma = std::move(node.sigma);
        cells.push_back(std::move(c));
    }
    std::sort(cells.begin(), cells.end(),
              [](const Cell& x, const Cell& y) { return x.left < y.left; });
    return cells;
}

std::vector<Lacuna> lacunae_up_to_level(const FractalSpec& spec, int n, std::size_t budget) {
    require_valid(spec);
    std::vector<Lacuna> out;
    std::vector<Cell> parents = cells_at_level(spec, 0, budget);
    for (int k = 1; k <= n; ++k) {
        std::vector<Cell> cells = cells_at_level(spec, k, budget);
        // Children of one parent are contiguous (cells are sorted and
        // parents are disjoint), so gaps between consecutive cells inside a
        // parent are the lacunae born at level k.
        std::size_t ci = 0;
        for (const auto& par : parents) {
            double prev_right = -kInf;
            while (ci < cells.size() && cells[ci].right <= par.right + 1e-12 * (spec.b - spec.a)) {
                if (cells[ci].left >= par.left - 1e-12 * (spec.b - spec.a)) {
                    if (prev_right > -kInf && cells[ci].left > prev_right)
                        out.push_back({prev_right, cells[ci].left, k});
                    prev_right = cells[ci].right;
                }
                ++ci;
            }
        }
        parents = std::move(cells);
    }
    std::sort(out.begin(), out.end(),
              [](const Lacuna& x, const Lacuna& y) { return x.length() > y.length(); });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

GapList aggregate_sorted(std::vector<GapEntry> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const GapEntry& x, const GapEntry& y) { return x.length > y.length; });
    GapList out;
    for (const auto& g : raw) {
        if (!out.empty() && std::fabs(out.back().length - g.length) <=
                                1e-9 * std::max(out.back().length, g.length))
            out.back().count += g.count;
        else
            out.push_back(g);
    }
    return out;
}

// Gap lengths of one generator level inside the base interval.
std::vector<double> level_gap_lengths(const FractalSpec& spec, int n) {
    const auto& maps = spec.level_maps(n);
    double len = spec.b - spec.a;
    std::vector<std::pair<double, double>> images;
    for (const auto& w : maps)
        images.emplace_back(w.offset, w.offset + w.ratio * len);
    std::sort(images.begin(), images.end());
    std::vector<double> gaps;
    for (std::size_t i = 1; i < images.size(); ++i)
        gaps.push_back(images[i].first - images[i - 1].second);
    return gaps;
}

} // namespace

// Largest interval the construction can still produce beyond the cutoff: a
// truncated multi-ratio enumeration is value-complete only above it. Entries
// below would be missing peers from deeper levels inside larger cells.
double completeness_floor(const FractalSpec& spec, int level) {
    double len = spec.b - spec.a;
    for (int k = 1; k <= level + 1; ++k) {
        double mx = 0.0;
        for (const auto& w : spec.level_maps(k)) mx = std::max(mx, w.ratio);
        len *= mx;
    }
    return len;
}

GapList gap_list(const FractalSpec& spec, int level, std::size_t budget) {
    require_valid(spec);
    // Closed form: track the multiset of cell ratio products level by level;
    // the new gaps at level k are the generator's gaps scaled by each parent
    // product. Distinct products stay few for the specs with closed forms.
    std::map<double, double, std::greater<double>> products{{1.0, 1.0}};
    std::vector<GapEntry> raw;
    bool closed_ok = true;
    for (int k = 1; k <= level && closed_ok; ++k) {
        auto gaps_rel = level_gap_lengths(spec, k);
        for (const auto& [prod, cnt] : products) {
            for (double g : gaps_rel)
                raw.push_back({g * prod, cnt});
        }
        std::map<double, double, std::greater<double>> next;
        const auto& maps = spec.level_maps(k);
        for (const auto& [prod, cnt] : products)
            for (const auto& w : maps) next[prod * w.ratio] += cnt;
        if (next.size() > 4096) closed_ok = false;  // generic spec: enumerate instead
        products = std::move(next);
    }
    if (!closed_ok) {
        raw.clear();
        for (const auto& l : lacunae_up_to_level(spec, level, budget))
            raw.push_back({l.length(), 1.0});
    }
    auto gaps = aggregate_sorted(std::move(raw));
    double floor = completeness_floor(spec, level);
    while (!gaps.empty() && gaps.back().length < floor) gaps.pop_back();
    return gaps;
}

GapList read_gaps_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<GapEntry> raw;
    std::string line;
    double prev = kInf;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double v = std::stod(line);
        if (!(v > 0.0)) throw validation_error("gap lengths must be positive");
        if (v > prev) throw validation_error("gap lengths must be non-increasing");
        prev = v;
        raw.push_back({v, 1.0});
    }
    return aggregate_sorted(std::move(raw));
}

double total_gap_length(const GapList& gaps) {
    double s = 0.0;
    for (const auto& g : gaps) s += g.length * g.count;
    return s;
}

double total_gap_count(const GapList& gaps) {
    double s = 0.0;
    for (const auto& g : gaps) s += g.count;
    return s;
}

double estimate_gap_tail(const GapList& gaps) {
    if (gaps.size() < 4) return 0.0;
    double n_total = total_gap_count(gaps);
    // length as a function of the cumulative count, sampled at N/4 and N
    double n_quarter = n_total / 4.0;
    double cum = 0.0, len_quarter = gaps.front().length;
    for (const auto& g : gaps) {
        cum += g.count;
        if (cum >= n_quarter) {
            len_quarter = g.length;
            break;
        }
    }
    double len_last = gaps.back().length;
    double beta = std::log(len_quarter / len_last) / std::log(4.0);
    double tail = n_total * len_last;
    if (beta > 1.1) tail /= (beta - 1.0);
    return tail;
}

// ---------------------------------------------------------------------------

LebesgueReport lebesgue_zero(const FractalSpec& spec, int level_budget) {
    require_valid(spec);
    LebesgueReport rep;
    int listed = spec.listed_levels();
    auto factor = [&](int n) {
        double s = 0.0;
        for (const auto& w : spec.level_maps(n)) s += w.ratio;
        return s;
    };

    if (spec.periodic()) {
        // Per-period factor is strictly below 1 (validated specs have gaps
        // at every level), so the infinite product vanishes.
        double partial = 1.0;
        for (int n = 1; n <= std::max(level_budget, listed); ++n) partial *= factor(n);
        rep.product = partial;
        rep.verdict = MeasureVerdict::zero;
        return rep;
    }

    // Finite prefix of an unstated continuation: decide from the factor
    // trend. 1 - F_n decaying faster than 1/n makes the log-sum converge.
    double partial = 1.0;
    std::vector<double> deficits;
    for (int n = 1; n <= listed; ++n) {
        double f = factor(n);
        partial *= f;
        deficits.push_back(std::max(1.0 - f, 1e-300));
    }
    rep.product = partial;
    if (partial < 1e-9) {
        rep.verdict = MeasureVerdict::zero;
        return rep;
    }
    if (listed >= 8) {
        std::size_t h = deficits.size() / 2;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = 0;
        for (std::size_t i = h; i < deficits.size(); ++i) {
            double x = std::log(static_cast<double>(i + 1)), y = std::log(deficits[i]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++m;
        }
        double denom = m * sxx - sx * sx;
        if (denom > 0) {
            double slope = (m * sxy - sx * sy) / denom;  // deficit ~ n^slope
            if (slope < -1.05)
                rep.verdict = MeasureVerdict::positive;
            else if (slope > -1.02)
                rep.verdict = MeasureVerdict::zero;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

double box_dim_from_gaps(const GapList& gaps, const WindowPolicy& policy) {
    policy.validate();
    if (gaps.size() < 4)
        throw validation_error("box_dim_from_gaps: need at least 4 distinct gap lengths");
    for (std::size_t i = 1; i < gaps.size(); ++i)
        if (!(gaps[i].length < gaps[i - 1].length))
            throw validation_error("box_dim_from_gaps: lengths must be strictly decreasing");
    double n_total = total_gap_count(gaps);
    double log_n_last = std::log(n_total);
    double cutoff = policy.head_discard_fraction * log_n_last;
    double best = 0.0;
    double n_cum = 0.0;
    bool any = false;
    for (const auto& g : gaps) {
        n_cum += g.count;
        double ln = std::log(n_cum);
        if (ln < cutoff || !(g.length < 1.0) || n_cum < 2) continue;
        best = std::max(best, ln / std::fabs(std::log(g.length)));
        any = true;
    }
    if (!any)
        throw validation_error("box_dim_from_gaps: no usable gaps after head discard");
    return best;
}

double tube_volume(const GapList& gaps, double fractal_measure, double eps,
                   double tail_length) {
    if (!(eps > 0.0)) throw validation_error("tube_volume: eps must be positive");
    double covered = 0.0;
    for (const auto& g : gaps) covered += g.count * std::min(g.length, 2.0 * eps);
    return 2.0 * eps + fractal_measure + covered + tail_length;
}

// ---------------------------------------------------------------------------

GaugeFunction GaugeFunction::power(double d) {
    if (!(d > 0.0)) throw validation_error("gauge: exponent must be positive");
    GaugeFunction g;
    g.kind_ = Kind::power;
    g.d_ = d;
    return g;
}

GaugeFunction GaugeFunction::power_log(double d, double gamma) {
    if (!(d > 0.0)) throw validation_error("gauge: exponent must be positive");
    GaugeFunction g;
    g.kind_ = Kind::power_log;
    g.d_ = d;
    g.gamma_ = gamma;
    return g;
}

GaugeFunction GaugeFunction::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw validation_error("gauge: need at least 2 samples");
    std::sort(samples.begin(), samples.end());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].first > 0.0) || !(samples[i].second > 0.0))
            throw validation_error("gauge: samples must be positive");
        if (i > 0 && !(samples[i].second > samples[i - 1].second))
            throw validation_error("gauge: h must be strictly increasing");
    }
    GaugeFunction g;
    g.kind_ = Kind::tabulated;
    // Effective exponent from the two smallest samples, used only as metadata.
    g.d_ = std::log(samples[1].second / samples[0].second) /
           std::log(samples[1].first / samples[0].first);
    g.samples_ = std::move(samples);
    return g;
}

double GaugeFunction::h(double t) const {
    if (!(t > 0.0)) return 0.0;
    switch (kind_) {
        case Kind::power:
            return std::pow(t, d_);
        case Kind::power_log: {
            double l = t < 1.0 ? -std::log(t) : 1e-12;
            return std::pow(t, d_) * std::pow(l, gamma_);
        }
        case Kind::tabulated: {
            // log-log interpolation with endpoint extrapolation
            const auto& s = samples_;
            std::size_t j = 1;
            while (j + 1 < s.size() && s[j].first < t) ++j;
            double x0 = std::log(s[j - 1].first), x1 = std::log(s[j].first);
            double y0 = std::log(s[j - 1].second), y1 = std::log(s[j].second);
            double y = y0 + (y1 - y0) * (std::log(t) - x0) / (x1 - x0);
            return std::exp(y);
        }
    }
    return 0.0;
}

double GaugeFunction::g(double x) const {
    if (!(x > 0.0)) throw validation_error("gauge: g needs x > 0");
    if (kind_ == Kind::power) return std::pow(x, -1.0 / d_);
    // Monotone bisection for h(t) = 1/x on the increasing part of the domain.
    double target = 1.0 / x;
    double hi = kind_ == Kind::power_log
                    ? 0.999 * std::exp(-std::max(gamma_, 0.0) / d_)
                    : samples_.back().first;
    double lo = 1e-300;
    if (h(hi) < target) throw validation_error("gauge: inversion out of range");
    for (int it = 0; it < 200; ++it) {
        double mid = std::sqrt(lo * hi);
        (h(mid) < target ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

// ---------------------------------------------------------------------------

MinkowskiReport minkowski_content(const GapList& gaps, const GaugeFunction& gauge,
                                  double fractal_measure, double eps_min,
                                  int points_per_decade, double band_threshold,
                                  double tail_length) {
    if (gaps.empty()) throw validation_error("minkowski_content: empty gap list");
    MinkowskiReport rep;
    rep.threshold = band_threshold;

    // Prefix sums over the descending gap list for O(log n) tube volumes.
    std::size_t n = gaps.size();
    std::vector<double> pref_len(n + 1, 0.0), pref_cnt(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        pref_len[i + 1] = pref_len[i] + gaps[i].length * gaps[i].count;
        pref_cnt[i + 1] = pref_cnt[i] + gaps[i].count;
    }
    double all_len = pref_len[n];
    auto tube = [&](double eps) {
        double l = 2.0 * eps;
        // first index with length < l (gaps before it are longer: contribute l each)
        std::size_t lo = 0, hi = n;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (gaps[mid].length >= l) lo = mid + 1; else hi = mid;
        }
        double covered = pref_cnt[lo] * l + (all_len - pref_len[lo]);
        return 2.0 * eps + fractal_measure + covered + tail_length;
    };

    double eps_hi = gaps.front().length;
    double eps_lo = eps_min > 0.0 ? eps_min : 3.0 * gaps.back().length;
    if (!(eps_lo < eps_hi))
        throw validation_error("minkowski_content: empty eps range");

    int decades = static_cast<int>(std::ceil(std::log10(eps_hi / eps_lo)));
    int total_pts = std::max(2, decades * points_per_decade);
    double step = std::pow(eps_hi / eps_lo, 1.0 / total_pts);

    std::vector<std::pair<double, double>> curve;  // (eps, content)
    double e = eps_hi;
    for (int i = 0; i <= total_pts; ++i) {
        double subtract = fractal_measure > 0.0 ? fractal_measure : 0.0;
        double v = tube(e) - subtract;
        curve.emplace_back(e, v * gauge.h(e) / e);
        e /= step;
    }

    double last_lo = eps_lo, last_hi = std::min(eps_hi, 10.0 * eps_lo);
    double log_sum = 0.0;
    int m = 0;
    rep.band_lo = kInf;
    rep.band_hi = 0.0;
    for (const auto& [ee, c] : curve) {
        if (ee < last_lo || ee > last_hi) continue;
        if (!(c > 0.0) || !std::isfinite(c)) { rep.degenerate = true; continue; }
        log_sum += std::log(c);
        ++m;
        rep.band_lo = std::min(rep.band_lo, c);
        rep.band_hi = std::max(rep.band_hi, c);
    }
    if (m == 0) {
        rep.degenerate = true;
        return rep;
    }
    rep.estimate = std::exp(log_sum / m);
    // Content drifting by more than an order of magnitude across the sampled
    // range means the gauge exponent is off (content 0 or infinite).
    double first = curve.front().second;
    if (!(first > 0.0) || rep.estimate / first > 10.0 || first / rep.estimate > 10.0)
        rep.degenerate = true;
    rep.measurable = !rep.degenerate &&
                     (rep.band_hi - rep.band_lo) / rep.estimate < band_threshold;
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

json similarity_to_json(const Similarity& w) {
    json j;
    j["lambda"] = w.ratio;
    j["offset"] = w.offset;
    j["orientation"] = w.orientation >= 0 ? "+" : "-";
    return j;
}

Similarity similarity_from_json(const json& j) {
    Similarity w;
    w.ratio = j.at("lambda").get<double>();
    w.offset = j.at("offset").get<double>();
    w.orientation = j.value("orientation", std::string("+")) == "-" ? -1 : +1;
    return w;
}

} // namespace

std::string FractalSpec::to_json_text() const {
    json j;
    j["interval"] = {a, b};
    json gen;
    switch (kind) {
        case GeneratorKind::self_similar: {
            gen["kind"] = "self_similar";
            json maps = json::array();
            for (const auto& w : levels.front()) maps.push_back(similarity_to_json(w));
            gen["maps"] = maps;
            break;
        }
        case GeneratorKind::symmetric: {
            gen["kind"] = "symmetric";
            gen["p"] = symmetric->p;
            gen["lambda"] = symmetric->lambda;
            break;
        }
        case GeneratorKind::explicit_levels: {
            gen["kind"] = "explicit_levels";
            json lv = json::array();
            for (const auto& level : levels) {
                json maps = json::array();
                for (const auto& w : level) maps.push_back(similarity_to_json(w));
                lv.push_back(maps);
            }
            gen["levels"] = lv;
            break;
        }
    }
    j["generator"] = gen;
    if (tail_period > 0) j["tail"] = {{"period", tail_period}};
    return j.dump(2);
}

FractalSpec FractalSpec::from_json_text(const std::string& text) {
    json j = json::parse(text);
    auto iv = j.at("interval");
    double a = iv.at(0).get<double>(), b = iv.at(1).get<double>();
    const json& gen = j.at("generator");
    std::string kind = gen.at("kind").get<std::string>();
    int period = 0;
    if (j.contains("tail")) period = j["tail"].value("period", 0);
    if (kind == "self_similar") {
        std::vector<Similarity> maps;
        for (const auto& m : gen.at("maps")) maps.push_back(similarity_from_json(m));
        return self_similar(a, b, std::move(maps));
    }
    if (kind == "symmetric") {
        std::vector<int> p = gen.at("p").get<std::vector<int>>();
        std::vector<double> lambda = gen.at("lambda").get<std::vector<double>>();
        return symmetric_fractal(a, b, std::move(p), std::move(lambda), period);
    }
    if (kind == "explicit_levels") {
        FractalSpec s;
        s.a = a;
        s.b = b;
        s.kind = GeneratorKind::explicit_levels;
        for (const auto& lv : gen.at("levels")) {
            std::vector<Similarity> maps;
            for (const auto& m : lv) maps.push_back(similarity_from_json(m));
            s.levels.push_back(std::move(maps));
        }
        s.tail_period = period;
        return s;
    }
    throw validation_error("unknown generator kind: " + kind);
}

FractalSpec FractalSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::uint64_t FractalSpec::hash() const {
    std::string text = to_json_text();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace specfrac
