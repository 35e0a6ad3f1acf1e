#include "specfrac/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace specfrac {

std::string kind_name(TripleKind k) {
    switch (k) {
        case TripleKind::lacunary: return "lacunary";
        case TripleKind::filled: return "filled";
        case TripleKind::full: return "full";
        case TripleKind::tensor: return "tensor";
        case TripleKind::external: return "external";
    }
    return "?";
}

TripleKind kind_from_name(const std::string& s) {
    if (s == "lacunary") return TripleKind::lacunary;
    if (s == "filled") return TripleKind::filled;
    if (s == "full") return TripleKind::full;
    if (s == "tensor") return TripleKind::tensor;
    if (s == "external") return TripleKind::external;
    throw validation_error("unknown triple kind: " + s);
}

double Spectrum::total_multiplicity() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.multiplicity;
    return s;
}

namespace {

// Values coalesce under a 1e-12 relative merge: equal eigenvalues reached
// along different float paths (closed form vs enumeration) spread by a few
// ulps, and only the eigenvalue function matters downstream. Chains merge
// neighbor to neighbor so a long level does not split mid-block.
std::vector<SpectrumEntry> coalesce(std::vector<SpectrumEntry> raw) {
    std::sort(raw.begin(), raw.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
        return x.value > y.value;
    });
    std::vector<SpectrumEntry> out;
    double prev = -1.0;
    for (const auto& e : raw) {
        if (!out.empty() && prev - e.value <= 1e-12 * prev)
            out.back().multiplicity += e.multiplicity;
        else
            out.push_back(e);
        prev = e.value;
    }
    return out;
}

std::vector<SpectrumEntry> lacunary_entries(const FractalSpec& spec, int level,
                                            std::size_t budget) {
    std::vector<SpectrumEntry> raw;
    for (const auto& g : gap_list(spec, level, budget))
        raw.push_back({g.length, 2.0 * g.count});
    return raw;
}

std::vector<SpectrumEntry> filled_entries(const FractalSpec& spec, int level,
                                          std::size_t budget) {
    // Every cell of every level <= cutoff, level 0 (the base interval)
    // included; each contributes its length with multiplicity 2. Cells of a
    // level share the ratio multiset, which we track as products.
    std::vector<SpectrumEntry> raw;
    double len = spec.b - spec.a;
    std::map<double, double, std::greater<double>> products{{1.0, 1.0}};
    for (int k = 0; k <= level; ++k) {
        for (const auto& [prod, cnt] : products)
            raw.push_back({len * prod, 2.0 * cnt});
        if (k == level) break;
        std::map<double, double, std::greater<double>> next;
        for (const auto& [prod, cnt] : products)
            for (const auto& w : spec.level_maps(k + 1)) next[prod * w.ratio] += cnt;
        if (next.size() > budget)
            throw budget_error("filled spectrum: too many distinct cell lengths");
        products = std::move(next);
    }
    return raw;
}

} // namespace

Spectrum spectrum(const FractalSpec& spec, TripleKind kind, int level, std::size_t budget) {
    require_valid(spec);
    if (level < 0) throw validation_error("spectrum: level must be nonnegative");
    Spectrum s;
    s.kind = kind;
    s.level_cutoff = level;
    std::vector<SpectrumEntry> raw;
    switch (kind) {
        case TripleKind::lacunary:
            raw = lacunary_entries(spec, level, budget);
            break;
        case TripleKind::filled:
            raw = filled_entries(spec, level, budget);
            break;
        case TripleKind::full: {
            raw = lacunary_entries(spec, level, budget);
            auto f = filled_entries(spec, level, budget);
            raw.insert(raw.end(), f.begin(), f.end());
            break;
        }
        default:
            throw validation_error("spectrum: kind must be lacunary, filled or full");
    }
    s.entries = coalesce(std::move(raw));
    double floor = completeness_floor(spec, level);
    while (!s.entries.empty() && s.entries.back().value < floor) s.entries.pop_back();
    if (s.entries.empty()) throw validation_error("spectrum: empty after completeness clip");
    return s;
}

std::vector<SymmetricLevel> symmetric_levels(const std::vector<int>& p,
                                             const std::vector<double>& lambda,
                                             int tail_period, double scale, int K) {
    if (p.empty() || p.size() != lambda.size())
        throw validation_error("symmetric spectrum: bad p/lambda sequences");
    auto at = [&](int n) {  // 1-based with periodic tail
        int m = static_cast<int>(p.size());
        if (n <= m) return n - 1;
        if (tail_period <= 0)
            throw validation_error("symmetric spectrum: level beyond finite sequences");
        int start = m - tail_period;
        return start + (n - 1 - start) % tail_period;
    };
    std::vector<SymmetricLevel> out;
    out.reserve(static_cast<std::size_t>(K) + 1);
    double lam_prod = 1.0, p_prod = 1.0;
    for (int k = 0; k <= K; ++k) {
        int i = at(k + 1);
        if (!(p[i] * lambda[i] < 1.0))
            throw validation_error("symmetric spectrum: requires p*lambda < 1");
        SymmetricLevel lv;
        lv.lacunary_value = scale * (1.0 - p[i] * lambda[i]) / (p[i] - 1) * lam_prod;
        lv.lacunary_multiplicity = 2.0 * (p[i] - 1) * p_prod;
        lv.filled_value = scale * lam_prod;
        lv.filled_multiplicity = 2.0 * p_prod;
        out.push_back(lv);
        lam_prod *= lambda[i];
        p_prod *= p[i];
    }
    return out;
}

Spectrum symmetric_spectrum(const std::vector<int>& p, const std::vector<double>& lambda,
                            int tail_period, double scale, TripleKind kind, int K) {
    auto levels = symmetric_levels(p, lambda, tail_period, scale, K);
    std::vector<SpectrumEntry> raw;
    // Lacunary level k holds the gaps born at construction level k+1, so a
    // cutoff of K construction levels means closed-form indices 0..K-1.
    if (kind == TripleKind::lacunary || kind == TripleKind::full)
        for (int k = 0; k < K; ++k)
            raw.push_back({levels[k].lacunary_value, levels[k].lacunary_multiplicity});
    if (kind == TripleKind::filled || kind == TripleKind::full)
        for (int k = 0; k <= K; ++k)
            raw.push_back({levels[k].filled_value, levels[k].filled_multiplicity});
    if (raw.empty()) throw validation_error("symmetric spectrum: unsupported kind");
    Spectrum s;
    s.kind = kind;
    s.level_cutoff = K;
    s.entries = coalesce(std::move(raw));
    return s;
}

Spectrum tensor_spectrum(const Spectrum& s1, const Spectrum& s2, double cutoff,
                         std::size_t budget) {
    if (!(cutoff > 0.0)) throw validation_error("tensor spectrum: cutoff must be positive");
    std::vector<SpectrumEntry> raw;
    for (const auto& e1 : s1.entries) {
        bool any = false;
        for (const auto& e2 : s2.entries) {
            double inv2 = 1.0 / (e1.value * e1.value) + 1.0 / (e2.value * e2.value);
            double v = 1.0 / std::sqrt(inv2);
            if (v < cutoff) break;  // e2 values decrease, later pairs only smaller
            raw.push_back({v, e1.multiplicity * e2.multiplicity});
            any = true;
            if (raw.size() > budget)
                throw budget_error("tensor spectrum: cutoff too small for budget");
        }
        if (!any) break;  // e1 values decrease too
    }
    if (raw.empty())
        throw budget_error("tensor spectrum: cutoff excludes every pair");
    Spectrum s;
    s.kind = TripleKind::tensor;
    s.level_cutoff = std::max(s1.level_cutoff, s2.level_cutoff);
    s.entries = coalesce(std::move(raw));
    return s;
}

double commutator_norm(const FractalSpec& spec, TripleKind kind, int level,
                       const std::function<double(double)>& f, std::size_t budget) {
    require_valid(spec);
    double sup = 0.0;
    auto visit = [&](double u, double v) {
        double fu = f(u), fv = f(v);
        if (!std::isfinite(fu) || !std::isfinite(fv))
            throw validation_error("commutator_norm: f undefined at an interval endpoint");
        sup = std::max(sup, std::fabs(fv - fu) / (v - u));
    };
    if (kind == TripleKind::lacunary || kind == TripleKind::full)
        for (const auto& l : lacunae_up_to_level(spec, level, budget)) visit(l.left, l.right);
    if (kind == TripleKind::filled || kind == TripleKind::full)
        for (int k = 0; k <= level; ++k)
            for (const auto& c : cells_at_level(spec, k, budget)) visit(c.left, c.right);
    return sup;
}

StepFunction to_step_function(const Spectrum& s) {
    if (s.entries.empty())
        throw validation_error("to_step_function: empty spectrum");
    std::vector<StepEntry> entries;
    entries.reserve(s.entries.size());
    for (const auto& e : s.entries) entries.push_back({e.value, e.multiplicity});
    return build_step_function(std::move(entries), /*truncated=*/true);
}

void write_spectrum_csv(const Spectrum& s, std::uint64_t spec_hash,
                        const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "value,multiplicity\n";
    char buf[80];
    for (const auto& e : s.entries) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", e.value, e.multiplicity);
        out << buf;
    }
    nlohmann::json meta;
    meta["kind"] = kind_name(s.kind);
    meta["level_cutoff"] = s.level_cutoff;
    meta["spec_hash"] = spec_hash;
    std::ofstream ms(path + ".meta.json");
    ms << meta.dump(2) << "\n";
}

Spectrum read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    Spectrum s;
    s.kind = TripleKind::external;
    std::string line;
    bool header = true;
    std::vector<SpectrumEntry> raw;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        std::istringstream ls(line);
        SpectrumEntry e;
        char comma;
        if (!(ls >> e.value >> comma >> e.multiplicity))
            throw std::runtime_error("malformed spectrum CSV row: " + line);
        raw.push_back(e);
    }
    std::ifstream ms(path + ".meta.json");
    if (ms) {
        nlohmann::json meta = nlohmann::json::parse(ms);
        s.kind = kind_from_name(meta.value("kind", std::string("external")));
        s.level_cutoff = meta.value("level_cutoff", 0);
    }
    s.entries = coalesce(std::move(raw));
    return s;
}

} // namespace specfrac
