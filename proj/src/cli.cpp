#include "specfrac/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "specfrac/dirac.hpp"
#include "specfrac/fractal_spec.hpp"
#include "specfrac/measures.hpp"
#include "specfrac/metric.hpp"
#include "specfrac/oporacle.hpp"
#include "specfrac/traces.hpp"
#include "specfrac/zeta.hpp"

namespace specfrac {

namespace {

using nlohmann::json;

double sig(double v) { return round_sig(v, 12); }

json sigj(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return sig(v);
}

void emit(const RunConfig& cfg, json& report) {
    report["schema"] = 1;
    std::string text = report.dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output);
        if (!out) throw std::runtime_error("cannot write " + cfg.output);
        out << text;
    }
}

FractalSpec load_spec(const RunConfig& cfg) {
    if (cfg.spec_path.empty()) throw std::invalid_argument("this command needs --spec");
    return FractalSpec::from_json_file(cfg.spec_path);
}

GapList load_gaps(const RunConfig& cfg) {
    if (!cfg.gaps_path.empty()) return read_gaps_csv(cfg.gaps_path);
    FractalSpec spec = load_spec(cfg);
    return gap_list(spec, cfg.level);
}

Spectrum cached_spectrum(const RunConfig& cfg, const FractalSpec& spec, TripleKind kind,
                         bool* cache_hit = nullptr) {
    if (cache_hit) *cache_hit = false;
    if (cfg.cache_dir.empty()) return spectrum(spec, kind, cfg.level);
    std::filesystem::create_directories(cfg.cache_dir);
    std::ostringstream name;
    name << "spec" << std::hex << spec.hash() << "_" << kind_name(kind) << "_" << std::dec
         << cfg.level << ".csv";
    std::string path = (std::filesystem::path(cfg.cache_dir) / name.str()).string();
    if (std::filesystem::exists(path)) {
        if (cache_hit) *cache_hit = true;
        Spectrum s = read_spectrum_csv(path);
        s.kind = kind;
        return s;
    }
    Spectrum s = spectrum(spec, kind, cfg.level);
    write_spectrum_csv(s, spec.hash(), path);
    return s;
}

std::function<double(double)> parse_function(const std::string& spec_text) {
    if (spec_text == "const") return [](double) { return 1.0; };
    if (spec_text == "linear") return [](double x) { return x; };
    if (spec_text.rfind("indicator:", 0) == 0) {
        double a, b;
        char comma;
        std::istringstream ss(spec_text.substr(10));
        if (!(ss >> a >> comma >> b) || comma != ',')
            throw std::invalid_argument("indicator needs a,b");
        return [a, b](double x) { return x >= a && x <= b ? 1.0 : 0.0; };
    }
    if (spec_text.rfind("csv:", 0) == 0) {
        std::string path = spec_text.substr(4);
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot read function samples " + path);
        auto samples = std::make_shared<std::vector<std::pair<double, double>>>();
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            double x, y;
            char comma;
            if (ls >> x >> comma >> y) samples->emplace_back(x, y);
        }
        std::sort(samples->begin(), samples->end());
        return [samples](double x) {
            auto it = std::lower_bound(samples->begin(), samples->end(),
                                       std::make_pair(x - 1e-9, -kInf));
            if (it == samples->end() || std::fabs(it->first - x) > 1e-9)
                return std::numeric_limits<double>::quiet_NaN();
            return it->second;
        };
    }
    throw std::invalid_argument("unknown --function: " + spec_text);
}

std::vector<LimitProcedure> parse_procedures(const std::vector<std::string>& names) {
    if (names.empty()) return default_procedures();
    std::vector<LimitProcedure> out;
    for (const auto& n : names) {
        if (n == "cesaro_log") out.push_back(LimitProcedure::cesaro_log());
        else if (n == "geometric_subsequence") out.push_back(LimitProcedure::geometric());
        else if (n == "level_sequence") out.push_back(LimitProcedure::levels());
        else throw std::invalid_argument("unknown --procedure: " + n);
    }
    return out;
}

GaugeFunction parse_gauge(const std::string& text) {
    if (text.rfind("power:", 0) == 0) return GaugeFunction::power(std::stod(text.substr(6)));
    if (text.rfind("powerlog:", 0) == 0) {
        std::istringstream ss(text.substr(9));
        double d, g;
        char comma;
        if (!(ss >> d >> comma >> g)) throw std::invalid_argument("powerlog needs d,gamma");
        return GaugeFunction::power_log(d, g);
    }
    throw std::invalid_argument("unknown --gauge: " + text);
}

json trace_report_json(const TraceReport& t, const std::string& proc_name) {
    json j;
    j["procedure"] = proc_name;
    j["value"] = sigj(t.value);
    j["spread"] = sigj(t.spread);
    j["scales_used"] = t.scales_used;
    j["scale_range"] = {sigj(t.scale_lo), sigj(t.scale_hi)};
    if (!t.warning.empty()) j["warning"] = t.warning;
    return j;
}

void write_plot(const std::string& path, const std::vector<std::pair<double, double>>& xy) {
    if (path.empty()) return;
    std::ofstream out(path);
    char buf[80];
    for (const auto& [x, y] : xy) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", x, y);
        out << buf;
    }
}

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg) {
    FractalSpec spec = load_spec(cfg);
    auto issues = validate(spec);
    json j;
    j["valid"] = issues.empty();
    j["issues"] = issues;
    emit(cfg, j);
    return issues.empty() ? exit_ok : exit_validation;
}

int cmd_spectrum(const RunConfig& cfg) {
    FractalSpec spec = load_spec(cfg);
    require_valid(spec);
    bool hit = false;
    Spectrum s = cached_spectrum(cfg, spec, kind_from_name(cfg.kind), &hit);
    json j;
    j["kind"] = kind_name(s.kind);
    j["level"] = s.level_cutoff;
    j["distinct_values"] = s.entries.size();
    j["total_multiplicity"] = sigj(s.total_multiplicity());
    j["largest"] = sigj(s.entries.front().value);
    j["smallest"] = sigj(s.entries.back().value);
    j["cache_hit"] = hit;
    emit(cfg, j);
    return exit_ok;
}

int cmd_dim(const RunConfig& cfg) {
    FractalSpec spec = load_spec(cfg);
    require_valid(spec);
    json j;
    Spectrum s = cached_spectrum(cfg, spec, kind_from_name(cfg.kind), nullptr);
    auto ab = abscissa(s, cfg.lo, cfg.hi, std::max(cfg.tolerance, 1e-4));
    j["kind"] = cfg.kind;
    j["d_abscissa"] = sigj(ab.d);
    j["abscissa_inconclusive_steps"] = ab.inconclusive_steps;
    bool inconclusive = false;
    if (spec.kind == GeneratorKind::self_similar) {
        auto rep = selfsimilar_report(spec);
        j["d_selfsimilar"] = sigj(rep.dimension);
        j["zeta_f_residue"] = sigj(rep.zeta_f_residue);
        j["zeta_l_residue"] = sigj(rep.zeta_l_residue);
    }
    if (spec.symmetric) {
        auto sym = symmetric_dimension_and_delta(spec.symmetric->p, spec.symmetric->lambda,
                                                 spec.tail_period);
        j["d_symmetric"] = sigj(sym.d);
        if (sym.delta_lower) j["delta_lower"] = sigj(*sym.delta_lower);
        if (sym.delta_upper) j["delta_upper"] = sigj(*sym.delta_upper);
        if (!sym.withheld_reason.empty()) j["delta_withheld"] = sym.withheld_reason;
    }
    auto leb = lebesgue_zero(spec);
    j["lebesgue"] = leb.verdict == MeasureVerdict::zero      ? "zero"
                    : leb.verdict == MeasureVerdict::positive ? "positive"
                                                              : "inconclusive";
    if (leb.verdict == MeasureVerdict::zero) {
        WindowPolicy pol;
        pol.tolerance = std::max(cfg.tolerance, 1e-3);
        j["box_dim"] = sigj(box_dim_from_gaps(gap_list(spec, cfg.level), pol));
    }
    if (leb.verdict == MeasureVerdict::inconclusive) inconclusive = true;
    emit(cfg, j);
    return inconclusive ? exit_inconclusive : exit_ok;
}

int cmd_indices(const RunConfig& cfg) {
    StepFunction mu;
    if (!cfg.mu_path.empty()) {
        mu = read_step_csv(cfg.mu_path);
    } else if (!cfg.gaps_path.empty()) {
        auto gaps = read_gaps_csv(cfg.gaps_path);
        std::vector<StepEntry> es;
        for (const auto& g : gaps) es.push_back({g.length, 2.0 * g.count});
        mu = build_step_function(std::move(es), true);
    } else {
        FractalSpec spec = load_spec(cfg);
        mu = to_step_function(spectrum(spec, kind_from_name(cfg.kind), cfg.level));
    }
    WindowPolicy pol;
    pol.tolerance = std::max(cfg.tolerance, 1e-3);
    auto rep = indices(mu, pol);
    auto ti = traceability_interval(mu, pol);
    json j;
    j["d_lower"] = sigj(rep.d_lower);
    j["d_upper"] = sigj(rep.d_upper);
    j["delta_lower"] = sigj(rep.delta_lower);
    j["delta_upper"] = sigj(rep.delta_upper);
    j["tolerance"] = sigj(rep.tolerance);
    j["traceability_interval"] = {sigj(ti.lo), sigj(ti.hi)};
    j["interval_contains_dimension"] = ti.contains_dimension;
    emit(cfg, j);
    return exit_ok;
}

int cmd_zeta(const RunConfig& cfg) {
    FractalSpec spec = load_spec(cfg);
    require_valid(spec);
    Spectrum s = cached_spectrum(cfg, spec, kind_from_name(cfg.kind), nullptr);
    auto zr = zeta_partial(s, cfg.alpha, s.total_multiplicity());
    auto ab = abscissa(s, cfg.lo, cfg.hi, std::max(cfg.tolerance, 1e-4));
    json j;
    j["alpha"] = sigj(cfg.alpha);
    j["partial"] = sigj(zr.partial);
    j["n_used"] = sigj(zr.n_used);
    if (zr.tail_bound) j["tail_bound"] = sigj(*zr.tail_bound);
    j["d_estimate"] = sigj(ab.d);
    emit(cfg, j);
    if (!cfg.plot_path.empty()) {
        std::vector<std::pair<double, double>> xy;
        for (double a = ab.d + 0.02; a <= ab.d + 1.0; a += 0.02)
            xy.emplace_back(a, zeta_partial(s, a, s.total_multiplicity()).partial);
        write_plot(cfg.plot_path, xy);
    }
    return exit_ok;
}

int cmd_trace(const RunConfig& cfg) {
    FractalSpec spec = load_spec(cfg);
    require_valid(spec);
    TripleKind kind = kind_from_name(cfg.kind);
    Spectrum s = cached_spectrum(cfg, spec, kind, nullptr);
    double expo = cfg.exponent_set ? cfg.exponent
                                   : abscissa(s, cfg.lo, cfg.hi, 1e-4).d;
    auto procs = parse_procedures(cfg.procedures);
    json list = json::array();
    for (const auto& p : procs) {
        if (cfg.function_spec == "const") {
            auto t = dixmier(s, expo, p);
            list.push_back(trace_report_json(t, p.name()));
        } else {
            auto f = parse_function(cfg.function_spec);
            auto t = hb_functional(spec, kind, expo, f, p, cfg.level);
            list.push_back(trace_report_json(t, p.name()));
        }
    }
    json j;
    j["exponent"] = sigj(expo);
    j["kind"] = cfg.kind;
    j["function"] = cfg.function_spec;
    j["traces"] = list;
    if (procs.size() >= 2 && cfg.function_spec != "const") {
        auto ms = measurability_spread(spec, kind, expo, parse_function(cfg.function_spec),
                                       procs, cfg.level, cfg.tolerance);
        j["spread"] = sigj(ms.spread);
        j["measurable_pass"] = ms.pass;
    }
    emit(cfg, j);
    if (!cfg.plot_path.empty()) {
        StepFunction mu = power(to_step_function(s), expo);
        std::vector<std::pair<double, double>> xy;
        auto xs = LimitProcedure::cesaro_log(4.0, 1.3, 96).scales(mu);
        for (double x : xs) xy.emplace_back(std::log(x), mu.mass_up_to(x) / std::log(x));
        write_plot(cfg.plot_path, xy);
    }
    return exit_ok;
}

int cmd_measure(const RunConfig& cfg) {
    FractalSpec spec = load_spec(cfg);
    require_valid(spec);
    double alpha = cfg.exponent_set ? cfg.exponent : cfg.alpha;
    auto m = homogeneous_measure(spec, alpha, cfg.level);
    json cells = json::array();
    std::size_t cap = std::min<std::size_t>(m.cells.size(), 4096);
    for (std::size_t i = 0; i < cap; ++i) {
        std::string sig_str;
        for (int b : m.cells[i].sigma) sig_str += std::to_string(b);
        cells.push_back({{"sigma", sig_str},
                         {"left", sigj(m.cells[i].left)},
                         {"right", sigj(m.cells[i].right)},
                         {"weight", sigj(m.weights[i])}});
    }
    json j;
    j["alpha"] = sigj(alpha);
    j["level"] = m.level;
    j["cells_listed"] = cap;
    j["cell_count"] = m.cells.size();
    j["alpha_outside_01_warning"] = m.alpha_outside_01;
    j["cells"] = cells;
    emit(cfg, j);
    if (!cfg.plot_path.empty()) {
        std::ofstream out(cfg.plot_path);
        out << "sigma,left,right,weight\n";
        char buf[96];
        for (std::size_t i = 0; i < m.cells.size(); ++i) {
            std::string sig_str;
            for (int bidx : m.cells[i].sigma) sig_str += std::to_string(bidx);
            std::snprintf(buf, sizeof buf, ",%.15g,%.15g,%.15g\n", m.cells[i].left,
                          m.cells[i].right, m.weights[i]);
            out << sig_str << buf;
        }
    }
    return exit_ok;
}

int cmd_distance(const RunConfig& cfg) {
    FractalSpec spec = load_spec(cfg);
    require_valid(spec);
    auto g = build_graph(spec, kind_from_name(cfg.kind), cfg.level);
    json rows = json::array();
    for (const auto& pp : cfg.point_pairs) {
        std::istringstream ss(pp);
        double x, y;
        char comma;
        if (!(ss >> x >> comma >> y)) throw std::invalid_argument("--points needs x,y");
        rows.push_back({{"x", sigj(x)}, {"y", sigj(y)},
                        {"distance", sigj(connes_distance(g, x, y))}});
    }
    json j;
    j["kind"] = cfg.kind;
    j["level"] = cfg.level;
    j["vertices"] = g.vertices.size();
    j["distances"] = rows;
    emit(cfg, j);
    if (!cfg.plot_path.empty()) {
        std::ofstream out(cfg.plot_path);
        out << "x,y,distance\n";
        char buf[96];
        for (const auto& row : rows) {
            std::snprintf(buf, sizeof buf, "%.15g,%.15g,%.15g\n",
                          row["x"].get<double>(), row["y"].get<double>(),
                          row["distance"].is_number() ? row["distance"].get<double>() : kInf);
            out << buf;
        }
    }
    return exit_ok;
}

int cmd_minkowski(const RunConfig& cfg) {
    GapList gaps = load_gaps(cfg);
    GaugeFunction gauge = cfg.gauge_spec.empty()
                              ? GaugeFunction::power(0.5)
                              : parse_gauge(cfg.gauge_spec);
    // unenumerated tail: exact remainder when the fractal spec is at hand
    // (zero-measure case), extrapolated for raw gap files
    double tail = 0.0;
    if (!cfg.spec_path.empty()) {
        FractalSpec spec = load_spec(cfg);
        auto leb = lebesgue_zero(spec);
        double measure =
            leb.verdict == MeasureVerdict::positive ? leb.product * (spec.b - spec.a) : 0.0;
        tail = std::max(0.0, (spec.b - spec.a) - measure - total_gap_length(gaps));
    } else {
        tail = estimate_gap_tail(gaps);
    }
    auto rep = minkowski_content(gaps, gauge, 0.0, 0.0, 64, 0.01, tail);
    json j;
    j["gauge_exponent"] = sigj(gauge.exponent());
    j["estimate"] = sigj(rep.estimate);
    j["band"] = {sigj(rep.band_lo), sigj(rep.band_hi)};
    j["measurable"] = rep.measurable;
    j["degenerate"] = rep.degenerate;
    j["band_threshold"] = sigj(rep.threshold);
    emit(cfg, j);
    if (!cfg.plot_path.empty()) {
        std::vector<std::pair<double, double>> xy;
        double eps = gaps.front().length;
        double eps_lo = 3.0 * gaps.back().length;
        while (eps > eps_lo) {
            xy.emplace_back(std::log(1.0 / eps),
                            tube_volume(gaps, 0.0, eps) * gauge.h(eps) / eps);
            eps /= 1.2;
        }
        write_plot(cfg.plot_path, xy);
    }
    return rep.degenerate ? exit_inconclusive : exit_ok;
}

int cmd_check(const RunConfig& cfg) {
    json j;
    const int pairs = 200;
    int coweyl_failures = 0, weyl_failures = 0;
    for (int t = 0; t < pairs; ++t) {
        auto a = SmallMatrix::random(8, cfg.seed * 1000003 + 2 * t);
        auto b = SmallMatrix::random(8, cfg.seed * 1000003 + 2 * t + 1);
        for (int n : {0, 1, 2, 3}) {
            if (!coweyl_check(a, b, n).pass) ++coweyl_failures;
            if (!weyl_check(a, b, n + 1).pass) ++weyl_failures;
        }
    }
    j["seed"] = cfg.seed;
    j["pairs"] = pairs;
    j["coweyl_failures"] = coweyl_failures;
    j["weyl_failures"] = weyl_failures;

    json cps = json::array();
    bool cp_ok = true;
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 8.0, 64.0}) {
        double c = holder_constant(p);
        cp_ok = cp_ok && c >= 1.0 - 1e-12 && c <= 2.0 + 1e-12;
        cps.push_back({{"p", sigj(p)}, {"C_p", sigj(c)}});
    }
    j["holder_constants"] = cps;
    j["holder_constant_range_ok"] = cp_ok;
    j["C_2"] = sigj(holder_constant(2.0));

    const int N = 200000;
    std::vector<StepEntry> ha, hb2, hc;
    for (int n = 1; n <= N; ++n) {
        ha.push_back({std::pow(n, -0.5), 1.0});
        hb2.push_back({std::pow(n, -2.0 / 3.0), 1.0});
        hc.push_back({std::pow(n, -1.0 / 3.0), 1.0});
    }
    auto sa = build_step_function(ha, true);
    auto sb = build_step_function(hb2, true);
    auto sc = build_step_function(hc, true);
    auto proc = LimitProcedure::cesaro_log(16.0, 2.0, 64);
    auto h1 = holder_check(sa, sa, 2.0, proc);
    auto h2 = holder_check(sb, sc, 1.5, proc);
    auto h3 = holder_check(sb, sc, 1.5, proc, /*monotone_variant=*/true);
    auto hold_json = [](const HolderCheck& h) {
        return json{{"lhs", round_sig(h.lhs, 12)},
                    {"rhs", round_sig(h.rhs, 12)},
                    {"C", round_sig(h.constant_used, 12)},
                    {"pass", h.pass}};
    };
    j["holder_cauchy_schwarz"] = hold_json(h1);
    j["holder_p_3_2"] = hold_json(h2);
    j["holder_monotone_variant"] = hold_json(h3);

    bool all = coweyl_failures == 0 && weyl_failures == 0 && cp_ok && h1.pass && h2.pass &&
               h3.pass;
    j["all_pass"] = all;
    emit(cfg, j);
    return all ? exit_ok : exit_inconclusive;
}

int cmd_report(const RunConfig& cfg) {
    FractalSpec spec = load_spec(cfg);
    require_valid(spec);
    json j;
    j["spec_hash"] = spec.hash();

    Spectrum full = cached_spectrum(cfg, spec, TripleKind::full, nullptr);
    auto ab = abscissa(full, cfg.lo, cfg.hi, 1e-4);
    j["dimension"]["abscissa_full"] = sigj(ab.d);
    if (spec.kind == GeneratorKind::self_similar) {
        auto rep = selfsimilar_report(spec);
        j["dimension"]["selfsimilar"] = sigj(rep.dimension);
        j["residues"] = {{"zeta_f", sigj(rep.zeta_f_residue)},
                         {"zeta_l", sigj(rep.zeta_l_residue)}};
    }
    auto leb = lebesgue_zero(spec);
    j["lebesgue"] = leb.verdict == MeasureVerdict::zero      ? "zero"
                    : leb.verdict == MeasureVerdict::positive ? "positive"
                                                              : "inconclusive";
    WindowPolicy pol;
    auto mu = to_step_function(full);
    auto idx = indices(mu, pol);
    j["indices"] = {{"d_lower", sigj(idx.d_lower)},
                    {"d_upper", sigj(idx.d_upper)},
                    {"delta_lower", sigj(idx.delta_lower)},
                    {"delta_upper", sigj(idx.delta_upper)}};
    auto dx = dixmier(full, ab.d, LimitProcedure::levels());
    j["dixmier_full_at_d"] = sigj(dx.value);
    if (leb.verdict == MeasureVerdict::zero)
        j["box_dim"] = sigj(box_dim_from_gaps(gap_list(spec, cfg.level), pol));
    emit(cfg, j);
    return leb.verdict == MeasureVerdict::inconclusive ? exit_inconclusive : exit_ok;
}

} // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"spectral-triple toolkit for fractals in R"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        sub->add_option("--spec", cfg.spec_path, "fractal spec JSON");
        sub->add_option("--gaps", cfg.gaps_path, "gap lengths CSV (one per line)");
        sub->add_option("--mu", cfg.mu_path, "step function CSV");
        sub->add_option("--kind", cfg.kind, "lacunary|filled|full")->capture_default_str();
        sub->add_option("--level", cfg.level, "truncation level")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--tolerance", cfg.tolerance)->capture_default_str();
        sub->add_option("--bracket-lo", cfg.lo)->capture_default_str();
        sub->add_option("--bracket-hi", cfg.hi)->capture_default_str();
        sub->add_option("--seed", cfg.seed)->capture_default_str();
        sub->add_option("--output", cfg.output, "report JSON path (default stdout)");
        sub->add_option("--plot", cfg.plot_path, "two-column CSV plot data");
        sub->add_option("--cache", cfg.cache_dir, "spectrum cache directory");
        if (needs_input) {
            // exactly one input source
            sub->callback([&cfg]() {
                int sources = !cfg.spec_path.empty() + !cfg.gaps_path.empty() +
                              !cfg.mu_path.empty();
                if (sources != 1)
                    throw CLI::ValidationError(
                        "exactly one of --spec/--gaps/--mu must be given");
            });
        }
    };

    add_common(app.add_subcommand("validate", "check the generator conditions"), true);
    add_common(app.add_subcommand("spectrum", "write/inspect eigenvalue streams"), true);
    add_common(app.add_subcommand("dim", "dimension estimates"), true);
    add_common(app.add_subcommand("indices", "asymptotic indices of the stream"), true);
    auto* zeta_cmd = app.add_subcommand("zeta", "partial zeta values and abscissa");
    add_common(zeta_cmd, true);
    zeta_cmd->add_option("--alpha", cfg.alpha)->capture_default_str();
    auto* trace_cmd = app.add_subcommand("trace", "Dixmier / Hausdorff-Besicovitch traces");
    add_common(trace_cmd, true);
    trace_cmd->add_option("--exponent", cfg.exponent)->each([&cfg](const std::string&) {
        cfg.exponent_set = true;
    });
    trace_cmd->add_option("--procedure", cfg.procedures,
                          "cesaro_log|geometric_subsequence|level_sequence (repeatable)");
    trace_cmd->add_option("--function", cfg.function_spec,
                          "const|linear|indicator:a,b|csv:path")
        ->capture_default_str();
    auto* measure_cmd = app.add_subcommand("measure", "homogeneous cell measure");
    add_common(measure_cmd, true);
    measure_cmd->add_option("--alpha", cfg.alpha)->capture_default_str();
    auto* dist_cmd = app.add_subcommand("distance", "Connes distances on the graph");
    add_common(dist_cmd, true);
    dist_cmd->add_option("--points", cfg.point_pairs, "x,y (repeatable)");
    auto* mink_cmd = app.add_subcommand("minkowski", "gauge content on the eps grid");
    add_common(mink_cmd, true);
    mink_cmd->add_option("--gauge", cfg.gauge_spec, "power:d or powerlog:d,gamma");
    add_common(app.add_subcommand("check", "appendix inequality suite"), false);
    add_common(app.add_subcommand("report", "bundle of all analyses for one spec"), true);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        msg << "usage error (" << e.get_name() << "): " << e.what();
        throw std::invalid_argument(msg.str());
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    return cfg;
}

int run(const RunConfig& cfg) {
    if (cfg.command == "validate") return cmd_validate(cfg);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "dim") return cmd_dim(cfg);
    if (cfg.command == "indices") return cmd_indices(cfg);
    if (cfg.command == "zeta") return cmd_zeta(cfg);
    if (cfg.command == "trace") return cmd_trace(cfg);
    if (cfg.command == "measure") return cmd_measure(cfg);
    if (cfg.command == "distance") return cmd_distance(cfg);
    if (cfg.command == "minkowski") return cmd_minkowski(cfg);
    if (cfg.command == "check") return cmd_check(cfg);
    if (cfg.command == "report") return cmd_report(cfg);
    throw std::invalid_argument("unknown command: " + cfg.command);
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        RunConfig cfg = parse_config(args);
        return run(cfg);
    } catch (const std::invalid_argument& e) {
        nlohmann::json err{{"error", e.what()}, {"exit", exit_usage}};
        std::cerr << err.dump(2) << "\n";
        return exit_usage;
    } catch (const validation_error& e) {
        nlohmann::json err{{"error", e.what()}, {"exit", exit_validation}};
        std::cerr << err.dump(2) << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", e.what()}, {"exit", exit_validation}};
        std::cerr << err.dump(2) << "\n";
        return exit_validation;
    }
}

} // namespace specfrac
