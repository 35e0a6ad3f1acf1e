#include "specfrac/oporacle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace specfrac {

SmallMatrix::SmallMatrix(int n, double fill) : n_(n) {
    if (n < 1 || n > 64) throw validation_error("SmallMatrix: dimension must be in [1,64]");
    a_.assign(static_cast<std::size_t>(n) * n, fill);
}

SmallMatrix SmallMatrix::diagonal(const std::vector<double>& d) {
    SmallMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n_; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

SmallMatrix SmallMatrix::identity(int n) {
    SmallMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

SmallMatrix SmallMatrix::random(int n, std::uint64_t seed) {
    SmallMatrix m(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& x : m.a_) x = dist(rng);
    return m;
}

SmallMatrix SmallMatrix::transpose() const {
    SmallMatrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
    return t;
}

SmallMatrix SmallMatrix::operator*(const SmallMatrix& rhs) const {
    if (n_ != rhs.n_) throw validation_error("SmallMatrix: shape mismatch");
    SmallMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            double aik = at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n_; ++j) out.at(i, j) += aik * rhs.at(k, j);
        }
    return out;
}

std::vector<double> jacobi_eigenvalues(const SmallMatrix& sym, double off_tol,
                                       int max_sweeps) {
    SmallMatrix s = sym;
    int n = s.dim();
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale += s.at(i, j) * s.at(i, j);
    scale = std::sqrt(scale);
    if (scale == 0.0) return std::vector<double>(static_cast<std::size_t>(n), 0.0);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * s.at(i, j) * s.at(i, j);
        if (std::sqrt(off) < off_tol * scale) {
            std::vector<double> eigs(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) eigs[static_cast<std::size_t>(i)] = s.at(i, i);
            std::sort(eigs.begin(), eigs.end(), std::greater<double>());
            return eigs;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = s.at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double tau = (s.at(q, q) - s.at(p, p)) / (2.0 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double sn = t * c;
                for (int k = 0; k < n; ++k) {
                    double skp = s.at(k, p), skq = s.at(k, q);
                    s.at(k, p) = c * skp - sn * skq;
                    s.at(k, q) = sn * skp + c * skq;
                }
                for (int k = 0; k < n; ++k) {
                    double spk = s.at(p, k), sqk = s.at(q, k);
                    s.at(p, k) = c * spk - sn * sqk;
                    s.at(q, k) = sn * spk + c * sqk;
                }
            }
        }
    }
    throw std::runtime_error("jacobi_eigenvalues: iteration cap exceeded");
}

std::vector<double> singular_values(const SmallMatrix& m) {
    SmallMatrix gram = m.transpose() * m;
    auto eigs = jacobi_eigenvalues(gram);
    for (auto& e : eigs) e = std::sqrt(std::max(e, 0.0));
    return eigs;
}

InequalityCheck coweyl_check(const SmallMatrix& a, const SmallMatrix& b, int n) {
    if (a.dim() != b.dim()) throw validation_error("coweyl_check: shape mismatch");
    if (n < 0) throw validation_error("coweyl_check: n must be nonnegative");
    auto mab = singular_values(a * b);
    auto ma = singular_values(a);
    auto mb = singular_values(b);
    InequalityCheck out;
    for (std::size_t i = static_cast<std::size_t>(2 * n); i < mab.size(); ++i)
        out.lhs += mab[i];
    for (std::size_t i = static_cast<std::size_t>(n); i < ma.size(); ++i)
        out.rhs += ma[i] * mb[i];
    out.pass = out.lhs <= out.rhs + 1e-10;
    return out;
}

InequalityCheck weyl_check(const SmallMatrix& a, const SmallMatrix& b, int N) {
    if (a.dim() != b.dim()) throw validation_error("weyl_check: shape mismatch");
    if (N < 0) throw validation_error("weyl_check: N must be nonnegative");
    auto mab = singular_values(a * b);
    auto ma = singular_values(a);
    auto mb = singular_values(b);
    InequalityCheck out;
    std::size_t cap = std::min(static_cast<std::size_t>(N), mab.size());
    for (std::size_t i = 0; i < cap; ++i) {
        out.lhs += mab[i];
        out.rhs += ma[i] * mb[i];
    }
    out.pass = out.lhs <= out.rhs + 1e-10;
    return out;
}

double holder_constant(double p) {
    if (std::isinf(p)) return 1.0;
    if (!(p >= 1.0)) throw validation_error("holder_constant: p must be >= 1");
    return 1.0 + 2.0 * std::sqrt(p - 1.0) / p;
}

namespace {

// Pointwise product of two non-increasing step functions over matched
// position segments (commuting diagonal operators in a common basis).
StepFunction product_stream(const StepFunction& a, const StepFunction& b) {
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    std::vector<StepEntry> out;
    std::size_t i = 0, j = 0;
    double pos = 0.0;
    double wa = ea.empty() ? 0.0 : ea[0].width;
    double wb = eb.empty() ? 0.0 : eb[0].width;
    while (i < ea.size() && j < eb.size()) {
        double seg = std::min(wa, wb);
        out.push_back({ea[i].value * eb[j].value, seg});
        pos += seg;
        wa -= seg;
        wb -= seg;
        if (wa <= 0.0 && ++i < ea.size()) wa = ea[i].width;
        if (wb <= 0.0 && ++j < eb.size()) wb = eb[j].width;
    }
    return build_step_function(std::move(out), a.truncated() || b.truncated());
}

} // namespace

HolderCheck holder_check(const StepFunction& a, const StepFunction& b, double p,
                         const LimitProcedure& proc, bool monotone_variant, double slack) {
    if (!(p > 1.0) || std::isinf(p))
        throw validation_error("holder_check: need finite p > 1");
    double q = p / (p - 1.0);
    HolderCheck out;
    out.constant_used = monotone_variant ? 1.0 : holder_constant(p);
    out.lhs = dixmier(product_stream(a, b), proc).value;
    double ta = dixmier(power(a, p), proc).value;
    double tb = dixmier(power(b, q), proc).value;
    out.rhs = out.constant_used * std::pow(ta, 1.0 / p) * std::pow(tb, 1.0 / q);
    out.pass = out.lhs <= out.rhs * (1.0 + slack) + 1e-12;
    return out;
}

} // namespace specfrac
