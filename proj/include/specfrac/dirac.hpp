#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specfrac/fractal_spec.hpp"
#include "specfrac/step_function.hpp"

namespace specfrac {

enum class TripleKind { lacunary, filled, full, tensor, external };

std::string kind_name(TripleKind k);
TripleKind kind_from_name(const std::string& s);

struct SpectrumEntry {
    double value = 0.0;
    double multiplicity = 0.0;
};

// Eigenvalue stream of |D|^{-1} for one of the interval triples, as
// (value, multiplicity) in non-increasing value order, equal values
// coalesced. Multiplicities are exact integers as long as they fit a double.
struct Spectrum {
    TripleKind kind = TripleKind::external;
    std::vector<SpectrumEntry> entries;
    int level_cutoff = 0;
    double total_multiplicity() const;
};

// Per-level closed form for symmetric fractals: lacunary eigenvalue and
// count, filled eigenvalue and count.
struct SymmetricLevel {
    double lacunary_value = 0.0;
    double lacunary_multiplicity = 0.0;
    double filled_value = 0.0;
    double filled_multiplicity = 0.0;
};

// Eigenvalues by interval enumeration. Lacunary entries are the lacuna
// lengths up to the cutoff level; filled entries are the cell lengths of all
// levels <= cutoff including level 0; full is the multiset union.
Spectrum spectrum(const FractalSpec& spec, TripleKind kind, int level,
                  std::size_t budget = kDefaultCellBudget);

// Closed-form spectrum for a symmetric fractal given by (p_n, lambda_n)
// sequences (1-based, periodically extended with `tail_period`); `scale` is
// the base interval length. Levels k = 0..K-1 for lacunary, 0..K for filled.
Spectrum symmetric_spectrum(const std::vector<int>& p, const std::vector<double>& lambda,
                            int tail_period, double scale, TripleKind kind, int K);
std::vector<SymmetricLevel> symmetric_levels(const std::vector<int>& p,
                                             const std::vector<double>& lambda,
                                             int tail_period, double scale, int K);

// Pair spectrum of the product triple: values (a_i^{-2} + b_j^{-2})^{-1/2}
// for all pairs above the cutoff, multiplicities multiplied.
Spectrum tensor_spectrum(const Spectrum& s1, const Spectrum& s2, double cutoff,
                         std::size_t budget = kDefaultCellBudget);

// sup over the triple's intervals of |f(v)-f(u)| / |v-u|.
double commutator_norm(const FractalSpec& spec, TripleKind kind, int level,
                       const std::function<double(double)>& f,
                       std::size_t budget = kDefaultCellBudget);

// Bridge to the step-function calculus: width = multiplicity, truncated.
StepFunction to_step_function(const Spectrum& s);

// Spectrum cache file: CSV value,multiplicity plus JSON sidecar.
void write_spectrum_csv(const Spectrum& s, std::uint64_t spec_hash,
                        const std::string& path);
Spectrum read_spectrum_csv(const std::string& path);

} // namespace specfrac
