#pragma once

#include <cstdint>
#include <vector>

#include "specfrac/step_function.hpp"
#include "specfrac/traces.hpp"

namespace specfrac {

// Dense square matrix, dimension capped at 64: the appendix inequalities
// only need desk-size ground truth.
class SmallMatrix {
public:
    SmallMatrix() = default;
    SmallMatrix(int n, double fill = 0.0);
    static SmallMatrix diagonal(const std::vector<double>& d);
    static SmallMatrix identity(int n);
    static SmallMatrix random(int n, std::uint64_t seed);  // entries uniform in [-1,1]

    int dim() const { return n_; }
    double& at(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    double at(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

    SmallMatrix transpose() const;
    SmallMatrix operator*(const SmallMatrix& rhs) const;

private:
    int n_ = 0;
    std::vector<double> a_;
};

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
std::vector<double> jacobi_eigenvalues(const SmallMatrix& sym, double off_tol = 1e-12,
                                       int max_sweeps = 64);

// Singular values: sqrt of the eigenvalues of m^T m, descending.
std::vector<double> singular_values(const SmallMatrix& m);

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

// sum_{i>=2n} mu_i(ab) <= sum_{i>=n} mu_i(a) mu_i(b)
InequalityCheck coweyl_check(const SmallMatrix& a, const SmallMatrix& b, int n);
// sum_{i<N} mu_i(ab) <= sum_{i<N} mu_i(a) mu_i(b)
InequalityCheck weyl_check(const SmallMatrix& a, const SmallMatrix& b, int N);

// C_p = 1 + 2 sqrt(p-1)/p; p = +inf accepted.
double holder_constant(double p);

struct HolderCheck {
    double lhs = 0.0;            // tau(|ab|)
    double rhs = 0.0;            // C_p tau(|a|^p)^{1/p} tau(|b|^q)^{1/q}
    double constant_used = 1.0;
    bool pass = false;
};

// Holder chain on commuting diagonal operators given as step functions
// (mu_ab is the pointwise product re-sorted), traces via the Dixmier
// emulation. `monotone_variant` replaces C_p by 1.
HolderCheck holder_check(const StepFunction& a, const StepFunction& b, double p,
                         const LimitProcedure& proc, bool monotone_variant = false,
                         double slack = 0.05);

} // namespace specfrac
