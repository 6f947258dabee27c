#ifndef PLATECAP_SOLVER_HPP
#define PLATECAP_SOLVER_HPP

#include <optional>
#include <utility>
#include <vector>

#include "platecap/kernel_types.hpp"

namespace platecap::solver {

/// f0 at one truncation, with the solve diagnostics attached.
struct SolveResult {
    double kappa;
    int trunc;
    double f0;  // normalized capacitance C/(4 eps0 a)
    std::optional<std::vector<double>> coeffs;
    double residual_inf;        // ||(I-K)f - e0||_inf achieved
    double condition_estimate;  // 1-norm condition estimate of (I-K)
    bool condition_warning;     // estimate > 1e12
};

/// Sampled map N -> f0(N) at fixed kappa, strictly increasing in N.
struct ConvergenceCurve {
    double kappa;
    std::vector<std::pair<int, double>> samples;

    /// f0 at an already-sampled truncation; throws if absent.
    double at(int trunc) const;
    bool has(int trunc) const;
};

/// Solve (I - K) f = e0 by dense LU and return f0.  The residual contract
/// ||(I-K)f - e0||_inf <= 1e-10 (1 + ||f||_inf) is checked on every solve.
SolveResult solve_f0(const kernel::KernelMatrix& matrix, bool keep_coeffs = false);

/// Same, but on the leading (trunc+1) x (trunc+1) principal block of a
/// larger assembly; equivalent to a fresh assemble at the smaller N.
SolveResult solve_f0_leading(const kernel::KernelMatrix& matrix, int trunc,
                             bool keep_coeffs = false);

/// One assembly at the largest requested truncation, then leading-block
/// solves for every entry of trunc_list (strictly increasing).
ConvergenceCurve convergence_curve(kernel::Separation kappa,
                                   const std::vector<int>& trunc_list,
                                   int threads = 1);

}  // namespace platecap::solver

#endif
