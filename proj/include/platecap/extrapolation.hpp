#ifndef PLATECAP_EXTRAPOLATION_HPP
#define PLATECAP_EXTRAPOLATION_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "platecap/kernel_types.hpp"
#include "platecap/solver.hpp"

namespace platecap::extrap {

/// Result of collocating f0(N) = C - beta (N kappa)^(-alpha) through three
/// samples.  The model reproduces its inputs to ~1e-9 relative.
struct PowerLawFit {
    double kappa;
    double c_hat;   // extrapolated capacitance, N -> infinity
    double alpha;   // > 0
    double beta;    // > 0
    std::array<std::pair<int, double>, 3> inputs;  // (N, f0), descending N
    double max_input_residual;  // worst |model - input| over the three
};

/// One link of the transfer chain at a single separation.
struct ChainStep {
    double kappa;
    int trunc;           // N_i
    double f0;           // f0_i(N_i)
    double c_tilde;      // extrapolated capacitance at this kappa
    double f0_prev_interp;  // interpolated f0_{i-1}((k_i/k_{i-1}) N_i); NaN on the seed
    double delta_c;      // 1/10 of this step's extrapolation amount
    solver::ConvergenceCurve curve;  // samples at this kappa, reused by the next step
};

struct HeuristicChain {
    std::vector<ChainStep> steps;   // kappa strictly decreasing
    std::vector<std::string> warnings;
    /// Set when a step failed; steps then holds the completed prefix.
    std::optional<std::string> error;
};

/// Fit the power law through three samples (typically N, round(N/2),
/// round(N/3)).  alpha solves the gap-ratio equation
///   (f1-f2)/(f2-f3) = (r2^a - 1)/(r3^a - r2^a),   r_i = N1/N_i,
/// by bisection on [0.05, 10] to 1e-12 (for exact halves/thirds this is
/// the familiar (2^a-1)/(3^a-2^a) form); beta and c_hat then follow in
/// closed form.  Requires distinct N and f0 strictly increasing with N.
PowerLawFit power_law_fit(kernel::Separation kappa,
                          std::array<std::pair<int, double>, 3> samples);

/// Transfer step: with n = (kappa_i/kappa_{i-1}) N_i (must satisfy
/// n <= N_{i-1}), evaluates f0_{i-1}(n) by linear interpolation between
/// explicit solves at floor(n) and ceil(n), and returns the step with
///   c_tilde_i = f0_i + c_tilde_{i-1} - f0_{i-1}(n).
/// Missing interpolation samples are solved on demand at prev.kappa.
ChainStep heuristic_step(const ChainStep& prev, kernel::Separation kappa_i,
                         int trunc_i, double f0_i, int threads = 1);

/// Chain heuristic_step over strictly decreasing separations, seeded by a
/// power-law fit at the first kappa.  The per-step truncation is
/// min(trunc_budget, precision-guard cap, transfer-feasibility cap).
HeuristicChain run_chain(const std::vector<double>& kappas, int trunc_budget,
                         const PowerLawFit& seed_fit, int threads = 1);

}  // namespace platecap::extrap

#endif
