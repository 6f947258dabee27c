#include "platecap/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "platecap/errors.hpp"
#include "platecap/kernel.hpp"

namespace platecap::extrap {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double gap_ratio_model(double alpha, double r2, double r3) {
    return (std::pow(r2, alpha) - 1.0) /
           (std::pow(r3, alpha) - std::pow(r2, alpha));
}

int guard_cap(double kappa) {
    return static_cast<int>(std::floor(kernel::kGuardLimit / (kPi * kappa)));
}

/// Solve at (kappa, trunc), preferring samples already on the curve.
double f0_sample(solver::ConvergenceCurve& curve, kernel::Separation kappa,
                 int trunc, int threads) {
    if (curve.has(trunc)) return curve.at(trunc);
    const double f0 =
        solver::solve_f0(kernel::assemble(kappa, trunc, threads)).f0;
    curve.samples.emplace_back(trunc, f0);
    std::sort(curve.samples.begin(), curve.samples.end());
    return f0;
}

}  // namespace

PowerLawFit power_law_fit(kernel::Separation kappa,
                          std::array<std::pair<int, double>, 3> samples) {
    std::sort(samples.begin(), samples.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    const auto [n1, f1] = samples[0];
    const auto [n2, f2] = samples[1];
    const auto [n3, f3] = samples[2];
    if (n1 == n2 || n2 == n3)
        throw FitError("power_law_fit: truncations must be distinct");
    if (!(f1 > f2 && f2 > f3))
        throw FitError(
            "power_law_fit: f0 samples not strictly increasing with N "
            "(already converged, or non-monotone noise)");

    const double ratio = (f1 - f2) / (f2 - f3);
    const double r2 = static_cast<double>(n1) / n2;
    const double r3 = static_cast<double>(n1) / n3;

    // gap_ratio_model decreases in alpha; bracket then bisect
    double lo = 0.05, hi = 10.0;
    if (!(gap_ratio_model(lo, r2, r3) >= ratio &&
          gap_ratio_model(hi, r2, r3) <= ratio)) {
        std::ostringstream msg;
        msg << "power_law_fit: gap ratio " << ratio
            << " outside the range of alpha in [0.05, 10]";
        throw FitError(msg.str());
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (gap_ratio_model(mid, r2, r3) > ratio)
            lo = mid;
        else
            hi = mid;
    }
    const double alpha = 0.5 * (lo + hi);

    const double kap = kappa.kappa;
    const double beta = (f1 - f2) / (std::pow(n2 * kap, -alpha) -
                                     std::pow(n1 * kap, -alpha));
    const double c_hat = f1 + beta * std::pow(n1 * kap, -alpha);

    double worst = 0.0;
    for (const auto& [n, f0] : samples) {
        const double model = c_hat - beta * std::pow(n * kap, -alpha);
        worst = std::max(worst, std::abs(model - f0));
    }

    return {kap, c_hat, alpha, beta, samples, worst};
}

ChainStep heuristic_step(const ChainStep& prev, kernel::Separation kappa_i,
                         int trunc_i, double f0_i, int threads) {
    if (kappa_i.kappa > prev.kappa)
        throw ContractViolation("heuristic_step: kappa must not increase");
    const kernel::Separation kappa_prev(prev.kappa);
    const double n = (kappa_i.kappa / prev.kappa) * trunc_i;
    if (n > prev.trunc + 1e-9) {
        std::ostringstream msg;
        msg << "heuristic_step: transfer truncation n = " << n
            << " exceeds the previous step's N = " << prev.trunc;
        throw ContractViolation(msg.str());
    }

    const int lo = static_cast<int>(std::floor(n));
    const int hi = static_cast<int>(std::ceil(n));
    solver::ConvergenceCurve curve = prev.curve;  // local copy may grow

    double f0_prev_at_n;
    if (lo == hi) {
        f0_prev_at_n = f0_sample(curve, kappa_prev, lo, threads);
    } else {
        const double f_lo = f0_sample(curve, kappa_prev, lo, threads);
        const double f_hi = f0_sample(curve, kappa_prev, hi, threads);
        f0_prev_at_n = f_lo + (f_hi - f_lo) * (n - lo);
    }

    const double c_tilde = f0_i + prev.c_tilde - f0_prev_at_n;
    ChainStep step{kappa_i.kappa,
                   trunc_i,
                   f0_i,
                   c_tilde,
                   f0_prev_at_n,
                   std::abs(c_tilde - f0_i) / 10.0,
                   {kappa_i.kappa, {{trunc_i, f0_i}}}};
    return step;
}

HeuristicChain run_chain(const std::vector<double>& kappas, int trunc_budget,
                         const PowerLawFit& seed_fit, int threads) {
    if (kappas.empty()) throw ContractViolation("run_chain: empty kappa list");
    if (kappas.front() != seed_fit.kappa)
        throw ContractViolation(
            "run_chain: first kappa must equal the seed fit's kappa");
    for (std::size_t i = 1; i < kappas.size(); ++i)
        if (!(kappas[i] < kappas[i - 1]))
            throw ContractViolation("run_chain: kappas must strictly decrease");
    if (trunc_budget < 1)
        throw ContractViolation("run_chain: truncation budget must be positive");

    HeuristicChain chain;

    const int n0 = seed_fit.inputs[0].first;
    const double f0_seed = seed_fit.inputs[0].second;
    if (n0 * seed_fit.kappa < 1.0) {
        std::ostringstream msg;
        msg << "seed fit at N*kappa = " << n0 * seed_fit.kappa
            << " < 1: power-law extrapolations this far from convergence "
               "overestimate by roughly one third of the extrapolation amount";
        chain.warnings.push_back(msg.str());
    }

    ChainStep seed{seed_fit.kappa,
                   n0,
                   f0_seed,
                   seed_fit.c_hat,
                   std::numeric_limits<double>::quiet_NaN(),
                   std::abs(seed_fit.c_hat - f0_seed) / 10.0,
                   {seed_fit.kappa, {{n0, f0_seed}}}};
    chain.steps.push_back(seed);

    for (std::size_t i = 1; i < kappas.size(); ++i) {
        try {
            const kernel::Separation kap(kappas[i]);
            const ChainStep& prev = chain.steps.back();
            // transfer feasibility: (k_i/k_{i-1}) N_i <= N_{i-1}
            const int feas =
                static_cast<int>(std::floor(prev.trunc * prev.kappa / kap.kappa));
            const int trunc =
                std::min({trunc_budget, guard_cap(kap.kappa), feas});
            if (trunc < 1)
                throw ContractViolation("run_chain: no admissible truncation");
            const double f0 =
                solver::solve_f0(kernel::assemble(kap, trunc, threads)).f0;
            chain.steps.push_back(
                heuristic_step(prev, kap, trunc, f0, threads));
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "step at kappa = " << kappas[i] << " failed after "
                << chain.steps.size() << " completed step(s): " << e.what();
            chain.error = msg.str();
            break;
        }
    }

    return chain;
}

}  // namespace platecap::extrap
