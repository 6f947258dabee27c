#include "platecap/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <json.hpp>

#include "platecap/complex_specfun.hpp"
#include "platecap/errors.hpp"
#include "platecap/extrapolation.hpp"
#include "platecap/kernel.hpp"
#include "platecap/quadrature.hpp"
#include "platecap/reference.hpp"
#include "platecap/solver.hpp"

namespace platecap::pipeline {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int guard_cap(double kappa) {
    return static_cast<int>(std::floor(kernel::kGuardLimit / (kPi * kappa)));
}

int trunc_for(const RunConfig& config, std::size_t i) {
    if (config.truncs.size() == 1) return config.truncs.front();
    return config.truncs.at(i);
}

std::array<std::pair<int, double>, 3> fit_samples(kernel::Separation kappa,
                                                  int trunc, int threads) {
    const int n2 = static_cast<int>(std::lround(trunc / 2.0));
    const int n3 = static_cast<int>(std::lround(trunc / 3.0));
    const auto curve =
        solver::convergence_curve(kappa, {n3, n2, trunc}, threads);
    return {{{trunc, curve.at(trunc)}, {n2, curve.at(n2)}, {n3, curve.at(n3)}}};
}

CapacitanceEstimate base_row(double kappa, int trunc, double f0) {
    const kernel::Separation sep(kappa);
    CapacitanceEstimate row;
    row.kappa = kappa;
    row.trunc = trunc;
    row.f0_raw = f0;
    row.c_kirchhoff = refmodel::kirchhoff(sep);
    row.c_ignatowsky = refmodel::ignatowsky(sep);
    return row;
}

void finish_row(CapacitanceEstimate& row) {
    const kernel::Separation sep(row.kappa);
    const double c = row.c_extrapolated.value_or(row.f0_raw);
    row.excess_geometric = refmodel::excess_over_geometric(c, sep);
    // a converged capacitance must clear the sharp lower bound
    if (c <= row.c_ignatowsky)
        row.warnings.push_back(
            "capacitance below the Ignatowsky lower bound: convergence not "
            "reached at this truncation");
}

void run_raw_or_power(const RunConfig& config, RunReport& report) {
    for (std::size_t i = 0; i < config.kappas.size(); ++i) {
        const double kap = config.kappas[i];
        try {
            const kernel::Separation sep(kap);
            const int trunc = trunc_for(config, i);
            if (config.mode == Mode::raw) {
                const auto matrix = kernel::assemble(sep, trunc, config.threads);
                const auto solved = solver::solve_f0(matrix);
                CapacitanceEstimate row = base_row(kap, trunc, solved.f0);
                row.method = "raw";
                if (solved.condition_warning)
                    row.warnings.push_back("ill-conditioned solve");
                if (matrix.guard_warning)
                    row.warnings.push_back("N*pi*kappa above the warning level");
                finish_row(row);
                report.rows.push_back(std::move(row));
            } else {
                const auto samples = fit_samples(sep, trunc, config.threads);
                const auto fit = extrap::power_law_fit(sep, samples);
                CapacitanceEstimate row = base_row(kap, trunc, samples[0].second);
                row.method = "power";
                row.c_extrapolated = fit.c_hat;
                row.alpha = fit.alpha;
                row.beta = fit.beta;
                finish_row(row);
                report.rows.push_back(std::move(row));
            }
        } catch (const std::exception& e) {
            report.errors.push_back({kap, e.what()});
        }
    }
}

void run_heuristic(const RunConfig& config, RunReport& report) {
    if (config.kappas.size() < 2) {
        report.errors.push_back(
            {config.kappas.empty() ? 0.0 : config.kappas.front(),
             "heuristic mode requires at least two kappa values"});
        return;
    }
    for (std::size_t i = 1; i < config.kappas.size(); ++i) {
        if (!(config.kappas[i] < config.kappas[i - 1])) {
            report.errors.push_back(
                {config.kappas[i],
                 "heuristic mode requires strictly decreasing kappa values"});
            return;
        }
    }
    try {
        const kernel::Separation seed_sep(config.kappas.front());
        const int budget = trunc_for(config, 0);
        const int seed_trunc = std::min(budget, guard_cap(seed_sep.kappa));
        const auto samples = fit_samples(seed_sep, seed_trunc, config.threads);
        const auto seed_fit = extrap::power_law_fit(seed_sep, samples);
        const auto chain =
            extrap::run_chain(config.kappas, budget, seed_fit, config.threads);

        for (std::size_t i = 0; i < chain.steps.size(); ++i) {
            const auto& step = chain.steps[i];
            CapacitanceEstimate row = base_row(step.kappa, step.trunc, step.f0);
            row.method = "heuristic";
            row.c_extrapolated = step.c_tilde;
            row.delta_c = step.delta_c;
            if (i == 0) {  // the seed carries its power-law parameters
                row.alpha = seed_fit.alpha;
                row.beta = seed_fit.beta;
            }
            if (i == 0) row.warnings = chain.warnings;
            finish_row(row);
            report.rows.push_back(std::move(row));
        }
        if (chain.error) {
            report.errors.push_back(
                {config.kappas[chain.steps.size()], *chain.error});
        }
    } catch (const std::exception& e) {
        report.errors.push_back({config.kappas.front(), e.what()});
    }
}

std::string fmt10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt10(*v) : std::string{};
}

}  // namespace

RunReport run(const RunConfig& config) {
    RunReport report;
    if (config.kappas.empty()) {
        report.errors.push_back({0.0, "no kappa values given"});
        return report;
    }
    if (config.truncs.size() != 1 &&
        config.truncs.size() != config.kappas.size()) {
        report.errors.push_back(
            {config.kappas.front(),
             "need one truncation, or exactly one per kappa"});
        return report;
    }
    if (config.mode == Mode::heuristic)
        run_heuristic(config, report);
    else
        run_raw_or_power(config, report);
    return report;
}

std::string to_csv(const RunReport& report) {
    std::string out =
        "kappa,N,f0_raw,c_extrapolated,method,alpha,beta,delta_c,kirchhoff,"
        "ignatowsky,excess_geometric\n";
    for (const auto& r : report.rows) {
        out += fmt10(r.kappa) + ',' + std::to_string(r.trunc) + ',' +
               fmt10(r.f0_raw) + ',' + fmt_opt(r.c_extrapolated) + ',' +
               r.method + ',' + fmt_opt(r.alpha) + ',' + fmt_opt(r.beta) +
               ',' + fmt_opt(r.delta_c) + ',' + fmt10(r.c_kirchhoff) + ',' +
               fmt10(r.c_ignatowsky) + ',' + fmt10(r.excess_geometric) + '\n';
    }
    return out;
}

std::string to_json(const RunReport& report) {
    nlohmann::ordered_json doc;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["kappa"] = r.kappa;
        row["N"] = r.trunc;
        row["f0_raw"] = r.f0_raw;
        row["c_extrapolated"] =
            r.c_extrapolated ? nlohmann::ordered_json(*r.c_extrapolated)
                             : nlohmann::ordered_json(nullptr);
        row["method"] = r.method;
        row["alpha"] = r.alpha ? nlohmann::ordered_json(*r.alpha)
                               : nlohmann::ordered_json(nullptr);
        row["beta"] = r.beta ? nlohmann::ordered_json(*r.beta)
                             : nlohmann::ordered_json(nullptr);
        row["delta_c"] = r.delta_c ? nlohmann::ordered_json(*r.delta_c)
                                   : nlohmann::ordered_json(nullptr);
        row["kirchhoff"] = r.c_kirchhoff;
        row["ignatowsky"] = r.c_ignatowsky;
        row["excess_geometric"] = r.excess_geometric;
        row["warnings"] = r.warnings;
        doc["rows"].push_back(std::move(row));
    }
    doc["errors"] = nlohmann::ordered_json::array();
    for (const auto& e : report.errors)
        doc["errors"].push_back({{"kappa", e.kappa}, {"message", e.message}});
    return doc.dump(2) + "\n";
}

namespace {

void check_close(VerifyReport& report, const std::string& name, double got,
                 double want, double tol) {
    ++report.checks_run;
    const double diff = std::abs(got - want);
    if (!(diff <= tol)) {
        std::ostringstream detail;
        detail.precision(15);
        detail << "got " << got << ", want " << want << ", |diff| = " << diff
               << " > " << tol;
        report.failures.push_back({name, detail.str()});
    }
}

void verify_specfun(VerifyReport& report) {
    using specfun::Complex;
    using specfun::ci;
    using specfun::si;
    check_close(report, "specfun si(1)", si(Complex{1, 0}).real(),
                0.9460830703671830149413533, 1e-14);
    check_close(report, "specfun ci(1)", ci(Complex{1, 0}).real(),
                0.3374039229009681346626462, 1e-14);
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> re(-15.0, 15.0);
    std::uniform_real_distribution<double> im(0.05, 12.0);
    for (int i = 0; i < 40; ++i) {
        const Complex z{re(rng), im(rng)};
        check_close(report, "specfun conjugation",
                    std::abs(si(std::conj(z)) - std::conj(si(z))), 0.0, 0.0);
        check_close(report, "specfun odd symmetry",
                    std::abs(si(-z) + si(z)),
                    0.0, 1e-15 * (std::abs(si(z)) + 1.0));
        check_close(report, "specfun ci reflection",
                    std::abs(ci(-z) - ci(z) + Complex{0.0, kPi}), 0.0,
                    1e-13 * (std::abs(ci(z)) + 1.0));
    }
}

void verify_i_closed_forms(VerifyReport& report, VerifyLevel level) {
    const int draws = level == VerifyLevel::fast ? 5 : 20;
    std::mt19937 rng(7531);
    std::uniform_real_distribution<double> kap(0.05, 0.8);
    std::uniform_int_distribution<int> mult(1, 8);
    std::uniform_real_distribution<double> alpha(-1.5, 1.5);

    for (int i = 0; i < draws; ++i) {
        const double k = kap(rng);
        const double beta = mult(rng) * kPi;
        const double al = alpha(rng);
        quad::IParams p;
        p.beta = beta;
        p.kappa = k;
        p.alpha = al;
        check_close(report, "I1 closed form vs defining integral",
                    kernel::i1_closed(beta, k, al),
                    quad::i_integrand_quadrature(quad::IKind::I1, p).real(),
                    1e-9);
        check_close(report, "I2 closed form vs defining integral",
                    kernel::i2_closed(beta, k, al),
                    quad::i_integrand_quadrature(quad::IKind::I2, p).real(),
                    1e-9);
    }
    for (int i = 0; i < draws; ++i) {
        const double k = kap(rng);
        const double beta = mult(rng) * kPi;
        double gamma = mult(rng) * kPi;
        if (gamma == beta) gamma += kPi;
        quad::IParams p;
        p.beta = beta;
        p.kappa = k;
        p.gamma = gamma;
        check_close(report, "I3 closed form vs defining integral",
                    kernel::i3_closed(beta, k, gamma),
                    quad::i_integrand_quadrature(quad::IKind::I3, p).real(),
                    1e-9);
    }
    for (int i = 0; i < draws; ++i) {
        const double k = kap(rng);
        const double beta = mult(rng) * kPi;
        double q = (mult(rng) - 4) * kPi;
        if (q == 0.0) q = kPi;
        const specfun::Complex z1{0.0, k};
        const specfun::Complex z2{1.0, k};
        for (const int sign : {+1, -1}) {
            quad::IParams p;
            p.q = q;
            p.beta = beta;
            p.kappa = k;
            p.z1 = static_cast<double>(sign) * z1;
            p.z2 = static_cast<double>(sign) * z2;
            const auto got = kernel::i4(q, beta, p.z1, p.z2);
            const auto want = quad::i_integrand_quadrature(quad::IKind::I4, p);
            check_close(report, "I4 closed form vs defining integral",
                        std::abs(got - want), 0.0, 1e-9);
        }
    }
}

void verify_nystrom(VerifyReport& report, VerifyLevel level) {
    const kernel::Separation kap(0.1);
    const int panels = level == VerifyLevel::fast ? 40 : 80;
    const auto rule = quad::composite_gauss_legendre(10, panels);
    const double nys = quad::nystrom_solve(kap, rule);

    const int n1 = guard_cap(0.1);
    const int n2 = static_cast<int>(std::lround(n1 / 2.0));
    const int n3 = static_cast<int>(std::lround(n1 / 3.0));
    const auto curve = solver::convergence_curve(kap, {n3, n2, n1});
    const auto fit = extrap::power_law_fit(
        kap, {{{n1, curve.at(n1)}, {n2, curve.at(n2)}, {n3, curve.at(n3)}}});
    check_close(report, "Nystrom vs extrapolated Galerkin at kappa=0.1",
                nys / fit.c_hat, 1.0, 1e-5);
}

}  // namespace

VerifyReport verify_kernel_entries(const EntryFn& entry, VerifyLevel level) {
    VerifyReport report;
    const int max_index = level == VerifyLevel::fast ? 4 : 12;
    const std::vector<double> kappas =
        level == VerifyLevel::fast ? std::vector<double>{0.1}
                                   : std::vector<double>{0.1, 0.01};
    for (const double kap : kappas) {
        const kernel::Separation sep(kap);
        for (int m = 0; m <= max_index; ++m) {
            for (int n = m; n <= max_index; ++n) {
                std::ostringstream name;
                name << "kernel entry kappa=" << kap << " m=" << m << " n=" << n;
                check_close(report, name.str(), entry(sep, m, n),
                            quad::kernel_entry_quadrature(sep, m, n), 1e-8);
            }
        }
    }
    return report;
}

VerifyReport verify(VerifyLevel level) {
    VerifyReport report;
    verify_specfun(report);
    verify_i_closed_forms(report, level);

    const EntryFn analytic = [](kernel::Separation sep, int m, int n) {
        if (m == 0 && n == 0) return kernel::k00(sep);
        if (m == 0) return kernel::k0n(sep, n);
        if (n == 0) return kernel::k0n(sep, m);
        const kernel::SpecfunCache cache(sep, std::max(m, n));
        return kernel::kmn(sep, m, n, cache);
    };
    VerifyReport entries = verify_kernel_entries(analytic, level);
    report.checks_run += entries.checks_run;
    for (auto& f : entries.failures) report.failures.push_back(std::move(f));

    verify_nystrom(report, level);
    return report;
}

}  // namespace platecap::pipeline
