#ifndef PLATECAP_PIPELINE_HPP
#define PLATECAP_PIPELINE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "platecap/kernel_types.hpp"

namespace platecap::pipeline {

enum class Mode { raw, power, heuristic };
enum class Format { csv, json };

struct RunConfig {
    std::vector<double> kappas;
    std::vector<int> truncs;  // one entry, or one per kappa
    Mode mode = Mode::raw;
    Format format = Format::csv;
    std::string output_path;  // empty writes to stdout
    int threads = 1;
};

/// One output row; optional fields stay empty where not applicable.
struct CapacitanceEstimate {
    double kappa = 0.0;
    int trunc = 0;
    double f0_raw = 0.0;
    std::optional<double> c_extrapolated;
    std::string method;  // raw | power | heuristic
    std::optional<double> alpha, beta;  // power-law parameters
    std::optional<double> delta_c;      // heuristic error bookkeeping
    double c_kirchhoff = 0.0;
    double c_ignatowsky = 0.0;
    double excess_geometric = 0.0;
    std::vector<std::string> warnings;
};

struct RunError {
    double kappa;
    std::string message;
};

struct RunReport {
    std::vector<CapacitanceEstimate> rows;  // ordered as configured
    std::vector<RunError> errors;
    bool ok() const { return errors.empty(); }
};

/// Execute a full configuration.  Output is deterministic for a fixed
/// config regardless of thread count; per-kappa failures become error
/// records while completed rows are still returned.
RunReport run(const RunConfig& config);

/// Fixed-schema CSV with 10 significant digits; byte-identical for
/// identical reports.  Header:
/// kappa,N,f0_raw,c_extrapolated,method,alpha,beta,delta_c,kirchhoff,ignatowsky,excess_geometric
std::string to_csv(const RunReport& report);
std::string to_json(const RunReport& report);

enum class VerifyLevel { fast, full };

struct VerifyFailure {
    std::string check;
    std::string detail;
};

struct VerifyReport {
    int checks_run = 0;
    std::vector<VerifyFailure> failures;
    bool passed() const { return failures.empty(); }
};

/// Source of analytic kernel entries, injectable so the verification
/// harness itself can be tested against corrupted entries.
using EntryFn = std::function<double(kernel::Separation, int, int)>;

/// Compare analytic entries against the brute-force double quadrature.
/// fast: m,n <= 4 at kappa = 0.1; full: m,n <= 12 at kappa in {0.1, 0.01}.
VerifyReport verify_kernel_entries(const EntryFn& entry, VerifyLevel level);

/// Run every oracle comparison suite (specfun oracle points, I1-I4
/// defining integrals, kernel entries, Nystrom cross-check).
VerifyReport verify(VerifyLevel level);

}  // namespace platecap::pipeline

#endif
