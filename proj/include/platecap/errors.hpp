#ifndef PLATECAP_ERRORS_HPP
#define PLATECAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace platecap {

/// Argument outside a routine's mathematical domain (e.g. kappa <= 0).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Argument inside the domain but outside the documented accuracy region;
/// the routine refuses rather than return silently degraded values.
struct AccuracyRegionError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Evaluation at a singular point (e.g. the cosine integral at the origin).
struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Caller broke an API contract (wrong branch, mismatched cache, ...).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Requested assembly would run inside the exponential-cancellation
/// regime where the closed-form entries lose all significant digits.
struct PrecisionGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense factorization failed or produced an untrustworthy solution.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg, double cond = 0.0)
        : std::runtime_error(msg), condition_estimate(cond) {}
    double condition_estimate;
};

/// Extrapolation fit could not be made (degenerate samples, no root).
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exceeded its subdivision budget.
struct QuadratureBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace platecap

#endif
