#include "platecap/reference.hpp"

#include <cmath>

#include "platecap/errors.hpp"

namespace platecap::refmodel {
namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double geometric(kernel::Separation kappa) { return kPi / (4.0 * kappa.kappa); }

double kirchhoff(kernel::Separation kappa) {
    const double k = kappa.kappa;
    return kPi / (4.0 * k) + 0.25 * std::log(1.0 / k) +
           0.25 * (std::log(16.0 * kPi) - 1.0);
}

double ignatowsky(kernel::Separation kappa) {
    const double k = kappa.kappa;
    return kPi / (4.0 * k) + 0.25 * std::log(1.0 / k) +
           0.25 * (std::log(8.0) - 0.5);
}

double excess_over_geometric(double c, kernel::Separation kappa) {
    if (!(c > 0.0)) throw DomainError("excess_over_geometric: c must be positive");
    const double g = geometric(kappa);
    return (c - g) / g;
}

ReferenceSet reference_set(kernel::Separation kappa) {
    return {kappa.kappa, geometric(kappa), kirchhoff(kappa), ignatowsky(kappa)};
}

}  // namespace platecap::refmodel
