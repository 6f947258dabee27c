#ifndef PLATECAP_REFERENCE_HPP
#define PLATECAP_REFERENCE_HPP

#include "platecap/kernel_types.hpp"

namespace platecap::refmodel {

/// Closed-form comparison values at one separation, all normalized by
/// 4 eps0 a.
struct ReferenceSet {
    double kappa;
    double c_geometric;   // pi/(4 kappa)
    double c_kirchhoff;   // small-gap asymptotic formula
    double c_ignatowsky;  // sharp lower bound
};

/// Geometric (infinite-plate) capacitance pi/(4 kappa).
double geometric(kernel::Separation kappa);

/// Kirchhoff's asymptotic formula
///   pi/(4 kappa) + (1/4) ln(1/kappa) + (1/4)[ln(16 pi) - 1],
/// with the o(1) term omitted; a reference value, not ground truth.
double kirchhoff(kernel::Separation kappa);

/// Same form with the constant term (ln 8 - 1/2)/4; a sharp lower bound
/// for the capacitance.  Sits 0.33447 below kirchhoff at every kappa.
double ignatowsky(kernel::Separation kappa);

/// Relative excess (c - c_geometric)/c_geometric.
double excess_over_geometric(double c, kernel::Separation kappa);

ReferenceSet reference_set(kernel::Separation kappa);

}  // namespace platecap::refmodel

#endif
