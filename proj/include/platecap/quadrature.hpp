#ifndef PLATECAP_QUADRATURE_HPP
#define PLATECAP_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

#include "platecap/complex_specfun.hpp"
#include "platecap/kernel_types.hpp"

namespace platecap::quad {

using specfun::Complex;

/// Quadrature nodes/weights on (0, 1); weights sum to 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order() const { return static_cast<int>(nodes.size()); }
};

/// Single-panel Gauss-Legendre rule with m points, mapped to [0, 1].
QuadratureRule gauss_legendre(int m);

/// `panels` equal panels of a p-point Gauss-Legendre rule.  Needed below
/// kappa ~ 0.05, where the kernel crest defeats a single global rule.
QuadratureRule composite_gauss_legendre(int points_per_panel, int panels);

/// Direct Nystrom discretization of the integral equation at the rule's
/// nodes; returns the normalized capacitance sum_i w_i f_i.
double nystrom_solve(kernel::Separation kappa, const QuadratureRule& rule);

/// Adaptive bisection quadrature (Gauss-Legendre 15 base rule) to an
/// absolute tolerance.  Throws QuadratureBudgetError past max_depth.
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth = 32);
Complex adaptive_integrate_complex(const std::function<Complex(double)>& f,
                                   double a, double b, double abs_tol,
                                   int max_depth = 32);

/// Brute-force double quadrature of the kernel expansion integral
/// K_mn = int int K(s,t) psi_m(s) psi_n(t); absolute tolerance 1e-10.
/// The inner integral is pre-split at the s = t crest before adapting.
/// Requires kappa >= 0.01.  Test oracle only, never a production path.
double kernel_entry_quadrature(kernel::Separation kappa, int m, int n);

enum class IKind { I1, I2, I3, I4 };

/// Parameter bundle for the defining integrals I1..I4; only the members
/// relevant to the chosen kind are read.
struct IParams {
    double beta = 0.0;
    double kappa = 0.0;
    double alpha = 0.0;   // I1, I2
    double gamma = 0.0;   // I3
    double q = 0.0;       // I4
    Complex z1{0.0, 0.0};  // I4
    Complex z2{0.0, 0.0};  // I4
};

/// Adaptive quadrature of the defining integrand of I1..I4 (tolerance
/// 1e-10), validating each closed form in isolation.  I1-I3 are real;
/// the full complex value is returned with zero imaginary part for them.
Complex i_integrand_quadrature(IKind which, const IParams& p);

}  // namespace platecap::quad

#endif
