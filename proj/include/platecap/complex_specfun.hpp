#ifndef PLATECAP_COMPLEX_SPECFUN_HPP
#define PLATECAP_COMPLEX_SPECFUN_HPP

#include <complex>
#include <utility>
#include <vector>

namespace platecap::specfun {

using Complex = std::complex<double>;

/// Accuracy-region bound on |Im z|.  Beyond it the cosh-scale growth of
/// Si/Ci exhausts double precision, so evaluation fails loudly instead.
inline constexpr double kMaxImag = 50.0;

/// Sine integral Si(z) = int_0^z sin(t)/t dt (entire function).
///
/// Relative error <= 1e-13 for |Im z| <= 15; conjugation symmetry
/// si(conj z) == conj(si z) is exact by construction.  Throws
/// AccuracyRegionError for |Im z| > kMaxImag, DomainError for non-finite z.
Complex si(Complex z);

/// Principal-branch cosine integral Ci(z) = gamma + log z +
/// int_0^z (cos t - 1)/t dt, branch cut along the negative real axis.
///
/// Same accuracy contract as si().  Throws SingularityError at z = 0.
Complex ci(Complex z);

/// Both values at once; cheaper than two scalar calls when both are needed.
std::pair<Complex, Complex> si_ci(Complex z);

/// Element i of the result is (si(points[i]), ci(points[i])).
/// A per-point failure is rethrown with the offending index prepended.
std::vector<std::pair<Complex, Complex>> si_ci_batch(
    const std::vector<Complex>& points);

/// Auxiliary pair (f, g) of the sine/cosine integrals,
///   Si(z) = pi/2 - f cos z - g sin z,   Ci(z) = f sin z - g cos z.
/// Slowly varying (all oscillation lives in the trig factors), which makes
/// it the right currency for exponentially cancelling combinations.
/// Requires Re z >= 4, where the continued fraction converges.
std::pair<Complex, Complex> auxiliary_fg(Complex z);

/// e^y E1(y) for y > 0 (scaled real exponential integral).
double e1_scaled(double y);

/// e^-y Ei(y) for y > 0.
double ei_scaled(double y);

/// e^y E1(y) + e^-y Ei(y), evaluated cancellation-free as y -> 0 where the
/// two logarithmic parts annihilate.
double e1_plus_ei_scaled(double y);

}  // namespace platecap::specfun

#endif
