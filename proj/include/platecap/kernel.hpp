#ifndef PLATECAP_KERNEL_HPP
#define PLATECAP_KERNEL_HPP

#include <string>
#include <vector>

#include "platecap/complex_specfun.hpp"
#include "platecap/kernel_types.hpp"

namespace platecap::kernel {

using specfun::Complex;

/// Si/Ci evaluations shared by every entry of one (kappa, N) assembly.
///
/// Every Si/Ci argument appearing in the closed-form entries reduces to
/// one of three one-index families
///     A_k = k pi (1 + i kappa),  B_k = k pi (2 + i kappa),  C_k = i k pi kappa,
/// together with sinh/cosh(k pi kappa), so O(N) specfun calls cover all
/// O(N^2) entries.  Immutable after construction; safe to share across
/// threads.
class SpecfunCache {
  public:
    SpecfunCache(Separation kappa, int max_index);

    double kappa() const { return kappa_; }
    int max_index() const { return max_index_; }

    Complex si_a(int k) const { return si_a_[k]; }
    Complex ci_a(int k) const { return ci_a_[k]; }  // k >= 1
    Complex si_b(int k) const { return si_b_[k]; }
    Complex ci_b(int k) const { return ci_b_[k]; }  // k >= 1
    Complex si_c(int k) const { return si_c_[k]; }
    Complex ci_c(int k) const { return ci_c_[k]; }  // k >= 1
    double sinh_k(int k) const { return sinh_[k]; }
    double cosh_k(int k) const { return cosh_[k]; }

    /// a_k = sinh(k pi kappa) Re(Ci B_k - Ci C_k) - cosh(k pi kappa) Im(Si B_k - Si C_k),
    /// evaluated in exponentially scaled form; the single real number per
    /// index that the off-diagonal entries and the m = 0 row reduce to.
    double a_coeff(int k) const { return a_[k]; }

    /// Scaled per-index quantities the diagonal entries consume (k >= 1):
    /// the auxiliary g(B_k) and e^y E1(y), e^-y Ei(y), e^-y at y = k pi kappa.
    Complex g_b(int k) const { return g_b_[k]; }
    double e1s(int k) const { return e1s_[k]; }
    double eis(int k) const { return eis_[k]; }
    double exp_my(int k) const { return emy_[k]; }

  private:
    double kappa_;
    int max_index_;
    std::vector<Complex> si_a_, ci_a_, si_b_, ci_b_, si_c_, ci_c_, g_b_;
    std::vector<double> sinh_, cosh_, a_, e1s_, eis_, emy_;
};

/// K_00 = (1/2pi) [4 arctan(2/kappa) - kappa ln(1 + 4/kappa^2)], in (0, 1).
double k00(Separation kappa);

/// First-row entry K_0n, n >= 1 (n = 0 belongs to k00).
double k0n(Separation kappa, int n);

/// Closed form of I4(q, beta, z1, z2) =
///   int_0^1 [sin(qs + beta z1) Si(beta(s + z2)) + cos(qs + beta z1) Ci(beta(s + z2))] ds.
/// Requires q != 0 and beta > 0; Im z2 must be nonzero so the Ci path
/// stays off the branch cut.  beta == q is handled by its interior limit.
Complex i4(double q, double beta, Complex z1, Complex z2);

/// General entry K_mn for m, n >= 1; the m == n branch takes the q -> 0
/// limit form.  The cache must match kappa and cover max(m, n).
double kmn(Separation kappa, int m, int n, const SpecfunCache& cache);

/// K_mn for m != n assembled literally from the four i4() terms via
/// scalar si/ci calls.  Slower, numerically equivalent route kept as the
/// dual-route consistency check for the reduced production path.
double kmn_via_i4(Separation kappa, int m, int n);

/// Assemble the full symmetric matrix for (kappa, N).  Requires
/// N pi kappa <= kGuardLimit; flags a warning above kGuardWarn.  Rows may
/// be computed in parallel; the result is identical for any thread count.
KernelMatrix assemble(Separation kappa, int trunc, int threads = 1);

/// Closed forms of the intermediate integrals; retained for oracle
/// validation of each derivation stage.
///   I1 = int_0^1 cos(beta t) arctan((t+alpha)/kappa) dt
///   I2 = int_0^1 kappa cos(beta t) / (kappa^2 + (t+alpha)^2) dt
///   I3 = int_0^1 [I2(beta,kappa,-s) + I2(beta,kappa,s)] cos(gamma s) ds
double i1_closed(double beta, double kappa, double alpha);
double i2_closed(double beta, double kappa, double alpha);
double i3_closed(double beta, double kappa, double gamma);

/// Binary dump: 8-byte magic "PCKMAT01", kappa (8-byte IEEE double),
/// N (8-byte signed integer), then the row-major lower triangle as 8-byte
/// doubles.  Native (little-endian) byte order.
void dump_kernel(const KernelMatrix& matrix, const std::string& path);
KernelMatrix load_kernel(const std::string& path);

}  // namespace platecap::kernel

#endif
