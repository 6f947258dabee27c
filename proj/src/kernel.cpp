#include "platecap/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "platecap/errors.hpp"

namespace platecap::kernel {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// The three Si/Ci argument families for index k at separation kappa.
Complex arg_a(int k, double kap) { return {k * kPi, k * kPi * kap}; }
Complex arg_b(int k, double kap) { return {2.0 * k * kPi, k * kPi * kap}; }
Complex arg_c(int k, double kap) { return {0.0, k * kPi * kap}; }

// Per-index quantities behind every entry, in exponentially scaled form.
//
// The literal closed forms combine Si/Ci values that grow like
// e^(k pi kappa) into products with sinh/cosh of the same scale; the
// entries survive only through cancellation of the e^(2 k pi kappa)
// pieces, which costs ~0.87 (k pi kappa) digits.  Substituting the
// auxiliary representation Si = pi/2 - f cos - g sin, Ci = f sin - g cos
// (exact), together with Chi -+ Shi = { -E1, Ei }, performs those
// cancellations symbolically:
//
//   a_k  = sinh(y) Re(Ci B_k - Ci C_k) - cosh(y) Im(Si B_k - Si C_k)
//        = Im f(B_k) + [e^y E1(y) + e^-y Ei(y)] / 2,         y = k pi kappa,
//
// leaving only well-scaled machine-accurate quantities for any admissible
// y.  The same substitution reduces the diagonal brace (see kmn_diagonal).
struct EntryTerms {
    double a;            // the reduced coefficient a_k
    double re_g, im_g;   // g(B_k)
    double e1s, eis;     // e^y E1(y), e^-y Ei(y)
    double emy;          // e^-y
};

EntryTerms entry_terms(int k, double kap) {
    const double y = k * kPi * kap;
    const auto [f, g] = specfun::auxiliary_fg(arg_b(k, kap));
    EntryTerms t;
    t.re_g = g.real();
    t.im_g = g.imag();
    t.e1s = specfun::e1_scaled(y);
    t.eis = specfun::ei_scaled(y);
    t.emy = std::exp(-y);
    t.a = f.imag() + 0.5 * specfun::e1_plus_ei_scaled(y);
    return t;
}

// K_0n = (sqrt2 (-1)^n / (n pi^2)) Im{ cos(n pi(1+ik)) Si(n pi(2+ik))
//        + cos(n pi(1-ik)) Si(-i n pi k) - sin(n pi(1+ik)) Ci(n pi(2+ik))
//        - sin(n pi(1-ik)) Ci(-i n pi k) },
// which after the parity and reflection identities collapses to the same
// per-index coefficient a_n as the off-diagonal entries.
double k0n_from(int n, const EntryTerms& t) {
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    return -parity * std::sqrt(2.0) * t.a / (n * kPi * kPi);
}

double kmn_off_diagonal(int m, int n, double a_m, double a_n) {
    const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
    return -(sign / (kPi * kPi)) *
           ((a_n + a_m) / static_cast<double>(n + m) +
            (a_n - a_m) / static_cast<double>(n - m));
}

// Diagonal entry.  The q -> 0 limit of the combination gives
//   K_nn = -(1/pi) Im{ (i sh Q - ch P)/(n pi)
//                      + i sh ((2+ik) Si B - ik Si C)
//                      + ch ((2+ik) Ci B - ik Ci C - i pi) },
// whose scaled reduction is
//   K_nn = -(1/pi) [ a_n/(n pi) - pi e^-y - 2 Im g(B_n) - kappa Re g(B_n)
//                    + kappa (e^y E1(y) - e^-y Ei(y))/2 ].
double kmn_diagonal(int n, double kap, const EntryTerms& t) {
    return -(t.a / (n * kPi) - kPi * t.emy - 2.0 * t.im_g - kap * t.re_g +
             kap * 0.5 * (t.e1s - t.eis)) /
           kPi;
}

void check_index_range(int n, const char* fn) {
    if (n < 1) {
        std::ostringstream msg;
        msg << fn << ": index must be >= 1 (the (0,0) entry belongs to k00)";
        throw ContractViolation(msg.str());
    }
}

}  // namespace

SpecfunCache::SpecfunCache(Separation kappa, int max_index)
    : kappa_(kappa.kappa), max_index_(max_index) {
    if (max_index < 0) throw ContractViolation("SpecfunCache: negative index range");
    const int n = max_index + 1;
    si_a_.resize(n);
    ci_a_.resize(n);
    si_b_.resize(n);
    ci_b_.resize(n);
    si_c_.resize(n);
    ci_c_.resize(n);
    g_b_.resize(n);
    sinh_.resize(n);
    cosh_.resize(n);
    a_.resize(n);
    e1s_.resize(n);
    eis_.resize(n);
    emy_.resize(n);

    const double nan = std::nan("");
    si_a_[0] = si_b_[0] = si_c_[0] = Complex{0.0, 0.0};
    ci_a_[0] = ci_b_[0] = ci_c_[0] = g_b_[0] = Complex{nan, nan};
    sinh_[0] = 0.0;
    cosh_[0] = 1.0;
    a_[0] = e1s_[0] = eis_[0] = 0.0;
    emy_[0] = 1.0;

    for (int k = 1; k <= max_index; ++k) {
        std::tie(si_a_[k], ci_a_[k]) = specfun::si_ci(arg_a(k, kappa_));
        std::tie(si_b_[k], ci_b_[k]) = specfun::si_ci(arg_b(k, kappa_));
        std::tie(si_c_[k], ci_c_[k]) = specfun::si_ci(arg_c(k, kappa_));
        sinh_[k] = std::sinh(k * kPi * kappa_);
        cosh_[k] = std::cosh(k * kPi * kappa_);
        const EntryTerms t = entry_terms(k, kappa_);
        g_b_[k] = Complex{t.re_g, t.im_g};
        a_[k] = t.a;
        e1s_[k] = t.e1s;
        eis_[k] = t.eis;
        emy_[k] = t.emy;
    }
}

namespace {
EntryTerms terms_from_cache(const SpecfunCache& cache, int k) {
    const Complex g = cache.g_b(k);
    return {cache.a_coeff(k), g.real(), g.imag(),
            cache.e1s(k),     cache.eis(k), cache.exp_my(k)};
}
}  // namespace

double k00(Separation kappa) {
    const double k = kappa.kappa;
    return (4.0 * std::atan(2.0 / k) - k * std::log1p(4.0 / (k * k))) /
           (2.0 * kPi);
}

double k0n(Separation kappa, int n) {
    check_index_range(n, "k0n");
    return k0n_from(n, entry_terms(n, kappa.kappa));
}

Complex i4(double q, double beta, Complex z1, Complex z2) {
    if (q == 0.0)
        throw ContractViolation(
            "i4: q = 0 requires the diagonal-entry limit form");
    if (!(beta > 0.0)) throw ContractViolation("i4: beta must be positive");
    if (z2.imag() == 0.0)
        throw ContractViolation(
            "i4: Im z2 = 0 puts the Ci path on the branch cut");

    using specfun::ci;
    using specfun::si;
    const Complex u = 1.0 + z2;
    const Complex bz1{beta * z1};
    Complex t = std::sin(bz1 + q) * ci(beta * u) -
                std::cos(bz1 + q) * si(beta * u) -
                std::sin(bz1) * ci(beta * z2) + std::cos(bz1) * si(beta * z2);
    const double bq = beta - q;
    if (bq != 0.0) {
        t += std::cos(bz1 - q * z2) * (si(bq * u) - si(bq * z2)) -
             std::sin(bz1 - q * z2) * (ci(bq * u) - ci(bq * z2));
    } else {
        // limit of Ci(bq u) - Ci(bq z2) as bq -> 0+; the Si difference vanishes
        t += -std::sin(bz1 - q * z2) * (std::log(u) - std::log(z2));
    }
    return t / q;
}

double kmn(Separation kappa, int m, int n, const SpecfunCache& cache) {
    check_index_range(std::min(m, n), "kmn");
    if (cache.kappa() != kappa.kappa)
        throw ContractViolation("kmn: cache built for a different separation");
    if (cache.max_index() < std::max(m, n))
        throw ContractViolation("kmn: cache does not cover index range");

    if (m == n)
        return kmn_diagonal(n, kappa.kappa, terms_from_cache(cache, n));
    return kmn_off_diagonal(m, n, cache.a_coeff(m), cache.a_coeff(n));
}

double kmn_via_i4(Separation kappa, int m, int n) {
    check_index_range(std::min(m, n), "kmn_via_i4");
    if (m == n)
        throw ContractViolation("kmn_via_i4: diagonal entries need the limit form");
    const double k = kappa.kappa;
    const double beta = n * kPi;
    const Complex zp{0.0, k};        // i kappa
    const Complex wp{1.0, k};        // 1 + i kappa
    const Complex t = i4((n + m) * kPi, beta, zp, wp) +
                      i4((n + m) * kPi, beta, -zp, -wp) +
                      i4((n - m) * kPi, beta, zp, wp) +
                      i4((n - m) * kPi, beta, -zp, -wp);
    return -t.imag() / kPi;
}

KernelMatrix assemble(Separation kappa, int trunc, int threads) {
    if (trunc < 0) throw ContractViolation("assemble: negative truncation");
    if (threads < 1) threads = 1;
    const double guard = trunc * kPi * kappa.kappa;
    if (guard > kGuardLimit) {
        std::ostringstream msg;
        msg << "assemble: N*pi*kappa = " << guard << " exceeds the precision guard "
            << kGuardLimit
            << "; the closed-form entries would cancel past double precision";
        throw PrecisionGuardError(msg.str());
    }

    KernelMatrix mat{kappa.kappa, trunc, guard, guard > kGuardWarn, {}};
    mat.lower.assign(static_cast<std::size_t>(trunc + 1) * (trunc + 2) / 2, 0.0);
    mat.at(0, 0) = k00(kappa);

    const SpecfunCache cache(kappa, trunc);

    auto fill_row = [&](int m) {
        const EntryTerms tm = terms_from_cache(cache, m);
        mat.at(m, 0) = k0n_from(m, tm);
        for (int n = 1; n < m; ++n)
            mat.at(m, n) = kmn_off_diagonal(n, m, cache.a_coeff(n), cache.a_coeff(m));
        mat.at(m, m) = kmn_diagonal(m, kappa.kappa, tm);
    };

    if (threads == 1 || trunc < 64) {
        for (int m = 1; m <= trunc; ++m) fill_row(m);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (int m = 1 + t; m <= trunc; m += threads) fill_row(m);
            });
        }
        for (auto& th : pool) th.join();
    }

    // the bound |K_mn| <= 2 K_00 < 2 must hold for every admissible kappa;
    // a violation means the cancellation regime was entered after all
    const double bound = 2.0 * mat(0, 0);
    if (!(mat(0, 0) > 0.0 && mat(0, 0) < 1.0))
        throw PrecisionGuardError("assemble: K_00 outside (0, 1)");
    for (int m = 0; m <= trunc; ++m) {
        for (int n = 0; n <= m; ++n) {
            const double e = mat(m, n);
            if (!std::isfinite(e) || std::abs(e) > bound) {
                std::ostringstream msg;
                msg << "assemble: entry K(" << m << "," << n << ") = " << e
                    << " violates |K_mn| <= 2 K_00 = " << bound;
                throw PrecisionGuardError(msg.str());
            }
        }
    }
    return mat;
}

double i1_closed(double beta, double kappa, double alpha) {
    if (beta == 0.0) throw ContractViolation("i1_closed: beta must be nonzero");
    if (!(kappa > 0.0)) throw DomainError("i1_closed: kappa must be positive");
    using specfun::ci;
    using specfun::si;
    const Complex w{alpha, kappa};
    const Complex w1{alpha + 1.0, kappa};
    const Complex t = std::sin(beta * w) * (ci(beta * w) - ci(beta * w1)) -
                      std::cos(beta * w) * (si(beta * w) - si(beta * w1));
    return std::sin(beta) / beta * std::atan((1.0 + alpha) / kappa) +
           t.imag() / beta;
}

double i2_closed(double beta, double kappa, double alpha) {
    if (!(kappa > 0.0)) throw DomainError("i2_closed: kappa must be positive");
    using specfun::ci;
    using specfun::si;
    const Complex w{alpha, kappa};
    const Complex w1{alpha + 1.0, kappa};
    const Complex t = std::sin(beta * w) * (si(beta * w) - si(beta * w1)) +
                      std::cos(beta * w) * (ci(beta * w) - ci(beta * w1));
    return t.imag();
}

double i3_closed(double beta, double kappa, double gamma) {
    if (beta + gamma == 0.0 || beta - gamma == 0.0)
        throw ContractViolation("i3_closed: beta == +-gamma needs the limit form");
    const Complex zp{0.0, kappa};
    const Complex wp{1.0, kappa};
    const Complex t = i4(beta + gamma, beta, zp, wp) +
                      i4(beta + gamma, beta, -zp, -wp) +
                      i4(beta - gamma, beta, zp, wp) +
                      i4(beta - gamma, beta, -zp, -wp);
    return -0.5 * t.imag();
}

namespace {
constexpr char kDumpMagic[8] = {'P', 'C', 'K', 'M', 'A', 'T', '0', '1'};
}

void dump_kernel(const KernelMatrix& matrix, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dump_kernel: cannot open " + path);
    out.write(kDumpMagic, sizeof kDumpMagic);
    out.write(reinterpret_cast<const char*>(&matrix.kappa), sizeof(double));
    const std::int64_t n = matrix.trunc;
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(matrix.lower.data()),
              static_cast<std::streamsize>(matrix.lower.size() * sizeof(double)));
    if (!out) throw std::runtime_error("dump_kernel: write failed on " + path);
}

KernelMatrix load_kernel(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_kernel: cannot open " + path);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kDumpMagic, sizeof magic) != 0)
        throw std::runtime_error("load_kernel: bad magic in " + path);
    double kappa = 0.0;
    std::int64_t n = 0;
    in.read(reinterpret_cast<char*>(&kappa), sizeof kappa);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!in || !(kappa > 0.0) || n < 0 || n > 1000000)
        throw std::runtime_error("load_kernel: corrupt header in " + path);
    KernelMatrix mat{kappa, static_cast<int>(n), n * kPi * kappa,
                     n * kPi * kappa > kGuardWarn, {}};
    mat.lower.resize(static_cast<std::size_t>(n + 1) * (n + 2) / 2);
    in.read(reinterpret_cast<char*>(mat.lower.data()),
            static_cast<std::streamsize>(mat.lower.size() * sizeof(double)));
    if (!in) throw std::runtime_error("load_kernel: truncated data in " + path);
    return mat;
}

}  // namespace platecap::kernel
