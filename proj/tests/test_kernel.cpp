#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "platecap/errors.hpp"
#include "platecap/kernel.hpp"
#include "platecap/quadrature.hpp"

using platecap::kernel::Separation;
using platecap::kernel::SpecfunCache;
using platecap::specfun::Complex;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("k00 closed form") {
    using platecap::kernel::k00;

    // kappa -> 0+: value approaches 1 from below
    const double near = k00(Separation(1e-9));
    CHECK(near < 1.0);
    CHECK(1.0 - near > 0.0);
    CHECK(1.0 - near < 1e-7);

    // 2-D quadrature oracle (kappa >= 0.01 region)
    CHECK(std::abs(k00(Separation(0.01)) -
                   platecap::quad::kernel_entry_quadrature(Separation(0.01), 0, 0)) <
          1e-10);

    // large-kappa leading order 2/(pi kappa)
    CHECK(k00(Separation(1000.0)) ==
          doctest::Approx(2.0 / (kPi * 1000.0)).epsilon(0.01));

    CHECK_THROWS_AS(Separation(-1.0), platecap::DomainError);
    CHECK_THROWS_AS(Separation(0.0), platecap::DomainError);
}

TEST_CASE("k0n against the quadrature oracle") {
    using platecap::kernel::k0n;
    using platecap::quad::kernel_entry_quadrature;

    CHECK(std::abs(k0n(Separation(0.1), 1) -
                   kernel_entry_quadrature(Separation(0.1), 0, 1)) < 1e-8);
    CHECK(std::abs(k0n(Separation(0.01), 5) -
                   kernel_entry_quadrature(Separation(0.01), 0, 5)) < 1e-8);

    CHECK_THROWS_AS(k0n(Separation(0.1), 0), platecap::ContractViolation);

    // |K_0n| <= 2 K_00 for n = 1..50 at kappa = 0.01
    const double bound = 2.0 * platecap::kernel::k00(Separation(0.01));
    for (int n = 1; n <= 50; ++n)
        CHECK(std::abs(k0n(Separation(0.01), n)) <= bound);
}

TEST_CASE("i4 against its defining integral") {
    using platecap::kernel::i4;

    // quadrature check at the named parameters
    {
        platecap::quad::IParams p;
        p.q = 2 * kPi;
        p.beta = kPi;
        p.z1 = Complex{0.0, 0.3};
        p.z2 = Complex{1.0, 0.3};
        const Complex want =
            platecap::quad::i_integrand_quadrature(platecap::quad::IKind::I4, p);
        CHECK(std::abs(i4(p.q, p.beta, p.z1, p.z2) - want) < 1e-9);
    }

    // random admissible draws, both sign patterns
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> kap(0.05, 0.6);
    std::uniform_int_distribution<int> mult(1, 6);
    for (int i = 0; i < 3; ++i) {
        const double k = kap(rng);
        const double beta = mult(rng) * kPi;
        const double q = (mult(rng) + 1) * kPi;
        platecap::quad::IParams p;
        p.q = q;
        p.beta = beta;
        p.z1 = Complex{0.0, k};
        p.z2 = Complex{1.0, k};
        const Complex want =
            platecap::quad::i_integrand_quadrature(platecap::quad::IKind::I4, p);
        CHECK(std::abs(i4(q, beta, p.z1, p.z2) - want) < 1e-9);
    }

    CHECK_THROWS_AS(i4(0.0, kPi, Complex{0, 0.1}, Complex{1, 0.1}),
                    platecap::ContractViolation);
}

TEST_CASE("i4 conjugate pairing keeps entries real") {
    // Im of the paired +- calls must reproduce the reduced combination so
    // that K_mn comes out real within 1e-12 |K_mn| + 1e-15.
    using platecap::kernel::kmn;
    using platecap::kernel::kmn_via_i4;

    // small n pi kappa: the literal route carries O(1) intermediates and
    // the two routes agree relative to the entry itself
    {
        const Separation sep(0.1);
        const SpecfunCache cache(sep, 4);
        for (const auto& [m, n] : {std::pair{1, 2}, {3, 4}, {1, 4}}) {
            const double reduced = kmn(sep, m, n, cache);
            const double literal = kmn_via_i4(sep, m, n);
            CHECK(std::abs(reduced - literal) <=
                  1e-12 * std::abs(reduced) + 1e-15);
        }
    }
    // larger n pi kappa: the literal route's intermediates grow like
    // e^(2 n pi kappa), so agreement is relative to the matrix scale
    {
        const Separation sep(0.25);
        const SpecfunCache cache(sep, 8);
        for (const auto& [m, n] : {std::pair{1, 2}, {2, 5}, {3, 4}, {1, 8}}) {
            const double reduced = kmn(sep, m, n, cache);
            const double literal = kmn_via_i4(sep, m, n);
            CHECK(std::abs(reduced - literal) <=
                  1e-12 * (std::abs(reduced) + 1.0));
        }
    }
}

TEST_CASE("kmn against the quadrature oracle") {
    using platecap::kernel::kmn;
    using platecap::quad::kernel_entry_quadrature;

    {
        const Separation sep(0.1);
        const SpecfunCache cache(sep, 4);
        CHECK(std::abs(kmn(sep, 1, 2, cache) -
                       kernel_entry_quadrature(sep, 1, 2)) < 1e-8);
    }
    {
        const Separation sep(0.05);
        const SpecfunCache cache(sep, 4);
        CHECK(std::abs(kmn(sep, 3, 3, cache) -
                       kernel_entry_quadrature(sep, 3, 3)) < 1e-8);
        CHECK(std::abs(kmn(sep, 4, 4, cache) -
                       kernel_entry_quadrature(sep, 4, 4)) < 1e-8);
    }

    // symmetry is exact
    const Separation sep(0.1);
    const SpecfunCache cache(sep, 8);
    for (const auto& [m, n] : {std::pair{1, 2}, {2, 7}, {3, 5}})
        CHECK(kmn(sep, m, n, cache) == kmn(sep, n, m, cache));

    // cache contract violations
    const SpecfunCache small(sep, 2);
    CHECK_THROWS_AS(kmn(sep, 1, 5, small), platecap::ContractViolation);
    CHECK_THROWS_AS(kmn(Separation(0.2), 1, 2, cache),
                    platecap::ContractViolation);
    CHECK_THROWS_AS(kmn(sep, 0, 1, cache), platecap::ContractViolation);
}

TEST_CASE("cache entries equal scalar specfun calls") {
    const Separation sep(0.07);
    const SpecfunCache cache(sep, 12);
    for (int k = 1; k <= 12; ++k) {
        const Complex a{k * kPi, k * kPi * 0.07};
        const Complex b{2 * k * kPi, k * kPi * 0.07};
        const Complex c{0.0, k * kPi * 0.07};
        CHECK(cache.si_a(k) == platecap::specfun::si(a));
        CHECK(cache.ci_a(k) == platecap::specfun::ci(a));
        CHECK(cache.si_b(k) == platecap::specfun::si(b));
        CHECK(cache.ci_b(k) == platecap::specfun::ci(b));
        CHECK(cache.si_c(k) == platecap::specfun::si(c));
        CHECK(cache.ci_c(k) == platecap::specfun::ci(c));
    }
}

TEST_CASE("assemble") {
    using platecap::kernel::assemble;

    // single basis function
    const auto m0 = assemble(Separation(0.01), 0);
    CHECK(m0.dim() == 1);
    CHECK(m0(0, 0) == platecap::kernel::k00(Separation(0.01)));

    // every entry of an N=8 assembly matches the quadrature oracle
    const auto m8 = assemble(Separation(0.1), 8);
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; n <= m; ++n)
            CHECK(std::abs(m8(m, n) - platecap::quad::kernel_entry_quadrature(
                                          Separation(0.1), m, n)) < 1e-8);

    // exact symmetry and the section-5 bound
    const double bound = 2.0 * m8(0, 0);
    for (int m = 0; m <= 8; ++m) {
        for (int n = 0; n <= 8; ++n) {
            CHECK(m8(m, n) == m8(n, m));
            CHECK(std::abs(m8(m, n)) <= bound);
        }
    }
    CHECK(m8(0, 0) > 0.0);
    CHECK(m8(0, 0) < 1.0);

    // guard: kappa=1e-5, N=15000 passes (N pi kappa ~ 0.47) -- size only,
    // not assembled here; kappa=1, N=100 must fail loudly
    CHECK(15000 * kPi * 1e-5 < platecap::kernel::kGuardLimit);
    CHECK_THROWS_AS(assemble(Separation(1.0), 100),
                    platecap::PrecisionGuardError);

    // thread count must not change a single bit
    const auto seq = assemble(Separation(0.05), 40, 1);
    const auto par = assemble(Separation(0.05), 40, 4);
    REQUIRE(seq.lower.size() == par.lower.size());
    for (std::size_t i = 0; i < seq.lower.size(); ++i)
        CHECK(seq.lower[i] == par.lower[i]);

    // warning level
    CHECK_FALSE(m8.guard_warning);
    const auto warned = assemble(Separation(0.05), 70);  // N pi kappa ~ 11
    CHECK(warned.guard_warning);
}

TEST_CASE("bound invariant across the production separations") {
    for (const double kap : {0.01, 0.05, 0.1}) {
        const auto mat =
            platecap::kernel::assemble(Separation(kap), kap < 0.05 ? 100 : 60);
        const double bound = 2.0 * mat(0, 0);
        double worst = 0.0;
        for (int m = 0; m <= mat.trunc; ++m)
            for (int n = 0; n <= m; ++n)
                worst = std::max(worst, std::abs(mat(m, n)));
        CHECK(worst <= bound);
    }

    // right at the guard ceiling the scaled evaluation must still honor
    // the bound (the literal combination would have cancelled to garbage)
    const auto edge = platecap::kernel::assemble(Separation(0.02), 470);
    CHECK(edge.guard_product > 29.0);
    double worst = 0.0;
    for (int m = 0; m <= edge.trunc; ++m)
        for (int n = 0; n <= m; ++n)
            worst = std::max(worst, std::abs(edge(m, n)));
    CHECK(worst <= 2.0 * edge(0, 0));
}

TEST_CASE("entries stay oracle-accurate deep into the warning zone") {
    // n pi kappa ~ 19: exponentially scaled evaluation keeps full accuracy
    const Separation sep(0.1);
    const SpecfunCache cache(sep, 60);
    using platecap::kernel::kmn;
    using platecap::quad::kernel_entry_quadrature;
    CHECK(std::abs(kmn(sep, 60, 60, cache) -
                   kernel_entry_quadrature(sep, 60, 60)) < 1e-8);
    CHECK(std::abs(kmn(sep, 59, 60, cache) -
                   kernel_entry_quadrature(sep, 59, 60)) < 1e-8);
    CHECK(std::abs(platecap::kernel::k0n(sep, 60) -
                   kernel_entry_quadrature(sep, 0, 60)) < 1e-8);
}

TEST_CASE("i1/i2/i3 closed forms at spot parameters") {
    using namespace platecap;
    quad::IParams p;
    p.beta = kPi;
    p.kappa = 0.5;
    p.alpha = 1.0;
    CHECK(std::abs(kernel::i1_closed(kPi, 0.5, 1.0) -
                   quad::i_integrand_quadrature(quad::IKind::I1, p).real()) <
          1e-9);

    p.beta = 2 * kPi;
    p.kappa = 0.3;
    p.alpha = -0.4;
    CHECK(std::abs(kernel::i2_closed(2 * kPi, 0.3, -0.4) -
                   quad::i_integrand_quadrature(quad::IKind::I2, p).real()) <
          1e-9);

    p.beta = 2 * kPi;
    p.kappa = 0.2;
    p.gamma = 3 * kPi;
    p.alpha = 0.0;
    CHECK(std::abs(kernel::i3_closed(2 * kPi, 0.2, 3 * kPi) -
                   quad::i_integrand_quadrature(quad::IKind::I3, p).real()) <
          1e-9);
}

TEST_CASE("binary dump round-trip") {
    const auto mat = platecap::kernel::assemble(Separation(0.05), 12);
    const std::string path = "kernel_dump_test.bin";
    platecap::kernel::dump_kernel(mat, path);
    const auto back = platecap::kernel::load_kernel(path);
    CHECK(back.kappa == mat.kappa);
    CHECK(back.trunc == mat.trunc);
    REQUIRE(back.lower.size() == mat.lower.size());
    for (std::size_t i = 0; i < mat.lower.size(); ++i)
        CHECK(back.lower[i] == mat.lower[i]);
    std::remove(path.c_str());

    CHECK_THROWS(platecap::kernel::load_kernel("no_such_file.bin"));
}
