#ifndef PLATECAP_KERNEL_TYPES_HPP
#define PLATECAP_KERNEL_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "platecap/errors.hpp"

namespace platecap::kernel {

/// Normalized plate separation kappa = d/a, strictly positive.
struct Separation {
    double kappa;
    explicit Separation(double k) : kappa(k) {
        if (!std::isfinite(k) || !(k > 0.0))
            throw DomainError("separation kappa must be finite and positive");
    }
};

/// Hard ceiling on N*pi*kappa.  The closed-form entries are differences of
/// terms growing like e^(N pi kappa); past this product the cancellation
/// exhausts double precision, so assembly refuses.
inline constexpr double kGuardLimit = 30.0;

/// Above this product entries still carry usable digits but the loss is
/// no longer negligible; assemblies record a warning.
inline constexpr double kGuardWarn = 10.0;

/// Dense symmetric matrix of expansion coefficients K_mn, 0 <= m,n <= N.
/// Only the lower triangle is stored; reads mirror it.
struct KernelMatrix {
    double kappa;
    int trunc;               // N
    double guard_product;    // N*pi*kappa recorded at assembly
    bool guard_warning;      // guard_product > kGuardWarn
    std::vector<double> lower;  // row-major packed lower triangle

    int dim() const { return trunc + 1; }

    double operator()(int m, int n) const {
        if (n > m) std::swap(m, n);
        return lower[static_cast<std::size_t>(m) * (m + 1) / 2 + n];
    }

    double& at(int m, int n) {  // write access, m >= n
        return lower[static_cast<std::size_t>(m) * (m + 1) / 2 + n];
    }
};

}  // namespace platecap::kernel

#endif
