#include "platecap/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "platecap/errors.hpp"
#include "platecap/kernel.hpp"

namespace platecap::solver {
namespace {

// Hager-style 1-norm estimate of ||A^-1||_1 from an existing factorization.
double inverse_norm1_estimate(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                              int n) {
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        const Eigen::VectorXd y = lu.solve(x);
        const double ynorm = y.lpNorm<1>();
        if (!(ynorm > est)) break;
        est = ynorm;
        Eigen::VectorXd xi(n);
        for (int i = 0; i < n; ++i) xi(i) = y(i) >= 0.0 ? 1.0 : -1.0;
        const Eigen::VectorXd z = lu.adjoint().solve(xi);
        int jmax = 0;
        z.cwiseAbs().maxCoeff(&jmax);
        if (std::abs(z(jmax)) <= z.dot(x)) break;
        x.setZero();
        x(jmax) = 1.0;
    }
    return est;
}

SolveResult solve_block(const kernel::KernelMatrix& matrix, int trunc,
                        bool keep_coeffs) {
    if (trunc < 0 || trunc > matrix.trunc)
        throw ContractViolation("solve: truncation outside the assembled block");
    const int n = trunc + 1;

    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = (i == j ? 1.0 : 0.0) - matrix(i, j);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n);
    e0(0) = 1.0;
    const Eigen::VectorXd f = lu.solve(e0);

    const double fnorm = f.lpNorm<Eigen::Infinity>();
    const double residual = (a * f - e0).lpNorm<Eigen::Infinity>();
    const double cond = a.cwiseAbs().colwise().sum().maxCoeff() *
                        inverse_norm1_estimate(lu, n);

    if (!std::isfinite(residual) || residual > 1e-10 * (1.0 + fnorm)) {
        std::ostringstream msg;
        msg << "solve_f0: residual " << residual
            << " exceeds 1e-10 (1 + ||f||); condition estimate " << cond;
        throw SolverError(msg.str(), cond);
    }

    SolveResult result{matrix.kappa, trunc,   f(0), std::nullopt,
                       residual,     cond, cond > 1e12};
    if (keep_coeffs)
        result.coeffs = std::vector<double>(f.data(), f.data() + n);
    return result;
}

}  // namespace

double ConvergenceCurve::at(int trunc) const {
    for (const auto& [n, f0] : samples)
        if (n == trunc) return f0;
    throw ContractViolation("ConvergenceCurve: no sample at requested truncation");
}

bool ConvergenceCurve::has(int trunc) const {
    for (const auto& [n, f0] : samples)
        if (n == trunc) return true;
    return false;
}

SolveResult solve_f0(const kernel::KernelMatrix& matrix, bool keep_coeffs) {
    return solve_block(matrix, matrix.trunc, keep_coeffs);
}

SolveResult solve_f0_leading(const kernel::KernelMatrix& matrix, int trunc,
                             bool keep_coeffs) {
    return solve_block(matrix, trunc, keep_coeffs);
}

ConvergenceCurve convergence_curve(kernel::Separation kappa,
                                   const std::vector<int>& trunc_list,
                                   int threads) {
    if (trunc_list.empty())
        throw ContractViolation("convergence_curve: empty truncation list");
    for (std::size_t i = 1; i < trunc_list.size(); ++i)
        if (trunc_list[i] <= trunc_list[i - 1])
            throw ContractViolation(
                "convergence_curve: truncation list must be strictly increasing");

    const kernel::KernelMatrix matrix =
        kernel::assemble(kappa, trunc_list.back(), threads);
    ConvergenceCurve curve{kappa.kappa, {}};
    curve.samples.reserve(trunc_list.size());
    for (const int n : trunc_list)
        curve.samples.emplace_back(n, solve_block(matrix, n, false).f0);
    return curve;
}

}  // namespace platecap::solver
