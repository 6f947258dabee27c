#include "platecap/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "platecap/errors.hpp"
#include "platecap/kernel.hpp"

namespace platecap::quad {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Love kernel K(s,t) = (kappa/pi) [1/(kappa^2+(s-t)^2) + 1/(kappa^2+(s+t)^2)]
double love_kernel(double kap, double s, double t) {
    const double d = s - t;
    const double a = s + t;
    return (kap / kPi) * (1.0 / (kap * kap + d * d) + 1.0 / (kap * kap + a * a));
}

double basis(int m, double x) {
    return (m == 0 ? 1.0 : std::sqrt(2.0)) * std::cos(m * kPi * x);
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
// Legendre recurrence (only the first half; the rest by symmetry).
void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = -p1 / pp;
            z += dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

// 15-point base rule for the adaptive integrators, cached on [-1, 1].
const std::vector<double>& base_x() {
    static const std::vector<double> x = [] {
        std::vector<double> xs, ws;
        legendre_nodes(15, xs, ws);
        return xs;
    }();
    return x;
}
const std::vector<double>& base_w() {
    static const std::vector<double> w = [] {
        std::vector<double> xs, ws;
        legendre_nodes(15, xs, ws);
        return ws;
    }();
    return w;
}

template <typename V, typename F>
V gl15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    V acc{};
    for (int i = 0; i < 15; ++i) acc += base_w()[i] * f(mid + half * base_x()[i]);
    return acc * half;
}

template <typename V, typename F>
V adapt(const F& f, double a, double b, double tol, int depth, int max_depth) {
    const V whole = gl15<V>(f, a, b);
    const double mid = 0.5 * (a + b);
    const V left = gl15<V>(f, a, mid);
    const V right = gl15<V>(f, mid, b);
    const V refined = left + right;
    const double err = std::abs(refined - whole);
    // the relative term is the roundoff floor of the 15-point sums
    if (err <= tol || err <= 4e-16 * std::abs(refined) || b - a < 1e-13)
        return refined;
    if (depth >= max_depth) {
        std::ostringstream msg;
        msg << "adaptive quadrature: tolerance " << tol
            << " not reached on [" << a << ", " << b << "] within depth "
            << max_depth;
        throw QuadratureBudgetError(msg.str());
    }
    const double child_tol = std::max(0.5 * tol, 1e-16);
    return adapt<V>(f, a, mid, child_tol, depth + 1, max_depth) +
           adapt<V>(f, mid, b, child_tol, depth + 1, max_depth);
}

}  // namespace

QuadratureRule gauss_legendre(int m) {
    if (m < 2) throw ContractViolation("gauss_legendre: need at least 2 points");
    std::vector<double> x, w;
    legendre_nodes(m, x, w);
    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        rule.nodes[i] = 0.5 * (x[i] + 1.0);
        rule.weights[i] = 0.5 * w[i];
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(int points_per_panel, int panels) {
    if (points_per_panel < 2 || panels < 1)
        throw ContractViolation("composite_gauss_legendre: bad rule shape");
    const QuadratureRule unit = gauss_legendre(points_per_panel);
    QuadratureRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(points_per_panel) * panels);
    rule.weights.reserve(rule.nodes.capacity());
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
        for (int i = 0; i < points_per_panel; ++i) {
            rule.nodes.push_back((p + unit.nodes[i]) * h);
            rule.weights.push_back(unit.weights[i] * h);
        }
    }
    return rule;
}

double nystrom_solve(kernel::Separation kappa, const QuadratureRule& rule) {
    const int m = rule.order();
    if (m < 2) throw ContractViolation("nystrom_solve: rule too small");
    Eigen::MatrixXd a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a(i, j) = (i == j ? 1.0 : 0.0) -
                      rule.weights[j] *
                          love_kernel(kappa.kappa, rule.nodes[i], rule.nodes[j]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::VectorXd f = lu.solve(Eigen::VectorXd::Ones(m));
    const double residual = (a * f - Eigen::VectorXd::Ones(m)).lpNorm<Eigen::Infinity>();
    if (!std::isfinite(residual) || residual > 1e-8 * (1.0 + f.lpNorm<Eigen::Infinity>()))
        throw SolverError("nystrom_solve: discrete system solved poorly", 0.0);
    double cap = 0.0;
    for (int i = 0; i < m; ++i) cap += rule.weights[i] * f(i);
    return cap;
}

double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth) {
    return adapt<double>(f, a, b, abs_tol, 0, max_depth);
}

Complex adaptive_integrate_complex(const std::function<Complex(double)>& f,
                                   double a, double b, double abs_tol,
                                   int max_depth) {
    return adapt<Complex>(f, a, b, abs_tol, 0, max_depth);
}

double kernel_entry_quadrature(kernel::Separation kappa, int m, int n) {
    if (m < 0 || n < 0)
        throw ContractViolation("kernel_entry_quadrature: negative index");
    if (kappa.kappa < 0.01)
        throw ContractViolation(
            "kernel_entry_quadrature: kappa < 0.01 defeats the adaptive budget "
            "(crest at s = t too sharp)");
    const double kap = kappa.kappa;

    // Iterated adaptive rule; the inner interval is split at the crest
    // location t = s before adapting.
    auto inner = [&](double s) {
        auto g = [&](double t) { return love_kernel(kap, s, t) * basis(n, t); };
        double v = adaptive_integrate(g, 0.0, s, 5e-13, 40);
        v += adaptive_integrate(g, s, 1.0, 5e-13, 40);
        return v;
    };
    auto outer = [&](double s) { return inner(s) * basis(m, s); };
    return adaptive_integrate(outer, 0.0, 1.0, 5e-11, 40);
}

Complex i_integrand_quadrature(IKind which, const IParams& p) {
    switch (which) {
        case IKind::I1: {
            if (!(p.kappa > 0.0)) throw DomainError("I1: kappa must be positive");
            auto f = [&](double t) {
                return std::cos(p.beta * t) * std::atan((t + p.alpha) / p.kappa);
            };
            return {adaptive_integrate(f, 0.0, 1.0, 1e-10, 40), 0.0};
        }
        case IKind::I2: {
            if (!(p.kappa > 0.0)) throw DomainError("I2: kappa must be positive");
            auto f = [&](double t) {
                const double u = t + p.alpha;
                return p.kappa * std::cos(p.beta * t) / (p.kappa * p.kappa + u * u);
            };
            return {adaptive_integrate(f, 0.0, 1.0, 1e-10, 40), 0.0};
        }
        case IKind::I3: {
            // integrand uses the (separately validated) I2 closed form
            auto f = [&](double s) {
                return (kernel::i2_closed(p.beta, p.kappa, -s) +
                        kernel::i2_closed(p.beta, p.kappa, s)) *
                       std::cos(p.gamma * s);
            };
            return {adaptive_integrate(f, 0.0, 1.0, 1e-10, 40), 0.0};
        }
        case IKind::I4: {
            auto f = [&](double s) {
                const Complex arg = p.beta * (s + p.z2);
                return std::sin(p.q * s + p.beta * p.z1) * specfun::si(arg) +
                       std::cos(p.q * s + p.beta * p.z1) * specfun::ci(arg);
            };
            return adaptive_integrate_complex(f, 0.0, 1.0, 1e-10, 40);
        }
    }
    throw ContractViolation("i_integrand_quadrature: unknown kind");
}

}  // namespace platecap::quad
