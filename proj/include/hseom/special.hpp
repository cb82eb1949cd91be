// special.hpp - Bessel ladders, Chebyshev polynomials and adaptive quadrature

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hseom/linalg.hpp"

namespace hseom {

// J_0(x) .. J_{count-1}(x) in one pass (Miller's downward recurrence,
// normalized with J_0 + 2 sum J_2k = 1).
template <typename Real>
VectorX<Real> bessel_ladder(Real x, int count)
{
    VectorX<Real> out = VectorX<Real>::Zero(count);
    if (count <= 0) return out;
    if (x == Real(0)) {
        out(0) = Real(1);
        return out;
    }
    const bool negative = x < Real(0);
    const Real ax = std::abs(x);

    const int top = std::max(count, static_cast<int>(ax)) + 1;
    int start = top + 20 + static_cast<int>(std::sqrt(Real(40) * top));
    start += start % 2;

    Real jp1 = 0, j = std::numeric_limits<Real>::min() * Real(1e10);
    Real norm = 0;
    const Real big = Real(1e250);
    for (int n = start; n >= 1; --n) {
        const Real jm1 = Real(2 * n) / ax * j - jp1;
        jp1 = j;
        j = jm1;
        const int order = n - 1;
        if (order < count) out(order) = j;
        if (order % 2 == 0 && order > 0) norm += 2 * j;
        if (std::abs(j) > big) {
            const Real s = Real(1) / big;
            j *= s;
            jp1 *= s;
            norm *= s;
            out *= s;
        }
    }
    norm += j;
    out /= norm;
    if (negative)
        for (int k = 1; k < count; k += 2) out(k) = -out(k);
    return out;
}

// T_0(x) .. T_{count-1}(x) by the three-term recurrence.
template <typename Real>
VectorX<Real> chebyshev_ladder(Real x, int count)
{
    VectorX<Real> out(std::max(count, 0));
    if (count > 0) out(0) = Real(1);
    if (count > 1) out(1) = x;
    for (int k = 2; k < count; ++k) out(k) = 2 * x * out(k - 1) - out(k - 2);
    return out;
}

struct QuadratureOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    unsigned max_depth = 30;
};

// Globally adaptive 61-point Gauss-Kronrod on [a, b]: the panel with the
// largest error estimate is bisected until the summed estimate drops below
// max(abs_tol, rel_tol * int |f|). The tolerance is referenced to int |f|
// so that integrals with heavy cancellation (high Chebyshev orders) still
// terminate. Throws NumericalError when panels would get narrower than
// (b - a) / 2^max_depth before that.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {})
{
    if (a == b) return 0.0;
    using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
    struct Panel {
        double lo, hi, value, error, l1;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto evaluate = [&](double lo, double hi) {
        Panel p{lo, hi, 0.0, 0.0, 0.0};
        p.value = Rule::integrate(f, lo, hi, 0, 0.0, &p.error, &p.l1);
        return p;
    };
    const double min_width = std::abs(b - a) * std::ldexp(1.0, -static_cast<int>(opt.max_depth));
    std::priority_queue<Panel> panels;
    panels.push(evaluate(a, b));
    double value = panels.top().value, error = panels.top().error, l1 = panels.top().l1;
    while (std::isfinite(value) && error > std::max(opt.abs_tol, opt.rel_tol * l1)) {
        const Panel worst = panels.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (std::abs(worst.hi - worst.lo) < 2 * min_width) break;
        panels.pop();
        const Panel left = evaluate(worst.lo, mid), right = evaluate(mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        panels.push(left);
        panels.push(right);
    }
    if (!std::isfinite(value) || error > std::max(opt.abs_tol, 1e3 * opt.rel_tol * l1)) {
        std::ostringstream msg;
        msg << "quadrature on [" << a << ", " << b << "] did not converge: value " << value
            << ", residual estimate " << error;
        throw NumericalError(msg.str());
    }
    return value;
}

template <typename F>
cplx integrate_adaptive_complex(F&& f, double a, double b, const QuadratureOptions& opt = {})
{
    const double re = integrate_adaptive([&](double x) { return std::real(f(x)); }, a, b, opt);
    const double im = integrate_adaptive([&](double x) { return std::imag(f(x)); }, a, b, opt);
    return {re, im};
}

} // namespace hseom
