#include "eisenstein/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace eis {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

void bisect(const std::function<double(double)>& f, double a, double b, double tol, int depth, QuadResult& acc) {
    double err = 0.0;
    double v = Rule::integrate(f, a, b, 0, 0.0, &err);
    if (err <= tol || depth == 0 || !(b - a > 0)) {
        acc.value += v;
        acc.error += err;
        if (err > tol) acc.converged = false;
        return;
    }
    double mid = 0.5 * (a + b);
    bisect(f, a, mid, 0.5 * tol, depth - 1, acc);
    bisect(f, mid, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

QuadResult integrate_gk15(const std::function<double(double)>& f, double a, double b, double abs_tol, int max_depth) {
    QuadResult r;
    if (!(b > a)) return r;
    bisect(f, a, b, abs_tol, max_depth, r);
    return r;
}

QuadResult integrate_cosine(const std::function<double(double)>& f, double v, double a, double b, double abs_tol) {
    QuadResult total;
    if (!(b > a)) return total;
    const double omega = 2.0 * std::numbers::pi * v;
    auto g = [&](double t) { return f(t) * std::cos(omega * t); };
    const double av = std::abs(v);
    std::size_t panels = av > 0 ? static_cast<std::size_t>(std::ceil((b - a) * 2.0 * av)) : 1;
    panels = std::max<std::size_t>(panels, 1);
    const double h = (b - a) / static_cast<double>(panels);
    const double tol = abs_tol / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        double lo = a + h * static_cast<double>(i);
        double hi = i + 1 == panels ? b : lo + h;
        QuadResult r = integrate_gk15(g, lo, hi, tol);
        total.value += r.value;
        total.error += r.error;
        total.converged = total.converged && r.converged;
    }
    return total;
}

}  // namespace eis
