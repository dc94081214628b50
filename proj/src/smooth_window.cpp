#include "eisenstein/smooth_window.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eis {

namespace {

// S, S', S'' at t in [0, 1].
WindowValue smoothstep(double t) {
    double t2 = t * t;
    return {t * t2 * (10.0 - 15.0 * t + 6.0 * t2), 30.0 * t2 * (1.0 - t) * (1.0 - t),
            60.0 * t * (1.0 - t) * (1.0 - 2.0 * t)};
}

}  // namespace

SmoothWindow::SmoothWindow(double x, double y) : x_(x), y_(y), zero_(x < 2.0) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0))
        throw std::invalid_argument("SmoothWindow: x and y must be finite with y > 0");
    if (y > x / 2.0) throw std::invalid_argument("SmoothWindow: transition width y exceeds x/2");
    if (!zero_ && !(y > 1.0)) throw std::invalid_argument("SmoothWindow: transition width y must exceed 1");
}

WindowValue SmoothWindow::eval(double u) const {
    if (zero_ || u <= 1.0 || u >= x_) return {};
    if (u < y_) {
        double w = y_ - 1.0;
        WindowValue s = smoothstep((u - 1.0) / w);
        return {s.f, s.df / w, s.d2f / (w * w)};
    }
    if (u <= x_ - y_) return {1.0, 0.0, 0.0};
    WindowValue s = smoothstep((x_ - u) / y_);
    return {s.f, -s.df / y_, s.d2f / (y_ * y_)};
}

double SmoothWindow::derivative_constant() const {
    if (zero_) return 0.0;
    // max S' = 15/8 at t = 1/2; max |S''| = 10/sqrt(3) at t = 1/2 -+ sqrt(3)/6.
    // The rising edge has width y - 1, so scale by y/(y - 1).
    double stretch = y_ / (y_ - 1.0);
    return std::max(15.0 / 8.0 * stretch, 10.0 / std::sqrt(3.0) * stretch * stretch);
}

double transition_width(double x, double D) {
    return std::min(std::pow(x, 0.75) * std::pow(D, 0.25), x / 2.0);
}

}  // namespace eis
