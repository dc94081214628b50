#pragma once

// C^2 cut-off on [1, x]: 0 outside, 1 on [y, x - y], quintic smoothstep
// S(t) = 10 t^3 - 15 t^4 + 6 t^5 on the two transitions.

namespace eis {

struct WindowValue {
    double f = 0.0, df = 0.0, d2f = 0.0;
};

class SmoothWindow {
public:
    /// Requires 1 < y <= x/2. For x < 2 the window is the zero function
    /// (the support [1, x] is too short to hold a plateau) and only
    /// 0 < y <= x/2 is checked. Throws std::invalid_argument otherwise.
    SmoothWindow(double x, double y);

    double x() const { return x_; }
    double y() const { return y_; }
    bool degenerate() const { return zero_; }

    WindowValue eval(double u) const;
    double operator()(double u) const { return eval(u).f; }

    /// C with |f'| <= C/y and |f''| <= C/y^2 everywhere.
    double derivative_constant() const;

private:
    double x_, y_;
    bool zero_;
};

/// Plateau edge y = min(x^{3/4} D^{1/4}, x/2).
double transition_width(double x, double D);

}  // namespace eis
