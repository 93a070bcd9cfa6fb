#pragma once

// Composite 16-point Gauss-Legendre quadrature with a fixed summation
// order (panel by panel, node by node) for bit-reproducible results.

#include <array>
#include <cmath>
#include <functional>

namespace symsieve {

// Nodes and weights on [-1, 1].
struct GaussLegendre16 {
    static constexpr std::array<double, 8> nodes = {
        0.09501250983763744019, 0.28160355077925891323,
        0.45801677765722738634, 0.61787624440264374845,
        0.75540440835500303390, 0.86563120238783174388,
        0.94457502307323257608, 0.98940093499164993260};
    static constexpr std::array<double, 8> weights = {
        0.18945061045506849629, 0.18260341504492358887,
        0.16915651939500253819, 0.14959598881657673208,
        0.12462897125553387205, 0.09515851168249278481,
        0.06225352393864789286, 0.02715245941175409485};
};

template <typename F>
double integrate_panel(F&& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        double x = GaussLegendre16::nodes[i] * half;
        s += GaussLegendre16::weights[i] * (f(mid - x) + f(mid + x));
    }
    return s * half;
}

template <typename F>
double integrate_composite(F&& f, double a, double b, int panels) {
    double s = 0.0;
    double w = (b - a) / panels;
    for (int i = 0; i < panels; ++i) s += integrate_panel(f, a + i * w, a + (i + 1) * w);
    return s;
}

// Panel count for an oscillatory integrand with top angular frequency
// omega over [a, b]: each panel sees at most a quarter period.
inline int panel_count(double a, double b, double omega) {
    double max_width = 3.141592653589793 / (4.0 * std::max(omega, 1.0));
    int panels = static_cast<int>(std::ceil((b - a) / max_width));
    return std::max(panels, 1);
}

}  // namespace symsieve
