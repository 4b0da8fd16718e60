#pragma once

#include <functional>
#include <vector>

namespace colombeau {

// Adaptive Gauss-Kronrod integral of f over [a,b]. Throws QuadratureError if
// the error estimate misses both tolerances.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-14);

// Same, but the interval is pre-split at the given interior breakpoints
// (spike locations, support edges).
double integrate_segmented(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breakpoints, double rel_tol = 1e-10,
                           double abs_tol = 1e-14);

// Fixed 96-point Gauss-Legendre rule on [-1,1]; machine precision for
// bump-type integrands. Nodes and weights are computed once.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre_96();

}  // namespace colombeau
