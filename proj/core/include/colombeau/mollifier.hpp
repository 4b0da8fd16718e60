#pragma once

#include <functional>
#include <vector>

#include "colombeau/bump.hpp"
#include "colombeau/common.hpp"
#include "colombeau/net.hpp"

namespace colombeau::mollifier {

using WidthFn = std::function<double(double eps)>;

// w(eps) = eps.
WidthFn linear_width();
// w(eps) = 1/|ln eps|, clamped below 1 so the evaluator stays total on (0,1);
// schedules for this mode start at eps <= 2^-3 anyway.
WidthFn log_width();

// The mollifier family phi_eps = eps^-1 phi(./eps) centered at `center`,
// as a net with analytic derivatives.
nets::Net scaled(const Bump& b, double center = 0.0);

// Smoothed indicator of a finite union of closed intervals:
//   eta_eps = 1_{A^(w/2)} * phi_(w/2),  w = width_fn(eps),
// computed in closed form per interval via the tabulated antiderivative,
// Phi((x-P)/h) - Phi((x-Q)/h), after merging overlapping enlargements.
// Equals 1 on A, 0 at distance >= w from A, and stays within [0,1].
// An empty interval list yields the zero net.
nets::Net smooth_indicator(const Bump& b, std::vector<Interval> a, WidthFn width_fn,
                           std::string label = "smooth_indicator");

}  // namespace colombeau::mollifier
