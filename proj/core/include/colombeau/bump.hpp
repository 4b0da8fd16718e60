#pragma once

#include <vector>

#include "colombeau/common.hpp"

namespace colombeau::mollifier {

// The standard compactly supported bump c*exp(-1/(1-x^2)) on (-1,1), zero
// outside, normalized to unit integral. Derivatives of any order n are
// P_n(x)/(1-x^2)^{2n} * profile(x) with the polynomials P_n built once by the
// recurrence P_{n+1} = P_n'(1-x^2)^2 + 4 n x P_n (1-x^2) - 2 x P_n.
//
// The antiderivative Phi (Phi(-1)=0, Phi(1)=1) is tabulated on a uniform grid
// and evaluated with monotone cubic Hermite interpolation; the slopes are the
// exact profile values with Fritsch-Carlson limiting.
class Bump {
  public:
    static constexpr int kMaxOrder = 20;
    static constexpr int kCdfNodes = 4097;  // 4096 intervals on [-1,1]

    Bump();

    double value(double x) const { return derivative(x, 0); }
    double derivative(double x, int order) const;
    double cdf(double x) const;

    // Precomputed sup |profile^(n)| over the support, n <= 8 (dense grid).
    double sup_abs_derivative(int order) const;

    double normalization() const { return norm_; }

  private:
    double norm_ = 0.0;
    std::vector<std::vector<double>> polys_;
    std::vector<double> cdf_values_;
    std::vector<double> cdf_slopes_;
    std::vector<double> sup_derivative_;
};

// Shared immutable instance; construction does the quadrature and tabulation.
const Bump& standard_bump();

// Bump multiplied by the even polynomial that kills moments 1..M while
// keeping the integral at 1. M = 0 reproduces the plain bump.
class MomentBump {
  public:
    explicit MomentBump(int vanishing_moments);

    double value(double x) const { return derivative(x, 0); }
    double derivative(double x, int order) const;

    int moments() const { return moments_; }
    const std::vector<double>& polynomial() const { return poly_; }
    double condition_estimate() const { return condition_; }

  private:
    int moments_;
    std::vector<double> poly_;
    double condition_ = 1.0;
};

// Moments of the normalized base bump: odd ones vanish by symmetry and are
// returned as exact zeros, even ones come from adaptive quadrature.
double base_bump_moment(int order);

}  // namespace colombeau::mollifier
