#include "colombeau/bump.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "colombeau/errors.hpp"
#include "colombeau/quadrature.hpp"

namespace colombeau::mollifier {

namespace {

double poly_eval(const std::vector<double>& p, double x) {
    double r = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<double> poly_der(const std::vector<double>& p) {
    if (p.size() <= 1) return {0.0};
    std::vector<double> r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<double>(i);
    return r;
}

void poly_acc(std::vector<double>& acc, const std::vector<double>& p) {
    if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += p[i];
}

double raw_profile(double x) {
    double u = 1.0 - x * x;
    if (u <= 0.0) return 0.0;
    return std::exp(-1.0 / u);
}

}  // namespace

Bump::Bump() {
    // Normalization by adaptive quadrature; split at 0 where curvature peaks.
    double integral = integrate_segmented([](double t) { return raw_profile(t); },
                                          -1.0, 1.0, {0.0}, 1e-13, 1e-15);
    norm_ = 1.0 / integral;

    const std::vector<double> u = {1.0, 0.0, -1.0};       // 1 - x^2
    const std::vector<double> u2 = poly_mul(u, u);
    const std::vector<double> x1 = {0.0, 1.0};

    polys_.reserve(kMaxOrder + 1);
    polys_.push_back({1.0});
    for (int n = 0; n < kMaxOrder; ++n) {
        std::vector<double> next = poly_mul(poly_der(polys_[n]), u2);
        std::vector<double> t2 = poly_mul(x1, poly_mul(polys_[n], u));
        for (double& c : t2) c *= 4.0 * n;
        std::vector<double> t3 = poly_mul(x1, polys_[n]);
        for (double& c : t3) c *= -2.0;
        poly_acc(next, t2);
        poly_acc(next, t3);
        polys_.push_back(std::move(next));
    }

    // Tabulate Phi cumulatively with a fixed-order Gauss rule per cell; the
    // integrand is smooth so this is near machine precision at this spacing.
    const int cells = kCdfNodes - 1;
    const double h = 2.0 / cells;
    cdf_values_.assign(kCdfNodes, 0.0);
    cdf_slopes_.assign(kCdfNodes, 0.0);
    // 8-point Gauss-Legendre nodes/weights on [-1,1]
    static const double gx[8] = {-0.9602898564975363, -0.7966664774136267,
                                 -0.5255324099163290, -0.1834346424956498,
                                 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
    static const double gw[8] = {0.1012285362903763, 0.2223810344533745,
                                 0.3137066458778873, 0.3626837833783620,
                                 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    double acc = 0.0;
    for (int i = 0; i < cells; ++i) {
        double a = -1.0 + i * h;
        double cell = 0.0;
        for (int g = 0; g < 8; ++g)
            cell += gw[g] * raw_profile(a + 0.5 * h * (gx[g] + 1.0));
        acc += cell * 0.5 * h * norm_;
        cdf_values_[i + 1] = acc;
    }
    // Rescale so Phi(1) is exactly 1 (removes the tabulation residual).
    double scale = 1.0 / cdf_values_[cells];
    for (double& v : cdf_values_) v *= scale;
    cdf_values_[0] = 0.0;
    cdf_values_[cells] = 1.0;

    for (int i = 0; i < kCdfNodes; ++i) {
        double x = -1.0 + i * h;
        cdf_slopes_[i] = norm_ * raw_profile(x) * scale;
    }
    // Fritsch-Carlson limiting: keeps the interpolant monotone even if the
    // exact slopes overshoot a cell secant (they essentially never do here).
    for (int i = 0; i < cells; ++i) {
        double secant = (cdf_values_[i + 1] - cdf_values_[i]) / h;
        if (secant <= 0.0) continue;
        double cap = 3.0 * secant;
        cdf_slopes_[i] = std::min(cdf_slopes_[i], cap);
        cdf_slopes_[i + 1] = std::min(cdf_slopes_[i + 1], cap);
    }

    // Dense-grid sups of |profile^(n)| for n <= 8.
    sup_derivative_.assign(9, 0.0);
    const int samples = 200001;
    for (int i = 0; i < samples; ++i) {
        double x = -1.0 + 2.0 * i / (samples - 1);
        for (int n = 0; n <= 8; ++n)
            sup_derivative_[n] = std::max(sup_derivative_[n], std::abs(derivative(x, n)));
    }
}

double Bump::derivative(double x, int order) const {
    if (order < 0 || order > kMaxOrder)
        throw DomainError("Bump::derivative: order out of range");
    double u = 1.0 - x * x;
    if (u <= 0.0) return 0.0;
    double e = std::exp(-1.0 / u);
    if (e == 0.0) return 0.0;
    if (order == 0) return norm_ * e;
    return norm_ * poly_eval(polys_[order], x) * e / std::pow(u, 2 * order);
}

double Bump::cdf(double x) const {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const int cells = kCdfNodes - 1;
    const double h = 2.0 / cells;
    double s = (x + 1.0) / h;
    int i = std::min(static_cast<int>(s), cells - 1);
    double t = s - i;
    double v0 = cdf_values_[i], v1 = cdf_values_[i + 1];
    double m0 = cdf_slopes_[i] * h, m1 = cdf_slopes_[i + 1] * h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * v0 + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * v1 + (t3 - t2) * m1;
}

double Bump::sup_abs_derivative(int order) const {
    if (order < 0 || order >= static_cast<int>(sup_derivative_.size()))
        throw DomainError("Bump::sup_abs_derivative: only orders 0..8 are cached");
    return sup_derivative_[order];
}

const Bump& standard_bump() {
    static const Bump instance;
    return instance;
}

double base_bump_moment(int order) {
    if (order < 0) throw DomainError("base_bump_moment: negative order");
    if (order % 2 == 1) return 0.0;  // symmetric support and even profile
    static std::map<int, double> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    const Bump& b = standard_bump();
    double v = integrate_segmented(
        [&](double t) { return std::pow(t, order) * b.value(t); }, -1.0, 1.0, {0.0},
        1e-13, 1e-15);
    cache[order] = v;
    return v;
}

namespace {

// Solves H a = e0 with partial pivoting; H is the (M+1)x(M+1) Hankel matrix
// of base-bump moments. Also returns the 1-norm condition estimate.
std::pair<std::vector<double>, double> solve_moment_system(int m) {
    const int n = m + 1;
    std::vector<std::vector<double>> h(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h[i][j] = base_bump_moment(i + j);

    double norm_h = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(h[i][j]);
        norm_h = std::max(norm_h, col);
    }

    auto lu_solve = [n](std::vector<std::vector<double>> a,
                        std::vector<std::vector<double>> rhs) {
        const int cols = static_cast<int>(rhs[0].size());
        for (int k = 0; k < n; ++k) {
            int p = k;
            for (int i = k + 1; i < n; ++i)
                if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
            if (a[p][k] == 0.0) throw IllConditionedError("moment system is singular");
            std::swap(a[k], a[p]);
            std::swap(rhs[k], rhs[p]);
            for (int i = k + 1; i < n; ++i) {
                double f = a[i][k] / a[k][k];
                if (f == 0.0) continue;
                for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
                for (int j = 0; j < cols; ++j) rhs[i][j] -= f * rhs[k][j];
            }
        }
        for (int k = n - 1; k >= 0; --k) {
            for (int j = 0; j < cols; ++j) {
                double s = rhs[k][j];
                for (int i = k + 1; i < n; ++i) s -= a[k][i] * rhs[i][j];
                rhs[k][j] = s / a[k][k];
            }
        }
        return rhs;
    };

    // Full inverse for the condition estimate; the system is tiny.
    std::vector<std::vector<double>> eye(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) eye[i][i] = 1.0;
    auto inv = lu_solve(h, eye);
    double norm_inv = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(inv[i][j]);
        norm_inv = std::max(norm_inv, col);
    }
    double cond = norm_h * norm_inv;

    std::vector<double> coeffs(n);
    for (int i = 0; i < n; ++i) coeffs[i] = inv[i][0];
    return {coeffs, cond};
}

}  // namespace

MomentBump::MomentBump(int vanishing_moments) : moments_(vanishing_moments) {
    if (vanishing_moments < 0 || vanishing_moments > 10)
        throw DomainError("MomentBump: vanishing moment count must be in 0..10");
    auto [coeffs, cond] = solve_moment_system(vanishing_moments);
    condition_ = cond;
    if (cond > 1e12)
        throw IllConditionedError("MomentBump: moment system condition estimate " +
                                  std::to_string(cond) + " exceeds 1e12");
    poly_ = std::move(coeffs);
}

double MomentBump::derivative(double x, int order) const {
    const Bump& b = standard_bump();
    // Leibniz: (p * bump)^(n) = sum C(n,k) p^(k) bump^(n-k)
    double total = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k < static_cast<int>(poly_.size())) {
            double pk = 0.0;  // p^(k)(x)
            for (std::size_t i = k; i < poly_.size(); ++i) {
                double f = 1.0;
                for (int j = 0; j < k; ++j) f *= static_cast<double>(i - j);
                pk += poly_[i] * f * std::pow(x, static_cast<double>(i - k));
            }
            total += binom * pk * b.derivative(x, order - k);
        }
        binom = binom * (order - k) / (k + 1);
    }
    return total;
}

}  // namespace colombeau::mollifier
