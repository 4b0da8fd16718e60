#include "colombeau/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "colombeau/errors.hpp"
#include "colombeau/quadrature.hpp"

namespace colombeau::embedding {

using mollifier::Bump;
using mollifier::MomentBump;
using mollifier::standard_bump;
using nets::Net;

namespace {

// sum_{m=a}^{inf} m^-s by Euler-Maclaurin; accurate to ~1e-15 for a >= 50.
double zeta_tail(double s, double a) {
    return std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s) +
           s * std::pow(a, -s - 1.0) / 12.0 -
           s * (s + 1.0) * (s + 2.0) * std::pow(a, -s - 3.0) / 720.0;
}

// sum_{m=a}^{b} m^-s for integer 1 <= a <= b.
double partial_zeta(double s, long long a, long long b) {
    if (a > b) return 0.0;
    if (b - a < 4096 || a < 64) {
        double total = 0.0;
        for (long long m = b; m >= a; --m) total += std::pow(static_cast<double>(m), -s);
        return total;
    }
    return zeta_tail(s, static_cast<double>(a)) - zeta_tail(s, static_cast<double>(b + 1));
}

}  // namespace

Net embed(const AtomicDistribution& d, const MomentBump& phi) {
    for (const Atom& a : d.atoms)
        if (!std::isfinite(a.location) || a.order < 0)
            throw DomainError("embed: atoms need finite locations and order >= 0");
    const bool has_density = static_cast<bool>(d.density);
    if (has_density && d.density_support.lo >= d.density_support.hi)
        throw DomainError("embed: density needs a nonempty support interval");

    auto atoms = d.atoms;
    auto density = d.density;
    auto supp = d.density_support;

    auto body = [atoms, density, supp, phi, has_density](double eps, double x, int n) {
        double total = 0.0;
        for (const Atom& a : atoms) {
            double y = (x - a.location) / eps;
            if (std::abs(y) >= 1.0) continue;
            double sign = a.order % 2 == 0 ? 1.0 : -1.0;
            total += a.coefficient * sign * phi.derivative(y, a.order + n) /
                     std::pow(eps, a.order + n + 1);
        }
        if (has_density) {
            double lo = std::max(supp.lo, x - eps);
            double hi = std::min(supp.hi, x + eps);
            if (lo < hi) {
                // (density * phi_eps)^(n) = density^(n) * phi_eps, evaluated
                // as int d^(n)(x - eps t) phi(t) dt on the fixed unit rule;
                // the substitution keeps accuracy uniform in eps.
                const GaussRule& rule = gauss_legendre_96();
                double acc = 0.0;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    double y = x - eps * rule.nodes[i];
                    if (y <= supp.lo || y >= supp.hi) continue;
                    acc += rule.weights[i] * density(y, n) * phi.value(rule.nodes[i]);
                }
                total += acc;
            }
        }
        return total;
    };

    auto hot = [atoms](double eps) {
        std::vector<Interval> spots;
        spots.reserve(atoms.size());
        for (const Atom& a : atoms)
            spots.push_back({a.location - eps, a.location + eps});
        return spots;
    };

    return Net(Interval::whole_line(), 8, "embedded_distribution", body, hot);
}

Net embed(const AtomicDistribution& d) { return embed(d, MomentBump(0)); }

Net example2_net(const Example2Family& fam, const Bump& phi) {
    if (!(fam.scale > 0.0)) throw DomainError("example2_net: scale must be > 0");
    const double s = fam.scale;
    const bool center = fam.includes_center;
    auto pb = std::make_shared<const Bump>(phi);

    // Locations below split_factor * eps are folded into the Taylor tail.
    constexpr double split_factor = 0x1p-7;

    auto phi_eps = [pb](double eps, double y, int n) {
        if (std::abs(y) >= eps) return 0.0;
        return pb->derivative(y / eps, n) / std::pow(eps, n + 1);
    };

    auto body = [s, center, phi_eps](double eps, double x, int n) {
        const long long cap = static_cast<long long>(std::ceil(std::pow(eps, -1.5)));
        const double t_split = eps * split_factor;
        long long m_explicit =
            std::min(cap, static_cast<long long>(std::ceil(std::sqrt(s / t_split))));

        double total = center ? phi_eps(eps, x, n) : 0.0;

        // Explicit atoms: only m whose location lands within eps of x.
        // Positive-side locations s/m^2 carry coefficient -1, mirrored ones +1.
        auto m_range = [&](double a, double b, long long& lo, long long& hi) {
            // m with s/m^2 in [a, b], widened by one and clamped to
            // [1, m_explicit]; out-of-support extras evaluate to zero anyway.
            if (b <= 0.0) {
                lo = 1;
                hi = 0;
                return;
            }
            lo = std::max(1LL, static_cast<long long>(std::floor(std::sqrt(s / b))) - 1);
            hi = a > 0.0 ? static_cast<long long>(std::ceil(std::sqrt(s / a))) + 1
                         : m_explicit;
            hi = std::min(hi, m_explicit);
        };
        long long lo, hi;
        m_range(x - eps, x + eps, lo, hi);  // locations near +x
        for (long long m = lo; m <= hi; ++m) {
            double t = s / (static_cast<double>(m) * m);
            total -= phi_eps(eps, x - t, n);
        }
        m_range(-x - eps, -x + eps, lo, hi);  // locations near -x
        for (long long m = lo; m <= hi; ++m) {
            double t = s / (static_cast<double>(m) * m);
            total += phi_eps(eps, x + t, n);
        }

        // Taylor-aggregated deep tail: for t = s/m^2 below the split,
        //   phi_eps(x+t) - phi_eps(x-t) = 2 sum_j t^(2j+1) phi^(2j+1)(x)/(2j+1)!
        // through j = 3, summed with partial zeta weights S_k = s^k sum m^-2k.
        if (cap > m_explicit) {
            double d1 = phi_eps(eps, x, n + 1);
            double d3 = phi_eps(eps, x, n + 3);
            double d5 = phi_eps(eps, x, n + 5);
            double d7 = phi_eps(eps, x, n + 7);
            if (d1 != 0.0 || d3 != 0.0 || d5 != 0.0 || d7 != 0.0) {
                double s1 = s * partial_zeta(2.0, m_explicit + 1, cap);
                double s3 = s * s * s * partial_zeta(6.0, m_explicit + 1, cap);
                double s5 = std::pow(s, 5) * partial_zeta(10.0, m_explicit + 1, cap);
                double s7 = std::pow(s, 7) * partial_zeta(14.0, m_explicit + 1, cap);
                total += 2.0 * (s1 * d1 + s3 * d3 / 6.0 + s5 * d5 / 120.0 +
                                s7 * d7 / 5040.0);
            }
        }
        return total;
    };

    auto hot = [s, center](double eps) {
        std::vector<Interval> spots;
        // Pile-up region around the accumulation point.
        spots.push_back({-8.0 * eps, 8.0 * eps});
        if (center) spots.push_back({-eps, eps});
        for (int m = 1; m <= 48; ++m) {
            double t = s / (static_cast<double>(m) * m);
            spots.push_back({t - eps, t + eps});
            spots.push_back({-t - eps, -t + eps});
        }
        return spots;
    };

    Net net(Interval::whole_line(), 8, "example2", body, hot);
    return net.with_meta("tail_bound_coeff", 2.0 * standard_bump().sup_abs_derivative(1))
        .with_meta("scale", s);
}

double pair(const Net& f, const std::function<double(double)>& test_fn,
            const Interval& test_support, double eps, double rel_tol) {
    if (!(f.domain().lo < test_support.lo && test_support.hi < f.domain().hi))
        throw DomainError("pair: test function support must sit inside the net domain");
    std::vector<double> cuts;
    for (const Interval& w : f.hot_spots(eps)) {
        cuts.push_back(w.lo);
        cuts.push_back(w.hi);
        cuts.push_back(0.5 * (w.lo + w.hi));
    }
    return integrate_segmented(
        [&](double x) { return f(eps, x, 0) * test_fn(x); }, test_support.lo,
        test_support.hi, std::move(cuts), rel_tol, 1e-14);
}

std::vector<double> pairing_partial_sums(double scale,
                                         const std::function<double(double)>& psi,
                                         const std::vector<long long>& n_list) {
    if (!(scale > 0.0)) throw DomainError("pairing_partial_sums: scale must be > 0");
    long long max_n = 0;
    for (long long n : n_list) {
        if (n < 1) throw DomainError("pairing_partial_sums: N values must be >= 1");
        max_n = std::max(max_n, n);
    }
    std::vector<long long> sorted = n_list;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> partial(n_list.size());
    double acc = 0.0;
    long long m = 1;
    for (long long target : sorted) {
        for (; m <= target; ++m) acc += psi(scale / (static_cast<double>(m) * m));
        // map back to the caller's order
        for (std::size_t i = 0; i < n_list.size(); ++i)
            if (n_list[i] == target) partial[i] = acc;
    }
    return partial;
}

std::function<double(double)> plateau_test_fn() {
    const Bump& b = standard_bump();
    return [&b](double x) { return b.cdf((x + 1.1) / 0.1) - b.cdf((x - 1.1) / 0.1); };
}

}  // namespace colombeau::embedding
