#include "colombeau/manifold.hpp"

#include <algorithm>
#include <cmath>

#include "colombeau/bump.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/mollifier.hpp"

namespace colombeau::manifold {

using geometry::ClosedSet;
using mollifier::standard_bump;
using nets::Net;
using suppleness::ProbeTarget;
using suppleness::Verdict;
using suppleness::WidthMode;

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    if (r > kPi) r -= kTwoPi;
    return r;
}

double wrap_angle_02pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

double geodesic_distance(double a, double b) {
    double d = std::abs(wrap_angle(a - b));
    return d;
}

Atlas make_atlas() {
    Atlas atlas;
    atlas.c1 = {"chart_zero", {-2.8, 2.8}, true};
    atlas.c2 = {"chart_pi", {0.4, kTwoPi - 0.4}, false};
    return atlas;
}

AngleSet& AngleSet::add_point(double angle) {
    points_.push_back(wrap_angle(angle));
    return *this;
}

AngleSet& AngleSet::add_arc(double a, double b) {
    if (!(b >= a && b - a <= kTwoPi + 1e-12))
        throw DomainError("AngleSet: arc needs a <= b <= a + 2pi");
    arcs_.emplace_back(a, b);
    return *this;
}

double AngleSet::distance(double angle) const {
    if (empty()) throw DomainError("AngleSet::distance: empty set");
    double d = kPi;
    for (double p : points_) d = std::min(d, geodesic_distance(angle, p));
    for (const auto& [a, b] : arcs_) {
        // inside test: shift angle near the arc's parametrization
        double t = a + wrap_angle_02pi(angle - a);
        if (t <= b) {
            d = 0.0;
        } else {
            d = std::min({d, geodesic_distance(angle, a), geodesic_distance(angle, b)});
        }
    }
    return d;
}

ClosedSet AngleSet::to_chart(const Chart& c) const {
    ClosedSet out;
    for (double p : points_) {
        for (int k = -1; k <= 1; ++k) {
            double x = p + k * kTwoPi;
            if (c.image.contains_open(x)) out.add_point(x);
        }
    }
    for (const auto& [a, b] : arcs_) {
        for (int k = -2; k <= 2; ++k) {
            double lo = a + k * kTwoPi, hi = b + k * kTwoPi;
            double clo = std::max(lo, c.image.lo), chi = std::min(hi, c.image.hi);
            if (clo <= chi) out.add_interval(clo, chi);
        }
    }
    return out;
}

namespace {

double raw_arc_value(const PartitionOfUnity::RawArc& arc, double x) {
    const auto& b = standard_bump();
    return b.cdf((x - (arc.lo - arc.h)) / arc.h) - b.cdf((x - (arc.hi + arc.h)) / arc.h);
}

}  // namespace

PartitionOfUnity::PartitionOfUnity(const Atlas& atlas)
    : PartitionOfUnity(atlas, RawArc{-2.5, 2.5, 0.125},            // supp [-2.75, 2.75]
                       RawArc{0.7, kTwoPi - 0.7, 0.125}) {}        // supp [0.45, 2pi-0.45]

PartitionOfUnity::PartitionOfUnity(const Atlas& atlas, RawArc arc1, RawArc arc2)
    : atlas_(atlas), arc1_(arc1), arc2_(arc2) {
    const int grid = 20001;
    double dmin = std::numeric_limits<double>::infinity();
    double worst_angle = 0.0;
    for (int i = 0; i < grid; ++i) {
        double angle = -kPi + kTwoPi * i / grid;
        double d = denominator(angle);
        if (d < dmin) {
            dmin = d;
            worst_angle = angle;
        }
    }
    denom_min_ = dmin;
    if (!(dmin > 1e-6))
        throw DomainError("PartitionOfUnity: charts leave angle " +
                          std::to_string(worst_angle) + " uncovered (denominator " +
                          std::to_string(dmin) + ")");
}

double PartitionOfUnity::raw(int idx, double angle) const {
    if (idx == 0) return raw_arc_value(arc1_, atlas_.c1.to_chart(angle));
    return raw_arc_value(arc2_, atlas_.c2.to_chart(angle));
}

double PartitionOfUnity::denominator(double angle) const {
    double a = raw(0, angle), b = raw(1, angle);
    return a * a + b * b;
}

double PartitionOfUnity::chi(int idx, double angle) const {
    return raw(idx, angle) / std::sqrt(denominator(angle));
}

ManifoldNet::ManifoldNet(Atlas atlas, Net local1, Net local2)
    : atlas_(atlas), local1_(std::move(local1)), local2_(std::move(local2)) {}

ManifoldNet ManifoldNet::from_global(const Atlas& atlas, GlobalBody body,
                                     int max_analytic_order, std::string label) {
    const Chart c1 = atlas.c1, c2 = atlas.c2;
    Net l1(c1.image, max_analytic_order, label + "@" + c1.name,
           [body, c1](double eps, double x, int n) {
               return body(eps, c1.from_chart(x), n);
           });
    Net l2(c2.image, max_analytic_order, label + "@" + c2.name,
           [body, c2](double eps, double x, int n) {
               return body(eps, c2.from_chart(x), n);
           });
    return ManifoldNet(atlas, std::move(l1), std::move(l2));
}

double ManifoldNet::eval_angle(double eps, double angle, int order) const {
    if (atlas_.c1.covers(angle)) return local1_(eps, atlas_.c1.to_chart(angle), order);
    return local2_(eps, atlas_.c2.to_chart(angle), order);
}

ManifoldNet ManifoldNet::embedded_delta(const Atlas& atlas, double at_angle) {
    const auto& b = standard_bump();
    double at = wrap_angle(at_angle);
    auto body = [&b, at](double eps, double angle, int n) {
        double y = wrap_angle(angle - at);
        if (std::abs(y) >= eps) return 0.0;
        return b.derivative(y / eps, n) / std::pow(eps, n + 1);
    };
    return from_global(atlas, body, 8, "delta@angle");
}

ManifoldNet ManifoldNet::zero(const Atlas& atlas) {
    return from_global(atlas, [](double, double, int) { return 0.0; },
                       nets::kDelegatedOrder, "zero");
}

ManifoldNet ManifoldNet::constant(const Atlas& atlas, double value) {
    return from_global(atlas,
                       [value](double, double, int n) { return n == 0 ? value : 0.0; },
                       nets::kDelegatedOrder, "constant");
}

TransformationCheck check_transformation_law(const ManifoldNet& u, int samples_per_side,
                                             const std::vector<double>& eps_list,
                                             double tolerance) {
    // Overlap components in chart-1 coordinates.
    const Interval comps[2] = {{0.4, 2.8}, {-2.8, -0.4}};
    double worst = 0.0;
    for (const Interval& comp : comps) {
        double lo = comp.lo + 0.02 * comp.length();
        double hi = comp.hi - 0.02 * comp.length();
        for (int i = 0; i < samples_per_side; ++i) {
            double x = lo + (hi - lo) * i / std::max(1, samples_per_side - 1);
            double x2 = x >= 0.0 ? x : x + kTwoPi;  // transition map per branch
            for (double eps : eps_list) {
                double a = u.local(0)(eps, x, 0);
                double b = u.local(1)(eps, x2, 0);
                worst = std::max(worst, std::abs(a - b));
            }
        }
    }
    return {worst <= tolerance, worst};
}

CircleDecomposition manifold_decompose(const Atlas& atlas, const PartitionOfUnity& pou,
                                       const ManifoldNet& u, const AngleSet& z1,
                                       const AngleSet& z2, double delta, WidthMode mode,
                                       double eps_max) {
    std::array<std::vector<Interval>, 2> tilde_store;
    std::array<std::optional<Net>, 2> f1_store, f2_store;

    for (int idx = 0; idx < 2; ++idx) {
        const Chart& chart = atlas.chart(idx);
        Net chi_net(chart.image, 0, "chi@" + chart.name,
                    [pou, idx, chart](double, double x, int n) {
                        return n == 0 ? pou.chi(idx, chart.from_chart(x)) : 0.0;
                    });
        // chi derivatives above order 0 go through finite differences, which
        // is all the order-0 circle certificates need.
        Net v = nets::mul(chi_net, u.local(idx));

        ClosedSet z1c = z1.empty() ? ClosedSet() : z1.to_chart(chart);
        ClosedSet z2c = z2.empty() ? ClosedSet() : z2.to_chart(chart);

        if (z1c.empty() && z2c.empty()) {
            f1_store[idx] = nets::scale(v, 0.0);
            f2_store[idx] = v;
            continue;
        }
        double m = 0.02;
        CompactBox window(chart.image.lo + m, chart.image.hi - m);
        auto res = suppleness::decompose(v, z1c, z2c, delta, window, mode, eps_max);
        tilde_store[idx] = res.tilde_intervals;
        f1_store[idx] = res.f1;
        f2_store[idx] = res.f2;
    }

    auto part = [atlas, pou](std::optional<Net> g1, std::optional<Net> g2,
                             std::string label) {
        auto n1 = std::make_shared<Net>(std::move(*g1));
        auto n2 = std::make_shared<Net>(std::move(*g2));
        auto body = [atlas, pou, n1, n2](double eps, double angle, int) {
            double total = 0.0;
            if (pou.raw(0, angle) != 0.0)
                total += pou.chi(0, angle) * (*n1)(eps, atlas.c1.to_chart(angle), 0);
            if (pou.raw(1, angle) != 0.0)
                total += pou.chi(1, angle) * (*n2)(eps, atlas.c2.to_chart(angle), 0);
            return total;
        };
        return ManifoldNet::from_global(atlas, body, 0, std::move(label));
    };

    CircleDecomposition dec{part(f1_store[0], f1_store[1], "u1"),
                            part(f2_store[0], f2_store[1], "u2"),
                            tilde_store, delta, mode};
    return dec;
}

CircleCertificate certify_circle(const CircleDecomposition& dec, const AngleSet& z1,
                                 const AngleSet& z2, const std::vector<CircleProbe>& probes,
                                 const EpsSchedule& sched, int grid_points,
                                 double slope_threshold) {
    const Atlas& atlas = dec.u1.atlas();
    CircleCertificate cert;

    auto interval_distance = [](const std::vector<Interval>& xs, double lo, double hi) {
        double d = std::numeric_limits<double>::infinity();
        for (const Interval& iv : xs)
            d = std::min(d, std::max({0.0, iv.lo - hi, lo - iv.hi}));
        return d;
    };
    auto inside_some = [](const std::vector<Interval>& xs, double lo, double hi) {
        for (const Interval& iv : xs)
            if (lo >= iv.lo && hi <= iv.hi) return true;
        return false;
    };

    for (const CircleProbe& p : probes) {
        const bool on_u1 = p.target == ProbeTarget::z1;
        const AngleSet& target = on_u1 ? z1 : z2;
        const AngleSet& other = on_u1 ? z2 : z1;
        if (!target.empty() && target.contains(p.angle))
            throw DomainError("certify_circle: probe inside target set (angle = " +
                              std::to_string(p.angle) + ")");

        CircleProbeResult out;
        out.probe = p;
        double a = target.empty() ? kPi : target.distance(p.angle);
        bool on_other = !other.empty() && other.contains(p.angle);
        double radius;
        if (!on_other) {
            radius = 0.5 * std::min(a, other.empty() ? kPi : other.distance(p.angle));
            out.eps_zero = radius;  // the mollified function dies this close
        } else {
            // Probe on the other set: width-based vanishing of the cutoff.
            double hprime = std::min(a, dec.delta);
            radius = 0.5 * hprime;
            double ez = sched.max_eps();
            for (int idx = 0; idx < 2; ++idx) {
                const Chart& chart = atlas.chart(idx);
                if (!chart.covers(p.angle)) continue;
                double x = chart.to_chart(p.angle);
                double lo = x - radius, hi = x + radius;
                if (on_u1) {
                    double gap = interval_distance(dec.tilde_intervals[idx], lo, hi);
                    double w = gap - 1e-12;
                    double e = dec.width_mode == WidthMode::linear
                                   ? w
                                   : (w > 0 ? std::exp(-1.0 / w) : 0.0);
                    ez = std::min(ez, e);
                } else {
                    if (!inside_some(dec.tilde_intervals[idx], lo, hi)) ez = 0.0;
                }
            }
            out.eps_zero = ez;
        }
        radius = std::min(radius, 1.0);
        out.radius = radius;

        const ManifoldNet& g = on_u1 ? dec.u1 : dec.u2;
        bool all_zero = true, zero_below = true, any_below = false;
        std::vector<double> xs, ys;
        for (double eps : sched.values()) {
            double sup = 0.0;
            for (int i = 0; i < grid_points; ++i) {
                double angle = p.angle - radius + 2.0 * radius * i / (grid_points - 1);
                sup = std::max(sup, std::abs(g.eval_angle(eps, angle, 0)));
            }
            if (sup != 0.0) all_zero = false;
            if (eps <= out.eps_zero) {
                any_below = true;
                if (sup != 0.0) zero_below = false;
            }
            if (sup > 0.0) {
                xs.push_back(std::log(eps));
                ys.push_back(std::log(sup));
            }
        }
        if (all_zero || (any_below && zero_below)) {
            out.verdict = Verdict::exact_zero;
        } else if (xs.size() >= 4) {
            double xm = 0, ym = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                xm += xs[i];
                ym += ys[i];
            }
            xm /= xs.size();
            ym /= ys.size();
            double sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                sxx += (xs[i] - xm) * (xs[i] - xm);
                sxy += (xs[i] - xm) * (ys[i] - ym);
            }
            out.verdict =
                sxy / sxx >= slope_threshold ? Verdict::negligible_slope : Verdict::fail;
        } else {
            out.verdict = Verdict::fail;
        }
        cert.probes.push_back(out);
    }
    return cert;
}

std::vector<NonFlabbyRow> non_flabby_demo(const std::vector<double>& c_list,
                                          const EpsSchedule& sched) {
    Net f = nets::eps_pow_neg_inv_x();
    std::vector<NonFlabbyRow> rows;
    for (double c : c_list) {
        if (!(c > 0.0 && c <= 1.0))
            throw DomainError("non_flabby_demo: endpoints must lie in (0,1]");
        AsymptoticFit fit = nets::fit_order(f, CompactBox(c, 1.0), 0, sched);
        rows.push_back({c, fit.slope});
    }
    return rows;
}

}  // namespace colombeau::manifold
