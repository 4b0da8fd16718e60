#include "colombeau/suppleness.hpp"

#include <algorithm>
#include <cmath>

#include "colombeau/errors.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/parallel.hpp"

namespace colombeau::suppleness {

using geometry::ClosedSet;
using geometry::TildeSet;
using nets::Net;

namespace {

double width_at(WidthMode mode, double eps) {
    return mode == WidthMode::linear ? eps
                                     : std::min(1.0 / std::abs(std::log(eps)), 0.995);
}

mollifier::WidthFn width_fn_of(WidthMode mode) {
    return mode == WidthMode::linear ? mollifier::linear_width() : mollifier::log_width();
}

// Largest eps in (0, 1/2] with width_at(eps) <= w.
double eps_for_width(WidthMode mode, double w) {
    if (w <= 0.0) return 0.0;
    if (mode == WidthMode::linear) return w;
    return std::exp(-1.0 / w);
}

}  // namespace

DecompositionResult decompose(const Net& f, const ClosedSet& z1, const ClosedSet& z2,
                              double delta, const CompactBox& window, WidthMode mode,
                              double eps_max, int scan_points) {
    if (!(delta > 0.0)) throw DomainError("decompose: delta must be > 0");
    if (z1.empty() && z2.empty())
        throw DomainError("decompose: both closed sets are empty");

    // The window must leave room for the thickening plus the cutoff width.
    double margin = delta + width_at(mode, eps_max);
    double need_lo = std::numeric_limits<double>::infinity(), need_hi = -need_lo;
    for (const ClosedSet* s : {&z1, &z2}) {
        if (s->empty()) continue;
        Interval h = s->hull();
        need_lo = std::min(need_lo, h.lo);
        need_hi = std::max(need_hi, h.hi);
    }
    if (window.lo > need_lo - margin || window.hi < need_hi + margin)
        throw DomainError("decompose: window too small, need at least [" +
                          std::to_string(need_lo - margin) + ", " +
                          std::to_string(need_hi + margin) + "]");

    TildeSet tilde;
    std::vector<Interval> intervals;
    if (!z1.empty()) {
        tilde = geometry::tilde_set(z1, z2, delta, window, scan_points);
        intervals = tilde.intervals;
    } else {
        tilde.delta = delta;
        tilde.member = [](double) { return false; };
        tilde.gap = [](double) { return 1.0; };
    }

    Net eta = mollifier::smooth_indicator(mollifier::standard_bump(), intervals,
                                          width_fn_of(mode), "eta");
    Net f1 = nets::mul(f, eta);
    Net f2 = nets::mul(f, nets::subtract_from(1.0, eta));

    DecompositionResult res{std::move(f1),  std::move(f2),    std::move(eta),
                            intervals,      delta,            mode,
                            window,         std::move(tilde), {}, {}, {}};
    return res;
}

SupportCertificate certify_support(const DecompositionResult& res, const ClosedSet& z1,
                                   const ClosedSet& z2, const std::vector<Probe>& probes,
                                   const EpsSchedule& sched, int grid_points,
                                   double slope_threshold) {
    // Validate serially so rejected probes surface deterministically.
    for (const Probe& p : probes) {
        const ClosedSet& target = p.target == ProbeTarget::z1 ? z1 : z2;
        if (!target.empty() && target.contains(p.x))
            throw DomainError("certify_support: probe inside target set (x = " +
                              std::to_string(p.x) + ")");
        if (!(p.x > res.window.lo && p.x < res.window.hi))
            throw DomainError("certify_support: probe outside window");
    }

    SupportCertificate cert;
    cert.probes.resize(probes.size());

    parallel_for(probes.size(), [&](std::size_t idx) {
        const Probe& p = probes[idx];
        ProbeResult out;
        out.probe = p;

        const bool on_f1 = p.target == ProbeTarget::z1;
        const Net& g = on_f1 ? res.f1 : res.f2;

        double radius = 0.0;
        double eps_zero = 0.0;
        if (on_f1 && z1.empty()) {
            // f1 is the zero net; any ball will do.
            out.case_name = "empty_z1";
            radius = 0.25 * std::min(p.x - res.window.lo, res.window.hi - p.x);
            eps_zero = sched.max_eps();
        } else if (on_f1) {
            if (res.tilde.intervals_contain(p.x)) {
                // Inside the thickening but away from Z1: the ball misses
                // Z1 and Z2 entirely, so f itself dies there.
                out.case_name = "inside_tilde";
                double a = z1.distance(p.x);
                radius = 0.5 * a;
                double clearance = a - radius;  // ball to Z distance
                if (!z2.empty()) clearance = std::min(clearance, z2.distance(p.x) - radius);
                eps_zero = std::max(0.0, clearance);
            } else {
                // Away from the thickening: eta vanishes on the ball once the
                // cutoff width drops below the gap.
                out.case_name = "outside_tilde";
                double b = res.tilde.distance_to_intervals(p.x);
                radius = 0.5 * b;
                eps_zero = eps_for_width(res.width_mode, b - radius);
            }
        } else {
            bool in_z1 = !z1.empty() && z1.contains(p.x);
            if (!in_z1) {
                // Off the whole support: f itself vanishes near x.
                out.case_name = "off_support";
                double d = std::numeric_limits<double>::infinity();
                if (!z1.empty()) d = std::min(d, z1.distance(p.x));
                if (!z2.empty()) d = std::min(d, z2.distance(p.x));
                radius = 0.5 * d;
                eps_zero = d - radius;
            } else {
                // On Z1 away from Z2: the ball sits inside the thickening
                // where eta is identically 1 and f2 = f (1 - eta) vanishes.
                out.case_name = "on_z1";
                double hgap = z2.empty() ? std::numeric_limits<double>::infinity()
                                         : z2.distance(p.x);
                double hprime = std::min(hgap, res.delta);
                radius = 0.5 * hprime;
                bool plateau = false;
                for (const Interval& iv : res.tilde_intervals)
                    if (p.x - radius >= iv.lo && p.x + radius <= iv.hi) plateau = true;
                eps_zero = plateau ? sched.max_eps() : 0.0;
            }
        }

        // Keep the ball inside the window.
        radius = std::min({radius, p.x - res.window.lo, res.window.hi - p.x});
        if (!(radius > 0.0))
            throw DomainError("certify_support: degenerate ball at probe x = " +
                              std::to_string(p.x));
        out.radius = radius;
        out.eps_zero = eps_zero;

        CompactBox ball(p.x - radius, p.x + radius);
        std::vector<double> sups(sched.size());
        for (std::size_t i = 0; i < sched.size(); ++i)
            sups[i] = nets::sup_on_compact(g, ball, sched.values()[i], 0, grid_points);

        bool all_zero = true;
        bool zero_below_cutoff = true;
        bool any_below_cutoff = false;
        for (std::size_t i = 0; i < sched.size(); ++i) {
            double eps = sched.values()[i];
            if (sups[i] != 0.0) all_zero = false;
            if (eps <= eps_zero) {
                any_below_cutoff = true;
                if (sups[i] != 0.0) zero_below_cutoff = false;
            }
        }

        if (all_zero || (any_below_cutoff && zero_below_cutoff)) {
            out.verdict = Verdict::exact_zero;
        } else {
            // Fall back to the decay-rate test on the ball.
            std::vector<double> xs, ys;
            for (std::size_t i = 0; i < sched.size(); ++i) {
                if (sups[i] > 0.0) {
                    xs.push_back(std::log(sched.values()[i]));
                    ys.push_back(std::log(sups[i]));
                }
            }
            AsymptoticFit fit;
            for (std::size_t i = 0; i < sched.size(); ++i)
                fit.sup_values.emplace_back(sched.values()[i], sups[i]);
            fit.positive_count = static_cast<int>(xs.size());
            if (xs.size() >= 4) {
                double xm = 0.0, ym = 0.0;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    xm += xs[i];
                    ym += ys[i];
                }
                xm /= xs.size();
                ym /= ys.size();
                double sxx = 0.0, sxy = 0.0;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    sxx += (xs[i] - xm) * (xs[i] - xm);
                    sxy += (xs[i] - xm) * (ys[i] - ym);
                }
                fit.slope = sxy / sxx;
                out.verdict =
                    fit.slope >= slope_threshold ? Verdict::negligible_slope : Verdict::fail;
            } else {
                out.verdict = Verdict::fail;
            }
            out.fit = std::move(fit);
        }
        cert.probes[idx] = std::move(out);
    });

    return cert;
}

DecompositionResult ginf_decompose(const Net& f, const ClosedSet& z1, const ClosedSet& z2,
                                   double delta, const CompactBox& window,
                                   const CompactBox& ginf_box, const EpsSchedule& sched,
                                   double spread_tol, int scan_points) {
    if (sched.max_eps() > 0.125 + 1e-15)
        throw DomainError("ginf_decompose: schedule must start at eps <= 2^-3");
    DecompositionResult res = decompose(f, z1, z2, delta, window, WidthMode::log,
                                        sched.max_eps(), scan_points);
    const std::vector<int> orders{0, 1, 2, 3, 4};
    auto report = [&](const nets::Net& g) {
        try {
            return nets::is_ginfty(g, ginf_box, orders, sched, spread_tol);
        } catch (const InsufficientDataError& e) {
            // Too few nonzero sups to fit (the net dies after the first few
            // schedule entries); no determination, reported as such.
            nets::ClassificationReport r;
            r.verdict = false;
            r.note = std::string("no determination: ") + e.what();
            return r;
        }
    };
    res.ginf_f = report(f);
    res.ginf_f1 = report(res.f1);
    res.ginf_f2 = report(res.f2);
    return res;
}

}  // namespace colombeau::suppleness
