#include "colombeau/classify.hpp"

#include <algorithm>
#include <cmath>

#include "colombeau/errors.hpp"
#include "colombeau/parallel.hpp"

namespace colombeau {

EpsSchedule::EpsSchedule(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 6)
        throw DomainError("EpsSchedule: need at least 6 entries, got " +
                          std::to_string(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0 && values_[i] < 1.0))
            throw DomainError("EpsSchedule: entries must lie in (0,1)");
        if (i > 0 && !(values_[i] < values_[i - 1]))
            throw DomainError("EpsSchedule: entries must be strictly decreasing");
    }
}

EpsSchedule EpsSchedule::geometric(int k_min, int k_max, double step) {
    if (!(step > 0.0) || k_max < k_min)
        throw DomainError("EpsSchedule::geometric: bad range");
    std::vector<double> v;
    for (double k = k_min; k <= k_max + 1e-12; k += step) v.push_back(std::pow(2.0, -k));
    return EpsSchedule(std::move(v));
}

}  // namespace colombeau

namespace colombeau::nets {

namespace {

struct Best {
    double value = 0.0;
    double x = 0.0;
    double spacing = 0.0;
};

void scan_uniform(const Net& f, double lo, double hi, int points, double eps, int order,
                  Best& best) {
    if (points < 2 || !(hi > lo)) {
        if (hi == lo) {
            double v = std::abs(f(eps, lo, order));
            if (v > best.value) best = {v, lo, 0.0};
        }
        return;
    }
    double h = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        double x = lo + i * h;
        double v = std::abs(f(eps, x, order));
        if (v > best.value) best = {v, x, h};
    }
}

}  // namespace

double sup_on_compact(const Net& f, const CompactBox& k, double eps, int order,
                      int grid_points) {
    if (grid_points < 64)
        throw DomainError("sup_on_compact: grid_points must be >= 64");
    if (!(f.domain().lo < k.lo) || !(k.hi < f.domain().hi))
        throw DomainError("sup_on_compact: box [" + std::to_string(k.lo) + "," +
                          std::to_string(k.hi) + "] not strictly inside domain of " +
                          f.label());

    Best best;
    scan_uniform(f, k.lo, k.hi, grid_points, eps, order, best);

    // Feature windows the uniform grid would undersample.
    int window_points = std::max(65, grid_points / 4);
    for (const Interval& w : f.hot_spots(eps)) {
        double lo = std::max(w.lo, k.lo), hi = std::min(w.hi, k.hi);
        if (hi >= lo) scan_uniform(f, lo, hi, window_points, eps, order, best);
    }

    // One refinement around the argmax cell.
    if (best.spacing > 0.0) {
        double lo = std::max(k.lo, best.x - best.spacing);
        double hi = std::min(k.hi, best.x + best.spacing);
        scan_uniform(f, lo, hi, grid_points, eps, order, best);
    }
    return best.value;
}

AsymptoticFit fit_order(const Net& f, const CompactBox& k, int order,
                        const EpsSchedule& sched, int grid_points) {
    const std::vector<double>& eps = sched.values();
    std::vector<double> sups(eps.size());
    parallel_for(eps.size(), [&](std::size_t i) {
        sups[i] = sup_on_compact(f, k, eps[i], order, grid_points);
    });

    AsymptoticFit fit;
    fit.sup_values.reserve(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) fit.sup_values.emplace_back(eps[i], sups[i]);

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (sups[i] > 0.0) {
            xs.push_back(std::log(eps[i]));
            ys.push_back(std::log(sups[i]));
        }
    }
    fit.positive_count = static_cast<int>(xs.size());

    if (xs.empty()) {
        fit.degenerate = true;
        return fit;
    }
    if (xs.size() < 4)
        throw InsufficientDataError("fit_order: only " + std::to_string(xs.size()) +
                                    " nonzero sups for '" + f.label() + "' at order " +
                                    std::to_string(order));

    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xm += xs[i];
        ym += ys[i];
    }
    xm /= xs.size();
    ym /= ys.size();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xm) * (xs[i] - xm);
        sxy += (xs[i] - xm) * (ys[i] - ym);
        syy += (ys[i] - ym) * (ys[i] - ym);
    }
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    double ymin = *std::min_element(ys.begin(), ys.end());
    double ymax = *std::max_element(ys.begin(), ys.end());
    fit.log_range = ymax - ymin;
    if (syy <= 1e-20) {
        fit.r_squared = 1.0;  // flat line: the zero-slope fit is exact
    } else {
        double ss_res = syy - sxy * sxy / sxx;
        fit.r_squared = std::max(0.0, 1.0 - ss_res / syy);
    }
    return fit;
}

namespace {

// Quality gate for moderateness: a trustworthy trend line, or data so flat
// that no trend is being claimed.
bool fit_quality_ok(const AsymptoticFit& f) {
    return f.r_squared >= 0.9 || f.log_range < 0.1;
}

}  // namespace

ClassificationReport is_moderate(const Net& f, const CompactBox& k,
                                 const std::vector<int>& orders, const EpsSchedule& sched,
                                 double slope_floor, int grid_points) {
    ClassificationReport report;
    report.verdict = true;
    for (int n : orders) {
        AsymptoticFit fit = fit_order(f, k, n, sched, grid_points);
        bool ok = fit.degenerate || (fit.slope >= slope_floor && fit_quality_ok(fit));
        if (!ok) {
            report.verdict = false;
            report.note = "order " + std::to_string(n) + ": slope " +
                          std::to_string(fit.slope) + ", r2 " +
                          std::to_string(fit.r_squared);
        }
        report.fits.push_back({n, std::move(fit)});
    }
    return report;
}

ClassificationReport is_negligible(const Net& f, const CompactBox& k,
                                   const EpsSchedule& sched, double slope_threshold,
                                   int grid_points) {
    ClassificationReport report;
    AsymptoticFit fit = fit_order(f, k, 0, sched, grid_points);
    report.verdict = fit.degenerate || fit.slope >= slope_threshold;
    if (!report.verdict)
        report.note = "order-0 slope " + std::to_string(fit.slope) + " below threshold " +
                      std::to_string(slope_threshold);
    report.fits.push_back({0, std::move(fit)});
    return report;
}

ClassificationReport is_ginfty(const Net& f, const CompactBox& k,
                               const std::vector<int>& orders, const EpsSchedule& sched,
                               double spread_tol, int grid_points) {
    for (int required = 0; required <= 4; ++required) {
        if (std::find(orders.begin(), orders.end(), required) == orders.end())
            throw DomainError("is_ginfty: orders must cover 0..4");
    }

    ClassificationReport report;
    double slope0 = 0.0;
    double min_slope = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int n : orders) {
        AsymptoticFit fit = fit_order(f, k, n, sched, grid_points);
        if (!fit.degenerate) {
            if (n == 0) slope0 = fit.slope;
            min_slope = std::min(min_slope, fit.slope);
            any = true;
        }
        report.fits.push_back({n, std::move(fit)});
    }
    if (!any) {
        report.verdict = true;  // identically zero net
        report.note = "all orders exactly zero";
        return report;
    }
    report.verdict = min_slope >= slope0 - spread_tol;
    report.note = "order-0 slope " + std::to_string(slope0) + ", min slope " +
                  std::to_string(min_slope) + ", spread " +
                  std::to_string(slope0 - min_slope);
    return report;
}

}  // namespace colombeau::nets
