#pragma once

#include <string>
#include <vector>

#include "colombeau/common.hpp"
#include "colombeau/net.hpp"

namespace colombeau::nets {

// Two-stage grid max of |f_eps^(n)| over the box: a uniform grid plus the
// net's hot-spot windows, then one refinement pass around the argmax cell.
// grid_points >= 64.
double sup_on_compact(const Net& f, const CompactBox& k, double eps, int order,
                      int grid_points = 512);

// Least-squares line through (ln eps, ln sup) over schedule entries with
// sup > 0. All sups exactly zero -> degenerate fit. Fewer than four nonzero
// sups -> InsufficientDataError.
AsymptoticFit fit_order(const Net& f, const CompactBox& k, int order,
                        const EpsSchedule& sched, int grid_points = 512);

struct OrderFit {
    int order;
    AsymptoticFit fit;
};

struct ClassificationReport {
    bool verdict = false;
    std::vector<OrderFit> fits;
    std::string note;
};

// Moderate: every tested order has slope >= slope_floor with an acceptable
// fit (r^2 >= 0.9, or the data is flat / exactly zero).
ClassificationReport is_moderate(const Net& f, const CompactBox& k,
                                 const std::vector<int>& orders, const EpsSchedule& sched,
                                 double slope_floor = -50.0, int grid_points = 512);

// Negligible: order-0 data is exactly zero or decays with slope above the
// threshold. Order 0 suffices for the manifold-style negligibility test.
ClassificationReport is_negligible(const Net& f, const CompactBox& k,
                                   const EpsSchedule& sched,
                                   double slope_threshold = 10.0, int grid_points = 512);

// G-infinity regularity: one exponent serves all tested orders, i.e. the
// minimum slope stays within spread_tol of the order-0 slope. Orders must
// cover 0..4. Exactly-zero orders do not constrain the spread.
ClassificationReport is_ginfty(const Net& f, const CompactBox& k,
                               const std::vector<int>& orders, const EpsSchedule& sched,
                               double spread_tol = 0.5, int grid_points = 512);

}  // namespace colombeau::nets
