#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colombeau/classify.hpp"
#include "colombeau/common.hpp"
#include "colombeau/geometry.hpp"
#include "colombeau/net.hpp"

namespace colombeau::suppleness {

enum class WidthMode { linear, log };

enum class ProbeTarget { z1, z2 };

enum class Verdict { exact_zero, negligible_slope, fail };

struct Probe {
    double x;
    ProbeTarget target;
};

struct ProbeResult {
    Probe probe;
    std::string case_name;  // which case of the support argument applied
    double radius = 0.0;
    double eps_zero = 0.0;  // cutoff below which exact zeros are demanded
    Verdict verdict = Verdict::fail;
    std::optional<AsymptoticFit> fit;
};

struct SupportCertificate {
    std::vector<ProbeResult> probes;
    bool all_ok() const {
        for (const ProbeResult& p : probes)
            if (p.verdict == Verdict::fail) return false;
        return true;
    }
};

struct DecompositionResult {
    nets::Net f1;
    nets::Net f2;
    nets::Net eta;
    std::vector<Interval> tilde_intervals;
    double delta = 0.0;
    WidthMode width_mode = WidthMode::linear;
    CompactBox window{0.0, 0.0};
    geometry::TildeSet tilde;

    // Filled by ginf_decompose: regularity reports for f, f1, f2.
    std::optional<nets::ClassificationReport> ginf_f, ginf_f1, ginf_f2;
};

// Splits f (supported in Z1 ∪ Z2) as f1 + f2 with f1 = f * eta and
// f2 = f * (1 - eta), where eta is the smoothed indicator of the windowed
// nearer-to-Z1 thickening. Additivity is exact by construction. The window
// must contain the (delta + max width)-enlargement of the sets' hull.
// Z1 may be empty, in which case eta is the zero net and f1 = 0.
DecompositionResult decompose(const nets::Net& f, const geometry::ClosedSet& z1,
                              const geometry::ClosedSet& z2, double delta,
                              const CompactBox& window,
                              WidthMode mode = WidthMode::linear,
                              double eps_max = 0.125, int scan_points = 20001);

// Checks supp f_i ⊆ Z_i at the given probes, choosing ball radii by the
// support argument's case analysis. Verdicts: exact_zero when every sample at
// every scheduled eps <= eps_zero is literally 0, negligible_slope when the
// order-0 fit decays above the threshold, fail otherwise.
SupportCertificate certify_support(const DecompositionResult& res,
                                   const geometry::ClosedSet& z1,
                                   const geometry::ClosedSet& z2,
                                   const std::vector<Probe>& probes,
                                   const EpsSchedule& sched, int grid_points = 257,
                                   double slope_threshold = 10.0);

// Log-width decomposition (width 1/|ln eps|) plus regularity reports for f,
// f1 and f2 over ginf_box. The schedule must start at eps <= 2^-3.
DecompositionResult ginf_decompose(const nets::Net& f, const geometry::ClosedSet& z1,
                                   const geometry::ClosedSet& z2, double delta,
                                   const CompactBox& window, const CompactBox& ginf_box,
                                   const EpsSchedule& sched, double spread_tol = 0.5,
                                   int scan_points = 20001);

}  // namespace colombeau::suppleness
