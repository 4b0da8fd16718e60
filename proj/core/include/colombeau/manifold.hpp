#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "colombeau/classify.hpp"
#include "colombeau/common.hpp"
#include "colombeau/geometry.hpp"
#include "colombeau/net.hpp"
#include "colombeau/suppleness.hpp"

namespace colombeau::manifold {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Normalize to (-pi, pi].
double wrap_angle(double a);
// Normalize to [0, 2*pi).
double wrap_angle_02pi(double a);
// Geodesic distance on the unit circle, in [0, pi].
double geodesic_distance(double a, double b);

// Chart of the circle: an arc mapped to an interval of the line by a branch
// of the angle function. Transitions between the two charts are shifts by 0
// or 2*pi, so they are smooth with unit derivative.
struct Chart {
    std::string name;
    Interval image;  // chart coordinates
    bool centered_at_zero;  // true: coordinates in (-pi, pi], false: [0, 2pi)

    double to_chart(double angle) const {
        return centered_at_zero ? wrap_angle(angle) : wrap_angle_02pi(angle);
    }
    double from_chart(double x) const { return wrap_angle(x); }
    bool covers(double angle) const { return image.contains_open(to_chart(angle)); }
};

struct Atlas {
    Chart c1;  // angles (-2.8, 2.8)
    Chart c2;  // angles (0.4, 2pi - 0.4)
    const Chart& chart(int idx) const { return idx == 0 ? c1 : c2; }
};

// The fixed two-chart atlas. Each overlap has two connected components.
Atlas make_atlas();

// Closed subset of the circle: points and closed arcs, with the geodesic
// distance oracle.
class AngleSet {
  public:
    AngleSet& add_point(double angle);
    // Arc from a to b counterclockwise, b - a in [0, 2pi].
    AngleSet& add_arc(double a, double b);

    bool empty() const { return points_.empty() && arcs_.empty(); }
    double distance(double angle) const;
    bool contains(double angle) const { return distance(angle) == 0.0; }

    // Image of the set inside a chart, as a linear closed set.
    geometry::ClosedSet to_chart(const Chart& c) const;

    const std::vector<double>& point_atoms() const { return points_; }
    const std::vector<std::pair<double, double>>& arc_atoms() const { return arcs_; }

  private:
    std::vector<double> points_;
    std::vector<std::pair<double, double>> arcs_;
};

// Squared-normalized partition of unity subordinate to the atlas:
// chi_a = raw_a / sqrt(sum_b raw_b^2), built from fixed-width smoothed arc
// indicators whose plateaus still cover the circle. Construction fails with
// the uncovered angle if the denominator degenerates.
class PartitionOfUnity {
  public:
    // Raw indicator of [lo, hi] in chart coordinates, smoothed at width h;
    // support is [lo - 2h, hi + 2h] and must stay inside the chart image.
    struct RawArc {
        double lo, hi, h;
    };

    explicit PartitionOfUnity(const Atlas& atlas);
    PartitionOfUnity(const Atlas& atlas, RawArc arc1, RawArc arc2);

    double raw(int idx, double angle) const;
    double chi(int idx, double angle) const;
    double denominator(double angle) const;
    double denominator_min() const { return denom_min_; }

  private:
    Atlas atlas_;
    RawArc arc1_, arc2_;
    double denom_min_ = 0.0;
};

// A generalized function on the circle, stored as one local expression per
// chart. The local expressions satisfy the overlap compatibility condition
// u_1 = u_2 ∘ (shift by 0 or 2pi).
class ManifoldNet {
  public:
    ManifoldNet(Atlas atlas, nets::Net local1, nets::Net local2);

    using GlobalBody = std::function<double(double eps, double angle, int order)>;
    static ManifoldNet from_global(const Atlas& atlas, GlobalBody body,
                                   int max_analytic_order, std::string label);

    const nets::Net& local(int idx) const { return idx == 0 ? local1_ : local2_; }
    const Atlas& atlas() const { return atlas_; }

    // Evaluates through any covering chart (chart 1 preferred).
    double eval_angle(double eps, double angle, int order = 0) const;

    // Embedded delta at an angle, via the scaled mollifier in the geodesic
    // coordinate; smooth on the whole circle for eps < pi/2.
    static ManifoldNet embedded_delta(const Atlas& atlas, double at_angle);
    static ManifoldNet zero(const Atlas& atlas);
    static ManifoldNet constant(const Atlas& atlas, double value);

  private:
    Atlas atlas_;
    nets::Net local1_;
    nets::Net local2_;
};

// Max deviation of the transformation law over both overlap components.
struct TransformationCheck {
    bool ok = false;
    double max_deviation = 0.0;
};
TransformationCheck check_transformation_law(const ManifoldNet& u, int samples_per_side,
                                             const std::vector<double>& eps_list,
                                             double tolerance = 1e-9);

// Chart-wise supple decomposition on the circle: push chi_a * u to each chart
// image, decompose there, pull back and resum. u = u1 + u2 holds exactly at
// evaluated samples.
struct CircleDecomposition {
    ManifoldNet u1;
    ManifoldNet u2;
    std::array<std::vector<Interval>, 2> tilde_intervals;  // per chart
    double delta = 0.0;
    suppleness::WidthMode width_mode = suppleness::WidthMode::linear;
};

CircleDecomposition manifold_decompose(const Atlas& atlas, const PartitionOfUnity& pou,
                                       const ManifoldNet& u, const AngleSet& z1,
                                       const AngleSet& z2, double delta,
                                       suppleness::WidthMode mode =
                                           suppleness::WidthMode::linear,
                                       double eps_max = 0.125);

struct CircleProbe {
    double angle;
    suppleness::ProbeTarget target;
};

struct CircleProbeResult {
    CircleProbe probe;
    double radius = 0.0;
    double eps_zero = 0.0;
    suppleness::Verdict verdict = suppleness::Verdict::fail;
};

struct CircleCertificate {
    std::vector<CircleProbeResult> probes;
    bool all_ok() const {
        for (const auto& p : probes)
            if (p.verdict == suppleness::Verdict::fail) return false;
        return true;
    }
};

CircleCertificate certify_circle(const CircleDecomposition& dec, const AngleSet& z1,
                                 const AngleSet& z2, const std::vector<CircleProbe>& probes,
                                 const EpsSchedule& sched, int grid_points = 257,
                                 double slope_threshold = 10.0);

// The flabbiness obstruction table: fitted order-0 slope of eps^(-1/x) on
// [c, 1] for each left endpoint c; slope(c) tracks -1/c.
struct NonFlabbyRow {
    double c;
    double slope;
};
std::vector<NonFlabbyRow> non_flabby_demo(const std::vector<double>& c_list,
                                          const EpsSchedule& sched);

}  // namespace colombeau::manifold
