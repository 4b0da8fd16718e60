#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "colombeau/common.hpp"

namespace colombeau::geometry {

// Point family {sign * scale / n^2 : n >= 1} together with its accumulation
// point 0, so the component is closed.
struct PointFamily {
    double scale = 1.0;
    int sign = +1;
};

// Closed subset of the line: finite union of points, closed intervals and
// point families. Distances are exact (closed form per component).
class ClosedSet {
  public:
    ClosedSet() = default;

    ClosedSet& add_point(double c);
    ClosedSet& add_interval(double a, double b);
    ClosedSet& add_family(double scale, int sign = +1);

    static ClosedSet points(std::initializer_list<double> cs);

    bool empty() const;
    double distance(double x) const;  // throws DomainError on the empty set
    bool contains(double x) const { return distance(x) == 0.0; }

    // Bounding interval of the set (families contribute [0, sign*scale]).
    Interval hull() const;

    const std::vector<double>& point_atoms() const { return points_; }
    const std::vector<Interval>& interval_atoms() const { return intervals_; }
    const std::vector<PointFamily>& families() const { return families_; }

  private:
    std::vector<double> points_;
    std::vector<Interval> intervals_;
    std::vector<PointFamily> families_;
};

// Open metric enlargement A^eps = {x : d(x,A) < eps}.
std::function<bool(double)> enlarge(const ClosedSet& s, double eps);

// The closed set {x : d(x,Z1) <= delta and d(x,Z1) <= d(x,Z2)}, exposed as an
// exact membership predicate plus a windowed interval decomposition obtained
// by scanning and bisection refinement of the boundaries.
struct TildeSet {
    std::function<bool(double)> member;
    std::function<double(double)> gap;  // max(d1 - delta, d1 - d2); <= 0 inside
    std::vector<Interval> intervals;    // closed components within the window
    double delta = 0.0;

    double distance_to_intervals(double x) const;
    bool intervals_contain(double x) const;
};

TildeSet tilde_set(const ClosedSet& z1, const ClosedSet& z2, double delta,
                   const CompactBox& window, int scan_points = 20001);

// Sampled check of the three defining properties: membership implies
// d(.,Z1) <= delta, Z1 is contained, and TildeSet ∩ Z2 = Z1 ∩ Z2. Samples are
// quasi-random plus the sets' own atoms.
bool assert2_check(const ClosedSet& z1, const ClosedSet& z2, double delta,
                   int sample_count, const CompactBox& window, std::uint64_t seed = 0);

}  // namespace colombeau::geometry
