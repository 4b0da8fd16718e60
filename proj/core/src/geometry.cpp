#include "colombeau/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "colombeau/errors.hpp"

namespace colombeau::geometry {

namespace {

double family_distance(const PointFamily& fam, double x) {
    // Mirror so the family sits on the positive axis.
    double y = fam.sign >= 0 ? x : -x;
    if (y <= 0.0) return -y;  // accumulation point 0 is nearest
    double d = y;             // candidate: the limit point 0
    double root = std::sqrt(fam.scale / y);
    auto consider = [&](double n) {
        if (n < 1.0) n = 1.0;
        double p = fam.scale / (n * n);
        d = std::min(d, std::abs(y - p));
    };
    consider(std::floor(root));
    consider(std::floor(root) + 1.0);
    return d;
}

}  // namespace

ClosedSet& ClosedSet::add_point(double c) {
    if (!std::isfinite(c)) throw DomainError("ClosedSet: point must be finite");
    points_.push_back(c);
    return *this;
}

ClosedSet& ClosedSet::add_interval(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || a > b)
        throw DomainError("ClosedSet: interval needs finite a <= b");
    intervals_.push_back({a, b});
    return *this;
}

ClosedSet& ClosedSet::add_family(double scale, int sign) {
    if (!(scale > 0.0)) throw DomainError("ClosedSet: family scale must be > 0");
    families_.push_back({scale, sign >= 0 ? +1 : -1});
    return *this;
}

ClosedSet ClosedSet::points(std::initializer_list<double> cs) {
    ClosedSet s;
    for (double c : cs) s.add_point(c);
    return s;
}

bool ClosedSet::empty() const {
    return points_.empty() && intervals_.empty() && families_.empty();
}

double ClosedSet::distance(double x) const {
    if (empty()) throw DomainError("ClosedSet::distance: empty set");
    double d = std::numeric_limits<double>::infinity();
    for (double c : points_) d = std::min(d, std::abs(x - c));
    for (const Interval& iv : intervals_)
        d = std::min(d, std::max({0.0, iv.lo - x, x - iv.hi}));
    for (const PointFamily& fam : families_) d = std::min(d, family_distance(fam, x));
    return d;
}

Interval ClosedSet::hull() const {
    if (empty()) throw DomainError("ClosedSet::hull: empty set");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double c : points_) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    for (const Interval& iv : intervals_) {
        lo = std::min(lo, iv.lo);
        hi = std::max(hi, iv.hi);
    }
    for (const PointFamily& fam : families_) {
        double a = fam.sign >= 0 ? 0.0 : -fam.scale;
        double b = fam.sign >= 0 ? fam.scale : 0.0;
        lo = std::min(lo, a);
        hi = std::max(hi, b);
    }
    return {lo, hi};
}

std::function<bool(double)> enlarge(const ClosedSet& s, double eps) {
    if (!(eps > 0.0)) throw DomainError("enlarge: eps must be > 0");
    return [s, eps](double x) { return s.distance(x) < eps; };
}

double TildeSet::distance_to_intervals(double x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const Interval& iv : intervals)
        d = std::min(d, std::max({0.0, iv.lo - x, x - iv.hi}));
    return d;
}

bool TildeSet::intervals_contain(double x) const {
    for (const Interval& iv : intervals)
        if (x >= iv.lo && x <= iv.hi) return true;
    return false;
}

TildeSet tilde_set(const ClosedSet& z1, const ClosedSet& z2, double delta,
                   const CompactBox& window, int scan_points) {
    if (!(delta > 0.0)) throw DomainError("tilde_set: delta must be > 0");
    if (z1.empty()) throw DomainError("tilde_set: Z1 must be nonempty");
    if (scan_points < 16) throw DomainError("tilde_set: scan grid too small");

    TildeSet t;
    t.delta = delta;
    const bool z2_empty = z2.empty();
    t.gap = [z1, z2, z2_empty, delta](double x) {
        double d1 = z1.distance(x);
        double g = d1 - delta;
        if (!z2_empty) g = std::max(g, d1 - z2.distance(x));
        return g;
    };
    t.member = [gap = t.gap](double x) { return gap(x) <= 0.0; };

    // Scan the window; refine each component boundary by bisection on the
    // membership predicate. Components thinner than the scan step are missed,
    // which the scenario formats counter with a configurable grid.
    const double lo = window.lo, hi = window.hi;
    const double h = (hi - lo) / (scan_points - 1);
    auto refine = [&](double inside, double outside) {
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (inside + outside);
            if (mid == inside || mid == outside) break;
            if (t.member(mid))
                inside = mid;
            else
                outside = mid;
            if (std::abs(inside - outside) < 1e-12) break;
        }
        return inside;
    };

    bool prev = t.member(lo);
    double start = prev ? lo : 0.0;
    for (int i = 1; i < scan_points; ++i) {
        double x = lo + i * h;
        bool cur = t.member(x);
        if (cur && !prev) start = refine(x, x - h);
        if (!cur && prev) t.intervals.push_back({start, refine(x - h, x)});
        prev = cur;
    }
    if (prev) t.intervals.push_back({start, hi});
    return t;
}

bool assert2_check(const ClosedSet& z1, const ClosedSet& z2, double delta,
                   int sample_count, const CompactBox& window, std::uint64_t seed) {
    TildeSet t = tilde_set(z1, z2, delta, window, 4097);

    std::vector<double> samples;
    samples.reserve(sample_count + 64);
    auto add_atoms = [&](const ClosedSet& s) {
        for (double c : s.point_atoms()) samples.push_back(c);
        for (const Interval& iv : s.interval_atoms()) {
            samples.push_back(iv.lo);
            samples.push_back(iv.hi);
            samples.push_back(0.5 * (iv.lo + iv.hi));
        }
        for (const PointFamily& fam : s.families()) {
            samples.push_back(0.0);
            for (int n = 1; n <= 1000; ++n)
                samples.push_back(fam.sign * fam.scale / (static_cast<double>(n) * n));
        }
    };
    add_atoms(z1);
    add_atoms(z2);
    std::size_t structured = samples.size();
    for (int j = 0; static_cast<int>(samples.size()) < sample_count; ++j)
        samples.push_back(window.lo + kronecker01(j, seed) * window.length());

    for (std::size_t i = 0; i < samples.size(); ++i) {
        double x = samples[i];
        if (i >= structured && !(x >= window.lo && x <= window.hi)) continue;
        bool in_tilde = t.member(x);
        if (in_tilde && !(z1.distance(x) <= delta + 1e-12)) return false;
        if (z1.contains(x) && !in_tilde) return false;
        if (in_tilde && z2.contains(x) && !z1.contains(x)) return false;
    }
    return true;
}

}  // namespace colombeau::geometry
