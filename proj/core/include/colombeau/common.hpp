#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "colombeau/errors.hpp"

namespace colombeau {

inline constexpr const char* kToolName = "colombeau";
inline constexpr const char* kToolVersion = "0.1.0";

// Open interval with extended-real endpoints. Used both for net domains and
// as a plain [lo,hi] pair where closedness is decided by the consumer.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    static Interval whole_line() { return {}; }

    bool contains_open(double x) const { return x > lo && x < hi; }
    bool contains_closed(double x) const { return x >= lo && x <= hi; }
    double length() const { return hi - lo; }
    bool empty_open() const { return !(lo < hi); }
};

inline Interval intersect(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// Merges a list of closed intervals; touching intervals coalesce.
inline std::vector<Interval> merge_intervals(std::vector<Interval> xs) {
    if (xs.empty()) return xs;
    std::sort(xs.begin(), xs.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    out.push_back(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i].lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, xs[i].hi);
        else
            out.push_back(xs[i]);
    }
    return out;
}

// Compact box [lo,hi]; must sit strictly inside the domain it is used on.
struct CompactBox {
    double lo;
    double hi;

    CompactBox(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi)
            throw DomainError("CompactBox: need finite lo <= hi");
    }
    double length() const { return hi - lo; }
};

// Decreasing list of epsilon values in (0,1). At least 6 entries so the
// log-log regressions have something to work with.
class EpsSchedule {
  public:
    explicit EpsSchedule(std::vector<double> values);

    // 2^-k for k = k_min..k_max (steps of `step` in k).
    static EpsSchedule geometric(int k_min = 3, int k_max = 20, double step = 1.0);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double max_eps() const { return values_.front(); }
    double min_eps() const { return values_.back(); }

  private:
    std::vector<double> values_;
};

// Result of the log-log regression sup ~ C * eps^slope over a schedule.
struct AsymptoticFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    std::vector<std::pair<double, double>> sup_values;  // (eps, sup), full schedule
    bool degenerate = false;  // every sup was exactly zero
    int positive_count = 0;

    // Spread of the log-sup data; near-flat data is treated as a clean fit.
    double log_range = 0.0;
};

// Deterministic uniform generator. The raw engine is seeded and the mapping
// to doubles is done by hand so streams are identical across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * unit(); }

  private:
    std::uint64_t state_;
};

// Low-discrepancy point j of a Kronecker sequence on [0,1), offset by seed.
inline double kronecker01(std::uint64_t j, std::uint64_t seed = 0) {
    const double phi_conj = 0.6180339887498948482;
    double v = 0.5 + static_cast<double>(j + 1 + (seed % 1000003)) * phi_conj;
    return v - std::floor(v);
}

}  // namespace colombeau
