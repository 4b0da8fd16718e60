#include "colombeau/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "colombeau/errors.hpp"

namespace colombeau::mollifier {

WidthFn linear_width() {
    return [](double eps) { return eps; };
}

WidthFn log_width() {
    return [](double eps) { return std::min(1.0 / std::abs(std::log(eps)), 0.995); };
}

nets::Net scaled(const Bump& b, double center) {
    auto pb = std::make_shared<const Bump>(b);
    auto body = [pb, center](double eps, double x, int n) {
        return pb->derivative((x - center) / eps, n) / std::pow(eps, n + 1);
    };
    auto hot = [center](double eps) {
        return std::vector<Interval>{{center - eps, center + eps}};
    };
    return nets::Net(Interval::whole_line(), Bump::kMaxOrder,
                     "phi_eps@" + std::to_string(center), body, hot);
}

nets::Net smooth_indicator(const Bump& b, std::vector<Interval> a, WidthFn width_fn,
                           std::string label) {
    for (const Interval& iv : a)
        if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi)) || iv.lo > iv.hi)
            throw DomainError("smooth_indicator: intervals need finite lo <= hi");
    if (!width_fn) throw DomainError("smooth_indicator: missing width function");

    if (a.empty()) {
        return nets::Net(Interval::whole_line(), nets::kDelegatedOrder, label + "(empty)",
                         [](double, double, int) { return 0.0; });
    }
    std::sort(a.begin(), a.end(),
              [](const Interval& p, const Interval& q) { return p.lo < q.lo; });

    auto enlarged = [a, width_fn](double eps, double& h) {
        h = 0.5 * width_fn(eps);
        std::vector<Interval> widened;
        widened.reserve(a.size());
        for (const Interval& iv : a) widened.push_back({iv.lo - h, iv.hi + h});
        return merge_intervals(std::move(widened));
    };

    auto pb = std::make_shared<const Bump>(b);
    auto body = [pb, enlarged](double eps, double x, int n) {
        double h = 0.0;
        std::vector<Interval> parts = enlarged(eps, h);
        double total = 0.0;
        if (n == 0) {
            for (const Interval& p : parts)
                total += pb->cdf((x - p.lo) / h) - pb->cdf((x - p.hi) / h);
        } else {
            double hn = std::pow(h, n);
            for (const Interval& p : parts)
                total += (pb->derivative((x - p.lo) / h, n - 1) -
                          pb->derivative((x - p.hi) / h, n - 1)) /
                         hn;
        }
        return total;
    };

    auto hot = [enlarged](double eps) {
        double h = 0.0;
        std::vector<Interval> parts = enlarged(eps, h);
        std::vector<Interval> spots;
        spots.reserve(parts.size() * 2);
        for (const Interval& p : parts) {
            spots.push_back({p.lo - 1.5 * h, p.lo + 1.5 * h});
            spots.push_back({p.hi - 1.5 * h, p.hi + 1.5 * h});
        }
        return spots;
    };

    return nets::Net(Interval::whole_line(), 12, std::move(label), body, hot);
}

}  // namespace colombeau::mollifier
