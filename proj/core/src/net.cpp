#include "colombeau/net.hpp"

#include <algorithm>
#include <cmath>

#include "colombeau/errors.hpp"

namespace colombeau::nets {

std::vector<Interval> merge_clip(std::vector<Interval> xs, const Interval& domain,
                                 std::size_t cap = 128) {
    std::vector<Interval> kept;
    for (auto& iv : xs) {
        Interval c = intersect(iv, domain);
        if (c.lo <= c.hi) kept.push_back(c);
    }
    kept = colombeau::merge_intervals(std::move(kept));
    if (kept.size() > cap) kept.resize(cap);
    return kept;
}

Net::Net(Interval domain, int max_analytic_order, std::string label, Body body,
         HotSpots hot_spots)
    : domain_(domain),
      max_analytic_order_(max_analytic_order),
      label_(std::move(label)),
      body_(std::move(body)),
      hot_spots_(std::move(hot_spots)) {
    if (domain_.empty_open()) throw DomainError("Net: empty domain");
    if (max_analytic_order_ < 0) throw DomainError("Net: negative analytic order");
}

double Net::operator()(double eps, double x, int order) const {
    if (!(eps > 0.0 && eps < 1.0))
        throw DomainError("Net::eval: eps must lie in (0,1), got " + std::to_string(eps));
    if (!domain_.contains_open(x))
        throw DomainError("Net::eval: x=" + std::to_string(x) + " outside domain of " +
                          label_);
    if (order < 0) throw DomainError("Net::eval: negative derivative order");
    return eval_impl(eps, x, order);
}

double Net::eval_impl(double eps, double x, int order) const {
    if (order <= max_analytic_order_) return body_(eps, x, order);
    // Central difference with eps-relative step, shrunk near the boundary so
    // samples stay inside the open domain.
    double h = std::max(1e-6, eps / 1000.0);
    if (std::isfinite(domain_.lo)) h = std::min(h, 0.45 * (x - domain_.lo));
    if (std::isfinite(domain_.hi)) h = std::min(h, 0.45 * (domain_.hi - x));
    if (!(h > 0.0)) throw DomainError("Net::eval: no room for finite differences at x");
    return (eval_impl(eps, x + h, order - 1) - eval_impl(eps, x - h, order - 1)) /
           (2.0 * h);
}

std::vector<Interval> Net::hot_spots(double eps) const {
    if (!hot_spots_) return {};
    return merge_clip(hot_spots_(eps), domain_);
}

Net Net::with_meta(const std::string& key, double value) const {
    Net copy = *this;
    copy.meta_[key] = value;
    return copy;
}

Net constant_net(double value) {
    return Net(Interval::whole_line(), kDelegatedOrder,
               "constant(" + std::to_string(value) + ")",
               [value](double, double, int order) { return order == 0 ? value : 0.0; });
}

namespace {

Interval binary_domain(const Net& f, const Net& g, const char* op) {
    Interval d = intersect(f.domain(), g.domain());
    if (d.empty_open())
        throw DomainError(std::string(op) + ": domains of '" + f.label() + "' and '" +
                          g.label() + "' do not intersect");
    return d;
}

Net::HotSpots union_hot_spots(const Net& f, const Net& g) {
    return [f, g](double eps) {
        std::vector<Interval> xs = f.hot_spots(eps);
        std::vector<Interval> ys = g.hot_spots(eps);
        xs.insert(xs.end(), ys.begin(), ys.end());
        return xs;
    };
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

Net add(const Net& f, const Net& g) {
    Interval d = binary_domain(f, g, "add");
    return Net(d, kDelegatedOrder, f.label() + " + " + g.label(),
               [f, g](double eps, double x, int n) { return f(eps, x, n) + g(eps, x, n); },
               union_hot_spots(f, g));
}

Net mul(const Net& f, const Net& g) {
    Interval d = binary_domain(f, g, "mul");
    return Net(d, kDelegatedOrder, "(" + f.label() + ")*(" + g.label() + ")",
               [f, g](double eps, double x, int n) {
                   if (n == 0) return f(eps, x, 0) * g(eps, x, 0);
                   double total = 0.0;
                   for (int k = 0; k <= n; ++k)
                       total += binomial(n, k) * f(eps, x, k) * g(eps, x, n - k);
                   return total;
               },
               union_hot_spots(f, g));
}

Net scale(const Net& f, double factor) {
    return Net(f.domain(), kDelegatedOrder, std::to_string(factor) + "*(" + f.label() + ")",
               [f, factor](double eps, double x, int n) { return factor * f(eps, x, n); },
               [f](double eps) { return f.hot_spots(eps); });
}

Net subtract_from(double k, const Net& f) {
    return Net(f.domain(), kDelegatedOrder,
               std::to_string(k) + " - (" + f.label() + ")",
               [f, k](double eps, double x, int n) {
                   double v = f(eps, x, n);
                   return n == 0 ? k - v : -v;
               },
               [f](double eps) { return f.hot_spots(eps); });
}

Net restrict(const Net& f, Interval sub) {
    Interval d = intersect(f.domain(), sub);
    if (d.empty_open()) throw DomainError("restrict: empty intersection with domain");
    return Net(d, kDelegatedOrder, f.label() + "|restricted",
               [f](double eps, double x, int n) { return f(eps, x, n); },
               [f](double eps) { return f.hot_spots(eps); });
}

Net eps_sq_sin() {
    return Net(Interval::whole_line(), kDelegatedOrder, "eps^2*sin(x)",
               [](double eps, double x, int n) {
                   return eps * eps * std::sin(x + n * 1.5707963267948966);
               });
}

Net exp_neg_inv_eps_sin() {
    return Net(Interval::whole_line(), kDelegatedOrder, "exp(-1/eps)*sin(x)",
               [](double eps, double x, int n) {
                   return std::exp(-1.0 / eps) * std::sin(x + n * 1.5707963267948966);
               });
}

Net eps_pow_neg_inv_x() {
    Interval dom{0.0, std::numeric_limits<double>::infinity()};
    return Net(dom, 2, "eps^(-1/x)",
               [](double eps, double x, int n) {
                   double l = std::log(eps);
                   double v = std::exp(-l / x);
                   if (n == 0) return v;
                   if (n == 1) return v * l / (x * x);
                   return v * (l * l / (x * x * x * x) - 2.0 * l / (x * x * x));
               });
}

}  // namespace colombeau::nets
