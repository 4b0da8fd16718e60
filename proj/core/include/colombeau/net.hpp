#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "colombeau/common.hpp"

namespace colombeau::nets {

// An eps-parametrized family of smooth functions on an open subset of the
// line. The body is a pure evaluator (eps, x, derivative order) -> value;
// derivative orders above max_analytic_order fall back to central finite
// differences with an eps-relative step. Everything is immutable after
// construction, so concurrent evaluation is safe.
class Net {
  public:
    using Body = std::function<double(double eps, double x, int order)>;
    // Optional sampling hints: intervals (per eps) where the function has
    // eps-scale features a uniform grid would miss.
    using HotSpots = std::function<std::vector<Interval>(double eps)>;

    Net(Interval domain, int max_analytic_order, std::string label, Body body,
        HotSpots hot_spots = nullptr);

    double operator()(double eps, double x, int order = 0) const;

    const Interval& domain() const { return domain_; }
    int max_analytic_order() const { return max_analytic_order_; }
    const std::string& label() const { return label_; }

    std::vector<Interval> hot_spots(double eps) const;

    const std::map<std::string, double>& meta() const { return meta_; }
    Net with_meta(const std::string& key, double value) const;

  private:
    double eval_impl(double eps, double x, int order) const;

    Interval domain_;
    int max_analytic_order_;
    std::string label_;
    Body body_;
    HotSpots hot_spots_;
    std::map<std::string, double> meta_;
};

// Combined nets delegate derivative orders to their operands, which apply
// their own finite-difference fallback; the combinators themselves are exact.
inline constexpr int kDelegatedOrder = 1024;

Net constant_net(double value);
Net add(const Net& f, const Net& g);
Net mul(const Net& f, const Net& g);
Net scale(const Net& f, double factor);
// k - f, with exact derivative negation (used for 1 - eta).
Net subtract_from(double k, const Net& f);
Net restrict(const Net& f, Interval sub);

// Closed-form nets used by demos and the classification test pool.
Net eps_sq_sin();                // eps^2 * sin(x) on the line
Net exp_neg_inv_eps_sin();       // exp(-1/eps) * sin(x) on the line
Net eps_pow_neg_inv_x();         // eps^(-1/x) on (0, inf)

}  // namespace colombeau::nets
