#include <doctest.h>

#include <cmath>

#include "colombeau/classify.hpp"
#include "colombeau/embedding.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/net.hpp"

using namespace colombeau;
using nets::Net;

namespace {

const EpsSchedule& sched() {
    static EpsSchedule s = EpsSchedule::geometric();
    return s;
}

}  // namespace

TEST_CASE("net eval basics") {
    Net c = nets::constant_net(2.0);
    CHECK(c(0.5, 1.7, 0) == 2.0);
    CHECK(c(0.01, -3.0, 1) == 0.0);

    CHECK_THROWS_AS(c(1.5, 0.0, 0), DomainError);
    CHECK_THROWS_AS(c(0.0, 0.0, 0), DomainError);

    Net g = nets::eps_pow_neg_inv_x();
    CHECK_THROWS_AS(g(0.5, -1.0, 0), DomainError);  // outside (0, inf)
    CHECK(g(0.5, 1.0, 0) == doctest::Approx(2.0));  // (1/2)^-1
}

TEST_CASE("scaled bump net evaluates the scaled profile") {
    const auto& b = mollifier::standard_bump();
    Net phi = mollifier::scaled(b);
    for (double eps : {0.5, 0.25}) {
        CHECK(phi(eps, 0.0, 0) == doctest::Approx(b.value(0.0) / eps).epsilon(1e-13));
        CHECK(phi(eps, 0.3 * eps, 0) ==
              doctest::Approx(b.value(0.3) / eps).epsilon(1e-13));
    }
    CHECK(phi(0.25, 0.5, 0) == 0.0);  // outside support [-eps, eps]
}

TEST_CASE("sup_on_compact") {
    Net c = nets::constant_net(2.0);
    CHECK(nets::sup_on_compact(c, CompactBox(0.0, 1.0), 0.5, 0) == 2.0);

    const auto& b = mollifier::standard_bump();
    Net phi = mollifier::scaled(b);
    // scaling identity: sup = eps^-1 sup(profile)
    for (double eps : {0.5, 0.01, 0x1p-10}) {
        double got = nets::sup_on_compact(phi, CompactBox(-1.0, 1.0), eps, 0);
        CHECK(got == doctest::Approx(b.value(0.0) / eps).epsilon(1e-6));
    }

    CHECK_THROWS_AS(nets::sup_on_compact(c, CompactBox(0.0, 1.0), 0.5, 0, 16),
                    DomainError);

    // embedded delta vs dense-grid brute force at eps = 2^-6, 1% agreement
    Net d = embedding::embed(embedding::AtomicDistribution::delta(0.0));
    double eps = 0x1p-6;
    double two_stage = nets::sup_on_compact(d, CompactBox(-1.0, 1.0), eps, 0, 512);
    double dense = 0.0;
    const int n = 5120 * 10;
    for (int i = 0; i <= n; ++i) {
        double x = -1.0 + 2.0 * i / n;
        dense = std::max(dense, std::abs(d(eps, x, 0)));
    }
    CHECK(std::abs(two_stage - dense) <= 0.01 * dense);
}

TEST_CASE("fit_order") {
    const auto& b = mollifier::standard_bump();
    Net phi = mollifier::scaled(b);

    AsymptoticFit f = nets::fit_order(phi, CompactBox(-1.0, 1.0), 0, sched());
    CHECK(f.slope == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(f.r_squared > 0.999);
    CHECK(f.sup_values.size() == sched().size());

    Net zero = nets::constant_net(0.0);
    AsymptoticFit z = nets::fit_order(zero, CompactBox(0.0, 1.0), 0, sched());
    CHECK(z.degenerate);

    AsymptoticFit s = nets::fit_order(nets::eps_sq_sin(), CompactBox(0.0, 1.0), 0, sched());
    CHECK(s.slope == doctest::Approx(2.0).epsilon(0.025));
    // closed-form sup is eps^2 sin(1)
    CHECK(s.sup_values.front().second ==
          doctest::Approx(0.125 * 0.125 * std::sin(1.0)).epsilon(1e-9));
}

TEST_CASE("fit_order rejects sparse data") {
    // nonzero at three schedule points only
    Net spotty(Interval::whole_line(), 4, "spotty",
               [](double eps, double, int) { return eps > 0.1 ? 1.0 : 0.0; });
    CHECK_THROWS_AS(nets::fit_order(spotty, CompactBox(0.0, 1.0), 0, sched()),
                    InsufficientDataError);
}

TEST_CASE("is_moderate") {
    Net d = embedding::embed(embedding::AtomicDistribution::delta(0.0));
    auto rep = nets::is_moderate(d, CompactBox(-1.0, 1.0), {0, 1, 2}, sched());
    CHECK(rep.verdict);
    CHECK(rep.fits[0].fit.slope == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(rep.fits[1].fit.slope == doctest::Approx(-2.0).epsilon(0.05));
    CHECK(rep.fits[2].fit.slope == doctest::Approx(-3.0).epsilon(0.05));

    CHECK(nets::is_moderate(nets::constant_net(3.0), CompactBox(0.0, 1.0), {0, 1, 2},
                            sched())
              .verdict);

    // eps^(-1/x) on [0.1, 1]: worst exponent -10, still moderate
    auto rep2 = nets::is_moderate(nets::eps_pow_neg_inv_x(), CompactBox(0.1, 1.0),
                                  {0, 1}, sched());
    CHECK(rep2.verdict);
    CHECK(rep2.fits[0].fit.slope == doctest::Approx(-10.0).epsilon(0.01));
}

TEST_CASE("is_negligible") {
    CHECK(nets::is_negligible(nets::constant_net(0.0), CompactBox(0.0, 1.0), sched())
              .verdict);

    Net d = embedding::embed(embedding::AtomicDistribution::delta(0.0));
    auto rep = nets::is_negligible(d, CompactBox(-1.0, 1.0), sched());
    CHECK_FALSE(rep.verdict);
    CHECK(rep.fits[0].fit.slope == doctest::Approx(-1.0).epsilon(0.05));

    // sup = exp(-1/eps) sin(1): decays faster than any power
    auto rep2 = nets::is_negligible(nets::exp_neg_inv_eps_sin(), CompactBox(0.0, 1.0),
                                    sched());
    CHECK(rep2.verdict);
    CHECK(rep2.fits[0].fit.slope >= 10.0);
}

TEST_CASE("is_ginfty") {
    CHECK(nets::is_ginfty(nets::constant_net(5.0), CompactBox(0.0, 1.0), {0, 1, 2, 3, 4},
                          sched())
              .verdict);

    Net d = embedding::embed(embedding::AtomicDistribution::delta(0.0));
    CHECK_FALSE(
        nets::is_ginfty(d, CompactBox(-1.0, 1.0), {0, 1, 2, 3, 4}, sched()).verdict);

    CHECK_THROWS_AS(
        nets::is_ginfty(d, CompactBox(-1.0, 1.0), {0, 1}, sched()),
        DomainError);

    // log-width indicator: per-order slopes -0.1469 n on this schedule, so the
    // order-0..4 spread lands at 0.5875; regular at tolerance 0.75 and
    // (narrowly) rejected at 0.5.
    Net eta = mollifier::smooth_indicator(mollifier::standard_bump(), {{-1.0, 1.0}},
                                          mollifier::log_width());
    auto rep = nets::is_ginfty(eta, CompactBox(-2.0, 2.0), {0, 1, 2, 3, 4}, sched(), 0.75);
    CHECK(rep.verdict);
    for (const auto& of : rep.fits) {
        CHECK(of.fit.slope ==
              doctest::Approx(-0.146882 * of.order).epsilon(0.02).scale(1.0));
    }
    CHECK_FALSE(
        nets::is_ginfty(eta, CompactBox(-2.0, 2.0), {0, 1, 2, 3, 4}, sched(), 0.5)
            .verdict);
}

TEST_CASE("net algebra") {
    const auto& b = mollifier::standard_bump();
    Net phi = mollifier::scaled(b);
    Net one = nets::constant_net(1.0);

    SUBCASE("add with negated self is negligible") {
        Net z = nets::add(phi, nets::scale(phi, -1.0));
        CHECK(nets::is_negligible(z, CompactBox(-1.0, 1.0), sched()).verdict);
    }

    SUBCASE("multiplicative identity") {
        Net p = nets::mul(one, phi);
        for (double eps : {0.5, 0.125, 0.01})
            for (double x : {-0.2, 0.0, 0.13})
                CHECK(p(eps, x, 0) == phi(eps, x, 0));
    }

    SUBCASE("product equals product of evals") {
        Net eta = mollifier::smooth_indicator(b, {{-0.5, 0.5}}, mollifier::linear_width());
        Net prod = nets::mul(phi, eta);
        Rng rng(7);
        for (int i = 0; i < 5; ++i) {
            double eps = 0.5 * rng.unit() + 0.01;
            double x = rng.uniform(-0.8, 0.8);
            CHECK(prod(eps, x, 0) == doctest::Approx(phi(eps, x, 0) * eta(eps, x, 0))
                                         .epsilon(1e-14)
                                         .scale(1.0));
        }
    }

    SUBCASE("empty domain intersection is rejected") {
        Net left = nets::restrict(one, {-2.0, -1.0});
        Net right = nets::restrict(one, {1.0, 2.0});
        CHECK_THROWS_AS(nets::add(left, right), DomainError);
        CHECK_THROWS_AS(nets::restrict(left, {5.0, 6.0}), DomainError);
    }

    SUBCASE("restrict then eval equals eval") {
        Net r = nets::restrict(phi, {-0.5, 0.5});
        for (double x : {-0.3, 0.0, 0.49})
            CHECK(r(0.25, x, 0) == phi(0.25, x, 0));
        CHECK_THROWS_AS(r(0.25, 0.75, 0), DomainError);
    }
}

TEST_CASE("algebra closure and ideal property") {
    const auto& b = mollifier::standard_bump();
    std::vector<Net> moderate_pool{
        nets::constant_net(2.0),
        nets::eps_sq_sin(),
        mollifier::scaled(b),
        embedding::embed(embedding::AtomicDistribution::delta(0.3)),
        mollifier::smooth_indicator(b, {{0.0, 1.0}}, mollifier::linear_width()),
        nets::scale(mollifier::scaled(b, -0.4), 3.0),
    };
    CompactBox box(-1.0, 1.0);
    std::vector<int> orders{0, 1, 2};

    for (const Net& f : moderate_pool)
        CHECK(nets::is_moderate(f, box, orders, sched()).verdict);

    // closure under sum and product (sampled pairs)
    for (std::size_t i = 0; i < moderate_pool.size(); ++i) {
        const Net& f = moderate_pool[i];
        const Net& g = moderate_pool[(i + 1) % moderate_pool.size()];
        CHECK(nets::is_moderate(nets::add(f, g), box, orders, sched()).verdict);
        CHECK(nets::is_moderate(nets::mul(f, g), box, orders, sched()).verdict);
    }

    // ideal property: moderate * negligible stays negligible
    std::vector<Net> negligible_pool{nets::constant_net(0.0),
                                     nets::exp_neg_inv_eps_sin()};
    for (const Net& n : negligible_pool) {
        CHECK(nets::is_negligible(n, box, sched()).verdict);
        for (const Net& f : moderate_pool)
            CHECK(nets::is_negligible(nets::mul(f, n), box, sched()).verdict);
    }
}

TEST_CASE("schedule refinement stability") {
    EpsSchedule coarse = EpsSchedule::geometric(3, 20, 1.0);
    EpsSchedule fine = EpsSchedule::geometric(3, 20, 0.5);
    const auto& b = mollifier::standard_bump();
    std::vector<Net> pool{mollifier::scaled(b), nets::eps_sq_sin(),
                          nets::eps_pow_neg_inv_x()};
    std::vector<CompactBox> boxes{CompactBox(-1.0, 1.0), CompactBox(0.0, 1.0),
                                  CompactBox(0.5, 1.0)};
    for (std::size_t i = 0; i < pool.size(); ++i) {
        double a = nets::fit_order(pool[i], boxes[i], 0, coarse).slope;
        double c = nets::fit_order(pool[i], boxes[i], 0, fine).slope;
        CHECK(std::abs(a - c) < 0.05);
    }
}

TEST_CASE("scaling law across orders") {
    Net phi = mollifier::scaled(mollifier::standard_bump());
    for (int n = 0; n <= 3; ++n) {
        AsymptoticFit f = nets::fit_order(phi, CompactBox(-1.0, 1.0), n, sched());
        CHECK(f.slope == doctest::Approx(-1.0 - n).epsilon(0.1 / (1.0 + n)).scale(1.0));
    }
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(EpsSchedule({0.5, 0.25}), DomainError);
    CHECK_THROWS_AS(EpsSchedule({0.5, 0.25, 0.25, 0.1, 0.05, 0.01}), DomainError);
    CHECK_THROWS_AS(EpsSchedule({1.5, 0.5, 0.25, 0.1, 0.05, 0.01}), DomainError);
    EpsSchedule ok = EpsSchedule::geometric(3, 8);
    CHECK(ok.size() == 6);
    CHECK(ok.max_eps() == 0.125);
}
