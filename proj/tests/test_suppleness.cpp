#include <doctest.h>

#include <cmath>

#include "colombeau/embedding.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/suppleness.hpp"

using namespace colombeau;
using embedding::AtomicDistribution;
using geometry::ClosedSet;
using mollifier::standard_bump;
using nets::Net;
using suppleness::Probe;
using suppleness::ProbeTarget;
using suppleness::Verdict;
using suppleness::WidthMode;

namespace {

const EpsSchedule& sched() {
    static EpsSchedule s = EpsSchedule::geometric();
    return s;
}

ClosedSet family_plus() {
    ClosedSet s;
    s.add_family(1.0, +1);
    return s;
}
ClosedSet family_minus() {
    ClosedSet s;
    s.add_family(1.0, -1);
    return s;
}

}  // namespace

TEST_CASE("decompose with disjoint supports") {
    Net f = embedding::embed(AtomicDistribution::delta(0.5));
    auto res = suppleness::decompose(f, ClosedSet::points({0.5}),
                                     ClosedSet::points({-0.5}), 0.1,
                                     CompactBox(-1.5, 1.5));
    // eta is 1 near 0.5, so f2 vanishes identically on [0,1]
    for (double eps : {0.1, 0.01, 0.001})
        for (int i = 0; i <= 100; ++i)
            CHECK(res.f2(eps, i / 100.0, 0) == 0.0);
}

TEST_CASE("decompose additivity is exact") {
    Net f = embedding::example2_net(embedding::Example2Family{}, standard_bump());
    auto res = suppleness::decompose(f, family_plus(), family_minus(), 0.1,
                                     CompactBox(-2.0, 2.0));
    Rng rng(17);
    for (int i = 0; i < 1000; ++i) {
        double eps = sched().values()[static_cast<std::size_t>(rng.unit() * sched().size()) %
                                      sched().size()];
        double x = rng.uniform(-2.0, 2.0);
        double whole = f(eps, x, 0);
        double split = res.f1(eps, x, 0) + res.f2(eps, x, 0);
        CHECK(std::abs(whole - split) <= 1e-12 * std::max(1.0, std::abs(whole)));
    }
}

TEST_CASE("decompose window validation") {
    Net f = embedding::example2_net(embedding::Example2Family{}, standard_bump());
    CHECK_THROWS_AS(suppleness::decompose(f, family_plus(), family_minus(), 0.1,
                                          CompactBox(-1.0, 1.0)),
                    DomainError);  // need [-1-margin, 1+margin]
    CHECK_THROWS_AS(suppleness::decompose(f, family_plus(), family_minus(), -0.1,
                                          CompactBox(-2.0, 2.0)),
                    DomainError);
}

TEST_CASE("eta plateau transfer") {
    Net f = embedding::example2_net(embedding::Example2Family{}, standard_bump());
    auto res = suppleness::decompose(f, family_plus(), family_minus(), 0.1,
                                     CompactBox(-2.0, 2.0));
    // eta = 1 on the ball around the n=1 atom: f2 vanishes there exactly
    for (double eps : sched().values())
        for (int i = 0; i <= 64; ++i) {
            double x = 0.95 + 0.1 * i / 64.0;
            CHECK(res.f2(eps, x, 0) == 0.0);
        }
    // eta = 0 far on the negative side: f1 vanishes there exactly
    for (double eps : sched().values())
        for (int i = 0; i <= 64; ++i) {
            double x = -1.2 + 0.2 * i / 64.0;
            CHECK(res.f1(eps, x, 0) == 0.0);
        }
}

TEST_CASE("certify_support on the alternating families") {
    Net f = embedding::example2_net(embedding::Example2Family{}, standard_bump());
    auto res = suppleness::decompose(f, family_plus(), family_minus(), 0.1,
                                     CompactBox(-2.0, 2.0));
    std::vector<Probe> probes{
        {-0.5, ProbeTarget::z1},   // outside the thickening
        {0.3, ProbeTarget::z1},    // inside the thickening, off Z1
        {1.5, ProbeTarget::z1},    //
        {1.7, ProbeTarget::z2},    // off the whole support
        {1.0, ProbeTarget::z2},    // on Z1, away from Z2
        {0.0625, ProbeTarget::z2},
    };
    auto cert = suppleness::certify_support(res, family_plus(), family_minus(), probes,
                                            sched());
    CHECK(cert.all_ok());
    for (const auto& p : cert.probes) CHECK(p.verdict == Verdict::exact_zero);
    CHECK(cert.probes[0].case_name == "outside_tilde");
    CHECK(cert.probes[1].case_name == "inside_tilde");
    CHECK(cert.probes[3].case_name == "off_support");
    CHECK(cert.probes[4].case_name == "on_z1");

    // probe radii follow the case analysis: A/2 inside the thickening
    CHECK(cert.probes[1].radius == doctest::Approx(0.025).epsilon(1e-9));
    // H'/2 = min(H, delta)/2 on Z1
    CHECK(cert.probes[4].radius == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("certify rejects probes inside the target set") {
    Net f = embedding::example2_net(embedding::Example2Family{}, standard_bump());
    auto res = suppleness::decompose(f, family_plus(), family_minus(), 0.1,
                                     CompactBox(-2.0, 2.0));
    std::vector<Probe> bad{{0.25, ProbeTarget::z1}};  // 1/4 is an atom of Z1
    CHECK_THROWS_WITH_AS(
        suppleness::certify_support(res, family_plus(), family_minus(), bad, sched()),
        doctest::Contains("probe inside target set"), DomainError);
}

TEST_CASE("certificate reports FAIL when the caller lies about the support") {
    // supp f = {0} but the declared sets are {0.5} and {-0.5}; f2 keeps the
    // whole spike near 0 and decays like eps^-1.
    Net f = embedding::embed(AtomicDistribution::delta(0.0));
    auto res = suppleness::decompose(f, ClosedSet::points({0.5}),
                                     ClosedSet::points({-0.5}), 0.1,
                                     CompactBox(-1.5, 1.5));
    std::vector<Probe> probes{{0.0, ProbeTarget::z2}};
    auto cert = suppleness::certify_support(res, ClosedSet::points({0.5}),
                                            ClosedSet::points({-0.5}), probes, sched());
    CHECK_FALSE(cert.all_ok());
    CHECK(cert.probes[0].verdict == Verdict::fail);
    REQUIRE(cert.probes[0].fit.has_value());
    CHECK(cert.probes[0].fit->slope == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("negligible_slope verdict on a decaying remainder") {
    // Probe inside the thickening where eta = 1: f1 equals the negligible f
    // there, nonzero at the top of the schedule, decaying faster than any
    // power below it.
    Net f = nets::mul(nets::exp_neg_inv_eps_sin(), nets::constant_net(1.0));
    auto res = suppleness::decompose(f, ClosedSet::points({0.0}),
                                     ClosedSet::points({3.0}), 0.1,
                                     CompactBox(-1.0, 4.0));
    std::vector<Probe> probes{{0.05, ProbeTarget::z1}};
    auto cert = suppleness::certify_support(res, ClosedSet::points({0.0}),
                                            ClosedSet::points({3.0}), probes, sched());
    CHECK(cert.all_ok());
    CHECK(cert.probes[0].case_name == "inside_tilde");
    CHECK(cert.probes[0].verdict == Verdict::negligible_slope);
    REQUIRE(cert.probes[0].fit.has_value());
    CHECK(cert.probes[0].fit->slope >= 10.0);
}

TEST_CASE("shrinking delta shrinks the thickening") {
    auto t1 = geometry::tilde_set(family_plus(), family_minus(), 0.1,
                                  CompactBox(-2.0, 2.0));
    auto t2 = geometry::tilde_set(family_plus(), family_minus(), 0.05,
                                  CompactBox(-2.0, 2.0));
    for (const Interval& small : t2.intervals) {
        bool covered = false;
        for (const Interval& big : t1.intervals)
            if (small.lo >= big.lo - 1e-9 && small.hi <= big.hi + 1e-9) covered = true;
        CHECK(covered);
    }
}

TEST_CASE("ginf_decompose") {
    SUBCASE("schedule must start at 2^-3 or below") {
        Net f = embedding::embed(AtomicDistribution::delta(0.0));
        EpsSchedule bad = EpsSchedule::geometric(1, 10);
        CHECK_THROWS_AS(
            suppleness::ginf_decompose(f, ClosedSet::points({0.0}),
                                       ClosedSet::points({2.0}), 0.1,
                                       CompactBox(-1.5, 3.5), CompactBox(-1.0, 1.0), bad),
            DomainError);
    }

    SUBCASE("log width value") {
        CHECK(mollifier::log_width()(std::exp(-4.0)) == doctest::Approx(0.25).epsilon(1e-14));
    }

    SUBCASE("regular input yields regular parts, delta is reported as failing") {
        const auto& b = standard_bump();
        AtomicDistribution smooth;
        smooth.density = [&b](double y, int n) {
            return b.derivative(y / 0.3, n) / std::pow(0.3, n);
        };
        smooth.density_support = {-0.3, 0.3};
        Net f = embedding::embed(smooth);
        ClosedSet z1, z2;
        z1.add_interval(-0.4, 0.4);
        z2.add_interval(2.0, 2.4);
        auto res = suppleness::ginf_decompose(f, z1, z2, 0.1, CompactBox(-1.5, 3.2),
                                              CompactBox(-1.2, 1.2), sched());
        CHECK(res.ginf_f->verdict);
        CHECK(res.ginf_f1->verdict);
        CHECK(res.ginf_f2->verdict);

        // delta = 0.15 keeps the thickening wider than the largest scheduled
        // mollifier support, so f2 is identically zero rather than a one-
        // entry stub the regression cannot fit.
        Net d = embedding::embed(AtomicDistribution::delta(0.0));
        auto res_d = suppleness::ginf_decompose(d, ClosedSet::points({0.0}),
                                                ClosedSet::points({2.0}), 0.15,
                                                CompactBox(-1.5, 3.5),
                                                CompactBox(-1.0, 1.0), sched());
        CHECK_FALSE(res_d.ginf_f->verdict);
        for (const auto& of : res_d.ginf_f->fits)
            CHECK(of.fit.slope == doctest::Approx(-1.0 - of.order).epsilon(0.1).scale(1.0));
        // additivity still holds in log mode
        Rng rng(23);
        for (int i = 0; i < 200; ++i) {
            double eps = sched().values()[static_cast<std::size_t>(rng.unit() *
                                                                   sched().size()) %
                                          sched().size()];
            double x = rng.uniform(-1.0, 3.0);
            double whole = d(eps, x, 0);
            double split = res_d.f1(eps, x, 0) + res_d.f2(eps, x, 0);
            CHECK(std::abs(whole - split) <= 1e-12 * std::max(1.0, std::abs(whole)));
        }
    }
}
