#include <cmath>
#include <vector>

#include "doctest.h"
#include "hhcert/bounds.hpp"
#include "hhcert/errors.hpp"
#include "hhcert/funcspec.hpp"
#include "hhcert/kernel.hpp"
#include "hhcert/means_apps.hpp"
#include "hhcert/rng.hpp"

namespace {
using hhcert::kernel::EndpointDerivatives;
namespace ma = hhcert::means_apps;

EndpointDerivatives power_d(double s, double a, double b) {
    return EndpointDerivatives(std::pow(a, s - 1.0), std::pow(b, s - 1.0));
}
}  // namespace

TEST_SUITE("means") {

TEST_CASE("power-law specializations delegate to the generic bounds") {
    hhcert::SplitMix64 rng(0x9EA45ULL);
    for (int i = 0; i < 50; ++i) {
        const double s = 0.05 + 0.9 * rng.uniform();
        const double a = 0.05 + 0.6 * rng.uniform();
        const double b = a + 0.05 + (1.0 - a - 0.05) * rng.uniform();
        const double p = 1.1 + 10.0 * rng.uniform();
        const double q = 1.0 + 9.0 * rng.uniform();
        const double m1 = 0.05 + 0.9 * rng.uniform();
        const double m2 = 0.05 + 0.9 * rng.uniform();
        const EndpointDerivatives d = power_d(s, a, b);

        CHECK(ma::prop1_rhs(s, a, b) == hhcert::bounds::bound_t1(d, s, a, b));
        CHECK(ma::prop2_rhs(s, p, a, b) ==
              hhcert::bounds::bound_t2(d, s, p, a, b));
        CHECK(ma::prop3_rhs(s, q, a, b) ==
              hhcert::bounds::bound_t3(d, s, q, a, b));
        CHECK(ma::prop4_rhs(s, m1, m2, a, b) ==
              hhcert::bounds::bound_t4(d, s, m1, m2, a, b));
    }
}

TEST_CASE("closed-form defect matches the quadrature-based one") {
    hhcert::SplitMix64 rng(0x10E5ULL);
    for (int i = 0; i < 20; ++i) {
        const double s = 0.05 + 0.9 * rng.uniform();
        const double a = 0.05 + 0.6 * rng.uniform();
        const double b = a + 0.05 + (1.0 - a - 0.05) * rng.uniform();
        const double direct = ma::prop_lhs(s, a, b);
        const double generic = hhcert::bounds::hh_lhs(
            hhcert::funcspec::builtin_power_s(s, 1.0), a, b);
        CHECK(std::fabs(direct - generic) <=
              1e-8 * std::fmax(1e-30, std::fabs(direct)) + 1e-12);
    }
}

TEST_CASE("logarithmic-mean form of the second bound is an identity") {
    hhcert::SplitMix64 rng(0x2B0BULL);
    for (int i = 0; i < 100; ++i) {
        const double s = 0.05 + 0.9 * rng.uniform();
        const double a = 0.05 + 0.6 * rng.uniform();
        const double b = a + 0.05 + (1.0 - a - 0.05) * rng.uniform();
        const double p = 1.1 + 10.0 * rng.uniform();
        const double lhs = ma::prop2_rhs_printed(s, p, a, b);
        const double rhs = ma::prop2_rhs(s, p, a, b);
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * rhs);
    }
}

TEST_CASE("the alternate third-bound rendering is not the kernel form") {
    // The sign-flipped second bracket is negative whenever 0 < s < 1 and
    // a < b (its argument sits below 1), so under a fractional 1/q power
    // the literal rendering is NaN. That is the defect being reported.
    const double s = 0.5, q = 2.0, a = 0.6, b = 0.61;
    const double printed = ma::prop3_rhs_printed(s, q, a, b);
    const double kernelform = ma::prop3_rhs(s, q, a, b);
    CHECK(std::isnan(printed));
    CHECK(std::isfinite(kernelform));
    // At q = 1 the power is trivial and the negative bracket survives to
    // the sum: finite, but strictly below the kernel form.
    const double p1 = ma::prop3_rhs_printed(0.3, 1.0, 0.1, 0.9);
    const double k1 = ma::prop3_rhs(0.3, 1.0, 0.1, 0.9);
    CHECK(std::isfinite(p1));
    CHECK(std::isfinite(k1));
    CHECK(p1 < k1);
}

TEST_CASE("domain validation for the power-law family") {
    CHECK_THROWS_AS(ma::prop_lhs(0.5, 0.5, 1.5), hhcert::DomainError);
    CHECK_THROWS_AS(ma::prop_lhs(0.5, 0.9, 0.2), hhcert::DomainError);
    CHECK_THROWS_AS(ma::prop_lhs(0.0, 0.2, 0.9), hhcert::DomainError);
    CHECK_THROWS_AS(ma::prop_lhs(1.0, 0.2, 0.9), hhcert::DomainError);
    CHECK_THROWS_AS(ma::prop1_rhs(0.5, 0.0, 0.9), hhcert::DomainError);
    CHECK_THROWS_AS(ma::prop2_rhs(0.5, 1.0, 0.2, 0.9), hhcert::DomainError);
    CHECK_THROWS_AS(ma::prop3_rhs(0.5, 0.5, 0.2, 0.9), hhcert::DomainError);
    CHECK_THROWS_AS(ma::prop4_rhs(0.5, 0.0, 0.5, 0.2, 0.9),
                    hhcert::DomainError);
    // b = 1 is inside the family's domain.
    CHECK_NOTHROW(ma::prop1_rhs(0.5, 0.2, 1.0));
}

TEST_CASE("demonstration table reproduces its frozen references") {
    auto rows = ma::reproduce_example2();
    REQUIRE(rows.size() == 3);

    CHECK(rows[0].s == 0.5);
    CHECK(rows[0].a == 0.89);
    CHECK(rows[0].b == 0.9);
    CHECK(rows[1].s == 0.2);
    CHECK(rows[2].s == 0.75);

    for (const auto& r : rows) {
        CAPTURE(r.s);
        CHECK(std::fabs(r.lhs - r.ref_lhs) <= 1e-6 * std::fabs(r.ref_lhs));
        CHECK(std::fabs(r.rhs - r.ref_rhs) <= 1e-6 * std::fabs(r.ref_rhs));
        CHECK(r.margin == r.rhs - r.lhs);
        CHECK(r.margin > 0.0);
        // Rows recompute through the public entry points.
        CHECK(r.lhs == ma::prop_lhs(r.s, r.a, r.b));
        CHECK(r.rhs == ma::prop1_rhs(r.s, r.a, r.b));
    }

    // Spot-check the frozen numbers themselves.
    CHECK(std::fabs(rows[0].ref_rhs - 2.570313847e-3) <=
          1e-6 * rows[0].ref_rhs);
    CHECK(std::fabs(rows[2].ref_lhs - 6.115413651e-3) <=
          1e-6 * rows[2].ref_lhs);
}

TEST_CASE("corruption knob exists only to forge mismatches") {
    auto rows = ma::reproduce_example2(0.5);
    auto clean = ma::reproduce_example2();
    REQUIRE(rows.size() == clean.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].lhs == doctest::Approx(1.5 * clean[i].lhs).epsilon(1e-15));
        CHECK(rows[i].ref_lhs == clean[i].ref_lhs);
        CHECK(std::fabs(rows[i].lhs - rows[i].ref_lhs) >
              1e-6 * std::fabs(rows[i].ref_lhs));
    }
}

}  // TEST_SUITE
