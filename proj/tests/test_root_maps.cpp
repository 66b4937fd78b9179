#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "rootbound/root_maps.hpp"
#include "rootbound/positivity.hpp"
#include "rootbound/verification.hpp"
#include "test_helpers.hpp"

using namespace rootbound;
using rootbound::testing::rs;

namespace {
const RootParameter p2 = RootParameter::integer(2);
const RootParameter p3 = RootParameter::integer(3);

bool close(Complex a, Complex b, double tol = 1e-14) { return std::abs(a - b) < tol; }
}  // namespace

TEST_CASE("root parameter validation") {
    CHECK_THROWS_WITH_AS(RootParameter::integer(1), "p must exceed 1", std::invalid_argument);
    CHECK_THROWS_AS(RootParameter::parse("9/10"), std::invalid_argument);
    CHECK(RootParameter::parse("5/2").is_integer() == false);
    CHECK(RootParameter::parse("4").as_integer() == 4);
    CHECK_THROWS_AS(RootParameter::parse("5/2").as_integer(), std::invalid_argument);
}

TEST_CASE("Newton weights a_n = p^(1-n)") {
    const WeightSequence a = newton_weights(p2);
    CHECK(a.value(1) == Rational(1));
    CHECK(a.value(2) == Rational(1, 2));
    CHECK(a.value(3) == Rational(1, 4));
    CHECK(a.value(4) == Rational(1, 8));
    CHECK(a.declared_ell == 2);
    CHECK(newton_weights(p3).value(1) == Rational(1));
    CHECK(newton_weights(RootParameter::parse("5/2")).value(3) == Rational(4, 25));
}

TEST_CASE("Halley weights a_n = p(alpha^n - beta^n)") {
    const WeightSequence a = halley_weights(p2);
    CHECK(a.value(1) == Rational(1));
    CHECK(a.value(2) == Rational(1));
    CHECK(a.value(3) == Rational(13, 16));
    CHECK(a.value(4) == Rational(5, 8));
    CHECK(a.declared_ell == 3);
    for (const auto& p_text : {"3", "10", "7/3"}) {
        const WeightSequence w = halley_weights(RootParameter::parse(p_text));
        CHECK(w.value(1) == Rational(1));
        CHECK(w.value(2) == Rational(1));
    }
    CHECK(halley_weights(p3).value(3) == Rational(7, 9));
}

TEST_CASE("Halley weight identity a_n - a_{n+1} = alpha beta a_{n-1}") {
    for (long p : {2L, 3L, 5L, 10L})
        CHECK(halley_weight_identity_holds(RootParameter::integer(p), 200));
    CHECK(halley_weight_identity_holds(RootParameter::parse("5/2"), 50));
}

TEST_CASE("both weight families pass certification with the declared ell") {
    for (long p : {2L, 3L, 5L, 10L}) {
        const PositivityCertificate newton_cert =
            certify(newton_weights(RootParameter::integer(p)), 64);
        CHECK(newton_cert.ell == 2);
        CHECK(newton_cert.all_passed());
        const PositivityCertificate halley_cert =
            certify(halley_weights(RootParameter::integer(p)), 64);
        CHECK(halley_cert.ell == 3);
        CHECK(halley_cert.all_passed());
    }
}

TEST_CASE("Newton residual map values") {
    CHECK(close(newton_residual_map(p2, {-1.0, 0.0}), {1.0 / 9.0, 0.0}));
    for (const auto& p_text : {"2", "3", "5/2"}) {
        const RootParameter p = RootParameter::parse(p_text);
        CHECK(newton_residual_map(p, {0.0, 0.0}) == Complex(0.0, 0.0));
        CHECK(close(newton_residual_map(p, {1.0, 0.0}), {1.0, 0.0}));
    }
    CHECK_THROWS_AS(newton_residual_map(p2, {2.0, 0.0}), PoleError);
    // non-integer p is restricted to the disk |t| < p
    CHECK_THROWS_AS(newton_residual_map(RootParameter::parse("5/2"), {2.6, 0.0}),
                    std::domain_error);
}

TEST_CASE("Halley residual map values") {
    CHECK(close(halley_residual_map(p2, {-1.0, 0.0}), {-1.0 / 49.0, 0.0}));
    for (const auto& p_text : {"2", "3", "5/2"}) {
        const RootParameter p = RootParameter::parse(p_text);
        CHECK(halley_residual_map(p, {0.0, 0.0}) == Complex(0.0, 0.0));
        CHECK(close(halley_residual_map(p, {1.0, 0.0}), {1.0, 0.0}));
    }
    CHECK_THROWS_AS(halley_residual_map(p2, {4.0 / 3.0, 0.0}), PoleError);
    CHECK_THROWS_AS(halley_residual_map(RootParameter::parse("5/2"), {1.5, 0.0}),
                    std::domain_error);
}

TEST_CASE("map series: spot values and zero leading coefficients") {
    for (const SeriesRoute route : {SeriesRoute::closed_form, SeriesRoute::weights}) {
        CHECK(map_series(Method::newton, p2, 3, route) == rs({"0", "0", "1/4", "1/4"}, 3));
        CHECK(map_series(Method::halley, p2, 3, route) == rs({"0", "0", "0", "1/16"}, 3));
        CHECK(map_series(Method::newton, p3, 5, route) ==
              rs({"0", "0", "1/3", "8/27", "5/27", "8/81"}, 5));
        CHECK(map_series(Method::halley, RootParameter::integer(5), 4, route) ==
              rs({"0", "0", "0", "2/25", "3/25"}, 4));
    }
    const RationalSeries f7 = map_series(Method::newton, RootParameter::integer(7), 8,
                                         SeriesRoute::weights);
    CHECK(f7[0] == Rational(0));
    CHECK(f7[1] == Rational(0));
    CHECK(f7[2] != Rational(0));
}

TEST_CASE("map series: the closed-form and weights routes agree exactly") {
    for (long p : {2L, 3L, 5L}) {
        const RootParameter rp = RootParameter::integer(p);
        for (Method m : {Method::newton, Method::halley})
            CHECK(map_series(m, rp, 64, SeriesRoute::closed_form) ==
                  map_series(m, rp, 64, SeriesRoute::weights));
    }
    CHECK_THROWS_AS(map_series(Method::newton, RootParameter::parse("5/2"), 8,
                               SeriesRoute::closed_form),
                    std::invalid_argument);
}

TEST_CASE("Newton step") {
    for (const Complex z : {Complex{0.3, -0.2}, Complex{-1.0, 0.0}, Complex{0.0, 0.9}})
        CHECK(close(newton_step(p2, {1.0, 0.0}, z), 1.0 - z / 2.0));
    CHECK(newton_step(p2, {1.0, 0.0}, {0.0, 0.0}) == Complex(1.0, 0.0));
    CHECK(close(newton_step(p3, {1.0, 0.0}, {1.0, 0.0}), {2.0 / 3.0, 0.0}));
    CHECK_THROWS_AS(newton_step(p2, {0.0, 0.0}, {0.5, 0.0}), PoleError);
    CHECK_THROWS_AS(newton_step(RootParameter::parse("5/2"), {1.0, 0.0}, {0.5, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("Halley step") {
    CHECK(close(halley_step(p2, {1.0, 0.0}, {-1.0, 0.0}), {7.0 / 5.0, 0.0}));
    CHECK(halley_step(p2, {1.0, 0.0}, {0.0, 0.0}) == Complex(1.0, 0.0));
    for (const Complex z : {Complex{0.4, 0.1}, Complex{-0.8, 0.0}})
        CHECK(close(halley_step(p2, {1.0, 0.0}, z), (4.0 - 3.0 * z) / (4.0 - z)));
    // (p+1) v^p + (p-1)(1-z) = 0 at v = i/sqrt(3), z = 0
    CHECK_THROWS_AS(halley_step(p2, {0.0, 1.0 / std::sqrt(3.0)}, {0.0, 0.0}), PoleError);
}

TEST_CASE("iteration traces") {
    const IterationTrace newton = run_iteration(p2, Method::newton, {-1.0, 0.0}, 1);
    CHECK(newton.steps[0].iterate == Complex(1.0, 0.0));
    CHECK(newton.steps[0].residual == Complex(-1.0, 0.0));  // residual_0 = z exactly
    CHECK(close(newton.steps[1].iterate, {1.5, 0.0}));
    CHECK(close(newton.steps[1].residual, {1.0 / 9.0, 0.0}));

    const IterationTrace halley = run_iteration(p2, Method::halley, {-1.0, 0.0}, 1);
    CHECK(close(halley.steps[1].iterate, {1.4, 0.0}));
    CHECK(close(halley.steps[1].residual, {-1.0 / 49.0, 0.0}));

    for (Method m : {Method::newton, Method::halley}) {
        const IterationTrace at_zero = run_iteration(p2, m, {0.0, 0.0}, 4);
        for (const auto& step : at_zero.steps) {
            CHECK(step.iterate == Complex(1.0, 0.0));
            CHECK(step.residual == Complex(0.0, 0.0));
        }
    }
}

TEST_CASE("iteration aborts with the failing step index") {
    // z = 2 sends U_1 to exactly 0, so the residual at step 1 divides by 0.
    try {
        run_iteration(p2, Method::newton, {2.0, 0.0}, 3);
        FAIL("expected IterationError");
    } catch (const IterationError& e) {
        CHECK(e.step == 1);
    }
    CHECK_THROWS_AS(run_iteration(RootParameter::parse("5/2"), Method::newton, {0.5, 0.0}, 2),
                    std::invalid_argument);
}

TEST_CASE("residual recurrence discrepancy stays below 1e-10 on the disk") {
    std::vector<Complex> points{{0.5, 0.0},  {-0.3, 0.4}, {0.0, 0.9},
                                {0.99, 0.0}, {-1.0, 0.0}, {0.6, -0.79}};
    const auto sweep = sample_disk(DiskSamplingPlan{4, 8, 24, 99, 1e-3});
    points.insert(points.end(), sweep.begin(), sweep.end());
    for (Method m : {Method::newton, Method::halley}) {
        for (long p : {2L, 3L, 5L}) {
            for (const Complex z : points) {
                const IterationTrace trace =
                    run_iteration(RootParameter::integer(p), m, z, 4);
                for (std::size_t k = 1; k < trace.steps.size(); ++k) {
                    REQUIRE(trace.steps[k].recurrence_discrepancy.has_value());
                    CHECK(*trace.steps[k].recurrence_discrepancy < 1e-10);
                }
            }
        }
    }
}
