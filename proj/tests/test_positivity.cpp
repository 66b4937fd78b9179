#include <doctest.h>

#include <random>
#include <vector>

#include "rootbound/report_json.hpp"
#include "rootbound/root_maps.hpp"
#include "rootbound/series.hpp"
#include "rootbound/positivity.hpp"
#include "test_helpers.hpp"

using namespace rootbound;
using rootbound::testing::rs;

namespace {

WeightSequence from_values(std::vector<Rational> values, const std::string& label) {
    return WeightSequence{label,
                          [values = std::move(values)](int n) {
                              if (n < 1 || static_cast<std::size_t>(n) > values.size())
                                  throw std::out_of_range("weight index " + std::to_string(n));
                              return values[static_cast<std::size_t>(n - 1)];
                          },
                          std::nullopt};
}

WeightSequence constant_weights() {
    return WeightSequence{"constant", [](int) { return Rational(1); }, std::nullopt};
}

std::vector<Rational> rationals(const std::vector<std::string>& strings) {
    std::vector<Rational> out;
    for (const auto& s : strings) out.push_back(Rational::from_string(s));
    return out;
}

/// Random valid weight sequence: a_1 = 1, positive, non-increasing, with the
/// first strict decrease at a random index in {2, 3, 4} so ell varies.
WeightSequence random_weights(std::mt19937_64& rng, int length) {
    const int first_drop = 2 + static_cast<int>(rng() % 3);
    std::vector<Rational> values{Rational(1)};
    for (int n = 2; n <= length; ++n) {
        const bool stay = n < first_drop || (n > first_drop && rng() % 3 == 0);
        if (stay) {
            values.push_back(values.back());
        } else {
            const long den = static_cast<long>(rng() % 7) + 2;
            const long num = static_cast<long>(rng() % static_cast<unsigned long>(den - 1)) + 1;
            values.push_back(values.back() * Rational(num, den));
        }
    }
    return from_values(std::move(values), "random");
}

}  // namespace

TEST_CASE("b recurrence against hand-unrolled values") {
    CHECK(compute_b(newton_weights(RootParameter::integer(2)), 3) ==
          rationals({"1", "1", "3/4", "1/2"}));
    CHECK(compute_b(constant_weights(), 4) == rationals({"1", "1", "1", "1", "1"}));
    CHECK(compute_b(halley_weights(RootParameter::integer(2)), 3) ==
          rationals({"1", "1", "1", "15/16"}));
}

TEST_CASE("b recurrence rejects weights that drive b non-positive") {
    CHECK_THROWS_AS(compute_b(from_values(rationals({"1", "-2", "1", "1"}), "negative"), 3),
                    CertifyError);
}

TEST_CASE("c from first differences of b") {
    CHECK(compute_c_from_differences(rationals({"1", "1", "3/4", "1/2"})) ==
          rationals({"0", "0", "1/4", "1/4"}));
    CHECK(compute_c_from_differences(rationals({"1", "1", "1", "1"})) ==
          rationals({"0", "0", "0", "0"}));
    CHECK(compute_c_from_differences(rationals({"1", "1", "1", "15/16"})) ==
          rationals({"0", "0", "0", "1/16"}));
}

TEST_CASE("c from the weight-difference convolution") {
    const WeightSequence newton2 = newton_weights(RootParameter::integer(2));
    CHECK(compute_c_from_convolution(newton2, compute_b(newton2, 3), 3) ==
          rationals({"0", "0", "1/4", "1/4"}));

    CHECK(compute_c_from_convolution(constant_weights(), compute_b(constant_weights(), 4), 4) ==
          rationals({"0", "0", "0", "0", "0"}));

    const WeightSequence halley2 = halley_weights(RootParameter::integer(2));
    CHECK(compute_c_from_convolution(halley2, compute_b(halley2, 3), 3) ==
          rationals({"0", "0", "0", "1/16"}));
}

TEST_CASE("ell detection") {
    CHECK(detect_ell(newton_weights(RootParameter::integer(2)), 10) == 2);
    CHECK(detect_ell(newton_weights(RootParameter::parse("5/2")), 10) == 2);
    CHECK(detect_ell(halley_weights(RootParameter::integer(2)), 10) == 3);
    CHECK(detect_ell(halley_weights(RootParameter::integer(7)), 10) == 3);
    CHECK_THROWS_WITH_AS(detect_ell(constant_weights(), 10),
                         doctest::Contains("constant to horizon"), CertifyError);
}

TEST_CASE("certify: Newton weights, p = 2") {
    const PositivityCertificate cert = certify(newton_weights(RootParameter::integer(2)), 64);
    CHECK(cert.ell == 2);
    CHECK(cert.all_passed());
    CHECK(cert.b[2] == Rational(3, 4));
    CHECK(cert.c[2] == Rational(1, 4));
    CHECK(cert.c[3] == Rational(1, 4));
}

TEST_CASE("certify: Halley weights, p = 2") {
    const PositivityCertificate cert = certify(halley_weights(RootParameter::integer(2)), 64);
    CHECK(cert.ell == 3);
    CHECK(cert.all_passed());
    CHECK(cert.c[2] == Rational(0));
    CHECK(cert.c[3] == Rational(1, 16));
}

TEST_CASE("certify refuses invalid hypotheses, naming the first violation") {
    const auto refused_with = [](const WeightSequence& seq, int order, const char* property) {
        try {
            certify(seq, order);
            return false;
        } catch (const CertifyError& e) {
            return e.violated == property;
        }
    };
    CHECK(refused_with(from_values(rationals({"1", "3/2", "1", "1"}), "increasing"), 3,
                       "weights non-increasing"));
    CHECK(refused_with(from_values(rationals({"2", "1", "1", "1"}), "bad start"), 3, "a_1 = 1"));
    CHECK(refused_with(from_values(rationals({"1", "1/2", "-1/4", "1/8"}), "negative"), 3,
                       "weights positive"));
    CHECK(refused_with(constant_weights(), 8, "ell defined"));
    // horizon stops before the first decrease: constant-to-horizon error
    CHECK(refused_with(from_values(rationals({"1", "1", "1", "1", "1/2"}), "late drop"), 3,
                       "ell defined"));
}

TEST_CASE("both c routes agree exactly (property)") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        const WeightSequence a = random_weights(rng, 42);
        const auto b = compute_b(a, 40);
        CHECK(compute_c_from_differences(b) == compute_c_from_convolution(a, b, 40));
    }
    // and once at the full property horizon
    const WeightSequence newton2 = newton_weights(RootParameter::integer(2));
    const auto b = compute_b(newton2, 256);
    CHECK(compute_c_from_differences(b) == compute_c_from_convolution(newton2, b, 256));
}

TEST_CASE("partial sums telescope and stay bounded (property)") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const PositivityCertificate cert = certify(random_weights(rng, 34), 32);
        CHECK(cert.all_passed());
        Rational sum(0);
        for (int m = 1; m <= cert.order; ++m) {
            sum += cert.c[static_cast<std::size_t>(m)];
            CHECK(sum == Rational(1) - cert.b[static_cast<std::size_t>(m)]);
            CHECK(sum < Rational(1));
        }
    }
}

TEST_CASE("certified c equals the series of 1 - (1-z) exp(sum a_n z^n / n)") {
    for (const auto& p_text : {"2", "3", "5/2"}) {
        for (const bool halley : {false, true}) {
            const RootParameter p = RootParameter::parse(p_text);
            const WeightSequence a = halley ? halley_weights(p) : newton_weights(p);
            const int order = 32;
            const PositivityCertificate cert = certify(a, order);

            RationalSeries g(order);
            for (int n = 1; n <= order; ++n) g[n] = a.value(n) / Rational(n);
            RationalSeries one_minus_z(order);
            one_minus_z[0] = Rational(1);
            one_minus_z[1] = Rational(-1);
            const RationalSeries f =
                RationalSeries::constant(Rational(1), order) - one_minus_z * exp(g);

            CHECK(f == RationalSeries(cert.c, order));
        }
    }
}

TEST_CASE("certificate JSON uses exact num/den strings") {
    const json doc = to_json(certify(halley_weights(RootParameter::integer(2)), 8));
    CHECK(doc["ell"] == 3);
    CHECK(doc["order"] == 8);
    CHECK(doc["b"][3] == "15/16");
    CHECK(doc["c"][3] == "1/16");
    CHECK(doc["checks"]["c_routes_agree"] == true);
    CHECK(doc["checks"]["partial_sums_telescope"] == true);
    CHECK(doc["label"] == "halley p=2");
}
